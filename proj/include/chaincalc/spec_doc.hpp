#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chains.hpp"

namespace chaincalc {

// Chain specification files. A file has a group block, a chain block and an
// optional analysis block:
//
//   group {
//     family = lattice
//     rank = 1
//     finite = z2
//     action = [[-1]]
//     generators = { a = (1;e), b = (0;t) }
//   }
//   chain {
//     params = { p = 2 }
//     depth = 6
//     lattice = [[p^i]]
//     finite = { e, t }
//   }
//   analysis {
//     depth = 6
//     kernelGens = { b }
//   }
//
// Matrices are written row by row. A chain block either carries one
// parametric level template (evaluated at i = 1..depth) or explicit level {}
// blocks. Heisenberg chains use matrix/m/twist instead of lattice/finite and
// the group block needs only the family line.

// Integer expressions over literals, parameter names and the level variable
// i, with + - * ^ and parenthesization.
struct SpecExpr {
  enum class Op { Const, Param, Level, Add, Sub, Mul, Pow, Neg };
  Op op = Op::Const;
  Int value = 0;        // Const
  std::string name;     // Param
  std::vector<SpecExpr> kids;
  int line = 0, col = 0;
};

Int eval_expr(const SpecExpr& e,
              const std::vector<std::pair<std::string, Int>>& params,
              std::optional<int> level);
std::string expr_str(const SpecExpr& e);

struct GroupSpec {
  Family family = Family::LatticeSemidirect;
  int rank = 0;
  std::string finite;                       // builtin finite table name
  std::vector<std::vector<std::vector<SpecExpr>>> actions;  // row-major each
  std::vector<std::pair<std::string, std::string>> generators;
};

struct LevelSpec {
  std::vector<std::vector<SpecExpr>> lattice;  // row-major, lattice family
  std::vector<std::string> finiteElems;
  std::string finiteSub;                       // builtin subgroup name
  std::vector<std::pair<std::string, std::vector<SpecExpr>>> trans;
  std::vector<std::vector<SpecExpr>> matrix;   // row-major, Heisenberg
  std::optional<SpecExpr> m;
  std::vector<SpecExpr> twist;                 // empty or two entries
};

struct ChainSpec {
  std::vector<std::pair<std::string, Int>> params;
  std::vector<std::string> primes;  // params that must be distinct primes
  int depth = 0;
  bool isExplicit = false;
  LevelSpec tmpl;
  std::vector<LevelSpec> levels;
};

struct AnalysisSpec {
  int depth = -1;       // negative: use the chain depth
  int probeDepth = -1;  // negative: analysis depth + 2
  std::optional<long> cosetCap;
  std::optional<long> permCap;
  std::optional<long long> cellCap;
  std::vector<std::string> kernelGens;  // words in the group generators
  int kernelSamples = 0;
  std::vector<std::string> reports;
};

struct ChainSpecDocument {
  GroupSpec group;
  ChainSpec chain;
  AnalysisSpec analysis;
};

// Full parse with line/column diagnostics. Semantic checks run too: prime
// parameters, expression evaluation over the declared level range and a
// trial chain build, so a returned document is known buildable.
ChainSpecDocument parse_spec(const std::string& text);

// Canonical rendering; parse_spec(serialize_spec(d)) round-trips.
std::string serialize_spec(const ChainSpecDocument& doc);

GroupContext build_group(const GroupSpec& g);

// Chain with `levels` proper levels. Parametric templates extend to any
// depth; explicit chains are bounded by the levels the file defines.
GroupChain build_chain(const ChainSpecDocument& doc, int levels);

// Word over the context generator names, e.g. "a^2*b".
GroupElement eval_word(const GroupContext& ctx, const std::string& word);

// Effective analysis parameters after defaults.
int analysis_depth(const ChainSpecDocument& doc);
int analysis_probe_depth(const ChainSpecDocument& doc);
Caps analysis_caps(const ChainSpecDocument& doc, const Caps& base);

}  // namespace chaincalc
