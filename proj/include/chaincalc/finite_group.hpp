// Finite groups as explicit multiplication tables with named elements.
// Small by design: these are the finite parts of semidirect products, never
// large permutation groups.

#pragma once

#include <string>
#include <vector>

namespace chaincalc {

struct FiniteGroupTable {
  std::string name;
  std::vector<std::string> elems; // elems[0] is the identity
  std::vector<std::vector<int>> table; // table[a][b] = a*b
  std::vector<int> inv;
  std::vector<int> gens; // indices into elems
  // Underlying permutations when the table came from a permutation group;
  // empty otherwise. Used only to resolve named subgroups.
  std::vector<std::vector<int>> perms;

  int size() const { return (int)elems.size(); }
  int mul(int a, int b) const { return table[a][b]; }
  int inverse(int a) const { return inv[a]; }
  int index_of(const std::string& elemName) const; // throws on unknown name
};

// Validates group axioms (identity at 0, associativity, inverses) and that
// gens generate; throws on violation.
FiniteGroupTable make_finite_group(std::string name,
                                   std::vector<std::string> elems,
                                   std::vector<std::vector<int>> table,
                                   std::vector<int> gens,
                                   std::vector<std::vector<int>> perms = {});

// Builtins: "trivial", "z2", "z3", "z4", "s2", "s3", "s4", "a4", "a5".
FiniteGroupTable builtin_finite_group(const std::string& name);
bool is_builtin_finite_group(const std::string& name);

// Named subgroups of builtins ("a4" in a5, "s3" in s4, "a3" in s3, ...);
// returns sorted element indices. Also accepts "trivial".
std::vector<int> builtin_subgroup(const FiniteGroupTable& tbl,
                                  const std::string& subName);

// Closure of gens under multiplication; sorted indices.
std::vector<int> fg_closure(const FiniteGroupTable& tbl,
                            const std::vector<int>& gens);
// sub must be sorted; true iff nonempty and closed under product and inverse.
bool fg_is_subgroup(const FiniteGroupTable& tbl, const std::vector<int>& sub);
// {g s g^-1 : s in sub}, sorted.
std::vector<int> fg_conjugate(const FiniteGroupTable& tbl,
                              const std::vector<int>& sub, int g);
// Largest normal subgroup of the whole table contained in sub.
std::vector<int> fg_core(const FiniteGroupTable& tbl,
                         const std::vector<int>& sub);
// Greedy small generating set for a subgroup (deterministic: scans in index
// order, keeps an element iff it enlarges the closure).
std::vector<int> fg_generating_set(const FiniteGroupTable& tbl,
                                   const std::vector<int>& sub);
// g as a product of tbl.gens, returned as indices into tbl.gens
// (shortest-found via BFS; empty for the identity).
std::vector<int> fg_word(const FiniteGroupTable& tbl, int g);

} // namespace chaincalc
