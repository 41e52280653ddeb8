#pragma once

#include "chaincalc/chains.hpp"

#include <string>
#include <utility>
#include <vector>

namespace chaincalc {

// A point of the coset tree at finite depth: path[i-1] is the coset index at
// level i. The basepoint is the all-zero path of the identity cosets.
struct TreePoint {
  std::vector<int> path;

  int depth() const { return (int)path.size(); }
  bool operator==(const TreePoint&) const = default;
};

// Coset tables for levels 0..depth of the chain; index 0 is the single-coset
// root table.
std::vector<CosetTable> chain_tables(const GroupChain& chain, int depth,
                                     const Caps& caps);

TreePoint basepoint(int depth);
TreePoint tree_point(const std::vector<CosetTable>& tables,
                     const GroupElement& g);
TreePoint truncate_point(const TreePoint& p, int depth);

// Left translation level by level. Incompatible paths are rejected.
TreePoint act(const std::vector<CosetTable>& tables, const GroupElement& g,
              const TreePoint& p);

// Which coset each sampled element pushes the point into, at one level.
struct CodingTrace {
  int level = 0;
  GroupElement rep;
  std::vector<std::string> words;
  std::vector<int> code;
};

std::vector<CodingTrace> orbit_coding(const std::vector<CosetTable>& tables,
                                      const TreePoint& p,
                                      const std::vector<GroupElement>& samples);

std::vector<GroupElement> point_stabilizer_probe(
    const std::vector<CosetTable>& tables, const TreePoint& p,
    const std::vector<GroupElement>& candidates);

// Vertex lines "level:index:repWord" in BFS order, one edge per coset
// inclusion, the basepoint path marked.
struct TreeDocument {
  int depth = 0;
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<int> basepointPath;

  std::string text() const;
  std::string dot() const;
};

TreeDocument export_tree(const std::vector<CosetTable>& tables, int depth);

} // namespace chaincalc
