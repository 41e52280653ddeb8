#include "chaincalc/odometer.hpp"

#include "chaincalc/errors.hpp"

#include <sstream>

namespace chaincalc {

namespace {

void check_point(const std::vector<CosetTable>& tables, const TreePoint& p) {
  if (p.depth() >= (int)tables.size())
    precondition_error("point is deeper than the built tables");
  for (int i = 1; i <= p.depth(); i++) {
    int c = p.path[i - 1];
    if (c < 0 || c >= tables[i].size())
      precondition_error("coset index out of range at level " +
                         std::to_string(i));
    if (i >= 2 &&
        tables[i - 1].coset_of(tables[i].reps[c]) != p.path[i - 2])
      precondition_error("incompatible coset path at level " +
                         std::to_string(i));
  }
}

// Deepest representative; lies in every coset of a compatible path.
GroupElement point_rep(const std::vector<CosetTable>& tables,
                       const TreePoint& p) {
  if (p.depth() == 0) return identity(tables[0].ctx);
  return tables[p.depth()].reps[p.path.back()];
}

std::string vertex_id(int level, int coset) {
  return std::to_string(level) + ":" + std::to_string(coset);
}

} // namespace

std::vector<CosetTable> chain_tables(const GroupChain& chain, int depth,
                                     const Caps& caps) {
  if (depth < 0 || depth > chain.depth())
    precondition_error("table depth out of range");
  std::vector<CosetTable> tables;
  for (int i = 0; i <= depth; i++)
    tables.push_back(enumerate_cosets(chain.ctx, chain.levels[i], caps));
  return tables;
}

TreePoint basepoint(int depth) {
  return TreePoint{std::vector<int>(depth, 0)};
}

TreePoint tree_point(const std::vector<CosetTable>& tables,
                     const GroupElement& g) {
  TreePoint p;
  for (int i = 1; i < (int)tables.size(); i++)
    p.path.push_back(tables[i].coset_of(g));
  return p;
}

TreePoint truncate_point(const TreePoint& p, int depth) {
  if (depth < 0 || depth > p.depth())
    precondition_error("truncation depth out of range");
  return TreePoint{std::vector<int>(p.path.begin(), p.path.begin() + depth)};
}

TreePoint act(const std::vector<CosetTable>& tables, const GroupElement& g,
              const TreePoint& p) {
  check_point(tables, p);
  TreePoint q;
  for (int i = 1; i <= p.depth(); i++) {
    const CosetTable& tbl = tables[i];
    q.path.push_back(
        tbl.coset_of(multiply(tbl.ctx, g, tbl.reps[p.path[i - 1]])));
  }
  return q;
}

std::vector<CodingTrace> orbit_coding(const std::vector<CosetTable>& tables,
                                      const TreePoint& p,
                                      const std::vector<GroupElement>& samples) {
  check_point(tables, p);
  GroupElement rep = point_rep(tables, p);
  std::vector<CodingTrace> traces;
  for (int i = 1; i <= p.depth(); i++) {
    const CosetTable& tbl = tables[i];
    CodingTrace t;
    t.level = i;
    t.rep = rep;
    for (const GroupElement& s : samples) {
      t.words.push_back(elem_label(tbl.ctx, s));
      t.code.push_back(tbl.coset_of(multiply(tbl.ctx, s, rep)));
    }
    traces.push_back(std::move(t));
  }
  return traces;
}

std::vector<GroupElement> point_stabilizer_probe(
    const std::vector<CosetTable>& tables, const TreePoint& p,
    const std::vector<GroupElement>& candidates) {
  check_point(tables, p);
  std::vector<GroupElement> fixing;
  for (const GroupElement& g : candidates)
    if (act(tables, g, p) == p) fixing.push_back(g);
  return fixing;
}

TreeDocument export_tree(const std::vector<CosetTable>& tables, int depth) {
  if (depth < 0 || depth >= (int)tables.size())
    precondition_error("export depth out of range");
  TreeDocument doc;
  doc.depth = depth;
  doc.basepointPath.assign(depth + 1, 0);
  for (int i = 0; i <= depth; i++) {
    const CosetTable& tbl = tables[i];
    for (int c = 0; c < tbl.size(); c++) {
      doc.vertices.push_back(vertex_id(i, c) + ":" +
                             elem_label(tbl.ctx, tbl.reps[c]));
      if (i >= 1)
        doc.edges.emplace_back(
            vertex_id(i - 1, tables[i - 1].coset_of(tbl.reps[c])),
            vertex_id(i, c));
    }
  }
  return doc;
}

std::string TreeDocument::text() const {
  std::ostringstream os;
  os << "tree depth " << depth << "\n";
  for (const std::string& v : vertices) {
    std::string id = v.substr(0, v.find(':', v.find(':') + 1));
    bool onPath = false;
    for (int i = 0; i <= depth; i++)
      if (id == vertex_id(i, basepointPath[i])) onPath = true;
    os << "vertex " << v << (onPath ? " *" : "") << "\n";
  }
  for (const auto& e : edges) os << "edge " << e.first << " " << e.second << "\n";
  return os.str();
}

std::string TreeDocument::dot() const {
  std::ostringstream os;
  os << "digraph tree {\n";
  for (const std::string& v : vertices) {
    size_t second = v.find(':', v.find(':') + 1);
    std::string id = v.substr(0, second);
    std::string word = v.substr(second + 1);
    std::string node = "v" + id;
    for (char& ch : node)
      if (ch == ':') ch = '_';
    bool onPath = false;
    for (int i = 0; i <= depth; i++)
      if (id == vertex_id(i, basepointPath[i])) onPath = true;
    os << "  " << node << " [label=\"" << word << "\""
       << (onPath ? ", style=filled" : "") << "];\n";
  }
  for (const auto& e : edges) {
    std::string a = "v" + e.first, b = "v" + e.second;
    for (char& ch : a)
      if (ch == ':') ch = '_';
    for (char& ch : b)
      if (ch == ':') ch = '_';
    os << "  " << a << " -> " << b << ";\n";
  }
  os << "}\n";
  return os.str();
}

} // namespace chaincalc
