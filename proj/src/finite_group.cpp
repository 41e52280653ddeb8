#include "chaincalc/finite_group.hpp"

#include "chaincalc/errors.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

namespace chaincalc {

namespace {

std::vector<int> perm_mul(const std::vector<int>& a, const std::vector<int>& b) {
  // Right-to-left composition: (a*b)(x) = a(b(x)).
  std::vector<int> out(a.size());
  for (size_t x = 0; x < a.size(); x++) out[x] = a[b[x]];
  return out;
}

bool perm_even(const std::vector<int>& p) {
  int n = (int)p.size(), transpositions = 0;
  std::vector<bool> seen(n, false);
  for (int i = 0; i < n; i++) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = i; !seen[j]; j = p[j]) { seen[j] = true; len++; }
    transpositions += len - 1;
  }
  return transpositions % 2 == 0;
}

std::string cycle_name(const std::vector<int>& p) {
  int n = (int)p.size();
  std::ostringstream os;
  std::vector<bool> seen(n, false);
  bool any = false;
  for (int i = 0; i < n; i++) {
    if (seen[i] || p[i] == i) { seen[i] = true; continue; }
    any = true;
    os << "(";
    for (int j = i; !seen[j]; j = p[j]) { seen[j] = true; os << j; }
    os << ")";
  }
  return any ? os.str() : "e";
}

FiniteGroupTable from_perms(const std::string& name, int points,
                            bool evenOnly,
                            const std::vector<std::vector<int>>& genPerms) {
  // Elements in lexicographic one-line order; the identity sorts first.
  std::vector<std::vector<int>> all;
  std::vector<int> p(points);
  for (int i = 0; i < points; i++) p[i] = i;
  do {
    if (!evenOnly || perm_even(p)) all.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, int> at;
  for (size_t i = 0; i < all.size(); i++) at[all[i]] = (int)i;
  int n = (int)all.size();
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; a++)
    for (int b = 0; b < n; b++) table[a][b] = at.at(perm_mul(all[a], all[b]));
  std::vector<std::string> names;
  names.reserve(n);
  for (const auto& q : all) names.push_back(cycle_name(q));
  std::vector<int> gens;
  for (const auto& q : genPerms) gens.push_back(at.at(q));
  return make_finite_group(name, std::move(names), std::move(table),
                           std::move(gens), std::move(all));
}

FiniteGroupTable cyclic(const std::string& name, int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; i++) {
    if (i == 0) names.push_back("e");
    else if (i == 1) names.push_back("t");
    else names.push_back("t" + std::to_string(i));
  }
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; a++)
    for (int b = 0; b < n; b++) table[a][b] = (a + b) % n;
  return make_finite_group(name, std::move(names), std::move(table),
                           n > 1 ? std::vector<int>{1} : std::vector<int>{});
}

std::vector<int> transposition(int points, int a, int b) {
  std::vector<int> q(points);
  for (int i = 0; i < points; i++) q[i] = i;
  std::swap(q[a], q[b]);
  return q;
}

std::vector<int> cycle3(int points, int a, int b, int c) {
  std::vector<int> q(points);
  for (int i = 0; i < points; i++) q[i] = i;
  q[a] = b; q[b] = c; q[c] = a;
  return q;
}

std::vector<int> full_cycle(int points) {
  std::vector<int> q(points);
  for (int i = 0; i < points; i++) q[i] = (i + 1) % points;
  return q;
}

} // namespace

int FiniteGroupTable::index_of(const std::string& elemName) const {
  for (int i = 0; i < size(); i++)
    if (elems[i] == elemName) return i;
  validation_error("unknown finite-part element '" + elemName + "' in " + name);
}

FiniteGroupTable make_finite_group(std::string name,
                                   std::vector<std::string> elems,
                                   std::vector<std::vector<int>> table,
                                   std::vector<int> gens,
                                   std::vector<std::vector<int>> perms) {
  int n = (int)elems.size();
  if (n == 0) validation_error("finite group '" + name + "': no elements");
  if ((int)table.size() != n)
    validation_error("finite group '" + name + "': table has wrong row count");
  for (const auto& row : table) {
    if ((int)row.size() != n)
      validation_error("finite group '" + name + "': ragged table row");
    for (int x : row)
      if (x < 0 || x >= n)
        validation_error("finite group '" + name + "': table entry out of range");
  }
  for (int a = 0; a < n; a++)
    if (table[0][a] != a || table[a][0] != a)
      validation_error("finite group '" + name + "': element 0 is not the identity");
  for (int a = 0; a < n; a++)
    for (int b = 0; b < n; b++)
      for (int c = 0; c < n; c++)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          validation_error("finite group '" + name + "': table not associative");
  FiniteGroupTable g;
  g.name = std::move(name);
  g.elems = std::move(elems);
  g.table = std::move(table);
  g.inv.assign(n, -1);
  for (int a = 0; a < n; a++) {
    for (int b = 0; b < n; b++)
      if (g.table[a][b] == 0) { g.inv[a] = b; break; }
    if (g.inv[a] < 0)
      validation_error("finite group '" + g.name + "': missing inverse");
  }
  g.gens = std::move(gens);
  for (int x : g.gens)
    if (x < 0 || x >= n)
      validation_error("finite group '" + g.name + "': generator out of range");
  if ((int)fg_closure(g, g.gens).size() != n)
    validation_error("finite group '" + g.name + "': generators do not generate");
  g.perms = std::move(perms);
  return g;
}

FiniteGroupTable builtin_finite_group(const std::string& name) {
  if (name == "trivial") return cyclic("trivial", 1);
  if (name == "z2") return cyclic("z2", 2);
  if (name == "z3") return cyclic("z3", 3);
  if (name == "z4") return cyclic("z4", 4);
  if (name == "s2") return from_perms("s2", 2, false, {transposition(2, 0, 1)});
  if (name == "s3")
    return from_perms("s3", 3, false, {transposition(3, 0, 1), full_cycle(3)});
  if (name == "s4")
    return from_perms("s4", 4, false, {transposition(4, 0, 1), full_cycle(4)});
  if (name == "a4")
    return from_perms("a4", 4, true,
                      {cycle3(4, 0, 1, 2),
                       perm_mul(transposition(4, 0, 1), transposition(4, 2, 3))});
  if (name == "a5")
    return from_perms("a5", 5, true, {cycle3(5, 0, 1, 2), full_cycle(5)});
  validation_error("unknown finite group '" + name + "'");
}

bool is_builtin_finite_group(const std::string& name) {
  static const char* known[] = {"trivial", "z2", "z3", "z4", "s2",
                                "s3",      "s4", "a4", "a5"};
  for (const char* k : known)
    if (name == k) return true;
  return false;
}

std::vector<int> builtin_subgroup(const FiniteGroupTable& tbl,
                                  const std::string& subName) {
  if (subName == "trivial") return {0};
  if (subName == tbl.name) {
    std::vector<int> all(tbl.size());
    for (int i = 0; i < tbl.size(); i++) all[i] = i;
    return all;
  }
  if (!tbl.perms.empty()) {
    int points = (int)tbl.perms[0].size();
    // "a<points>": even elements; "a<points-1>"/"s<points-1>": last-point
    // stabilizer (intersected with even elements for the a-form).
    auto stab = [&](bool even) {
      std::vector<int> out;
      for (int i = 0; i < tbl.size(); i++)
        if (tbl.perms[i][points - 1] == points - 1 &&
            (!even || perm_even(tbl.perms[i])))
          out.push_back(i);
      return out;
    };
    if (subName == "a" + std::to_string(points)) {
      std::vector<int> out;
      for (int i = 0; i < tbl.size(); i++)
        if (perm_even(tbl.perms[i])) out.push_back(i);
      return out;
    }
    if (subName == "s" + std::to_string(points - 1)) return stab(false);
    if (subName == "a" + std::to_string(points - 1)) return stab(true);
    if (subName == "v4" && points == 4) {
      std::vector<int> out;
      for (int i = 0; i < tbl.size(); i++)
        if (perm_even(tbl.perms[i]) && tbl.mul(i, i) == 0) out.push_back(i);
      return out;
    }
  }
  validation_error("no builtin subgroup '" + subName + "' of " + tbl.name);
}

std::vector<int> fg_closure(const FiniteGroupTable& tbl,
                            const std::vector<int>& gens) {
  std::vector<bool> in(tbl.size(), false);
  in[0] = true;
  std::queue<int> q;
  q.push(0);
  for (int g : gens)
    if (!in[g]) { in[g] = true; q.push(g); }
  while (!q.empty()) {
    int a = q.front();
    q.pop();
    for (int g : gens) {
      int b = tbl.mul(a, g);
      if (!in[b]) { in[b] = true; q.push(b); }
    }
  }
  std::vector<int> out;
  for (int i = 0; i < tbl.size(); i++)
    if (in[i]) out.push_back(i);
  return out;
}

bool fg_is_subgroup(const FiniteGroupTable& tbl, const std::vector<int>& sub) {
  if (sub.empty() || !std::binary_search(sub.begin(), sub.end(), 0)) return false;
  for (int a : sub) {
    if (!std::binary_search(sub.begin(), sub.end(), tbl.inverse(a))) return false;
    for (int b : sub)
      if (!std::binary_search(sub.begin(), sub.end(), tbl.mul(a, b))) return false;
  }
  return true;
}

std::vector<int> fg_conjugate(const FiniteGroupTable& tbl,
                              const std::vector<int>& sub, int g) {
  std::vector<int> out;
  out.reserve(sub.size());
  int gi = tbl.inverse(g);
  for (int s : sub) out.push_back(tbl.mul(tbl.mul(g, s), gi));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> fg_core(const FiniteGroupTable& tbl,
                         const std::vector<int>& sub) {
  std::vector<int> out;
  for (int s : sub) {
    bool keep = true;
    for (int g = 0; g < tbl.size() && keep; g++)
      keep = std::binary_search(sub.begin(), sub.end(),
                                tbl.mul(tbl.mul(g, s), tbl.inverse(g)));
    if (keep) out.push_back(s);
  }
  return out;
}

std::vector<int> fg_generating_set(const FiniteGroupTable& tbl,
                                   const std::vector<int>& sub) {
  std::vector<int> gens;
  std::vector<int> have = fg_closure(tbl, gens);
  for (int s : sub) {
    if (std::binary_search(have.begin(), have.end(), s)) continue;
    gens.push_back(s);
    have = fg_closure(tbl, gens);
    if (have.size() == sub.size()) break;
  }
  return gens;
}

std::vector<int> fg_word(const FiniteGroupTable& tbl, int g) {
  std::vector<int> prev(tbl.size(), -1), via(tbl.size(), -1);
  std::queue<int> q;
  prev[0] = 0;
  q.push(0);
  while (!q.empty() && prev[g] < 0) {
    int a = q.front();
    q.pop();
    for (size_t j = 0; j < tbl.gens.size(); j++) {
      int b = tbl.mul(a, tbl.gens[j]);
      if (prev[b] < 0) {
        prev[b] = a;
        via[b] = (int)j;
        q.push(b);
      }
    }
  }
  if (prev[g] < 0) structural_error("fg_word: element not generated");
  std::vector<int> word;
  for (int a = g; a != 0; a = prev[a]) word.push_back(via[a]);
  std::reverse(word.begin(), word.end());
  return word;
}

} // namespace chaincalc
