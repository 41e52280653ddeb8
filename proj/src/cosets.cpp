#include "chaincalc/cosets.hpp"

#include "chaincalc/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace chaincalc {

namespace {

long env_long(const char* name, long fallback) {
  const char* s = std::getenv(name);
  if (!s) return fallback;
  char* end = nullptr;
  long v = std::strtol(s, &end, 10);
  if (end == s || *end != '\0' || v <= 0)
    validation_error(std::string(name) + " must be a positive integer");
  return v;
}

std::vector<int> compose(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out(b.size());
  for (size_t i = 0; i < b.size(); i++) out[i] = a[b[i]];
  return out;
}

std::vector<int> identity_perm(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; i++) p[i] = i;
  return p;
}

} // namespace

Caps default_caps() {
  Caps c;
  c.cosetCap = env_long("CHAINCALC_COSET_CAP", c.cosetCap);
  c.permCap = env_long("CHAINCALC_PERM_CAP", c.permCap);
  c.cellCap = env_long("CHAINCALC_CELL_CAP", (long)c.cellCap);
  return c;
}

int CosetTable::coset_of(const GroupElement& g) const {
  auto it = index.find(coset_key(ctx, subgroup, g));
  if (it == index.end())
    structural_error("coset_of: element reaches no enumerated coset");
  return it->second;
}

CosetTable enumerate_cosets(const GroupContext& ctx, const SubgroupData& H,
                            const Caps& caps) {
  Int count = subgroup_index(ctx, H);
  if (count > caps.cosetCap)
    resource_error("coset space has index " + count.get_str() +
                   ", above the cap of " + std::to_string(caps.cosetCap));
  CosetTable t;
  t.ctx = ctx;
  t.subgroup = H;
  t.reps.push_back(identity(ctx));
  t.index[coset_key(ctx, H, t.reps[0])] = 0;
  for (size_t c = 0; c < t.reps.size(); c++)
    for (const GroupElement& s : ctx.generators) {
      GroupElement g = multiply(ctx, s, t.reps[c]);
      std::string key = coset_key(ctx, H, g);
      if (!t.index.count(key)) {
        t.index[key] = (int)t.reps.size();
        t.reps.push_back(std::move(g));
      }
    }
  if (Int((long)t.reps.size()) != count)
    structural_error("coset enumeration found " +
                     std::to_string(t.reps.size()) + " cosets, expected " +
                     count.get_str() +
                     " (generators do not reach every coset)");
  t.actions.assign(ctx.generators.size(), std::vector<int>(t.size()));
  for (size_t gi = 0; gi < ctx.generators.size(); gi++)
    for (int c = 0; c < t.size(); c++)
      t.actions[gi][c] =
          t.coset_of(multiply(ctx, ctx.generators[gi], t.reps[c]));
  return t;
}

std::vector<int> permutation_rep(const CosetTable& table,
                                 const GroupElement& g) {
  std::vector<int> perm(table.size());
  for (int c = 0; c < table.size(); c++)
    perm[c] = table.coset_of(multiply(table.ctx, g, table.reps[c]));
  return perm;
}

int FiniteQuotient::element_index(const std::vector<int>& perm) const {
  auto it = lookup.find(perm);
  return it == lookup.end() ? -1 : it->second;
}

FiniteQuotient finite_quotient(const GroupContext& ctx, const SubgroupData& H,
                               const Caps& caps) {
  SubgroupData core = core_subgroup(ctx, H);
  Int order = subgroup_index(ctx, core);
  if (order > caps.permCap)
    resource_error("quotient by the core has order " + order.get_str() +
                   ", above the cap of " + std::to_string(caps.permCap));
  Int cells = order * subgroup_index(ctx, H);
  if (cells > Int((long)caps.cellCap))
    resource_error("quotient table needs " + cells.get_str() +
                   " cells, above the cap of " + std::to_string(caps.cellCap));
  FiniteQuotient fq;
  fq.table = enumerate_cosets(ctx, H, caps);
  std::vector<std::vector<int>> genPerms;
  for (size_t gi = 0; gi < ctx.generators.size(); gi++)
    genPerms.push_back(fq.table.actions[gi]);
  fq.elements.push_back(identity_perm(fq.table.size()));
  fq.words.push_back({});
  fq.lookup[fq.elements[0]] = 0;
  for (size_t c = 0; c < fq.elements.size(); c++)
    for (size_t gi = 0; gi < genPerms.size(); gi++) {
      std::vector<int> p = compose(fq.elements[c], genPerms[gi]);
      if (!fq.lookup.count(p)) {
        fq.lookup[p] = (int)fq.elements.size();
        std::vector<int> w = fq.words[c];
        w.push_back((int)gi);
        fq.elements.push_back(std::move(p));
        fq.words.push_back(std::move(w));
      }
    }
  if (Int((long)fq.elements.size()) != order)
    structural_error("quotient closure found " +
                     std::to_string(fq.elements.size()) +
                     " permutations, expected " + order.get_str());
  for (int i = 0; i < (int)fq.elements.size(); i++)
    if (fq.elements[i][0] == 0) fq.basepointStabilizer.push_back(i);
  return fq;
}

bool core_membership(const FiniteQuotient& fq, const GroupElement& g) {
  return permutation_rep(fq.table, g) == fq.elements[0];
}

GroupElement witness_element(const FiniteQuotient& fq, int elemIndex) {
  if (elemIndex < 0 || elemIndex >= (int)fq.elements.size())
    structural_error("witness_element: index out of range");
  const GroupContext& ctx = fq.table.ctx;
  GroupElement g = identity(ctx);
  for (int gi : fq.words[elemIndex])
    g = multiply(ctx, g, ctx.generators[gi]);
  return g;
}

std::vector<int> subgroup_image(const FiniteQuotient& fq,
                                const std::vector<GroupElement>& gens) {
  std::vector<int> genIdx;
  for (const GroupElement& g : gens) {
    int i = fq.element_index(permutation_rep(fq.table, g));
    if (i < 0)
      structural_error("subgroup_image: generator acts outside the quotient");
    genIdx.push_back(i);
  }
  std::set<int> seen = {0};
  std::vector<int> queue = {0};
  for (size_t c = 0; c < queue.size(); c++)
    for (int gi : genIdx) {
      int next = fq.element_index(
          compose(fq.elements[queue[c]], fq.elements[gi]));
      if (next < 0)
        structural_error("subgroup_image: closure escaped the quotient");
      if (seen.insert(next).second) queue.push_back(next);
    }
  return std::vector<int>(seen.begin(), seen.end());
}

std::vector<GroupElement> schreier_generators(const CosetTable& table) {
  const GroupContext& ctx = table.ctx;
  std::vector<GroupElement> sgens = ctx.generators;
  for (const GroupElement& g : ctx.generators)
    sgens.push_back(inverse(ctx, g));
  std::vector<GroupElement> out;
  std::set<std::string> seen;
  for (int c = 0; c < table.size(); c++)
    for (const GroupElement& s : sgens) {
      GroupElement moved = multiply(ctx, s, table.reps[c]);
      GroupElement u =
          multiply(ctx, inverse(ctx, table.reps[table.coset_of(moved)]), moved);
      if (!contains(ctx, table.subgroup, u))
        structural_error("schreier_generators: element fell outside");
      if (is_identity(ctx, u)) continue;
      if (seen.insert(elem_str(ctx, u)).second) out.push_back(u);
    }
  return out;
}

} // namespace chaincalc
