#include "chaincalc/chains.hpp"

#include "chaincalc/errors.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace chaincalc {

namespace {

std::vector<int> perm_inverse(const std::vector<int>& p) {
  std::vector<int> q(p.size());
  for (int i = 0; i < (int)p.size(); i++) q[p[i]] = i;
  return q;
}

std::vector<int> perm_compose(const std::vector<int>& a,
                              const std::vector<int>& b) {
  std::vector<int> c(a.size());
  for (int i = 0; i < (int)a.size(); i++) c[i] = a[b[i]];
  return c;
}

// [G_n : G_n cap C_i] for n = i..probeDepth, the size history whose tail is
// the stable image size at level i.
std::vector<Int> image_sizes(const GroupChain& chain,
                             const std::vector<LevelData>& levels, int i,
                             int probeDepth) {
  std::vector<Int> sizes;
  for (int n = i; n <= probeDepth; n++) {
    SubgroupData cap =
        intersect_subgroups(chain.ctx, chain.levels[n], levels[i].core);
    sizes.push_back(subgroup_index(chain.ctx, cap) / levels[n].index);
  }
  return sizes;
}

bool sizes_plateau(const std::vector<Int>& sizes) {
  int m = (int)sizes.size();
  if (m < 3) return false;
  return sizes[m - 1] == sizes[m - 2] && sizes[m - 2] == sizes[m - 3];
}

// Least base level b <= depth whose core reproduces every deeper core by
// intersection, checked against all available levels.
int base_level_search(const GroupChain& chain,
                      const std::vector<LevelData>& levels, int depth) {
  for (int b = 0; b <= depth; b++) {
    bool ok = true;
    for (int i = b; i <= chain.depth() && ok; i++) {
      SubgroupData cap =
          intersect_subgroups(chain.ctx, chain.levels[i], levels[b].core);
      ok = (cap == levels[i].core);
    }
    if (ok) return b;
  }
  return -1;
}

void check_probe_range(const GroupChain& chain, int depth, int probeDepth) {
  if (depth < 0 || depth > chain.depth())
    precondition_error("analysis depth out of range");
  if (probeDepth < depth || probeDepth > chain.depth())
    precondition_error("probe depth must lie between the analysis depth and "
                       "the last chain level");
}

} // namespace

GroupChain make_chain(GroupContext ctx, std::vector<SubgroupData> levels,
                      std::string provenance) {
  if (levels.empty()) validation_error("chain needs at least one level");
  GroupChain c{std::move(ctx), std::move(levels), std::move(provenance)};
  if (subgroup_index(c.ctx, c.levels[0]) != 1)
    validation_error("chain must start at the whole group");
  Int prev = 1;
  for (int i = 1; i <= c.depth(); i++) {
    if (!subgroup_leq(c.ctx, c.levels[i], c.levels[i - 1]))
      validation_error("chain is not descending at level " +
                       std::to_string(i));
    Int idx = subgroup_index(c.ctx, c.levels[i]);
    if (idx <= prev)
      validation_error("chain is not proper at level " + std::to_string(i));
    prev = idx;
  }
  return c;
}

std::vector<LevelData> build_levels(const GroupChain& chain, int fqDepth,
                                    const Caps& caps, bool strict) {
  std::vector<LevelData> out;
  for (int i = 0; i <= chain.depth(); i++) {
    LevelData ld;
    ld.subgroup = chain.levels[i];
    ld.core = core_subgroup(chain.ctx, ld.subgroup);
    ld.index = subgroup_index(chain.ctx, ld.subgroup);
    ld.coreIndex = subgroup_index(chain.ctx, ld.core);
    ld.discriminantSize = ld.coreIndex / ld.index;
    if (i >= 1) {
      const LevelData& prev = out[i - 1];
      SubgroupData cap =
          intersect_subgroups(chain.ctx, ld.subgroup, prev.core);
      Int imageSize = subgroup_index(chain.ctx, cap) / ld.index;
      ld.bondingSurjective = (imageSize == prev.discriminantSize);
      ld.bondingInjective = (cap == ld.core);
    }
    if (i <= fqDepth) {
      try {
        ld.fq = finite_quotient(chain.ctx, ld.subgroup, caps);
      } catch (const ChainError& e) {
        if (e.kind() != ErrorKind::Resource || strict) throw;
        ld.capped = true;
      }
    }
    out.push_back(std::move(ld));
  }
  return out;
}

StableImage stable_images(const GroupChain& chain,
                          const std::vector<LevelData>& levels, int i,
                          int probeDepth) {
  check_probe_range(chain, i, probeDepth);
  StableImage s;
  s.sizes = image_sizes(chain, levels, i, probeDepth);
  s.plateau = sizes_plateau(s.sizes);
  if (levels[i].fq) {
    std::vector<GroupElement> gens =
        subgroup_generators(chain.ctx, chain.levels[probeDepth]);
    s.elems = subgroup_image(*levels[i].fq, gens);
    if (Int((long)s.elems.size()) != s.sizes.back())
      structural_error("stable image size disagrees with the index count");
  }
  return s;
}

std::string verdict_str(const DiscriminantVerdict& v) {
  std::ostringstream os;
  switch (v.kind) {
  case DiscriminantVerdict::Kind::Trivial:
    os << "trivial";
    break;
  case DiscriminantVerdict::Kind::Finite:
    os << "finite(" << v.size.get_str() << ") base " << v.base;
    break;
  case DiscriminantVerdict::Kind::LowerBound:
    os << "lowerBound(" << v.size.get_str() << ")";
    break;
  }
  return os.str();
}

DiscriminantVerdict discriminant_verdict(const GroupChain& chain,
                                         const std::vector<LevelData>& levels,
                                         int depth, int probeDepth) {
  check_probe_range(chain, depth, probeDepth);
  DiscriminantVerdict v;
  for (int i = 0; i <= depth; i++) {
    std::vector<Int> sizes = image_sizes(chain, levels, i, probeDepth);
    v.stableSizes.push_back(sizes.back());
    v.plateaus.push_back(sizes_plateau(sizes));
  }
  bool allTrivial = true;
  for (const Int& s : v.stableSizes) allTrivial = allTrivial && (s == 1);
  if (allTrivial) {
    v.kind = DiscriminantVerdict::Kind::Trivial;
    v.size = 1;
    return v;
  }
  // with a base level the deeper discriminants embed into the base one, so
  // the stable sizes from the base on must agree and have plateaued
  int base = base_level_search(chain, levels, depth);
  bool settled = base >= 0;
  for (int i = base; settled && i <= depth; i++)
    settled = v.stableSizes[i] == v.stableSizes[depth] && v.plateaus[i];
  if (settled) {
    v.kind = DiscriminantVerdict::Kind::Finite;
    v.size = v.stableSizes[depth];
    v.base = base;
  } else {
    v.kind = DiscriminantVerdict::Kind::LowerBound;
    v.size = *std::max_element(v.stableSizes.begin(), v.stableSizes.end());
  }
  return v;
}

bool is_normal_form(const GroupChain& chain,
                    const std::vector<LevelData>& levels, int i,
                    int probeDepth) {
  check_probe_range(chain, i, probeDepth);
  std::vector<Int> sizes = image_sizes(chain, levels, i, probeDepth);
  return sizes.back() == levels[i].discriminantSize;
}

GroupChain normal_form_transform(const GroupChain& chain,
                                 const std::vector<LevelData>& levels,
                                 int depth, int probeDepth) {
  check_probe_range(chain, depth, probeDepth);
  std::vector<SubgroupData> out;
  out.push_back(whole_group_subgroup(chain.ctx));
  for (int i = 1; i <= depth; i++) {
    if (!levels[i].fq)
      precondition_error("normal form transform needs quotient data at level " +
                         std::to_string(i));
    StableImage s = stable_images(chain, levels, i, probeDepth);
    std::vector<GroupElement> gens =
        subgroup_generators(chain.ctx, levels[i].core);
    for (int e : s.elems) gens.push_back(witness_element(*levels[i].fq, e));
    out.push_back(subgroup_from_generators(chain.ctx, gens));
  }
  return make_chain(chain.ctx, std::move(out),
                    chain.provenance + ".normal_form");
}

bool chains_equivalent(const GroupChain& a, const GroupChain& b, int depth) {
  if (a.ctx.family != b.ctx.family || a.ctx.rank != b.ctx.rank)
    structural_error("chains live in different ambient groups");
  // every level down to depth must absorb some level of the other chain; the
  // witness search may use all available levels, truncation only narrows what
  // has to be covered
  int da = std::min(depth, a.depth());
  int db = std::min(depth, b.depth());
  for (int i = 0; i <= da; i++) {
    bool found = false;
    for (int j = 0; j <= b.depth() && !found; j++)
      found = subgroup_leq(a.ctx, b.levels[j], a.levels[i]);
    if (!found) return false;
  }
  for (int j = 0; j <= db; j++) {
    bool found = false;
    for (int i = 0; i <= a.depth() && !found; i++)
      found = subgroup_leq(a.ctx, a.levels[i], b.levels[j]);
    if (!found) return false;
  }
  return true;
}

GroupChain conjugate_chain(const GroupChain& chain, const GroupElement& g) {
  std::vector<SubgroupData> out;
  for (const SubgroupData& H : chain.levels)
    out.push_back(conjugate_subgroup(chain.ctx, H, g));
  return make_chain(chain.ctx, std::move(out), chain.provenance + ".conj");
}

KernelProbe kernel_probe(const GroupChain& chain,
                         const std::vector<GroupElement>& candidates,
                         int samples, unsigned seed) {
  KernelProbe kp;
  kp.samples = samples;
  auto survives = [&](const GroupElement& g) {
    for (const SubgroupData& H : chain.levels)
      if (!contains(chain.ctx, H, g)) return false;
    return true;
  };
  for (const GroupElement& c : candidates) {
    kp.candidates.push_back(c);
    kp.candidateSurvives.push_back(survives(c));
  }
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coord(-9, 9);
  std::uniform_int_distribution<int> fin(0,
                                         chain.ctx.finitePart.size() - 1);
  std::set<std::string> seen;
  for (int s = 0; s < samples; s++) {
    GroupElement g;
    g.v.resize(chain.ctx.rank);
    for (int j = 0; j < chain.ctx.rank; j++) g.v[j] = coord(rng);
    g.f = chain.ctx.family == Family::Heisenberg ? 0 : fin(rng);
    if (vec_is_zero(g.v) && g.f == 0) continue;
    if (!survives(g)) continue;
    std::string key = elem_str(chain.ctx, g);
    if (seen.insert(key).second) kp.survivors.push_back(g);
  }
  return kp;
}

std::vector<bool> kernel_core_factorization(
    const GroupChain& chain, const std::vector<LevelData>& levels, int depth,
    const std::vector<GroupElement>& kernelGens) {
  check_probe_range(chain, depth, depth);
  std::vector<bool> out;
  for (int i = 0; i <= depth; i++) {
    std::vector<GroupElement> gens = kernelGens;
    for (const GroupElement& g :
         subgroup_generators(chain.ctx, levels[i].core))
      gens.push_back(g);
    try {
      SubgroupData H = subgroup_from_generators(chain.ctx, gens);
      out.push_back(H == chain.levels[i]);
    } catch (const ChainError& e) {
      if (e.kind() != ErrorKind::Unrepresentable) throw;
      out.push_back(false);
    }
  }
  return out;
}

RegularityFlags regularity_flags(const GroupChain& chain,
                                 const std::vector<LevelData>& levels,
                                 int depth, int probeDepth) {
  check_probe_range(chain, depth, probeDepth);
  RegularityFlags f;
  f.regular = true;
  for (const LevelData& ld : levels)
    f.regular = f.regular && (ld.discriminantSize == 1);
  for (int i0 = 0; i0 <= depth && f.weaklyNormalAtDepth < 0; i0++) {
    std::vector<GroupElement> gens =
        subgroup_generators(chain.ctx, chain.levels[i0]);
    bool ok = true;
    for (int i = i0; i <= chain.depth() && ok; i++)
      for (const GroupElement& g : gens) {
        SubgroupData conj = conjugate_subgroup(chain.ctx, chain.levels[i], g);
        if (!(conj == chain.levels[i])) {
          ok = false;
          break;
        }
      }
    if (ok) f.weaklyNormalAtDepth = i0;
  }
  int base = base_level_search(chain, levels, depth);
  if (base >= 0) f.virtuallyRegularBase = base;
  f.normalFormAll = true;
  for (int i = 0; i <= depth; i++) {
    bool nf = is_normal_form(chain, levels, i, probeDepth);
    f.normalFormAt.push_back(nf);
    f.normalFormAll = f.normalFormAll && nf;
  }
  return f;
}

Int normalizer_index_level(const GroupChain& chain,
                           const std::vector<LevelData>& levels, int i) {
  check_probe_range(chain, i, i);
  if (!levels[i].fq)
    precondition_error("normalizer index needs quotient data at level " +
                       std::to_string(i));
  const FiniteQuotient& fq = *levels[i].fq;
  std::set<int> stab(fq.basepointStabilizer.begin(),
                     fq.basepointStabilizer.end());
  long count = 0;
  for (const std::vector<int>& p : fq.elements) {
    std::vector<int> pinv = perm_inverse(p);
    std::set<int> conj;
    for (int s : stab)
      conj.insert(
          fq.element_index(perm_compose(p, perm_compose(fq.elements[s], pinv))));
    if (conj == stab) count++;
  }
  Int order((long)fq.elements.size());
  if (order % count != 0)
    structural_error("normalizer count does not divide the quotient order");
  return order / count;
}

ChainReport analyze_chain(const GroupChain& chain, int depth, int probeDepth,
                          const Caps& caps, const AnalyzeOptions& opt) {
  check_probe_range(chain, depth, probeDepth);
  std::vector<LevelData> levels = build_levels(chain, depth, caps, opt.strict);
  ChainReport r;
  r.name = chain.provenance;
  r.family =
      chain.ctx.family == Family::Heisenberg ? "heisenberg" : "lattice";
  r.depth = depth;
  r.probeDepth = probeDepth;
  r.verdict = discriminant_verdict(chain, levels, depth, probeDepth);
  r.flags = regularity_flags(chain, levels, depth, probeDepth);
  for (int i = 0; i <= depth; i++) {
    LevelReport lr;
    lr.level = i;
    lr.index = levels[i].index;
    lr.coreIndex = levels[i].coreIndex;
    lr.discriminantSize = levels[i].discriminantSize;
    lr.stableSize = r.verdict.stableSizes[i];
    lr.plateau = r.verdict.plateaus[i];
    lr.normalForm = r.flags.normalFormAt[i];
    lr.bondingSurjective = levels[i].bondingSurjective;
    lr.bondingInjective = levels[i].bondingInjective;
    lr.capped = levels[i].capped;
    r.anyCapped = r.anyCapped || lr.capped;
    r.levels.push_back(lr);
  }
  if (opt.kernelGens) {
    r.factorizationChecked = true;
    r.factorizationAt =
        kernel_core_factorization(chain, levels, depth, *opt.kernelGens);
    r.kernel = kernel_probe(chain, *opt.kernelGens, opt.kernelSamples,
                            opt.kernelSeed);
  } else if (opt.kernelSamples > 0) {
    r.kernel = kernel_probe(chain, {}, opt.kernelSamples, opt.kernelSeed);
  }
  return r;
}

} // namespace chaincalc
