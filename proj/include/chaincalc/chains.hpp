#pragma once

#include "chaincalc/cosets.hpp"

#include <optional>
#include <string>
#include <vector>

namespace chaincalc {

// Descending chain G = levels[0] > levels[1] > ... inside one ambient group.
// Levels beyond the analysis depth serve as probe material for limits.
struct GroupChain {
  GroupContext ctx;
  std::vector<SubgroupData> levels;
  std::string provenance;

  int depth() const { return (int)levels.size() - 1; }
};

GroupChain make_chain(GroupContext ctx, std::vector<SubgroupData> levels,
                      std::string provenance);

// Arithmetic data per level, with the quotient permutation action attached
// when it fits under the caps.
struct LevelData {
  SubgroupData subgroup;
  SubgroupData core;
  Int index;
  Int coreIndex;
  Int discriminantSize;
  bool bondingSurjective = true;
  bool bondingInjective = true;
  bool capped = false;
  std::optional<FiniteQuotient> fq;
};

// Data for every chain level; permutation quotients are attempted only up to
// fqDepth. strict rethrows a Resource overflow, otherwise the level is marked
// capped and keeps its arithmetic fields.
std::vector<LevelData> build_levels(const GroupChain& chain, int fqDepth,
                                    const Caps& caps, bool strict);

// Image of the deepest probed level in the discriminant at level i, with the
// whole size history [G_n : G_n cap C_i] for n = i..probeDepth.
struct StableImage {
  std::vector<Int> sizes;
  bool plateau = false;
  std::vector<int> elems;
};

StableImage stable_images(const GroupChain& chain,
                          const std::vector<LevelData>& levels, int i,
                          int probeDepth);

struct DiscriminantVerdict {
  enum class Kind { Finite, LowerBound, Trivial };
  Kind kind = Kind::Trivial;
  Int size = 1;
  int base = -1;
  std::vector<Int> stableSizes;
  std::vector<bool> plateaus;
};

std::string verdict_str(const DiscriminantVerdict& v);

DiscriminantVerdict discriminant_verdict(const GroupChain& chain,
                                         const std::vector<LevelData>& levels,
                                         int depth, int probeDepth);

// Whether the stable image fills the whole discriminant at level i.
bool is_normal_form(const GroupChain& chain,
                    const std::vector<LevelData>& levels, int i,
                    int probeDepth);

// Replace each level by the preimage of its stable image: core generators
// plus one witness per stable image element. Needs quotient data everywhere.
GroupChain normal_form_transform(const GroupChain& chain,
                                 const std::vector<LevelData>& levels,
                                 int depth, int probeDepth);

// Mutual interleaving of the two chains, using levels up to depth on both
// sides: every level of one contains some level of the other.
bool chains_equivalent(const GroupChain& a, const GroupChain& b, int depth);

GroupChain conjugate_chain(const GroupChain& chain, const GroupElement& g);

// Membership probes into the intersection of all chain levels: explicit
// candidates checked exactly, plus seeded sampling from a coordinate box.
struct KernelProbe {
  int samples = 0;
  std::vector<GroupElement> survivors;
  std::vector<GroupElement> candidates;
  std::vector<bool> candidateSurvives;
};

KernelProbe kernel_probe(const GroupChain& chain,
                         const std::vector<GroupElement>& candidates,
                         int samples, unsigned seed);

// Per level, whether the level splits as (claimed kernel) * core.
std::vector<bool> kernel_core_factorization(
    const GroupChain& chain, const std::vector<LevelData>& levels, int depth,
    const std::vector<GroupElement>& kernelGens);

struct RegularityFlags {
  bool regular = false;
  int weaklyNormalAtDepth = -1;
  std::optional<int> virtuallyRegularBase;
  std::vector<bool> normalFormAt;
  bool normalFormAll = false;
};

RegularityFlags regularity_flags(const GroupChain& chain,
                                 const std::vector<LevelData>& levels,
                                 int depth, int probeDepth);

// Index of the normalizer of level i in the whole group.
Int normalizer_index_level(const GroupChain& chain,
                           const std::vector<LevelData>& levels, int i);

struct LevelReport {
  int level = 0;
  Int index;
  Int coreIndex;
  Int discriminantSize;
  Int stableSize;
  bool plateau = false;
  bool normalForm = false;
  bool bondingSurjective = true;
  bool bondingInjective = true;
  bool capped = false;
};

struct ChainReport {
  std::string name;
  std::string family;
  int depth = 0;
  int probeDepth = 0;
  std::vector<LevelReport> levels;
  DiscriminantVerdict verdict;
  RegularityFlags flags;
  bool factorizationChecked = false;
  std::vector<bool> factorizationAt;
  KernelProbe kernel;
  bool anyCapped = false;
};

struct AnalyzeOptions {
  bool strict = false;
  std::optional<std::vector<GroupElement>> kernelGens;
  int kernelSamples = 0;
  unsigned kernelSeed = 12345;
};

ChainReport analyze_chain(const GroupChain& chain, int depth, int probeDepth,
                          const Caps& caps, const AnalyzeOptions& opt);

} // namespace chaincalc
