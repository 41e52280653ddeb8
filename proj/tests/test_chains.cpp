#include "doctest.h"

#include "chaincalc/chains.hpp"
#include "chaincalc/errors.hpp"

#include <functional>

using namespace chaincalc;

namespace {

GroupContext dihedral_ctx() {
  Mat flip = {{Int(-1)}};
  GroupContext ctx =
      make_lattice_context(1, builtin_finite_group("z2"), {flip});
  set_generators(ctx, {"a", "b"},
                 {GroupElement{{Int(1)}, 0}, GroupElement{{Int(0)}, 1}});
  return ctx;
}

GroupContext swap_ctx() {
  Mat swp = {{Int(0), Int(1)}, {Int(1), Int(0)}};
  return make_lattice_context(2, builtin_finite_group("z2"), {swp});
}

GroupContext product_ctx() {
  Mat one = {{Int(1)}};
  return make_lattice_context(1, builtin_finite_group("a5"), {one, one});
}

Int ipow(long b, int e) {
  Int r = 1;
  for (int k = 0; k < e; k++) r *= b;
  return r;
}

GroupChain dihedral_chain(const GroupContext& ctx, int n) {
  std::vector<SubgroupData> levels;
  for (int i = 0; i <= n; i++)
    levels.push_back(make_lattice_subgroup(ctx, {{ipow(2, i)}}, {0, 1},
                                           {{Int(0)}, {Int(0)}}));
  return make_chain(ctx, levels, "dihedral");
}

GroupChain product_chain(const GroupContext& ctx, int n) {
  std::vector<int> a4 = builtin_subgroup(ctx.finitePart, "a4");
  std::vector<SubgroupData> levels{whole_group_subgroup(ctx)};
  for (int i = 1; i <= n; i++)
    levels.push_back(make_lattice_subgroup(
        ctx, {{ipow(3, i)}}, a4,
        std::vector<Vec>(a4.size(), Vec{Int(0)})));
  return make_chain(ctx, levels, "product");
}

GroupChain heis_wr_chain(const GroupContext& ctx, int n) {
  std::vector<SubgroupData> levels{whole_group_subgroup(ctx)};
  for (int k = 1; k <= n; k++) {
    Mat M = {{3 * ipow(2, k), ipow(2, k + 1)}, {2 * ipow(3, k), ipow(3, k + 1)}};
    levels.push_back(make_heisenberg_subgroup(M, 2));
  }
  return make_chain(ctx, levels, "heis-wr");
}

GroupChain heis_diag_chain(const GroupContext& ctx, int n) {
  std::vector<SubgroupData> levels;
  for (int k = 0; k <= n; k++) {
    Mat M = {{ipow(2, k), Int(0)}, {Int(0), ipow(3, k)}};
    levels.push_back(make_heisenberg_subgroup(M, ipow(2, k)));
  }
  return make_chain(ctx, levels, "heis-diag");
}

GroupChain swap_chain(const GroupContext& ctx, int n) {
  std::vector<SubgroupData> levels{whole_group_subgroup(ctx)};
  for (int i = 1; i <= n; i++) {
    Mat L = {{ipow(2, i), Int(0)}, {Int(0), ipow(3, i)}};
    levels.push_back(make_lattice_subgroup(ctx, L, {0}, {{Int(0), Int(0)}}));
  }
  return make_chain(ctx, levels, "dihedral-swap");
}

bool throws_kind(ErrorKind kind, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ChainError& e) {
    return e.kind() == kind;
  } catch (...) {
    return false;
  }
  return false;
}

} // namespace

TEST_CASE("chain construction validates shape") {
  GroupContext ctx = dihedral_ctx();
  SubgroupData whole = whole_group_subgroup(ctx);
  SubgroupData g1 =
      make_lattice_subgroup(ctx, {{Int(2)}}, {0, 1}, {{Int(0)}, {Int(0)}});
  SubgroupData g2 =
      make_lattice_subgroup(ctx, {{Int(4)}}, {0, 1}, {{Int(0)}, {Int(0)}});
  SubgroupData shifted =
      make_lattice_subgroup(ctx, {{Int(4)}}, {0, 1}, {{Int(0)}, {Int(2)}});

  CHECK(make_chain(ctx, {whole, g1, g2}, "ok").depth() == 2);
  CHECK(throws_kind(ErrorKind::Validation,
                    [&] { make_chain(ctx, {}, "empty"); }));
  CHECK(throws_kind(ErrorKind::Validation,
                    [&] { make_chain(ctx, {g1, g2}, "not whole"); }));
  CHECK(throws_kind(ErrorKind::Validation,
                    [&] { make_chain(ctx, {whole, g2, g1}, "ascending"); }));
  CHECK(throws_kind(ErrorKind::Validation,
                    [&] { make_chain(ctx, {whole, g1, g1}, "repeat"); }));
  // shifted is not below g1 even though its index is larger
  CHECK(throws_kind(ErrorKind::Validation, [&] {
    make_chain(ctx, {whole, shifted, g2}, "sideways");
  }));
}

TEST_CASE("dihedral levels carry the expected arithmetic") {
  GroupContext ctx = dihedral_ctx();
  GroupChain chain = dihedral_chain(ctx, 8);
  std::vector<LevelData> levels = build_levels(chain, 6, default_caps(), false);

  REQUIRE(levels.size() == 9);
  for (int i = 0; i <= 8; i++) {
    CHECK(levels[i].index == ipow(2, i));
    CHECK_FALSE(levels[i].capped);
  }
  // level 1 is normal, deeper cores drop the reflection and double the step
  CHECK(levels[1].discriminantSize == 1);
  CHECK(levels[1].core == chain.levels[1]);
  for (int i = 2; i <= 8; i++) {
    CHECK(levels[i].coreIndex == ipow(2, i + 1));
    CHECK(levels[i].discriminantSize == 2);
    CHECK(levels[i].core ==
          make_lattice_subgroup(ctx, {{ipow(2, i)}}, {0}, {{Int(0)}}));
  }
  for (int i = 0; i <= 6; i++) CHECK(levels[i].fq.has_value());
  CHECK_FALSE(levels[7].fq.has_value());

  // the bonding map collapses at level 2 and is injective afterwards
  CHECK(levels[1].bondingInjective);
  CHECK(levels[2].bondingSurjective);
  CHECK_FALSE(levels[2].bondingInjective);
  for (int i = 3; i <= 8; i++) {
    CHECK(levels[i].bondingSurjective);
    CHECK(levels[i].bondingInjective);
  }
}

TEST_CASE("dihedral stable images and verdict") {
  GroupContext ctx = dihedral_ctx();
  GroupChain chain = dihedral_chain(ctx, 8);
  std::vector<LevelData> levels = build_levels(chain, 6, default_caps(), false);

  StableImage s3 = stable_images(chain, levels, 3, 8);
  REQUIRE(s3.sizes.size() == 6);
  for (const Int& sz : s3.sizes) CHECK(sz == 2);
  CHECK(s3.plateau);
  REQUIRE(s3.elems.size() == 2);
  CHECK(s3.elems[0] == 0);
  std::vector<int> flip =
      permutation_rep(levels[3].fq->table, parse_elem(ctx, "(0;t)"));
  CHECK(s3.elems[1] == levels[3].fq->element_index(flip));

  DiscriminantVerdict v = discriminant_verdict(chain, levels, 6, 8);
  CHECK(v.kind == DiscriminantVerdict::Kind::Finite);
  CHECK(v.size == 2);
  CHECK(v.base == 2);
  CHECK(v.stableSizes ==
        std::vector<Int>{1, 1, 2, 2, 2, 2, 2});
  CHECK(verdict_str(v) == "finite(2) base 2");

  RegularityFlags f = regularity_flags(chain, levels, 6, 8);
  CHECK_FALSE(f.regular);
  CHECK(f.weaklyNormalAtDepth == -1);
  REQUIRE(f.virtuallyRegularBase.has_value());
  CHECK(*f.virtuallyRegularBase == 2);
  CHECK(f.normalFormAll);

  CHECK(normalizer_index_level(chain, levels, 2) == 2);
}

TEST_CASE("dihedral kernel probes and conjugate chain") {
  GroupContext ctx = dihedral_ctx();
  GroupChain chain = dihedral_chain(ctx, 8);
  std::vector<LevelData> levels = build_levels(chain, 6, default_caps(), false);

  GroupElement b = parse_elem(ctx, "(0;t)");
  GroupElement aab = parse_elem(ctx, "(2;t)");
  KernelProbe kp = kernel_probe(chain, {b, aab}, 200, 7);
  CHECK(kp.candidateSurvives == std::vector<bool>{true, false});
  for (const GroupElement& g : kp.survivors) {
    CHECK(vec_is_zero(g.v));
    CHECK(g.f == 1);
  }

  CHECK(kernel_core_factorization(chain, levels, 6, {b}) ==
        std::vector<bool>(7, true));

  GroupChain conj = conjugate_chain(chain, parse_elem(ctx, "(1;e)"));
  CHECK(conj.levels[1].trans[1] == Vec{Int(0)});
  for (int i = 2; i <= 8; i++) CHECK(conj.levels[i].trans[1] == Vec{Int(2)});
  KernelProbe kc = kernel_probe(conj, {b, aab}, 200, 7);
  CHECK(kc.candidateSurvives == std::vector<bool>{false, true});

  CHECK(chains_equivalent(chain, chain, 6));
  // the same filtration sampled at even depths interleaves with the original
  GroupChain coarse = make_chain(
      ctx, {chain.levels[0], chain.levels[2], chain.levels[4], chain.levels[6],
            chain.levels[8]},
      "coarse");
  CHECK(chains_equivalent(chain, coarse, 4));
  CHECK_FALSE(chains_equivalent(chain, conj, 6));
}

TEST_CASE("product chain over the alternating group") {
  GroupContext ctx = product_ctx();
  GroupChain chain = product_chain(ctx, 5);
  std::vector<LevelData> levels = build_levels(chain, 1, default_caps(), false);

  for (int i = 1; i <= 5; i++) {
    CHECK(levels[i].index == 5 * ipow(3, i));
    CHECK(levels[i].coreIndex == 60 * ipow(3, i));
    CHECK(levels[i].discriminantSize == 12);
    CHECK(levels[i].bondingSurjective);
  }
  // level 1 maps onto the trivial top discriminant, so only deeper bonding
  // maps are injective
  CHECK_FALSE(levels[1].bondingInjective);
  for (int i = 2; i <= 5; i++) CHECK(levels[i].bondingInjective);

  DiscriminantVerdict v = discriminant_verdict(chain, levels, 3, 5);
  CHECK(v.kind == DiscriminantVerdict::Kind::Finite);
  CHECK(v.size == 12);
  CHECK(v.base == 1);

  RegularityFlags f = regularity_flags(chain, levels, 3, 5);
  CHECK_FALSE(f.regular);
  CHECK(f.weaklyNormalAtDepth == 1);
  CHECK(f.normalFormAll);

  CHECK(normalizer_index_level(chain, levels, 1) == 5);

  // the point stabilizer part survives to the bottom and splits every level
  std::vector<int> a4 = builtin_subgroup(ctx.finitePart, "a4");
  std::vector<GroupElement> kgens;
  for (int g : fg_generating_set(ctx.finitePart, a4))
    kgens.push_back(GroupElement{{Int(0)}, g});
  KernelProbe kp = kernel_probe(chain, kgens, 0, 1);
  for (bool s : kp.candidateSurvives) CHECK(s);
  CHECK(kernel_core_factorization(chain, levels, 3, kgens) ==
        std::vector<bool>(4, true));
}

TEST_CASE("twisted product chain with constant discriminant") {
  GroupContext ctx = make_heisenberg_context();
  GroupChain chain = heis_wr_chain(ctx, 5);
  std::vector<LevelData> levels = build_levels(chain, 1, default_caps(), false);

  CHECK(levels[1].index == 60);
  CHECK(levels[2].index == 360);
  CHECK(levels[3].index == 2160);
  CHECK(levels[1].coreIndex == 120);
  CHECK(levels[2].coreIndex == 720);
  CHECK(levels[3].coreIndex == 4320);
  for (int i = 1; i <= 3; i++) {
    CHECK(levels[i].discriminantSize == 2);
    CHECK(heisenberg_row_divisibility(chain.levels[i].M, chain.levels[i].m));
  }
  CHECK(levels[2].bondingSurjective);
  CHECK(levels[2].bondingInjective);

  StableImage s1 = stable_images(chain, levels, 1, 5);
  for (const Int& sz : s1.sizes) CHECK(sz == 2);
  CHECK(s1.plateau);
  REQUIRE(s1.elems.size() == 2);
  std::vector<int> gen =
      permutation_rep(levels[1].fq->table, parse_elem(ctx, "(0,5,0)"));
  CHECK(s1.elems[1] == levels[1].fq->element_index(gen));

  DiscriminantVerdict v = discriminant_verdict(chain, levels, 3, 5);
  CHECK(v.kind == DiscriminantVerdict::Kind::Finite);
  CHECK(v.size == 2);
  CHECK(v.base == 1);

  RegularityFlags f = regularity_flags(chain, levels, 3, 5);
  CHECK(f.weaklyNormalAtDepth == 1);
  CHECK(f.normalFormAll);

  // the center meets every level but does not split any of them
  GroupElement z2 = parse_elem(ctx, "(0,0,2)");
  GroupElement z1 = parse_elem(ctx, "(0,0,1)");
  KernelProbe kp = kernel_probe(chain, {z2, z1}, 0, 1);
  CHECK(kp.candidateSurvives == std::vector<bool>{true, false});
  std::vector<bool> fact = kernel_core_factorization(chain, levels, 3, {z2});
  CHECK(fact[0]);
  CHECK_FALSE(fact[1]);
  CHECK_FALSE(fact[2]);
  CHECK_FALSE(fact[3]);
}

TEST_CASE("diagonal twisted chain grows without bound") {
  GroupContext ctx = make_heisenberg_context();
  GroupChain chain = heis_diag_chain(ctx, 4);
  std::vector<LevelData> levels = build_levels(chain, 2, default_caps(), false);

  for (int n = 0; n <= 4; n++) {
    CHECK(levels[n].index == ipow(12, n));
    CHECK(levels[n].coreIndex == ipow(24, n));
    CHECK(levels[n].discriminantSize == ipow(2, n));
  }

  DiscriminantVerdict v = discriminant_verdict(chain, levels, 2, 4);
  CHECK(v.kind == DiscriminantVerdict::Kind::LowerBound);
  CHECK(v.size == 4);
  CHECK(v.stableSizes == std::vector<Int>{1, 2, 4});
  CHECK(verdict_str(v) == "lowerBound(4)");

  RegularityFlags f = regularity_flags(chain, levels, 2, 4);
  CHECK_FALSE(f.regular);
  CHECK(f.weaklyNormalAtDepth == -1);
  CHECK_FALSE(f.virtuallyRegularBase.has_value());
  // the whole discriminant is stable at every level even though it grows
  CHECK(f.normalFormAll);

  KernelProbe kp = kernel_probe(chain, {}, 100, 99);
  CHECK(kp.survivors.empty());
}

TEST_CASE("swap action chain with growing discriminant") {
  GroupContext ctx = swap_ctx();
  GroupChain chain = swap_chain(ctx, 4);
  std::vector<LevelData> levels = build_levels(chain, 2, default_caps(), false);

  CHECK(levels[1].index == 12);
  CHECK(levels[2].index == 72);
  CHECK(levels[1].coreIndex == 72);
  CHECK(levels[2].coreIndex == 2592);
  CHECK(levels[1].discriminantSize == 6);
  CHECK(levels[2].discriminantSize == 36);
  CHECK(levels[1].core == make_lattice_subgroup(ctx, {{Int(6), Int(0)}, {Int(0), Int(6)}},
                                                {0}, {{Int(0), Int(0)}}));

  CHECK(levels[1].bondingSurjective);
  CHECK(levels[2].bondingSurjective);
  CHECK_FALSE(levels[2].bondingInjective);

  DiscriminantVerdict v = discriminant_verdict(chain, levels, 2, 4);
  CHECK(v.kind == DiscriminantVerdict::Kind::LowerBound);
  CHECK(v.size == 36);

  RegularityFlags f = regularity_flags(chain, levels, 2, 4);
  CHECK_FALSE(f.regular);
  CHECK(f.weaklyNormalAtDepth == 1);
  CHECK_FALSE(f.virtuallyRegularBase.has_value());

  // trivial kernel: no level above the bottom splits as kernel times core
  std::vector<bool> fact = kernel_core_factorization(chain, levels, 2, {});
  CHECK(fact == std::vector<bool>{true, false, false});
}

TEST_CASE("normal form transform rebuilds stable preimages") {
  GroupContext ctx = dihedral_ctx();

  GroupChain chain = dihedral_chain(ctx, 8);
  std::vector<LevelData> levels = build_levels(chain, 6, default_caps(), false);
  GroupChain same = normal_form_transform(chain, levels, 6, 8);
  for (int i = 0; i <= 6; i++) CHECK(same.levels[i] == chain.levels[i]);

  // a chain whose middle level sees only half of its discriminant survive
  SubgroupData g1 =
      make_lattice_subgroup(ctx, {{Int(2)}}, {0, 1}, {{Int(0)}, {Int(0)}});
  SubgroupData g2 =
      make_lattice_subgroup(ctx, {{Int(8)}}, {0, 1}, {{Int(0)}, {Int(0)}});
  SubgroupData g3 = make_lattice_subgroup(ctx, {{Int(16)}}, {0}, {{Int(0)}});
  GroupChain mixed = make_chain(
      ctx, {whole_group_subgroup(ctx), g1, g2, g3}, "mixed");
  std::vector<LevelData> ml = build_levels(mixed, 3, default_caps(), false);
  CHECK(ml[2].discriminantSize == 2);
  CHECK_FALSE(is_normal_form(mixed, ml, 2, 3));

  GroupChain nf = normal_form_transform(mixed, ml, 3, 3);
  CHECK(nf.levels[1] == g1);
  CHECK(nf.levels[2] ==
        make_lattice_subgroup(ctx, {{Int(8)}}, {0}, {{Int(0)}}));
  CHECK(nf.levels[3] == g3);

  std::vector<LevelData> nl = build_levels(nf, 3, default_caps(), false);
  RegularityFlags f = regularity_flags(nf, nl, 3, 3);
  CHECK(f.regular);
  CHECK(f.weaklyNormalAtDepth == 0);
  DiscriminantVerdict v = discriminant_verdict(nf, nl, 3, 3);
  CHECK(v.kind == DiscriminantVerdict::Kind::Trivial);
}

TEST_CASE("level caps degrade or fail according to mode") {
  GroupContext ctx = dihedral_ctx();
  GroupChain chain = dihedral_chain(ctx, 3);
  Caps tight = default_caps();
  tight.permCap = 7;

  CHECK(throws_kind(ErrorKind::Resource,
                    [&] { build_levels(chain, 3, tight, true); }));

  std::vector<LevelData> levels = build_levels(chain, 3, tight, false);
  CHECK_FALSE(levels[1].capped);
  CHECK(levels[1].fq.has_value());
  CHECK(levels[2].capped);
  CHECK_FALSE(levels[2].fq.has_value());
  CHECK(levels[3].capped);
  // arithmetic survives the cap
  CHECK(levels[3].coreIndex == 16);
  CHECK(levels[3].discriminantSize == 2);

  CHECK(throws_kind(ErrorKind::Precondition,
                    [&] { normalizer_index_level(chain, levels, 2); }));
  CHECK(throws_kind(ErrorKind::Precondition,
                    [&] { normal_form_transform(chain, levels, 3, 3); }));
}

TEST_CASE("cross family comparison is rejected") {
  GroupContext d = dihedral_ctx();
  GroupContext h = make_heisenberg_context();
  GroupChain cd = dihedral_chain(d, 2);
  GroupChain ch = heis_diag_chain(h, 2);
  CHECK(throws_kind(ErrorKind::Structural,
                    [&] { chains_equivalent(cd, ch, 2); }));
}

TEST_CASE("full analysis report for the dihedral chain") {
  GroupContext ctx = dihedral_ctx();
  GroupChain chain = dihedral_chain(ctx, 8);
  AnalyzeOptions opt;
  opt.kernelGens = {parse_elem(ctx, "(0;t)")};
  opt.kernelSamples = 50;
  ChainReport r = analyze_chain(chain, 6, 8, default_caps(), opt);

  CHECK(r.name == "dihedral");
  CHECK(r.family == "lattice");
  CHECK(r.depth == 6);
  CHECK(r.probeDepth == 8);
  REQUIRE(r.levels.size() == 7);
  for (int i = 0; i <= 6; i++) {
    CHECK(r.levels[i].level == i);
    CHECK(r.levels[i].index == ipow(2, i));
    CHECK(r.levels[i].normalForm);
    CHECK_FALSE(r.levels[i].capped);
  }
  CHECK(r.levels[6].stableSize == 2);
  CHECK(r.verdict.kind == DiscriminantVerdict::Kind::Finite);
  CHECK(r.flags.weaklyNormalAtDepth == -1);
  CHECK(r.factorizationChecked);
  CHECK(r.factorizationAt == std::vector<bool>(7, true));
  CHECK(r.kernel.candidateSurvives == std::vector<bool>{true});
  CHECK_FALSE(r.anyCapped);
}
