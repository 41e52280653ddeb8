#include "chaincalc/group.hpp"

#include "chaincalc/errors.hpp"
#include "doctest.h"

#include <functional>
#include <random>

using namespace chaincalc;

namespace {

std::mt19937 rng(0x9e0437u);

Int rand_int(long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  return Int(d(rng));
}

int rand_idx(int n) {
  std::uniform_int_distribution<int> d(0, n - 1);
  return d(rng);
}

// Infinite dihedral group: Z x| Z/2 with the flip action.
GroupContext dihedral_ctx() {
  return make_lattice_context(1, builtin_finite_group("z2"), {{{-1}}});
}

// Z^2 x| Z/2 with the coordinate swap action.
GroupContext swap_ctx() {
  return make_lattice_context(2, builtin_finite_group("z2"),
                              {{{0, 1}, {1, 0}}});
}

GroupElement rand_elem(const GroupContext& ctx) {
  GroupElement g;
  for (int i = 0; i < ctx.rank; i++) g.v.push_back(rand_int(-9, 9));
  if (ctx.family == Family::LatticeSemidirect)
    g.f = rand_idx(ctx.finitePart.size());
  return g;
}

GroupElement rand_member([[maybe_unused]] const GroupContext& ctx,
                         const SubgroupData& H) {
  if (H.family == Family::Heisenberg) {
    Vec s = {rand_int(-4, 4), rand_int(-4, 4)};
    GroupElement g;
    Vec xy = mat_vec(H.M, s);
    g.v = {xy[0], xy[1],
           H.twist[0] * s[0] + H.twist[1] * s[1] + H.m * rand_int(-3, 3)};
    return g;
  }
  int pos = rand_idx((int)H.K.size());
  Vec s;
  for (size_t j = 0; j < H.L.size(); j++) s.push_back(rand_int(-4, 4));
  GroupElement g;
  g.v = vec_add(H.trans[pos], mat_vec(H.L, s));
  g.f = H.K[pos];
  return g;
}

SubgroupData rand_dihedral_subgroup(const GroupContext& ctx) {
  Int d = rand_int(1, 6);
  if (rand_idx(2) == 0) return make_lattice_subgroup(ctx, {{d}}, {0}, {{0}});
  return make_lattice_subgroup(ctx, {{d}}, {0, 1}, {{0}, {rand_int(-5, 5)}});
}

SubgroupData rand_swap_subgroup(const GroupContext& ctx) {
  if (rand_idx(2) == 0) {
    for (;;) {
      Mat L = {{rand_int(-4, 4), rand_int(-4, 4)},
               {rand_int(-4, 4), rand_int(-4, 4)}};
      if (det(L) != 0)
        return make_lattice_subgroup(ctx, L, {0}, {{0, 0}});
    }
  }
  for (;;) {
    Int a = rand_int(-4, 4), b = rand_int(-4, 4);
    Mat L = {{a, b}, {b, a}};
    if (det(L) == 0) continue;
    Int c = rand_int(-5, 5);
    return make_lattice_subgroup(ctx, L, {0, 1}, {{0, 0}, {c, -c}});
  }
}

SubgroupData rand_heis_subgroup() {
  for (;;) {
    Mat M = {{rand_int(-3, 3), rand_int(-3, 3)},
             {rand_int(-3, 3), rand_int(-3, 3)}};
    if (det(M) == 0) continue;
    Mat H = hnf(M);
    Int prod = gcd(H[0][0], H[1][0]) * gcd(H[0][1], H[1][1]);
    std::vector<Int> divisors;
    for (Int m = 1; m <= prod; m++)
      if (prod % m == 0) divisors.push_back(m);
    Int m = divisors[rand_idx((int)divisors.size())];
    Vec twist = {rand_int(0, 20) % m, rand_int(0, 20) % m};
    return make_heisenberg_subgroup(M, m, twist);
  }
}

GroupElement eval_word(const GroupContext& ctx,
                       const std::vector<WordFactor>& word) {
  GroupElement g = identity(ctx);
  for (const WordFactor& wf : word)
    g = multiply(ctx, g, elem_pow(ctx, ctx.generators[wf.gen], wf.exp));
  return g;
}

bool throws_kind(ErrorKind kind, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ChainError& e) {
    return e.kind() == kind;
  }
  return false;
}

} // namespace

TEST_CASE("heisenberg multiplication and inverse follow the twisted rule") {
  GroupContext h = make_heisenberg_context();
  GroupElement x = parse_elem(h, "(1,0,0)");
  GroupElement y = parse_elem(h, "(0,1,0)");
  CHECK(multiply(h, x, y) == parse_elem(h, "(1,1,1)"));
  CHECK(multiply(h, y, x) == parse_elem(h, "(1,1,0)"));
  CHECK(inverse(h, parse_elem(h, "(1,1,1)")) == parse_elem(h, "(-1,-1,0)"));
  for (int t = 0; t < 200; t++) {
    GroupElement a = rand_elem(h), b = rand_elem(h), c = rand_elem(h);
    CHECK(multiply(h, multiply(h, a, b), c) ==
          multiply(h, a, multiply(h, b, c)));
    CHECK(is_identity(h, multiply(h, a, inverse(h, a))));
    CHECK(is_identity(h, multiply(h, inverse(h, a), a)));
    GroupElement conj = conjugate_elem(h, b, a);
    CHECK(conj.v[0] == b.v[0]);
    CHECK(conj.v[1] == b.v[1]);
    CHECK(conj.v[2] == b.v[2] + a.v[0] * b.v[1] - a.v[1] * b.v[0]);
  }
}

TEST_CASE("lattice semidirect product multiplies through the action") {
  GroupContext d = dihedral_ctx();
  GroupElement a = parse_elem(d, "(1;e)");
  GroupElement b = parse_elem(d, "(0;t)");
  CHECK(multiply(d, b, a) == parse_elem(d, "(-1;t)"));
  CHECK(is_identity(d, multiply(d, multiply(d, a, b), multiply(d, a, b))));
  CHECK(inverse(d, parse_elem(d, "(3;t)")) == parse_elem(d, "(3;t)"));
  GroupContext s = swap_ctx();
  CHECK(multiply(s, parse_elem(s, "(1,2;t)"), parse_elem(s, "(3,4;e)")) ==
        parse_elem(s, "(5,5;t)"));
  for (int t = 0; t < 200; t++) {
    GroupContext& ctx = t % 2 ? d : s;
    GroupElement u = rand_elem(ctx), v = rand_elem(ctx), w = rand_elem(ctx);
    CHECK(multiply(ctx, multiply(ctx, u, v), w) ==
          multiply(ctx, u, multiply(ctx, v, w)));
    CHECK(is_identity(ctx, multiply(ctx, u, inverse(ctx, u))));
    CHECK(elem_pow(ctx, u, 3) ==
          multiply(ctx, u, multiply(ctx, u, u)));
    CHECK(elem_pow(ctx, u, -2) ==
          inverse(ctx, multiply(ctx, u, u)));
  }
}

TEST_CASE("context validation rejects incoherent actions") {
  CHECK(throws_kind(ErrorKind::Validation, [] {
    make_lattice_context(1, builtin_finite_group("z3"), {{{-1}}});
  }));
  CHECK(throws_kind(ErrorKind::Validation, [] {
    make_lattice_context(2, builtin_finite_group("z2"),
                         {{{1, 0}, {1, 1}}});
  }));
  CHECK(throws_kind(ErrorKind::Validation, [] {
    make_lattice_context(1, builtin_finite_group("z2"), {{{2}}});
  }));
  CHECK(throws_kind(ErrorKind::Validation, [] {
    make_lattice_context(1, builtin_finite_group("z2"), {});
  }));
  // Permutation actions assemble fine for nonabelian finite parts.
  GroupContext g = make_lattice_context(
      3, builtin_finite_group("s3"),
      {{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}});
  CHECK(g.action.size() == 6);
  for (const Mat& a : g.action) CHECK(det_abs(a) == 1);
}

TEST_CASE("element parsing round-trips printing and rejects junk") {
  GroupContext d = dihedral_ctx();
  GroupContext h = make_heisenberg_context();
  for (int t = 0; t < 50; t++) {
    GroupElement g = rand_elem(d);
    CHECK(parse_elem(d, elem_str(d, g)) == g);
    GroupElement k = rand_elem(h);
    CHECK(parse_elem(h, elem_str(h, k)) == k);
  }
  CHECK(throws_kind(ErrorKind::Validation, [&] { parse_elem(d, "(1)"); }));
  CHECK(throws_kind(ErrorKind::Validation, [&] { parse_elem(d, "(1;q)"); }));
  CHECK(throws_kind(ErrorKind::Validation, [&] { parse_elem(h, "(1,2)"); }));
  CHECK(throws_kind(ErrorKind::Validation, [&] { parse_elem(h, "1,2,3"); }));
  CHECK(throws_kind(ErrorKind::Validation, [&] { parse_elem(h, "(1,x,3)"); }));
}

TEST_CASE("lattice subgroup validation enforces invariance and closure") {
  GroupContext d = dihedral_ctx();
  SubgroupData g2 = make_lattice_subgroup(d, {{4}}, {0, 1}, {{0}, {0}});
  CHECK(subgroup_index(d, g2) == 4);
  CHECK(contains(d, g2, parse_elem(d, "(4;e)")));
  CHECK(contains(d, g2, parse_elem(d, "(0;t)")));
  CHECK(contains(d, g2, parse_elem(d, "(-8;t)")));
  CHECK(!contains(d, g2, parse_elem(d, "(2;e)")));
  CHECK(!contains(d, g2, parse_elem(d, "(1;t)")));

  GroupContext s = swap_ctx();
  CHECK(throws_kind(ErrorKind::Validation, [&] {
    make_lattice_subgroup(s, {{2, 0}, {0, 3}}, {0, 1}, {{0, 0}, {0, 0}});
  }));
  // Trivial action makes the translation closure condition bite.
  GroupContext flat = make_lattice_context(1, builtin_finite_group("z2"),
                                           {{{1}}});
  CHECK(throws_kind(ErrorKind::Validation, [&] {
    make_lattice_subgroup(flat, {{3}}, {0, 1}, {{0}, {1}});
  }));
  CHECK(subgroup_index(
            flat, make_lattice_subgroup(flat, {{2}}, {0, 1}, {{0}, {1}})) ==
        2);
  CHECK(throws_kind(ErrorKind::Validation, [&] {
    make_lattice_subgroup(d, {{2}}, {1}, {{0}});
  }));
  CHECK(throws_kind(ErrorKind::Validation, [&] {
    make_lattice_subgroup(d, {{2}}, {0, 0}, {{0}, {0}});
  }));
}

TEST_CASE("heisenberg subgroup validation matches brute-force closure") {
  SubgroupData h = make_heisenberg_subgroup({{6, 4}, {6, 9}}, 2);
  CHECK(mat_eq(h.M, {{6, 4}, {0, 5}}));
  CHECK(subgroup_index(make_heisenberg_context(), h) == 60);
  GroupContext ctx = make_heisenberg_context();
  CHECK(contains(ctx, h, parse_elem(ctx, "(6,4,2)")));
  CHECK(!contains(ctx, h, parse_elem(ctx, "(6,4,1)")));
  CHECK(!contains(ctx, h, parse_elem(ctx, "(0,5,1)")));
  CHECK(contains(ctx, h, parse_elem(ctx, "(0,5,0)")));

  // Valid without any row being divisible: composite m straddles both rows.
  SubgroupData sq = make_heisenberg_subgroup({{2, 0}, {0, 2}}, 4);
  CHECK(!heisenberg_row_divisibility(sq.M, sq.m));
  CHECK(heisenberg_row_divisibility(h.M, h.m));
  CHECK(throws_kind(ErrorKind::Validation, [] {
    make_heisenberg_subgroup({{1, 0}, {0, 1}}, 2);
  }));
  CHECK(throws_kind(ErrorKind::Validation, [] {
    make_heisenberg_subgroup({{2, 0}, {0, 3}}, 4);
  }));

  // The formula criterion agrees with sampled closure of the literal set.
  for (int t = 0; t < 120; t++) {
    Mat M = {{rand_int(-3, 3), rand_int(-3, 3)},
             {rand_int(-3, 3), rand_int(-3, 3)}};
    if (det(M) == 0) continue;
    Int m = rand_int(1, 6);
    Vec twist = {rand_int(0, 5), rand_int(0, 5)};
    bool accepted = true;
    SubgroupData H;
    try {
      H = make_heisenberg_subgroup(M, m, twist);
    } catch (const ChainError&) {
      accepted = false;
    }
    auto in_set = [&](const GroupElement& g) {
      auto s = solve_lower(hnf(M), {g.v[0], g.v[1]});
      if (!s) return false;
      // Re-express through the original columns to apply the given twist.
      auto raw = solve_integer(2, M, {g.v[0], g.v[1]});
      if (!raw) return false;
      Int want = twist[0] * (*raw)[0] + twist[1] * (*raw)[1];
      return (g.v[2] - want) % m == 0;
    };
    bool closed = true;
    for (int probe = 0; probe < 24 && closed; probe++) {
      Vec s1 = {rand_int(-2, 2), rand_int(-2, 2)};
      Vec s2 = {rand_int(-2, 2), rand_int(-2, 2)};
      Vec u1 = mat_vec(M, s1), u2 = mat_vec(M, s2);
      GroupElement a, b;
      a.v = {u1[0], u1[1],
             twist[0] * s1[0] + twist[1] * s1[1] + m * rand_int(-2, 2)};
      b.v = {u2[0], u2[1],
             twist[0] * s2[0] + twist[1] * s2[1] + m * rand_int(-2, 2)};
      if (!in_set(multiply(ctx, a, b)) || !in_set(inverse(ctx, a)))
        closed = false;
    }
    if (accepted) {
      CHECK(closed);
      for (int probe = 0; probe < 8; probe++)
        CHECK(contains(ctx, H, rand_member(ctx, H)));
    }
    if (!closed) CHECK(!accepted);
  }
}

TEST_CASE("whole group subgroup has index one and swallows everything") {
  GroupContext d = dihedral_ctx();
  GroupContext h = make_heisenberg_context();
  SubgroupData wd = whole_group_subgroup(d);
  SubgroupData wh = whole_group_subgroup(h);
  CHECK(subgroup_index(d, wd) == 1);
  CHECK(subgroup_index(h, wh) == 1);
  for (int t = 0; t < 40; t++) {
    CHECK(contains(d, wd, rand_elem(d)));
    CHECK(contains(h, wh, rand_elem(h)));
  }
}

TEST_CASE("subgroup generators land inside and regenerate the subgroup") {
  GroupContext d = dihedral_ctx();
  GroupContext s = swap_ctx();
  GroupContext h = make_heisenberg_context();
  for (int t = 0; t < 60; t++) {
    SubgroupData H;
    const GroupContext* ctx;
    switch (t % 3) {
      case 0: ctx = &d; H = rand_dihedral_subgroup(d); break;
      case 1: ctx = &s; H = rand_swap_subgroup(s); break;
      default: ctx = &h; H = rand_heis_subgroup(); break;
    }
    auto gens = subgroup_generators(*ctx, H);
    for (const GroupElement& g : gens) CHECK(contains(*ctx, H, g));
    SubgroupData back = subgroup_from_generators(*ctx, gens);
    CHECK(back == H);
  }
}

TEST_CASE("generated subgroups detect infinite index and crooked centers") {
  GroupContext d = dihedral_ctx();
  CHECK(throws_kind(ErrorKind::Unrepresentable, [&] {
    subgroup_from_generators(d, {parse_elem(d, "(0;t)")});
  }));
  GroupContext h = make_heisenberg_context();
  CHECK(throws_kind(ErrorKind::Unrepresentable, [&] {
    subgroup_from_generators(h, {parse_elem(h, "(1,0,0)")});
  }));
  // The span closes up in the center faster than the twist shape allows.
  CHECK(throws_kind(ErrorKind::Unrepresentable, [&] {
    subgroup_from_generators(
        h, {parse_elem(h, "(2,0,0)"), parse_elem(h, "(1,2,0)")});
  }));
  // Adding the missing central element makes the same span representable.
  SubgroupData fixedUp = subgroup_from_generators(
      h, {parse_elem(h, "(2,0,0)"), parse_elem(h, "(1,2,0)"),
          parse_elem(h, "(0,0,2)")});
  CHECK(fixedUp.m == 2);
  CHECK(det_abs(fixedUp.M) == 4);
  CHECK(contains(h, fixedUp, parse_elem(h, "(2,0,0)")));
  CHECK(contains(h, fixedUp, parse_elem(h, "(1,2,0)")));
}

TEST_CASE("conjugate subgroup matches the elementwise conjugates") {
  GroupContext d = dihedral_ctx();
  SubgroupData g2 = make_lattice_subgroup(d, {{4}}, {0, 1}, {{0}, {0}});
  SubgroupData conjA = conjugate_subgroup(d, g2, parse_elem(d, "(1;e)"));
  CHECK(mat_eq(conjA.L, {{4}}));
  CHECK(conjA.K == std::vector<int>{0, 1});
  CHECK(conjA.trans[1] == Vec{2});
  CHECK(conjugate_subgroup(d, g2, parse_elem(d, "(0;t)")) == g2);

  GroupContext h = make_heisenberg_context();
  SubgroupData w1 = make_heisenberg_subgroup({{6, 4}, {6, 9}}, 2);
  SubgroupData cw = conjugate_subgroup(h, w1, parse_elem(h, "(1,0,0)"));
  CHECK(contains(h, cw,
                 conjugate_elem(h, parse_elem(h, "(0,5,0)"),
                                parse_elem(h, "(1,0,0)"))));
  CHECK(!contains(h, cw, parse_elem(h, "(0,5,0)")));

  GroupContext s = swap_ctx();
  for (int t = 0; t < 60; t++) {
    const GroupContext* ctx;
    SubgroupData H;
    switch (t % 3) {
      case 0: ctx = &d; H = rand_dihedral_subgroup(d); break;
      case 1: ctx = &s; H = rand_swap_subgroup(s); break;
      default: ctx = &h; H = rand_heis_subgroup(); break;
    }
    GroupElement g = rand_elem(*ctx);
    SubgroupData C = conjugate_subgroup(*ctx, H, g);
    CHECK(subgroup_index(*ctx, C) == subgroup_index(*ctx, H));
    CHECK(conjugate_subgroup(*ctx, C, inverse(*ctx, g)) == H);
    for (int probe = 0; probe < 6; probe++) {
      GroupElement m = rand_member(*ctx, H);
      CHECK(contains(*ctx, H, m));
      CHECK(contains(*ctx, C, conjugate_elem(*ctx, m, g)));
    }
  }
}

TEST_CASE("intersection is the largest common subgroup") {
  GroupContext d = dihedral_ctx();
  SubgroupData g2 = make_lattice_subgroup(d, {{4}}, {0, 1}, {{0}, {0}});
  SubgroupData conjA = conjugate_subgroup(d, g2, parse_elem(d, "(1;e)"));
  SubgroupData cap = intersect_subgroups(d, g2, conjA);
  CHECK(cap.K == std::vector<int>{0});
  CHECK(subgroup_index(d, cap) == 8);

  GroupContext h = make_heisenberg_context();
  GroupContext s = swap_ctx();
  for (int t = 0; t < 60; t++) {
    const GroupContext* ctx;
    SubgroupData A, B;
    switch (t % 3) {
      case 0:
        ctx = &d;
        A = rand_dihedral_subgroup(d);
        B = rand_dihedral_subgroup(d);
        break;
      case 1:
        ctx = &s;
        A = rand_swap_subgroup(s);
        B = rand_swap_subgroup(s);
        break;
      default:
        ctx = &h;
        A = rand_heis_subgroup();
        B = rand_heis_subgroup();
        break;
    }
    SubgroupData cap2 = intersect_subgroups(*ctx, A, B);
    CHECK(subgroup_leq(*ctx, cap2, A));
    CHECK(subgroup_leq(*ctx, cap2, B));
    CHECK(subgroup_index(*ctx, cap2) % subgroup_index(*ctx, A) == 0);
    CHECK(subgroup_index(*ctx, cap2) % subgroup_index(*ctx, B) == 0);
    for (int probe = 0; probe < 6; probe++) {
      GroupElement m = rand_member(*ctx, cap2);
      CHECK(contains(*ctx, A, m));
      CHECK(contains(*ctx, B, m));
      GroupElement a = rand_member(*ctx, A);
      if (contains(*ctx, B, a)) CHECK(contains(*ctx, cap2, a));
    }
    CHECK(intersect_subgroups(*ctx, A, A) == A);
  }
}

TEST_CASE("cores are the largest normal pieces and match pinned values") {
  GroupContext d = dihedral_ctx();
  SubgroupData g1 = make_lattice_subgroup(d, {{2}}, {0, 1}, {{0}, {0}});
  SubgroupData g2 = make_lattice_subgroup(d, {{4}}, {0, 1}, {{0}, {0}});
  SubgroupData c1 = core_subgroup(d, g1);
  SubgroupData c2 = core_subgroup(d, g2);
  CHECK(c1 == g1);
  CHECK(subgroup_index(d, c2) == 8);
  CHECK(c2.K == std::vector<int>{0});
  CHECK(mat_eq(c2.L, {{4}}));

  GroupContext h = make_heisenberg_context();
  SubgroupData w1 = make_heisenberg_subgroup({{6, 4}, {6, 9}}, 2);
  SubgroupData cw1 = core_subgroup(h, w1);
  CHECK(mat_eq(cw1.M, {{6, 4}, {0, 10}}));
  CHECK(cw1.m == 2);
  CHECK(subgroup_index(h, cw1) == 120);

  SubgroupData w2 = make_heisenberg_subgroup({{12, 8}, {18, 27}}, 2);
  CHECK(mat_eq(w2.M, {{6, 19}, {0, 30}}));
  SubgroupData cw2 = core_subgroup(h, w2);
  CHECK(mat_eq(cw2.M, {{12, 8}, {0, 30}}));
  CHECK(cw2.m == 2);
  CHECK(subgroup_index(h, cw2) == 720);
  CHECK(intersect_subgroups(h, w2, cw1) == cw2);

  GroupContext s = swap_ctx();
  for (int t = 0; t < 40; t++) {
    const GroupContext* ctx;
    SubgroupData H;
    switch (t % 3) {
      case 0: ctx = &d; H = rand_dihedral_subgroup(d); break;
      case 1: ctx = &s; H = rand_swap_subgroup(s); break;
      default: ctx = &h; H = rand_heis_subgroup(); break;
    }
    SubgroupData C = core_subgroup(*ctx, H);
    CHECK(subgroup_leq(*ctx, C, H));
    for (const GroupElement& g : ctx->generators)
      CHECK(conjugate_subgroup(*ctx, C, g) == C);
    // Largest: the core of the core is the core itself, and any conjugate of
    // H still contains it.
    CHECK(core_subgroup(*ctx, C) == C);
    GroupElement g = rand_elem(*ctx);
    CHECK(subgroup_leq(*ctx, C, conjugate_subgroup(*ctx, H, g)));
  }
}

TEST_CASE("coset keys are constant on cosets and separate them") {
  GroupContext d = dihedral_ctx();
  GroupContext s = swap_ctx();
  GroupContext h = make_heisenberg_context();
  for (int t = 0; t < 120; t++) {
    const GroupContext* ctx;
    SubgroupData H;
    switch (t % 3) {
      case 0: ctx = &d; H = rand_dihedral_subgroup(d); break;
      case 1: ctx = &s; H = rand_swap_subgroup(s); break;
      default: ctx = &h; H = rand_heis_subgroup(); break;
    }
    GroupElement g = rand_elem(*ctx);
    std::string key = coset_key(*ctx, H, g);
    for (int probe = 0; probe < 5; probe++) {
      GroupElement gh = multiply(*ctx, g, rand_member(*ctx, H));
      CHECK(coset_key(*ctx, H, gh) == key);
    }
    GroupElement g2 = rand_elem(*ctx);
    bool sameCoset =
        contains(*ctx, H, multiply(*ctx, inverse(*ctx, g), g2));
    CHECK((coset_key(*ctx, H, g2) == key) == sameCoset);
  }
}

TEST_CASE("factorizations evaluate back to the element") {
  GroupContext d = dihedral_ctx();
  GroupContext s = swap_ctx();
  GroupContext h = make_heisenberg_context();
  CHECK(word_str(d, *elem_factor(d, parse_elem(d, "(3;t)"))) == "t1^3*t");
  CHECK(word_str(h, *elem_factor(h, parse_elem(h, "(0,0,5)"))) == "z^5");
  CHECK(elem_label(d, identity(d)) == "e");
  for (int t = 0; t < 100; t++) {
    const GroupContext* ctx;
    switch (t % 3) {
      case 0: ctx = &d; break;
      case 1: ctx = &s; break;
      default: ctx = &h; break;
    }
    GroupElement g = rand_elem(*ctx);
    auto word = elem_factor(*ctx, g);
    REQUIRE(word.has_value());
    CHECK(eval_word(*ctx, *word) == g);
  }
}

TEST_CASE("named generators survive replacement and lookup") {
  GroupContext d = dihedral_ctx();
  set_generators(d, {"a", "b"},
                 {parse_elem(d, "(1;e)"), parse_elem(d, "(0;t)")});
  CHECK(d.generator_index("a") == 0);
  CHECK(d.generator_index("b") == 1);
  CHECK(throws_kind(ErrorKind::Validation, [&] { d.generator_index("c"); }));
  CHECK(throws_kind(ErrorKind::Validation, [&] {
    set_generators(d, {"a", "a"},
                   {parse_elem(d, "(1;e)"), parse_elem(d, "(0;t)")});
  }));
  CHECK(elem_label(d, parse_elem(d, "(2;t)")) == "a^2*b");
}
