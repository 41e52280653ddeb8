#include "chaincalc/group.hpp"

#include "chaincalc/errors.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace chaincalc {

namespace {

void check_family(const GroupContext& ctx, const GroupElement& g,
                  const char* where) {
  if ((int)g.v.size() != ctx.rank)
    structural_error(std::string(where) + ": element rank mismatch");
  if (g.f < 0 || g.f >= ctx.finitePart.size())
    structural_error(std::string(where) + ": finite part out of range");
}

Vec act_on(const GroupContext& ctx, int f, const Vec& v) {
  return mat_vec(ctx.action[f], v);
}

int trans_pos(const SubgroupData& H, int k) {
  auto it = std::lower_bound(H.K.begin(), H.K.end(), k);
  if (it == H.K.end() || *it != k) return -1;
  return (int)(it - H.K.begin());
}

Vec heis_rows_gcd(const Mat& M) {
  return {gcd(M[0][0], M[1][0]), gcd(M[0][1], M[1][1])};
}

// z-offset of the lattice point u = M s under the twist functional.
Int zeta(const SubgroupData& H, const Vec& u) {
  auto s = solve_lower(H.M, u);
  if (!s) structural_error("zeta: point not in lattice");
  return H.twist[0] * (*s)[0] + H.twist[1] * (*s)[1];
}

} // namespace

int GroupContext::generator_index(const std::string& name) const {
  for (size_t i = 0; i < generatorNames.size(); i++)
    if (generatorNames[i] == name) return (int)i;
  validation_error("unknown generator '" + name + "'");
}

GroupContext make_lattice_context(int rank, FiniteGroupTable finitePart,
                                  const std::vector<Mat>& genActions) {
  if (rank < 1) validation_error("lattice rank must be positive");
  if (genActions.size() != finitePart.gens.size())
    validation_error("need one action matrix per finite-part generator");
  for (const Mat& a : genActions) {
    if ((int)a.size() != rank || (a.empty() ? 0 : (int)a[0].size()) != rank)
      validation_error("action matrix has wrong shape");
  }
  GroupContext ctx;
  ctx.family = Family::LatticeSemidirect;
  ctx.rank = rank;
  ctx.finitePart = std::move(finitePart);
  const FiniteGroupTable& tbl = ctx.finitePart;
  ctx.action.assign(tbl.size(), identity_mat(rank));
  for (int x = 0; x < tbl.size(); x++) {
    Mat a = identity_mat(rank);
    for (int j : fg_word(tbl, x)) a = mat_mul(a, genActions[j]);
    ctx.action[x] = std::move(a);
  }
  for (int x = 0; x < tbl.size(); x++) {
    Int d = det(ctx.action[x]);
    if (d != 1 && d != -1)
      validation_error("action of '" + tbl.elems[x] +
                       "' has determinant " + d.get_str());
    for (int y = 0; y < tbl.size(); y++)
      if (!mat_eq(mat_mul(ctx.action[x], ctx.action[y]),
                  ctx.action[tbl.mul(x, y)]))
        validation_error("action is not a homomorphism at '" + tbl.elems[x] +
                         "','" + tbl.elems[y] + "'");
  }
  for (int j = 0; j < rank; j++) {
    GroupElement t;
    t.v.assign(rank, 0);
    t.v[j] = 1;
    ctx.generators.push_back(t);
    ctx.generatorNames.push_back("t" + std::to_string(j + 1));
  }
  for (int g : tbl.gens) {
    GroupElement e;
    e.v.assign(rank, 0);
    e.f = g;
    ctx.generators.push_back(e);
    ctx.generatorNames.push_back(tbl.elems[g]);
  }
  return ctx;
}

GroupContext make_heisenberg_context() {
  GroupContext ctx;
  ctx.family = Family::Heisenberg;
  ctx.rank = 3;
  ctx.finitePart = builtin_finite_group("trivial");
  ctx.action = {identity_mat(3)};
  const char* names[] = {"x", "y", "z"};
  for (int j = 0; j < 3; j++) {
    GroupElement g;
    g.v.assign(3, 0);
    g.v[j] = 1;
    ctx.generators.push_back(g);
    ctx.generatorNames.push_back(names[j]);
  }
  return ctx;
}

void set_generators(GroupContext& ctx, std::vector<std::string> names,
                    std::vector<GroupElement> gens) {
  if (names.empty() || names.size() != gens.size())
    validation_error("generator list empty or names misaligned");
  for (size_t i = 0; i < names.size(); i++) {
    check_family(ctx, gens[i], "set_generators");
    for (size_t j = i + 1; j < names.size(); j++)
      if (names[i] == names[j])
        validation_error("duplicate generator name '" + names[i] + "'");
  }
  ctx.generators = std::move(gens);
  ctx.generatorNames = std::move(names);
}

GroupElement identity(const GroupContext& ctx) {
  GroupElement g;
  g.v.assign(ctx.rank, 0);
  return g;
}

bool is_identity(const GroupContext& ctx, const GroupElement& g) {
  return g.f == 0 && vec_is_zero(g.v) && (int)g.v.size() == ctx.rank;
}

GroupElement multiply(const GroupContext& ctx, const GroupElement& g,
                      const GroupElement& h) {
  check_family(ctx, g, "multiply");
  check_family(ctx, h, "multiply");
  GroupElement out;
  if (ctx.family == Family::LatticeSemidirect) {
    out.v = vec_add(g.v, act_on(ctx, g.f, h.v));
    out.f = ctx.finitePart.mul(g.f, h.f);
  } else {
    out.v = {g.v[0] + h.v[0], g.v[1] + h.v[1],
             g.v[2] + h.v[2] + g.v[0] * h.v[1]};
  }
  return out;
}

GroupElement inverse(const GroupContext& ctx, const GroupElement& g) {
  check_family(ctx, g, "inverse");
  GroupElement out;
  if (ctx.family == Family::LatticeSemidirect) {
    out.f = ctx.finitePart.inverse(g.f);
    out.v = vec_neg(act_on(ctx, out.f, g.v));
  } else {
    out.v = {-g.v[0], -g.v[1], -g.v[2] + g.v[0] * g.v[1]};
  }
  return out;
}

GroupElement elem_pow(const GroupContext& ctx, const GroupElement& g, Int k) {
  GroupElement base = g;
  if (k < 0) {
    base = inverse(ctx, g);
    k = -k;
  }
  GroupElement acc = identity(ctx);
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) acc = multiply(ctx, acc, base);
    k >>= 1;
    if (k > 0) base = multiply(ctx, base, base);
  }
  return acc;
}

GroupElement conjugate_elem(const GroupContext& ctx, const GroupElement& g,
                            const GroupElement& by) {
  return multiply(ctx, multiply(ctx, by, g), inverse(ctx, by));
}

std::string elem_str(const GroupContext& ctx, const GroupElement& g) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < ctx.rank; i++) {
    if (i) os << ",";
    os << g.v[i].get_str();
  }
  if (ctx.family == Family::LatticeSemidirect)
    os << ";" << ctx.finitePart.elems[g.f];
  os << ")";
  return os.str();
}

GroupElement parse_elem(const GroupContext& ctx, const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    validation_error("element must be parenthesized: '" + text + "'");
  s = s.substr(1, s.size() - 2);
  std::string vecPart = s, finPart;
  if (ctx.family == Family::LatticeSemidirect) {
    auto semi = s.find(';');
    if (semi == std::string::npos)
      validation_error("element needs ';finite-part': '" + text + "'");
    vecPart = s.substr(0, semi);
    finPart = s.substr(semi + 1);
  }
  GroupElement g;
  std::stringstream vs(vecPart);
  std::string tok;
  while (std::getline(vs, tok, ',')) {
    bool ok = !tok.empty() && tok != "-" &&
              tok.find_first_not_of("0123456789", tok[0] == '-' ? 1 : 0) ==
                  std::string::npos;
    if (!ok)
      validation_error("bad integer '" + tok + "' in element '" + text + "'");
    g.v.push_back(Int(tok));
  }
  if ((int)g.v.size() != ctx.rank)
    validation_error("element has wrong rank: '" + text + "'");
  if (ctx.family == Family::LatticeSemidirect)
    g.f = ctx.finitePart.index_of(finPart);
  return g;
}

SubgroupData make_lattice_subgroup(const GroupContext& ctx, Mat L,
                                   std::vector<int> K,
                                   std::vector<Vec> trans) {
  if (ctx.family != Family::LatticeSemidirect)
    structural_error("make_lattice_subgroup: wrong family");
  if ((int)L.size() != ctx.rank)
    validation_error("subgroup lattice has wrong rank");
  if (K.size() != trans.size())
    validation_error("translation list misaligned with K");
  SubgroupData H;
  H.family = Family::LatticeSemidirect;
  H.L = hnf(L);
  std::vector<std::pair<int, Vec>> zipped;
  for (size_t i = 0; i < K.size(); i++) {
    if (K[i] < 0 || K[i] >= ctx.finitePart.size())
      validation_error("finite-part index out of range in K");
    if ((int)trans[i].size() != ctx.rank)
      validation_error("translation vector has wrong rank");
    zipped.emplace_back(K[i], reduce_mod(H.L, trans[i]).r);
  }
  std::sort(zipped.begin(), zipped.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (size_t i = 0; i + 1 < zipped.size(); i++)
    if (zipped[i].first == zipped[i + 1].first)
      validation_error("duplicate finite-part index in K");
  for (auto& [k, v] : zipped) {
    H.K.push_back(k);
    H.trans.push_back(std::move(v));
  }
  if (!fg_is_subgroup(ctx.finitePart, H.K))
    validation_error("K is not a subgroup of the finite part");
  const FiniteGroupTable& tbl = ctx.finitePart;
  for (int k : H.K)
    if (!mat_eq(hnf(mat_mul(ctx.action[k], H.L)), H.L))
      validation_error("lattice not invariant under action of '" +
                       tbl.elems[k] + "'");
  for (size_t a = 0; a < H.K.size(); a++)
    for (size_t b = 0; b < H.K.size(); b++) {
      int ka = H.K[a], kb = H.K[b];
      Vec want = H.trans[trans_pos(H, tbl.mul(ka, kb))];
      Vec got = vec_add(H.trans[a], act_on(ctx, ka, H.trans[b]));
      if (!vec_is_zero(reduce_mod(H.L, vec_sub(got, want)).r))
        validation_error("translations violate closure at '" + tbl.elems[ka] +
                         "','" + tbl.elems[kb] + "'");
    }
  return H;
}

SubgroupData make_heisenberg_subgroup(Mat M, Int m, Vec twist) {
  if (M.size() != 2 || M[0].size() != 2 || M[1].size() != 2)
    validation_error("Heisenberg subgroup matrix must be 2x2");
  if (m <= 0) validation_error("Heisenberg subgroup needs positive m");
  if (twist.empty()) twist = {0, 0};
  if (twist.size() != 2) validation_error("twist must have two entries");
  HnfTransform ht = hnf_transform(M);
  SubgroupData H;
  H.family = Family::Heisenberg;
  H.M = ht.H;
  H.m = m;
  H.twist = {0, 0};
  for (int j = 0; j < 2; j++)
    H.twist[j] =
        mod_pos(twist[0] * ht.U[j][0] + twist[1] * ht.U[j][1], m);
  Vec rows = heis_rows_gcd(H.M);
  if (rows[0] * rows[1] % m != 0)
    validation_error("MZ^2 x mZ is not closed: m does not divide the product "
                     "of the row gcds of M");
  return H;
}

SubgroupData whole_group_subgroup(const GroupContext& ctx) {
  if (ctx.family == Family::Heisenberg)
    return make_heisenberg_subgroup(identity_mat(2), 1);
  std::vector<int> all(ctx.finitePart.size());
  std::vector<Vec> zero(all.size(), Vec(ctx.rank, 0));
  for (int i = 0; i < (int)all.size(); i++) all[i] = i;
  return make_lattice_subgroup(ctx, identity_mat(ctx.rank), all, zero);
}

bool heisenberg_row_divisibility(const Mat& M, const Int& m) {
  Vec rows = heis_rows_gcd(M);
  return rows[0] % m == 0 || rows[1] % m == 0;
}

Int subgroup_index(const GroupContext& ctx, const SubgroupData& H) {
  if (H.family == Family::Heisenberg) return det_abs(H.M) * H.m;
  return det_abs(H.L) * ctx.finitePart.size() / (int)H.K.size();
}

bool contains(const GroupContext& ctx, const SubgroupData& H,
              const GroupElement& g) {
  check_family(ctx, g, "contains");
  if (H.family == Family::Heisenberg) {
    auto s = solve_lower(H.M, {g.v[0], g.v[1]});
    if (!s) return false;
    Int want = H.twist[0] * (*s)[0] + H.twist[1] * (*s)[1];
    return (g.v[2] - want) % H.m == 0;
  }
  int pos = trans_pos(H, g.f);
  if (pos < 0) return false;
  return in_lattice(H.L, vec_sub(g.v, H.trans[pos]));
}

std::vector<GroupElement> subgroup_generators(const GroupContext& ctx,
                                              const SubgroupData& H) {
  std::vector<GroupElement> out;
  if (H.family == Family::Heisenberg) {
    for (int j = 0; j < 2; j++) {
      GroupElement g;
      g.v = {H.M[j][0], H.M[j][1], mod_pos(H.twist[j], H.m)};
      out.push_back(g);
    }
    GroupElement z;
    z.v = {0, 0, H.m};
    out.push_back(z);
    return out;
  }
  for (int j = 0; j < ctx.rank; j++) {
    GroupElement g;
    g.v = H.L[j];
    out.push_back(g);
  }
  for (int k : fg_generating_set(ctx.finitePart, H.K)) {
    GroupElement g;
    g.v = H.trans[trans_pos(H, k)];
    g.f = k;
    out.push_back(g);
  }
  return out;
}

SubgroupData conjugate_subgroup(const GroupContext& ctx, const SubgroupData& H,
                                const GroupElement& g) {
  check_family(ctx, g, "conjugate_subgroup");
  if (H.family == Family::Heisenberg) {
    Vec twist(2);
    for (int j = 0; j < 2; j++)
      twist[j] = H.twist[j] + g.v[0] * H.M[j][1] - g.v[1] * H.M[j][0];
    return make_heisenberg_subgroup(H.M, H.m, twist);
  }
  const FiniteGroupTable& tbl = ctx.finitePart;
  int sigma = g.f, sigmaInv = tbl.inverse(sigma);
  Mat L2 = mat_mul(ctx.action[sigma], H.L);
  std::vector<int> K2;
  std::vector<Vec> trans2;
  for (size_t i = 0; i < H.K.size(); i++) {
    int k2 = tbl.mul(tbl.mul(sigma, H.K[i]), sigmaInv);
    Vec v2 = vec_add(g.v, act_on(ctx, sigma, H.trans[i]));
    v2 = vec_sub(v2, act_on(ctx, k2, g.v));
    K2.push_back(k2);
    trans2.push_back(std::move(v2));
  }
  return make_lattice_subgroup(ctx, L2, K2, trans2);
}

SubgroupData intersect_subgroups(const GroupContext& ctx,
                                 const SubgroupData& A, const SubgroupData& B) {
  if (A.family != B.family)
    structural_error("intersect_subgroups: family mismatch");
  if (A.family == Family::Heisenberg) {
    Mat base = lattice_intersect(A.M, B.M);
    Int g = gcd(A.m, B.m);
    Vec w;
    for (const Vec& col : base) w.push_back(zeta(A, col) - zeta(B, col));
    Mat M3 = congruence_sublattice(base, w, g);
    Int m3 = lcm(A.m, B.m);
    Vec twist(2);
    for (int j = 0; j < 2; j++)
      twist[j] = crt(mod_pos(zeta(A, M3[j]), A.m), A.m,
                     mod_pos(zeta(B, M3[j]), B.m), B.m);
    return make_heisenberg_subgroup(M3, m3, twist);
  }
  Mat L3 = lattice_intersect(A.L, B.L);
  Mat stacked;
  for (const Vec& col : A.L) stacked.push_back(col);
  for (const Vec& col : B.L) stacked.push_back(vec_neg(col));
  std::vector<int> K3;
  std::vector<Vec> trans3;
  for (size_t i = 0; i < A.K.size(); i++) {
    int k = A.K[i];
    int pos = trans_pos(B, k);
    if (pos < 0) continue;
    auto sol = solve_integer(ctx.rank, stacked,
                             vec_sub(B.trans[pos], A.trans[i]));
    if (!sol) continue;
    Vec coeff(sol->begin(), sol->begin() + ctx.rank);
    K3.push_back(k);
    trans3.push_back(vec_add(A.trans[i], mat_vec(A.L, coeff)));
  }
  return make_lattice_subgroup(ctx, L3, K3, trans3);
}

SubgroupData subgroup_from_generators(const GroupContext& ctx,
                                      const std::vector<GroupElement>& gens) {
  for (const GroupElement& g : gens) check_family(ctx, g, "subgroup_from_generators");
  if (ctx.family == Family::Heisenberg) {
    Mat proj;
    for (const GroupElement& g : gens) proj.push_back(Vec{g.v[0], g.v[1]});
    Mat nonzero;
    for (const Vec& c : proj)
      if (!vec_is_zero(c)) nonzero.push_back(c);
    Mat B = hnf_span(2, nonzero);
    if ((int)B.size() < 2)
      unrepresentable_error("generated subgroup has infinite index "
                            "(lattice projection is rank-deficient)");
    // Basis words b_j realize the projection basis; their z parts seed the
    // twist. Central defects and the commutator [b1,b2] generate the center
    // intersection.
    std::vector<GroupElement> basisWords;
    for (int j = 0; j < 2; j++) {
      auto c = solve_integer(2, proj, B[j]);
      if (!c) structural_error("subgroup_from_generators: basis not in span");
      GroupElement b = identity(ctx);
      for (size_t i = 0; i < gens.size(); i++)
        b = multiply(ctx, b, elem_pow(ctx, gens[i], (*c)[i]));
      basisWords.push_back(b);
    }
    Int m = det_abs(B);
    for (const GroupElement& g : gens) {
      auto s = solve_lower(B, {g.v[0], g.v[1]});
      if (!s) structural_error("subgroup_from_generators: projection escape");
      GroupElement w = multiply(ctx, elem_pow(ctx, basisWords[0], (*s)[0]),
                                elem_pow(ctx, basisWords[1], (*s)[1]));
      GroupElement defect = multiply(ctx, g, inverse(ctx, w));
      if (defect.v[0] != 0 || defect.v[1] != 0)
        structural_error("subgroup_from_generators: defect not central");
      m = gcd(m, defect.v[2]);
    }
    Vec rows = heis_rows_gcd(B);
    if (rows[0] * rows[1] % m != 0)
      unrepresentable_error("generated subgroup is not of twisted product "
                            "form (center too coarse for its lattice)");
    SubgroupData H = make_heisenberg_subgroup(
        B, m, {basisWords[0].v[2], basisWords[1].v[2]});
    for (const GroupElement& g : gens)
      if (!contains(ctx, H, g))
        structural_error("subgroup_from_generators: completion lost a generator");
    return H;
  }
  const FiniteGroupTable& tbl = ctx.finitePart;
  std::vector<int> finParts;
  for (const GroupElement& g : gens) finParts.push_back(g.f);
  std::vector<int> K = fg_closure(tbl, finParts);
  // Symmetrized generating set: Schreier generators for the kernel of the
  // finite-part projection need inverses available.
  std::vector<GroupElement> sgens = gens;
  for (const GroupElement& g : gens) sgens.push_back(inverse(ctx, g));
  // Transversal per finite part by BFS over the generators.
  std::vector<GroupElement> tk(tbl.size(), identity(ctx));
  std::vector<bool> have(tbl.size(), false);
  have[0] = true;
  std::queue<int> q;
  q.push(0);
  while (!q.empty()) {
    int k = q.front();
    q.pop();
    for (const GroupElement& s : sgens) {
      int k2 = tbl.mul(k, s.f);
      if (!have[k2]) {
        have[k2] = true;
        tk[k2] = multiply(ctx, tk[k], s);
        q.push(k2);
      }
    }
  }
  Mat vectors;
  for (int k : K)
    for (const GroupElement& s : sgens) {
      GroupElement u = multiply(ctx, multiply(ctx, tk[k], s),
                                inverse(ctx, tk[tbl.mul(k, s.f)]));
      if (u.f != 0)
        structural_error("subgroup_from_generators: Schreier element not pure");
      if (!vec_is_zero(u.v)) vectors.push_back(u.v);
    }
  Mat span = hnf_span(ctx.rank, vectors);
  for (;;) {
    Mat grown = span;
    for (int k : fg_generating_set(tbl, K))
      for (const Vec& col : span) grown.push_back(act_on(ctx, k, col));
    Mat next = hnf_span(ctx.rank, grown);
    if (mat_eq(next, span)) break;
    span = std::move(next);
  }
  if ((int)span.size() < ctx.rank)
    unrepresentable_error("generated subgroup has infinite index "
                          "(translation lattice is rank-deficient)");
  std::vector<Vec> trans;
  for (int k : K) trans.push_back(tk[k].v);
  SubgroupData H = make_lattice_subgroup(ctx, span, K, trans);
  for (const GroupElement& g : gens)
    if (!contains(ctx, H, g))
      structural_error("subgroup_from_generators: completion lost a generator");
  return H;
}

SubgroupData core_subgroup(const GroupContext& ctx, const SubgroupData& H,
                           const std::vector<GroupElement>& under) {
  SubgroupData C = H;
  for (;;) {
    SubgroupData before = C;
    for (const GroupElement& u : under) {
      C = intersect_subgroups(ctx, C, conjugate_subgroup(ctx, C, u));
      C = intersect_subgroups(ctx, C,
                              conjugate_subgroup(ctx, C, inverse(ctx, u)));
    }
    if (C == before) return C;
  }
}

SubgroupData core_subgroup(const GroupContext& ctx, const SubgroupData& H) {
  return core_subgroup(ctx, H, ctx.generators);
}

bool subgroup_leq(const GroupContext& ctx, const SubgroupData& A,
                  const SubgroupData& B) {
  for (const GroupElement& g : subgroup_generators(ctx, A))
    if (!contains(ctx, B, g)) return false;
  return true;
}

std::string subgroup_str(const GroupContext& ctx, const SubgroupData& H) {
  std::ostringstream os;
  if (H.family == Family::Heisenberg) {
    os << "M=" << mat_str(H.M) << " m=" << H.m.get_str();
    if (!vec_is_zero(H.twist))
      os << " twist=(" << H.twist[0].get_str() << "," << H.twist[1].get_str()
         << ")";
    return os.str();
  }
  os << "L=" << mat_str(H.L) << " K={";
  for (size_t i = 0; i < H.K.size(); i++) {
    if (i) os << ",";
    os << ctx.finitePart.elems[H.K[i]];
  }
  os << "}";
  for (size_t i = 0; i < H.K.size(); i++)
    if (!vec_is_zero(H.trans[i]))
      os << " v(" << ctx.finitePart.elems[H.K[i]] << ")=" << vec_str(H.trans[i]);
  return os.str();
}

std::string coset_key(const GroupContext& ctx, const SubgroupData& H,
                      const GroupElement& g) {
  check_family(ctx, g, "coset_key");
  std::ostringstream os;
  if (H.family == Family::Heisenberg) {
    Reduced red = reduce_mod(H.M, {g.v[0], g.v[1]});
    Int zc = g.v[2] - H.twist[0] * red.s[0] - H.twist[1] * red.s[1] +
             g.v[0] * (red.r[1] - g.v[1]);
    os << red.r[0].get_str() << "," << red.r[1].get_str() << "|"
       << mod_pos(zc, H.m).get_str();
    return os.str();
  }
  Mat Lf = mat_eq(ctx.action[g.f], identity_mat(ctx.rank))
               ? H.L
               : hnf(mat_mul(ctx.action[g.f], H.L));
  int bestF = -1;
  Vec bestR;
  for (size_t i = 0; i < H.K.size(); i++) {
    int fk = ctx.finitePart.mul(g.f, H.K[i]);
    Vec r = reduce_mod(Lf, vec_add(g.v, act_on(ctx, g.f, H.trans[i]))).r;
    if (bestF < 0 || fk < bestF || (fk == bestF && r < bestR)) {
      bestF = fk;
      bestR = std::move(r);
    }
  }
  os << bestF << "|";
  for (int i = 0; i < ctx.rank; i++) {
    if (i) os << ",";
    os << bestR[i].get_str();
  }
  return os.str();
}

std::optional<std::vector<WordFactor>> elem_factor(const GroupContext& ctx,
                                                   const GroupElement& g) {
  std::vector<WordFactor> word;
  if (ctx.family == Family::Heisenberg) {
    int slot[3] = {-1, -1, -1};
    Int sign[3];
    for (size_t i = 0; i < ctx.generators.size(); i++) {
      const Vec& v = ctx.generators[i].v;
      for (int j = 0; j < 3; j++) {
        bool unit = (v[j] == 1 || v[j] == -1) && v[(j + 1) % 3] == 0 &&
                    v[(j + 2) % 3] == 0;
        if (unit && slot[j] < 0) {
          slot[j] = (int)i;
          sign[j] = v[j];
        }
      }
    }
    if (slot[0] < 0 || slot[1] < 0 || slot[2] < 0) return std::nullopt;
    Int exps[3] = {g.v[0], g.v[1], g.v[2] - g.v[0] * g.v[1]};
    for (int j = 0; j < 3; j++)
      if (exps[j] != 0) word.push_back({slot[j], exps[j] * sign[j]});
    return word;
  }
  std::vector<int> slot(ctx.rank, -1);
  Vec sign(ctx.rank, 0);
  std::vector<int> finGens;
  for (size_t i = 0; i < ctx.generators.size(); i++) {
    const GroupElement& ge = ctx.generators[i];
    if (ge.f != 0) {
      if (vec_is_zero(ge.v)) finGens.push_back((int)i);
      continue;
    }
    int nz = -1;
    bool unitCol = true;
    for (int j = 0; j < ctx.rank; j++) {
      if (ge.v[j] == 0) continue;
      if (nz >= 0 || (ge.v[j] != 1 && ge.v[j] != -1)) { unitCol = false; break; }
      nz = j;
    }
    if (unitCol && nz >= 0 && slot[nz] < 0) {
      slot[nz] = (int)i;
      sign[nz] = ge.v[nz];
    }
  }
  for (int j = 0; j < ctx.rank; j++) {
    if (g.v[j] == 0) continue;
    if (slot[j] < 0) return std::nullopt;
    word.push_back({slot[j], g.v[j] * sign[j]});
  }
  if (g.f != 0) {
    // BFS over the available finite-part generators.
    const FiniteGroupTable& tbl = ctx.finitePart;
    std::vector<int> prev(tbl.size(), -1), via(tbl.size(), -1);
    std::queue<int> q;
    prev[0] = 0;
    q.push(0);
    while (!q.empty() && prev[g.f] < 0) {
      int a = q.front();
      q.pop();
      for (int gi : finGens) {
        int b = tbl.mul(a, ctx.generators[gi].f);
        if (prev[b] < 0) {
          prev[b] = a;
          via[b] = gi;
          q.push(b);
        }
      }
    }
    if (prev[g.f] < 0) return std::nullopt;
    std::vector<WordFactor> tail;
    for (int a = g.f; a != 0; a = prev[a]) tail.push_back({via[a], 1});
    word.insert(word.end(), tail.rbegin(), tail.rend());
  }
  return word;
}

std::string word_str(const GroupContext& ctx,
                     const std::vector<WordFactor>& word) {
  std::ostringstream os;
  bool any = false;
  for (const WordFactor& wf : word) {
    if (wf.exp == 0) continue;
    if (any) os << "*";
    any = true;
    os << ctx.generatorNames[wf.gen];
    if (wf.exp != 1) os << "^" << wf.exp.get_str();
  }
  return any ? os.str() : "e";
}

std::string elem_label(const GroupContext& ctx, const GroupElement& g) {
  auto word = elem_factor(ctx, g);
  return word ? word_str(ctx, *word) : elem_str(ctx, g);
}

} // namespace chaincalc
