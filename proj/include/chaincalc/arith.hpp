#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace chaincalc {

using Int = mpz_class;
using Vec = std::vector<Int>;

// Matrices are stored as a list of columns: M[j][i] is row i of column j.
// Lattices are the integer column spans of square nonsingular matrices.
using Mat = std::vector<Vec>;

Mat identity_mat(int n);
Mat zero_mat(int rows, int cols);
bool mat_eq(const Mat& a, const Mat& b);
Vec mat_vec(const Mat& m, const Vec& x);   // m has x.size() columns
Mat mat_mul(const Mat& a, const Mat& b);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_neg(const Vec& a);
bool vec_is_zero(const Vec& a);
std::string vec_str(const Vec& v);
std::string mat_str(const Mat& m);

// Column-style Hermite Normal Form of a full-column-rank square matrix:
// lower triangular, positive diagonal, entries left of the diagonal reduced
// into [0, diagonal). Two matrices span the same lattice iff their HNFs are
// identical. Throws on singular input.
Mat hnf(const Mat& m);

// HNF of the column span of an arbitrary (possibly rectangular or rank
// deficient) set of columns; returns only the nonzero columns, lower
// triangular in the echelon sense.
Mat hnf_span(int rows, const Mat& cols);

Int det(const Mat& m);      // by expansion; matrices here are tiny
Int det_abs(const Mat& m);

// Solve L x = b exactly over the integers for lower-triangular HNF L.
// Returns nullopt when no integer solution exists.
std::optional<Vec> solve_lower(const Mat& L, const Vec& b);

// Membership of b in the column lattice of HNF matrix L.
bool in_lattice(const Mat& L, const Vec& b);

// Reduce b modulo the lattice of HNF matrix L; the result r is the unique
// representative with the triangular-digit normal form, and b = r + L s.
struct Reduced {
  Vec r;
  Vec s;
};
Reduced reduce_mod(const Mat& L, const Vec& b);

// Intersection of two full-rank column lattices (HNF result).
Mat lattice_intersect(const Mat& a, const Mat& b);

// Sum (join) of two full-rank column lattices (HNF result).
Mat lattice_sum(const Mat& a, const Mat& b);

// Sublattice {x in lattice(L) : sum_i w_i s_i == 0 mod d} where x = L s and
// the congruence is on the coordinate vector s (w has one entry per column
// of L). d > 0. Returns an HNF matrix spanning the sublattice.
Mat congruence_sublattice(const Mat& L, const Vec& w, const Int& d);

// A particular integer solution of A x = b for full-row-rank A given as
// columns (rows x cols, cols >= rows), or nullopt. Used for affine coset
// intersections.
std::optional<Vec> solve_integer(int rows, const Mat& A, const Vec& b);

// Hermite form together with the unimodular column transform: m * U = H.
struct HnfTransform {
  Mat H;
  Mat U;
};
HnfTransform hnf_transform(const Mat& m);

// x with x ≡ r1 (mod m1), x ≡ r2 (mod m2), reduced mod lcm; throws if the
// congruences are incompatible.
Int crt(const Int& r1, const Int& m1, const Int& r2, const Int& m2);

Int lcm(const Int& a, const Int& b);
Int gcd(const Int& a, const Int& b);
// Nonnegative residue of a mod m, m > 0.
Int mod_pos(const Int& a, const Int& m);

} // namespace chaincalc
