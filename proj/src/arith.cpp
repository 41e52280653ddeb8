// Exact integer linear algebra over GMP integers: column Hermite forms,
// kernels, lattice intersections. Matrices here are tiny (rank <= 6), so
// everything is elementary column operations with exact arithmetic.

#include "chaincalc/arith.hpp"

#include "chaincalc/errors.hpp"

#include <sstream>

namespace chaincalc {

Mat identity_mat(int n) {
  Mat m(n, Vec(n, 0));
  for (int j = 0; j < n; j++) m[j][j] = 1;
  return m;
}

Mat zero_mat(int rows, int cols) { return Mat(cols, Vec(rows, 0)); }

bool mat_eq(const Mat& a, const Mat& b) {
  if (a.size() != b.size()) return false;
  for (size_t j = 0; j < a.size(); j++)
    if (a[j] != b[j]) return false;
  return true;
}

Vec mat_vec(const Mat& m, const Vec& x) {
  if (m.size() != x.size()) structural_error("mat_vec: size mismatch");
  if (m.empty()) return {};
  Vec out(m[0].size(), 0);
  for (size_t j = 0; j < m.size(); j++)
    for (size_t i = 0; i < out.size(); i++) out[i] += m[j][i] * x[j];
  return out;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  Mat out;
  out.reserve(b.size());
  for (const Vec& col : b) out.push_back(mat_vec(a, col));
  return out;
}

Vec vec_add(const Vec& a, const Vec& b) {
  Vec out(a);
  for (size_t i = 0; i < out.size(); i++) out[i] += b[i];
  return out;
}

Vec vec_sub(const Vec& a, const Vec& b) {
  Vec out(a);
  for (size_t i = 0; i < out.size(); i++) out[i] -= b[i];
  return out;
}

Vec vec_neg(const Vec& a) {
  Vec out(a);
  for (Int& x : out) x = -x;
  return out;
}

bool vec_is_zero(const Vec& a) {
  for (const Int& x : a)
    if (x != 0) return false;
  return true;
}

std::string vec_str(const Vec& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); i++) {
    if (i) os << ",";
    os << v[i].get_str();
  }
  os << ")";
  return os.str();
}

std::string mat_str(const Mat& m) {
  std::ostringstream os;
  os << "[";
  size_t rows = m.empty() ? 0 : m[0].size();
  for (size_t i = 0; i < rows; i++) {
    if (i) os << ";";
    for (size_t j = 0; j < m.size(); j++) {
      if (j) os << ",";
      os << m[j][i].get_str();
    }
  }
  os << "]";
  return os.str();
}

namespace {

struct Echelon {
  Mat reduced;                // input * transform
  Mat transform;              // unimodular, cols x cols
  std::vector<int> pivotCols; // increasing
  std::vector<int> pivotRows; // strictly increasing
};

void col_axpy(Mat& m, int dst, int src, const Int& t) {
  // column dst += t * column src
  for (size_t i = 0; i < m[dst].size(); i++) m[dst][i] += t * m[src][i];
}

// Column echelon form by unimodular column operations; with normalize, the
// pivot entries are positive and entries of earlier columns in pivot rows are
// reduced into [0, pivot). For square full-rank input this is the column HNF.
Echelon column_echelon(int rows, Mat m, bool normalize) {
  int cols = (int)m.size();
  Echelon e;
  e.transform = identity_mat(cols);
  int next = 0;
  for (int r = 0; r < rows && next < cols; r++) {
    int piv = -1;
    for (int j = next; j < cols; j++)
      if (m[j][r] != 0) { piv = j; break; }
    if (piv < 0) continue;
    std::swap(m[piv], m[next]);
    std::swap(e.transform[piv], e.transform[next]);
    for (int j = next + 1; j < cols; j++) {
      if (m[j][r] == 0) continue;
      // Combine columns next and j so that row r becomes (gcd, 0).
      Int a = m[next][r], b = m[j][r], g, u, v;
      mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t(),
                 b.get_mpz_t());
      Int ag = a / g, bg = b / g;
      Vec c1 = m[next], c2 = m[j];
      Vec t1 = e.transform[next], t2 = e.transform[j];
      for (int i = 0; i < rows; i++) {
        m[next][i] = u * c1[i] + v * c2[i];
        m[j][i] = ag * c2[i] - bg * c1[i];
      }
      for (int i = 0; i < cols; i++) {
        e.transform[next][i] = u * t1[i] + v * t2[i];
        e.transform[j][i] = ag * t2[i] - bg * t1[i];
      }
    }
    if (m[next][r] < 0) {
      for (int i = 0; i < rows; i++) m[next][i] = -m[next][i];
      for (int i = 0; i < cols; i++) e.transform[next][i] = -e.transform[next][i];
    }
    e.pivotCols.push_back(next);
    e.pivotRows.push_back(r);
    next++;
  }
  if (normalize) {
    for (size_t k = 0; k < e.pivotCols.size(); k++) {
      int c = e.pivotCols[k], r = e.pivotRows[k];
      for (int j = 0; j < c; j++) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), m[j][r].get_mpz_t(), m[c][r].get_mpz_t());
        if (q != 0) {
          col_axpy(m, j, c, -q);
          col_axpy(e.transform, j, c, -q);
        }
      }
    }
  }
  e.reduced = std::move(m);
  return e;
}

int mat_rows(const Mat& m) { return m.empty() ? 0 : (int)m[0].size(); }

} // namespace

Mat hnf(const Mat& m) {
  int n = mat_rows(m);
  if ((int)m.size() != n || n == 0) structural_error("hnf: matrix must be square");
  Echelon e = column_echelon(n, m, true);
  if ((int)e.pivotCols.size() != n) validation_error("hnf: singular matrix");
  return e.reduced;
}

Mat hnf_span(int rows, const Mat& cols) {
  if (cols.empty()) return {};
  Echelon e = column_echelon(rows, cols, true);
  Mat out;
  for (int c : e.pivotCols) out.push_back(e.reduced[c]);
  return out;
}

Int det(const Mat& m) {
  int n = mat_rows(m);
  if ((int)m.size() != n) structural_error("det: matrix must be square");
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Int d = 0;
  for (int j = 0; j < n; j++) {
    if (m[j][0] == 0) continue;
    Mat minor;
    for (int jj = 0; jj < n; jj++) {
      if (jj == j) continue;
      Vec col(m[jj].begin() + 1, m[jj].end());
      minor.push_back(col);
    }
    Int term = m[j][0] * det(minor);
    if (j % 2) d -= term; else d += term;
  }
  return d;
}

Int det_abs(const Mat& m) {
  Int d = det(m);
  return d < 0 ? Int(-d) : d;
}

std::optional<Vec> solve_lower(const Mat& L, const Vec& b) {
  int n = mat_rows(L);
  Vec residual = b, x(n, 0);
  for (int i = 0; i < n; i++) {
    // After subtracting earlier columns, only column i feeds row i.
    if (L[i][i] == 0) return std::nullopt;
    Int q, rem;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), residual[i].get_mpz_t(),
                L[i][i].get_mpz_t());
    if (rem != 0) return std::nullopt;
    x[i] = q;
    for (int r = i; r < n; r++) residual[r] -= q * L[i][r];
  }
  for (int r = 0; r < n; r++)
    if (residual[r] != 0) return std::nullopt;
  return x;
}

bool in_lattice(const Mat& L, const Vec& b) { return solve_lower(L, b).has_value(); }

Reduced reduce_mod(const Mat& L, const Vec& b) {
  int n = mat_rows(L);
  Reduced out;
  out.r = b;
  out.s.assign(n, 0);
  for (int i = 0; i < n; i++) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), out.r[i].get_mpz_t(), L[i][i].get_mpz_t());
    if (q != 0) {
      out.s[i] = q;
      for (int r = i; r < n; r++) out.r[r] -= q * L[i][r];
    }
  }
  return out;
}

Mat lattice_intersect(const Mat& a, const Mat& b) {
  int n = mat_rows(a);
  Mat stacked;
  for (const Vec& col : a) stacked.push_back(col);
  for (const Vec& col : b) stacked.push_back(vec_neg(col));
  Echelon e = column_echelon(n, stacked, false);
  Mat gens;
  for (size_t j = 0; j < stacked.size(); j++) {
    bool pivot = false;
    for (int c : e.pivotCols) pivot |= (c == (int)j);
    if (pivot) continue;
    if (!vec_is_zero(e.reduced[j]))
      structural_error("lattice_intersect: non-pivot column not in kernel");
    // Kernel column: top half gives coordinates in lattice a.
    Vec top(e.transform[j].begin(), e.transform[j].begin() + a.size());
    gens.push_back(mat_vec(a, top));
  }
  Mat span = hnf_span(n, gens);
  if ((int)span.size() != n)
    validation_error("lattice_intersect: intersection not full rank");
  return hnf(span);
}

Mat lattice_sum(const Mat& a, const Mat& b) {
  int n = mat_rows(a);
  Mat stacked;
  for (const Vec& col : a) stacked.push_back(col);
  for (const Vec& col : b) stacked.push_back(col);
  Mat span = hnf_span(n, stacked);
  if ((int)span.size() != n) validation_error("lattice_sum: not full rank");
  return hnf(span);
}

Mat congruence_sublattice(const Mat& L, const Vec& w, const Int& d) {
  int k = (int)L.size();
  // Solutions s of w . s == 0 (mod d) are the first k coordinates of the
  // kernel of the single row [w | d].
  Mat row;
  for (int j = 0; j < k; j++) row.push_back(Vec{w[j]});
  row.push_back(Vec{d});
  Echelon e = column_echelon(1, row, false);
  Mat gens;
  for (size_t j = 0; j < row.size(); j++) {
    bool pivot = !e.pivotCols.empty() && e.pivotCols[0] == (int)j;
    if (pivot) continue;
    Vec s(e.transform[j].begin(), e.transform[j].begin() + k);
    gens.push_back(mat_vec(L, s));
  }
  Mat span = hnf_span(mat_rows(L), gens);
  if ((int)span.size() != mat_rows(L))
    validation_error("congruence_sublattice: not full rank");
  return hnf(span);
}

std::optional<Vec> solve_integer(int rows, const Mat& A, const Vec& b) {
  Echelon e = column_echelon(rows, A, false);
  Vec residual = b;
  Vec x((int)A.size(), 0);
  Vec y(e.pivotCols.size(), 0);
  for (size_t k = 0; k < e.pivotCols.size(); k++) {
    int c = e.pivotCols[k], r = e.pivotRows[k];
    Int q, rem;
    if (e.reduced[c][r] == 0) return std::nullopt;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), residual[r].get_mpz_t(),
                e.reduced[c][r].get_mpz_t());
    if (rem != 0) return std::nullopt;
    y[k] = q;
    for (int i = 0; i < rows; i++) residual[i] -= q * e.reduced[c][i];
  }
  for (int i = 0; i < rows; i++)
    if (residual[i] != 0) return std::nullopt;
  for (size_t k = 0; k < e.pivotCols.size(); k++)
    for (size_t i = 0; i < x.size(); i++)
      x[i] += y[k] * e.transform[e.pivotCols[k]][i];
  return x;
}

HnfTransform hnf_transform(const Mat& m) {
  int n = mat_rows(m);
  if ((int)m.size() != n || n == 0)
    structural_error("hnf_transform: matrix must be square");
  Echelon e = column_echelon(n, m, true);
  if ((int)e.pivotCols.size() != n)
    validation_error("hnf_transform: singular matrix");
  return {e.reduced, e.transform};
}

Int crt(const Int& r1, const Int& m1, const Int& r2, const Int& m2) {
  Int g, u, v;
  mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), m1.get_mpz_t(),
             m2.get_mpz_t());
  Int diff = r2 - r1;
  if (diff % g != 0) validation_error("crt: incompatible congruences");
  Int l = lcm(m1, m2);
  Int x = r1 + m1 * (diff / g) * u;
  return mod_pos(x, l);
}

Int lcm(const Int& a, const Int& b) {
  Int g = gcd(a, b);
  if (g == 0) return 0;
  Int l = a / g * b;
  return l < 0 ? Int(-l) : l;
}

Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int mod_pos(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

} // namespace chaincalc
