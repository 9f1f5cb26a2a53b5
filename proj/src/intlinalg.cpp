#include "periodscope/intlinalg.hpp"

#include <algorithm>

namespace ps {

IMat imat_identity(int n) {
  IMat r((size_t)n, IVec((size_t)n, 0));
  for (int i = 0; i < n; ++i) r[(size_t)i][(size_t)i] = 1;
  return r;
}

IMat imat_mul(const IMat& a, const IMat& b) {
  size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), k = b.size();
  IMat r(n, IVec(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
    }
  return r;
}

IMat imat_transpose(const IMat& a) {
  if (a.empty()) return {};
  IMat r(a[0].size(), IVec(a.size(), 0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[0].size(); ++j) r[j][i] = a[i][j];
  return r;
}

QMat imat_to_q(const IMat& a) {
  int n = (int)a.size(), m = a.empty() ? 0 : (int)a[0].size();
  QMat r = qmat_zero(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) r.at(i, j) = Rat(a[(size_t)i][(size_t)j]);
  return r;
}

int imat_rank(const IMat& a) { return qmat_rank(imat_to_q(a)); }

Int imat_det(const IMat& a) {
  Rat d = qmat_det(imat_to_q(a));
  return d.num();  // determinant of an integer matrix is integral
}

IMat row_hnf(const IMat& a_in) {
  IMat a = a_in;
  size_t rows = a.size();
  if (rows == 0) return a;
  size_t cols = a[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    // Euclidean reduction within column c below row r.
    while (true) {
      size_t piv = rows;
      for (size_t i = r; i < rows; ++i)
        if (a[i][c] != 0 && (piv == rows ||
                             abs(a[i][c]) < abs(a[piv][c])))
          piv = i;
      if (piv == rows) break;
      std::swap(a[r], a[piv]);
      bool done = true;
      for (size_t i = r + 1; i < rows; ++i) {
        if (a[i][c] == 0) continue;
        Int q = a[i][c] / a[r][c];
        // round toward making remainder small in magnitude
        for (size_t j = 0; j < cols; ++j) a[i][j] -= q * a[r][j];
        if (a[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (a[r][c] == 0) continue;
    if (a[r][c] < 0)
      for (size_t j = 0; j < cols; ++j) a[r][j] = -a[r][j];
    // Reduce entries above the pivot.
    for (size_t i = 0; i < r; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
      if (q != 0)
        for (size_t j = 0; j < cols; ++j) a[i][j] -= q * a[r][j];
    }
    ++r;
  }
  a.resize(r);
  return a;
}

IMat integer_kernel(const IMat& a) {
  if (a.empty()) return {};
  size_t rows = a.size(), cols = a[0].size();
  // Column operations on [A; I]; kernel = identity-part columns where A-part is 0.
  IMat m(rows + cols, IVec(cols, 0));
  for (size_t i = 0; i < rows; ++i) m[i] = a[i];
  for (size_t i = 0; i < cols; ++i) m[rows + i][i] = 1;

  size_t c = 0;
  for (size_t r = 0; r < rows && c < cols; ++r) {
    while (true) {
      size_t piv = cols;
      for (size_t j = c; j < cols; ++j)
        if (m[r][j] != 0 && (piv == cols || abs(m[r][j]) < abs(m[r][piv])))
          piv = j;
      if (piv == cols) break;
      for (size_t i = 0; i < rows + cols; ++i) std::swap(m[i][c], m[i][piv]);
      bool done = true;
      for (size_t j = c + 1; j < cols; ++j) {
        if (m[r][j] == 0) continue;
        Int q = m[r][j] / m[r][c];
        for (size_t i = 0; i < rows + cols; ++i) m[i][j] -= q * m[i][c];
        if (m[r][j] != 0) done = false;
      }
      if (done) break;
    }
    if (m[r][c] != 0) ++c;
  }
  IMat kernel;
  for (size_t j = c; j < cols; ++j) {
    bool zero = true;
    for (size_t i = 0; i < rows; ++i)
      if (m[i][j] != 0) {
        zero = false;
        break;
      }
    if (!zero) continue;
    IVec v(cols, 0);
    for (size_t i = 0; i < cols; ++i) v[i] = m[rows + i][j];
    kernel.push_back(v);
  }
  return row_hnf(kernel);
}

std::optional<Int> lattice_index(const IMat& sub, const IMat& full) {
  if (sub.size() != full.size()) return std::nullopt;
  // Solve sub = C * full over Q and require C integral.
  QMat fq = imat_to_q(full);
  QMat ft = qmat_transpose(fq);
  int k = (int)full.size();
  QMat c = qmat_zero(k, k);
  for (int i = 0; i < k; ++i) {
    // solve ft * x = sub_row_i^t
    FMat m = fmat_zero(ft.rows(), ft.cols(), 0);
    for (int r = 0; r < ft.rows(); ++r)
      for (int j = 0; j < ft.cols(); ++j)
        m.at(r, j) = RatFun::constant(0, ft.at(r, j));
    std::vector<RatFun> b;
    for (int r = 0; r < ft.rows(); ++r)
      b.push_back(RatFun::constant(0, Rat(sub[(size_t)i][(size_t)r])));
    LinSolve sol = solve_linear(m, b);
    if (!sol.consistent) return std::nullopt;
    for (int j = 0; j < k; ++j) {
      Rat v = sol.particular[(size_t)j].constant_value();
      if (!v.is_integer()) return std::nullopt;
      c.at(i, j) = v;
    }
  }
  Rat d = qmat_det(c);
  if (d.is_zero()) return std::nullopt;
  Int n = d.num();
  return n < 0 ? Int(-n) : n;
}

IVec primitive(const IVec& v) {
  Int g(0);
  for (auto& x : v) g = gcd(g, x);
  if (g == 0 || g == 1) return v;
  IVec r = v;
  for (auto& x : r) x /= g;
  return r;
}

}  // namespace ps
