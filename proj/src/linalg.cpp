#include "periodscope/linalg.hpp"

#include <algorithm>

namespace ps {

QMat qmat_zero(int n, int m) { return QMat(n, m, Rat(0)); }

QMat qmat_identity(int n) {
  QMat r = qmat_zero(n, n);
  for (int i = 0; i < n; ++i) r.at(i, i) = Rat(1);
  return r;
}

QMat qmat_add(const QMat& a, const QMat& b) {
  QMat r = a;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.at(i, j) += b.at(i, j);
  return r;
}

QMat qmat_sub(const QMat& a, const QMat& b) {
  QMat r = a;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.at(i, j) -= b.at(i, j);
  return r;
}

QMat qmat_mul(const QMat& a, const QMat& b) {
  QMat r = qmat_zero(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      if (a.at(i, k).is_zero()) continue;
      for (int j = 0; j < b.cols(); ++j)
        r.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return r;
}

QMat qmat_scale(const QMat& a, const Rat& c) {
  QMat r = a;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.at(i, j) *= c;
  return r;
}

QMat qmat_transpose(const QMat& a) {
  QMat r = qmat_zero(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.at(j, i) = a.at(i, j);
  return r;
}

QMat qmat_pow(const QMat& a, int k) {
  QMat r = qmat_identity(a.rows());
  for (int i = 0; i < k; ++i) r = qmat_mul(r, a);
  return r;
}

bool qmat_is_zero(const QMat& a) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (!a.at(i, j).is_zero()) return false;
  return true;
}

namespace {

// Row echelon form in place; returns pivot columns.
std::vector<int> rref(QMat& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int piv = -1;
    for (int i = row; i < m.rows(); ++i)
      if (!m.at(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(row, j));
    Rat inv = m.at(row, col).inv();
    for (int j = 0; j < m.cols(); ++j) m.at(row, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || m.at(i, col).is_zero()) continue;
      Rat f = m.at(i, col);
      for (int j = 0; j < m.cols(); ++j)
        m.at(i, j) -= f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

int qmat_rank(QMat a) { return (int)rref(a).size(); }

QMat qmat_kernel(const QMat& a) {
  QMat m = a;
  std::vector<int> pivots = rref(m);
  std::vector<bool> is_pivot(a.cols(), false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<int> free_cols;
  for (int j = 0; j < a.cols(); ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  QMat k = qmat_zero(a.cols(), (int)free_cols.size());
  for (size_t fi = 0; fi < free_cols.size(); ++fi) {
    int f = free_cols[fi];
    k.at(f, (int)fi) = Rat(1);
    for (size_t r = 0; r < pivots.size(); ++r)
      k.at(pivots[r], (int)fi) = -m.at((int)r, f);
  }
  return k;
}

QMat qmat_image(const QMat& a) { return span_columns(a); }

std::optional<QMat> qmat_inverse(const QMat& a) {
  int n = a.rows();
  QMat m = qmat_zero(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m.at(i, j) = a.at(i, j);
    m.at(i, n + i) = Rat(1);
  }
  std::vector<int> piv = rref(m);
  if ((int)piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  QMat r = qmat_zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.at(i, j) = m.at(i, n + j);
  return r;
}

Rat qmat_det(QMat a) {
  int n = a.rows();
  Rat det(1);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (!a.at(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) return Rat(0);
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(col, j));
      det = -det;
    }
    det *= a.at(col, col);
    Rat inv = a.at(col, col).inv();
    for (int i = col + 1; i < n; ++i) {
      if (a.at(i, col).is_zero()) continue;
      Rat f = a.at(i, col) * inv;
      for (int j = col; j < n; ++j) a.at(i, j) -= f * a.at(col, j);
    }
  }
  return det;
}

QMat span_columns(const QMat& gens) {
  // Reduce the transpose; nonzero rows give a canonical basis.
  QMat t = qmat_transpose(gens);
  std::vector<int> piv = rref(t);
  QMat r = qmat_zero(gens.rows(), (int)piv.size());
  for (size_t i = 0; i < piv.size(); ++i)
    for (int j = 0; j < gens.rows(); ++j) r.at(j, (int)i) = t.at((int)i, j);
  return r;
}

QMat span_sum(const QMat& a, const QMat& b) {
  QMat m = qmat_zero(a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols(); ++j) m.at(i, a.cols() + j) = b.at(i, j);
  }
  return span_columns(m);
}

QMat span_intersect(const QMat& a, const QMat& b) {
  // Kernel of [A | -B] gives coefficients with A u = B v.
  QMat m = qmat_zero(a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols(); ++j) m.at(i, a.cols() + j) = -b.at(i, j);
  }
  QMat k = qmat_kernel(m);
  QMat gens = qmat_zero(a.rows(), k.cols());
  for (int c = 0; c < k.cols(); ++c)
    for (int i = 0; i < a.rows(); ++i) {
      Rat v(0);
      for (int j = 0; j < a.cols(); ++j) v += a.at(i, j) * k.at(j, c);
      gens.at(i, c) = v;
    }
  return span_columns(gens);
}

bool span_contains(const QMat& space, const QMat& vecs) {
  QMat joint = span_sum(space, vecs);
  return span_dim(joint) == span_dim(space);
}

int span_dim(const QMat& a) { return qmat_rank(a); }

QMat span_preimage(const QMat& f, const QMat& space) {
  // Solve f x in span(space): kernel of projection onto a complement.
  // Equivalent: x with [f | -space] (x, y)^t = 0 projected to x.
  QMat m = qmat_zero(f.rows(), f.cols() + space.cols());
  for (int i = 0; i < f.rows(); ++i) {
    for (int j = 0; j < f.cols(); ++j) m.at(i, j) = f.at(i, j);
    for (int j = 0; j < space.cols(); ++j)
      m.at(i, f.cols() + j) = -space.at(i, j);
  }
  QMat k = qmat_kernel(m);
  QMat gens = qmat_zero(f.cols(), k.cols());
  for (int c = 0; c < k.cols(); ++c)
    for (int i = 0; i < f.cols(); ++i) gens.at(i, c) = k.at(i, c);
  return span_columns(gens);
}

std::vector<Rat> char_poly(const QMat& a) {
  // Faddeev–LeVerrier: exact over Q.
  int n = a.rows();
  std::vector<Rat> c((size_t)n + 1, Rat(0));
  c[n] = Rat(1);
  QMat m = qmat_zero(n, n);
  for (int k = 1; k <= n; ++k) {
    m = qmat_mul(a, m);
    for (int i = 0; i < n; ++i) m.at(i, i) += c[n - k + 1];
    Rat tr(0);
    QMat am = qmat_mul(a, m);
    for (int i = 0; i < n; ++i) tr += am.at(i, i);
    c[n - k] = tr / Rat(-k);
  }
  return c;
}

std::vector<std::pair<Rat, int>> rational_roots(std::vector<Rat> poly,
                                                bool* complete) {
  std::vector<std::pair<Rat, int>> roots;
  auto eval = [](const std::vector<Rat>& p, const Rat& x) {
    Rat r(0);
    for (long i = (long)p.size() - 1; i >= 0; --i) r = r * x + p[(size_t)i];
    return r;
  };
  auto deflate = [](std::vector<Rat>& p, const Rat& x) {
    std::vector<Rat> q(p.size() - 1, Rat(0));
    Rat carry(0);
    for (long i = (long)p.size() - 1; i >= 1; --i) {
      carry = p[(size_t)i] + carry * x;
      q[(size_t)i - 1] = carry;
    }
    p = q;
  };
  std::vector<Rat> p = poly;
  while (p.size() > 1) {
    // strip zero roots first
    if (p[0].is_zero()) {
      int mult = 0;
      while (p.size() > 1 && p[0].is_zero()) {
        deflate(p, Rat(0));
        ++mult;
      }
      roots.push_back({Rat(0), mult});
      continue;
    }
    // clear denominators, rational-root candidates
    Int dl(1);
    for (auto& ci : p) dl = lcm(dl, ci.den());
    std::vector<Int> ip;
    for (auto& ci : p) ip.push_back((ci * Rat(dl)).num());
    Int a0 = ip[0] < 0 ? Int(-ip[0]) : ip[0];
    Int an = ip.back() < 0 ? Int(-ip.back()) : ip.back();
    bool found = false;
    std::vector<Int> divs_a0, divs_an;
    auto divisors = [](const Int& n) {
      std::vector<Int> d;
      for (Int i = 1; i * i <= n; ++i) {
        if (n % i == 0) {
          d.push_back(i);
          d.push_back(n / i);
        }
      }
      return d;
    };
    divs_a0 = divisors(a0);
    divs_an = divisors(an);
    for (const Int& pnum : divs_a0) {
      for (const Int& qden : divs_an) {
        for (int s = 1; s >= -1; s -= 2) {
          Rat cand(s > 0 ? pnum : Int(-pnum), qden);
          if (eval(p, cand).is_zero()) {
            int mult = 0;
            while (p.size() > 1 && eval(p, cand).is_zero()) {
              deflate(p, cand);
              ++mult;
            }
            roots.push_back({cand, mult});
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) break;
  }
  if (complete) *complete = p.size() <= 1;
  std::sort(roots.begin(), roots.end(),
            [](auto& x, auto& y) { return x.first < y.first; });
  return roots;
}

std::pair<std::vector<std::pair<Rat, int>>, bool> rational_eigenvalues(
    const QMat& a) {
  bool complete = false;
  auto roots = rational_roots(char_poly(a), &complete);
  return {roots, complete};
}

// --------------------------------------------------------------------------

FMat fmat_zero(int n, int m, int nvars) { return FMat(n, m, RatFun(nvars)); }

FMat fmat_identity(int n, int nvars) {
  FMat r = fmat_zero(n, n, nvars);
  for (int i = 0; i < n; ++i) r.at(i, i) = RatFun::constant(nvars, Rat(1));
  return r;
}

FMat fmat_add(const FMat& a, const FMat& b) {
  FMat r = a;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.at(i, j) += b.at(i, j);
  return r;
}

FMat fmat_sub(const FMat& a, const FMat& b) {
  FMat r = a;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.at(i, j) -= b.at(i, j);
  return r;
}

FMat fmat_mul(const FMat& a, const FMat& b) {
  int nv = 0;
  if (a.rows() > 0) nv = a.at(0, 0).nvars();
  FMat r = fmat_zero(a.rows(), b.cols(), nv);
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      if (a.at(i, k).is_zero()) continue;
      for (int j = 0; j < b.cols(); ++j) {
        if (b.at(k, j).is_zero()) continue;
        r.at(i, j) += a.at(i, k) * b.at(k, j);
      }
    }
  return r;
}

FMat fmat_map(const FMat& a, const std::function<RatFun(const RatFun&)>& f) {
  FMat r = a;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.at(i, j) = f(a.at(i, j));
  return r;
}

bool fmat_is_zero(const FMat& a) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (!a.at(i, j).is_zero()) return false;
  return true;
}

QMat fmat_eval(const FMat& a, const std::vector<Rat>& point) {
  QMat r = qmat_zero(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j).eval(point);
  return r;
}

std::optional<FMat> fmat_inverse(const FMat& a) {
  int n = a.rows();
  int nv = n > 0 ? a.at(0, 0).nvars() : 0;
  FMat m = fmat_zero(n, 2 * n, nv);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m.at(i, j) = a.at(i, j);
    m.at(i, n + i) = RatFun::constant(nv, Rat(1));
  }
  int row = 0;
  for (int col = 0; col < n && row < n; ++col) {
    int piv = -1;
    for (int i = row; i < n; ++i)
      if (!m.at(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) return std::nullopt;
    if (piv != row)
      for (int j = 0; j < 2 * n; ++j) std::swap(m.at(piv, j), m.at(row, j));
    RatFun inv = m.at(row, col).inv();
    for (int j = 0; j < 2 * n; ++j) m.at(row, j) *= inv;
    for (int i = 0; i < n; ++i) {
      if (i == row || m.at(i, col).is_zero()) continue;
      RatFun f = m.at(i, col);
      for (int j = 0; j < 2 * n; ++j) m.at(i, j) -= f * m.at(row, j);
    }
    ++row;
  }
  if (row < n) return std::nullopt;
  FMat r = fmat_zero(n, n, nv);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.at(i, j) = m.at(i, n + j);
  return r;
}

LinSolve solve_linear(const FMat& m, const std::vector<RatFun>& b) {
  int rows = m.rows(), cols = m.cols();
  int nv = 0;
  for (int i = 0; i < rows && nv == 0; ++i)
    for (int j = 0; j < cols; ++j)
      if (m.at(i, j).nvars() > 0) {
        nv = m.at(i, j).nvars();
        break;
      }
  for (auto& x : b)
    if (x.nvars() > 0) nv = x.nvars();

  // Clear denominators row by row: polynomial augmented matrix.
  std::vector<std::vector<MPoly>> a(
      (size_t)rows, std::vector<MPoly>((size_t)cols + 1, MPoly(nv)));
  for (int i = 0; i < rows; ++i) {
    MPoly den = MPoly::constant(nv, Rat(1));
    for (int j = 0; j < cols; ++j) den = den * m.at(i, j).den();
    den = den * b[(size_t)i].den();
    // use the least common multiple-ish product; reduce by gcd per entry
    for (int j = 0; j <= cols; ++j) {
      const RatFun& src = j < cols ? m.at(i, j) : b[(size_t)i];
      a[(size_t)i][(size_t)j] = src.num() * den.divide_exact(src.den());
    }
  }

  // Fraction-free Bareiss elimination with column pivot order, row swaps.
  std::vector<int> pivot_col;
  std::vector<int> row_of_pivot;
  MPoly prev = MPoly::constant(nv, Rat(1));
  int row = 0;
  std::vector<int> orig_row((size_t)rows);
  for (int i = 0; i < rows; ++i) orig_row[(size_t)i] = i;
  for (int col = 0; col < cols && row < rows; ++col) {
    int piv = -1;
    for (int i = row; i < rows; ++i)
      if (!a[(size_t)i][(size_t)col].is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[(size_t)piv], a[(size_t)row]);
    std::swap(orig_row[(size_t)piv], orig_row[(size_t)row]);
    for (int i = row + 1; i < rows; ++i) {
      for (int j = col + 1; j <= cols; ++j)
        a[(size_t)i][(size_t)j] =
            (a[(size_t)row][(size_t)col] * a[(size_t)i][(size_t)j] -
             a[(size_t)i][(size_t)col] * a[(size_t)row][(size_t)j])
                .divide_exact(prev);
      a[(size_t)i][(size_t)col] = MPoly(nv);
    }
    prev = a[(size_t)row][(size_t)col];
    pivot_col.push_back(col);
    row_of_pivot.push_back(row);
    ++row;
  }

  LinSolve out;
  // Inconsistency: a zero row with nonzero rhs.
  for (int i = row; i < rows; ++i) {
    if (!a[(size_t)i][(size_t)cols].is_zero()) {
      out.consistent = false;
      out.failed_row = orig_row[(size_t)i];
      return out;
    }
  }

  // Back substitution over the function field.
  std::vector<bool> is_pivot((size_t)cols, false);
  for (int p : pivot_col) is_pivot[(size_t)p] = true;
  std::vector<int> free_cols;
  for (int j = 0; j < cols; ++j)
    if (!is_pivot[(size_t)j]) free_cols.push_back(j);

  auto back_solve = [&](const std::vector<RatFun>& rhs_free,
                        const RatFun& rhs_b) {
    // x[free] fixed; solve pivots bottom-up. rhs_b multiplies the b column.
    std::vector<RatFun> x((size_t)cols, RatFun(nv));
    for (size_t fi = 0; fi < free_cols.size(); ++fi)
      x[(size_t)free_cols[fi]] = rhs_free[fi];
    for (int pi = (int)pivot_col.size() - 1; pi >= 0; --pi) {
      int r = row_of_pivot[(size_t)pi];
      int c = pivot_col[(size_t)pi];
      RatFun acc = RatFun(a[(size_t)r][(size_t)cols]) * rhs_b;
      for (int j = c + 1; j < cols; ++j) {
        if (a[(size_t)r][(size_t)j].is_zero() || x[(size_t)j].is_zero())
          continue;
        acc -= RatFun(a[(size_t)r][(size_t)j]) * x[(size_t)j];
      }
      x[(size_t)c] = acc / RatFun(a[(size_t)r][(size_t)c]);
    }
    return x;
  };

  std::vector<RatFun> zeros(free_cols.size(), RatFun(nv));
  out.particular = back_solve(zeros, RatFun::constant(nv, Rat(1)));
  for (size_t fi = 0; fi < free_cols.size(); ++fi) {
    std::vector<RatFun> e(free_cols.size(), RatFun(nv));
    e[fi] = RatFun::constant(nv, Rat(1));
    out.kernel.push_back(back_solve(e, RatFun(nv)));
  }
  return out;
}

}  // namespace ps
