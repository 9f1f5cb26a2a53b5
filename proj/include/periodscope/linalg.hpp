#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "periodscope/ratfun.hpp"

namespace ps {

// Dense matrix over an arbitrary field element type with exact arithmetic.
template <typename T>
class Mat {
 public:
  Mat() : r_(0), c_(0) {}
  Mat(int rows, int cols, T zero) : r_(rows), c_(cols), e_((size_t)rows * cols, zero) {}

  int rows() const { return r_; }
  int cols() const { return c_; }
  T& at(int i, int j) { return e_[(size_t)i * c_ + j]; }
  const T& at(int i, int j) const { return e_[(size_t)i * c_ + j]; }

  bool operator==(const Mat& o) const {
    return r_ == o.r_ && c_ == o.c_ && e_ == o.e_;
  }

 private:
  int r_, c_;
  std::vector<T> e_;
};

using QMat = Mat<Rat>;
using FMat = Mat<RatFun>;

QMat qmat_zero(int n, int m);
QMat qmat_identity(int n);
QMat qmat_add(const QMat& a, const QMat& b);
QMat qmat_sub(const QMat& a, const QMat& b);
QMat qmat_mul(const QMat& a, const QMat& b);
QMat qmat_scale(const QMat& a, const Rat& c);
QMat qmat_transpose(const QMat& a);
QMat qmat_pow(const QMat& a, int k);
int qmat_rank(QMat a);
bool qmat_is_zero(const QMat& a);
// Column basis of the kernel / image.
QMat qmat_kernel(const QMat& a);
QMat qmat_image(const QMat& a);
std::optional<QMat> qmat_inverse(const QMat& a);
Rat qmat_det(QMat a);

// Column-span subspace helpers (bases stored as matrix columns).
QMat span_columns(const QMat& gens);                 // reduced basis
QMat span_sum(const QMat& a, const QMat& b);
QMat span_intersect(const QMat& a, const QMat& b);
bool span_contains(const QMat& space, const QMat& vecs);
int span_dim(const QMat& a);
QMat span_preimage(const QMat& f, const QMat& space);  // f^{-1}(space)

// Characteristic polynomial coefficients (monic, degree n: c[0] + c[1]x + ... + x^n).
std::vector<Rat> char_poly(const QMat& a);
// Rational roots with multiplicities of a univariate polynomial given by its
// coefficient list (low to high); *complete set false when a nontrivial
// factor without rational roots remains.
std::vector<std::pair<Rat, int>> rational_roots(std::vector<Rat> poly,
                                                bool* complete);
// All rational roots with multiplicities; second value false if non-rational
// eigenvalues remain.
std::pair<std::vector<std::pair<Rat, int>>, bool> rational_eigenvalues(const QMat& a);

// Matrices over the rational-function field --------------------------------

FMat fmat_zero(int n, int m, int nvars);
FMat fmat_identity(int n, int nvars);
FMat fmat_add(const FMat& a, const FMat& b);
FMat fmat_sub(const FMat& a, const FMat& b);
FMat fmat_mul(const FMat& a, const FMat& b);
FMat fmat_map(const FMat& a, const std::function<RatFun(const RatFun&)>& f);
std::optional<FMat> fmat_inverse(const FMat& a);
bool fmat_is_zero(const FMat& a);
QMat fmat_eval(const FMat& a, const std::vector<Rat>& point);

// Outcome of exact linear solving over the rational-function field.
struct LinSolve {
  bool consistent = true;
  int failed_row = -1;          // witness row when inconsistent
  std::vector<RatFun> particular;
  std::vector<std::vector<RatFun>> kernel;  // basis of the null space
};

// Solves M x = b by fraction-free (Bareiss) elimination after clearing row
// denominators; returns a particular solution and a kernel basis.
LinSolve solve_linear(const FMat& m, const std::vector<RatFun>& b);

}  // namespace ps
