#pragma once

#include "periodscope/mpoly.hpp"

namespace ps {

// Rational function num/den, reduced, denominator integer-primitive with
// positive leading coefficient under the ring order.
class RatFun {
 public:
  RatFun() : n_(0), d_(MPoly::constant(0, Rat(1))) {}
  explicit RatFun(int nvars)
      : n_(nvars), d_(MPoly::constant(nvars, Rat(1))) {}
  RatFun(const MPoly& num);  // NOLINT (implicit poly -> ratfun)
  RatFun(const MPoly& num, const MPoly& den);
  static RatFun constant(int nvars, const Rat& c) {
    return RatFun(MPoly::constant(nvars, c));
  }
  static RatFun parse(const std::string& s, const std::vector<std::string>& names);

  int nvars() const { return n_.nvars(); }
  const MPoly& num() const { return n_; }
  const MPoly& den() const { return d_; }
  bool is_zero() const { return n_.is_zero(); }
  bool is_polynomial() const { return d_.is_constant(); }
  bool is_constant() const { return n_.is_constant() && d_.is_constant(); }
  Rat constant_value() const { return n_.constant_value() / d_.constant_value(); }

  RatFun operator-() const;
  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
  RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
  RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
  RatFun& operator/=(const RatFun& o) { return *this = *this / o; }
  friend RatFun operator+(const RatFun& a, const RatFun& b);
  friend RatFun operator-(const RatFun& a, const RatFun& b);
  friend RatFun operator*(const RatFun& a, const RatFun& b);
  friend RatFun operator/(const RatFun& a, const RatFun& b);
  RatFun inv() const;

  bool operator==(const RatFun& o) const { return n_ == o.n_ && d_ == o.d_; }
  bool operator!=(const RatFun& o) const { return !(*this == o); }

  RatFun derivative(int var) const;
  RatFun log_derivative(int var) const;  // z_i d/dz_i

  // Evaluation; throws if the denominator vanishes.
  Rat eval(const std::vector<Rat>& point) const;
  bool regular_at(const std::vector<Rat>& point) const;

  // Substitute z_var = value after cancelling common (z_var - value) factors.
  // Throws if the result still has a vanishing denominator (genuine pole).
  RatFun restrict_var(int var, const Rat& value) const;

  RatFun shift(const std::vector<Rat>& a) const;
  RatFun subs_scale(const std::vector<Rat>& s) const;
  // z_j -> prod_i u_i^{E[i][j]} (integer exponents, possibly negative).
  RatFun subs_monomial(const std::vector<std::vector<long>>& E) const;

  std::string str(const std::vector<std::string>& names = {}) const;

 private:
  void normalize();
  MPoly n_, d_;
};

}  // namespace ps
