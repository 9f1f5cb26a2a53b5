#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ps {

using Int = mpz_class;

// Arbitrary-precision rational, always canonical (gcd 1, positive denominator).
class Rat {
 public:
  Rat() : q_(0) {}
  Rat(long n) : q_(static_cast<signed long>(n)) {}
  Rat(int n) : q_(n) {}
  explicit Rat(const Int& n) : q_(n) {}
  Rat(long num, long den) : q_(num, den) {
    if (den == 0) throw std::domain_error("Rat: zero denominator");
    q_.canonicalize();
  }
  Rat(const Int& num, const Int& den) : q_(num, den) {
    if (den == 0) throw std::domain_error("Rat: zero denominator");
    q_.canonicalize();
  }
  explicit Rat(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  static Rat parse(const std::string& s);

  Int num() const { return q_.get_num(); }
  Int den() const { return q_.get_den(); }

  bool is_zero() const { return q_ == 0; }
  bool is_one() const { return q_ == 1; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  // Throws unless the value is an integer that fits a long.
  long to_long() const;

  Rat operator-() const { return Rat(mpq_class(-q_)); }
  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw std::domain_error("Rat: division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.q_ < b.q_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.q_ <= b.q_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.q_ > b.q_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.q_ >= b.q_; }

  Rat inv() const {
    if (is_zero()) throw std::domain_error("Rat: inverse of zero");
    return Rat(mpq_class(1) / q_);
  }

  Rat pow(long e) const;
  Rat abs() const { return sign() < 0 ? -*this : *this; }

  std::string str() const;

 private:
  mpq_class q_;
};

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);

}  // namespace ps
