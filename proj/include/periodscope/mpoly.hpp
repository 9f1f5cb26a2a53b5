#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "periodscope/rat.hpp"

namespace ps {

using Expo = std::vector<int>;

long expo_total(const Expo& e);
Expo expo_add(const Expo& a, const Expo& b);
// a - b, or nullopt if any entry would go negative.
std::optional<Expo> expo_sub(const Expo& a, const Expo& b);

// Graded lexicographic order, z1 > z2 > ... (total degree first, then lex).
struct GrlexLess {
  bool operator()(const Expo& a, const Expo& b) const;
};

// Sparse multivariate polynomial over Q with a fixed number of variables.
class MPoly {
 public:
  using TermMap = std::map<Expo, Rat, GrlexLess>;

  MPoly() : nv_(0) {}
  explicit MPoly(int nvars) : nv_(nvars) {}

  static MPoly constant(int nvars, const Rat& c);
  static MPoly var(int nvars, int i, int e = 1);
  static MPoly monomial(int nvars, const Expo& e, const Rat& c);
  // Accepts +, -, *, ^, parentheses, integers/rationals and variable names.
  static MPoly parse(const std::string& s, const std::vector<std::string>& names);

  int nvars() const { return nv_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const;
  Rat constant_value() const;
  long total_degree() const;  // -1 for the zero polynomial
  long degree_in(int var) const;
  const TermMap& terms() const { return t_; }
  size_t nterms() const { return t_.size(); }

  Rat coeff(const Expo& e) const;
  void add_term(const Expo& e, const Rat& c);

  Rat lead_coeff() const;
  Expo lead_expo() const;

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
  MPoly scaled(const Rat& c) const;
  MPoly pow(long e) const;

  bool operator==(const MPoly& o) const { return nv_ == o.nv_ && t_ == o.t_; }
  bool operator!=(const MPoly& o) const { return !(*this == o); }

  MPoly derivative(int var) const;
  MPoly log_derivative(int var) const;  // z_i * d/dz_i

  // Exact division; returns false if d does not divide *this.
  bool try_divide(const MPoly& d, MPoly* q) const;
  MPoly divide_exact(const MPoly& d) const;

  Rat eval(const std::vector<Rat>& point) const;
  MPoly eval_partial(int var, const Rat& value) const;
  MPoly shift(const std::vector<Rat>& a) const;        // z_i -> z_i + a_i
  MPoly subs_scale(const std::vector<Rat>& s) const;   // z_i -> s_i * z_i

  // c with p = c * primitive_part(p); primitive part has integer coprime
  // coefficients and positive leading coefficient.
  Rat signed_content() const;
  MPoly primitive_part() const;

  std::string str(const std::vector<std::string>& names = {}) const;

 private:
  int nv_;
  TermMap t_;
};

MPoly gcd(const MPoly& p, const MPoly& q);
MPoly resultant(const MPoly& p, const MPoly& q, int var);
MPoly squarefree_part(const MPoly& p);

// Pairwise-coprime refinement of a factor collection (constants dropped,
// duplicates merged). Used to split discriminant loci without factoring.
std::vector<MPoly> coprime_refine(std::vector<MPoly> fs);

std::vector<std::string> default_var_names(int nvars);

}  // namespace ps
