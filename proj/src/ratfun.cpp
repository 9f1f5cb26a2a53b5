#include "periodscope/ratfun.hpp"

namespace ps {

RatFun::RatFun(const MPoly& num)
    : n_(num), d_(MPoly::constant(num.nvars(), Rat(1))) {}

RatFun::RatFun(const MPoly& num, const MPoly& den) : n_(num), d_(den) {
  if (den.is_zero()) throw std::domain_error("RatFun: zero denominator");
  normalize();
}

void RatFun::normalize() {
  if (n_.is_zero()) {
    d_ = MPoly::constant(n_.nvars(), Rat(1));
    return;
  }
  if (!d_.is_constant()) {
    MPoly g = gcd(n_, d_);
    if (!g.is_constant()) {
      n_ = n_.divide_exact(g);
      d_ = d_.divide_exact(g);
    }
  }
  Rat c = d_.signed_content();
  d_ = d_.primitive_part();
  n_ = n_.scaled(c.inv());
}

RatFun RatFun::operator-() const {
  RatFun r = *this;
  r.n_ = -r.n_;
  return r;
}

namespace {

RatFun add_impl(const RatFun& a, const RatFun& b, bool negate) {
  const MPoly& bn_raw = b.num();
  MPoly bn = negate ? -bn_raw : bn_raw;
  if (a.is_zero()) return RatFun(bn, b.den());
  if (b.is_zero()) return a;
  if (a.den() == b.den()) return RatFun(a.num() + bn, a.den());
  MPoly g = gcd(a.den(), b.den());
  if (g.is_constant())
    return RatFun(a.num() * b.den() + bn * a.den(), a.den() * b.den());
  MPoly da = a.den().divide_exact(g), db = b.den().divide_exact(g);
  return RatFun(a.num() * db + bn * da, a.den() * db);
}

}  // namespace

RatFun operator+(const RatFun& a, const RatFun& b) {
  return add_impl(a, b, false);
}

RatFun operator-(const RatFun& a, const RatFun& b) {
  return add_impl(a, b, true);
}

RatFun operator*(const RatFun& a, const RatFun& b) {
  if (a.is_zero() || b.is_zero()) return RatFun(a.nvars());
  // Cross-cancel before multiplying to limit growth.
  MPoly g1 = gcd(a.n_, b.d_), g2 = gcd(b.n_, a.d_);
  MPoly an = g1.is_constant() ? a.n_ : a.n_.divide_exact(g1);
  MPoly bd = g1.is_constant() ? b.d_ : b.d_.divide_exact(g1);
  MPoly bn = g2.is_constant() ? b.n_ : b.n_.divide_exact(g2);
  MPoly ad = g2.is_constant() ? a.d_ : a.d_.divide_exact(g2);
  return RatFun(an * bn, ad * bd);
}

RatFun operator/(const RatFun& a, const RatFun& b) {
  if (b.is_zero()) throw std::domain_error("RatFun: division by zero");
  return a * b.inv();
}

RatFun RatFun::inv() const {
  if (is_zero()) throw std::domain_error("RatFun: inverse of zero");
  return RatFun(d_, n_);
}

RatFun RatFun::derivative(int var) const {
  if (is_polynomial()) return RatFun(n_.derivative(var), d_);
  return RatFun(n_.derivative(var) * d_ - n_ * d_.derivative(var), d_ * d_);
}

RatFun RatFun::log_derivative(int var) const {
  if (is_polynomial()) return RatFun(n_.log_derivative(var), d_);
  return RatFun(n_.log_derivative(var) * d_ - n_ * d_.log_derivative(var),
                d_ * d_);
}

Rat RatFun::eval(const std::vector<Rat>& point) const {
  Rat dv = d_.eval(point);
  if (dv.is_zero()) throw std::domain_error("RatFun: pole at evaluation point");
  return n_.eval(point) / dv;
}

bool RatFun::regular_at(const std::vector<Rat>& point) const {
  return !d_.eval(point).is_zero();
}

RatFun RatFun::restrict_var(int var, const Rat& value) const {
  MPoly n = n_, d = d_;
  if (d.eval_partial(var, value).is_zero()) {
    // Cancel common powers of (z_var - value).
    MPoly lin = MPoly::var(nvars(), var) -
                MPoly::constant(nvars(), value);
    while (true) {
      MPoly qn, qd;
      if (n.try_divide(lin, &qn) && d.try_divide(lin, &qd)) {
        n = qn;
        d = qd;
      } else {
        break;
      }
    }
  }
  MPoly nr = n.eval_partial(var, value);
  MPoly dr = d.eval_partial(var, value);
  if (dr.is_zero())
    throw std::domain_error("RatFun: pole along restriction");
  return RatFun(nr, dr);
}

RatFun RatFun::shift(const std::vector<Rat>& a) const {
  return RatFun(n_.shift(a), d_.shift(a));
}

RatFun RatFun::subs_scale(const std::vector<Rat>& s) const {
  return RatFun(n_.subs_scale(s), d_.subs_scale(s));
}

namespace {

// Substitutes the monomial map into a polynomial; returns a Laurent result as
// (numerator, clearing monomial) with p(z) = num / u^clear.
std::pair<MPoly, Expo> subs_monomial_poly(
    const MPoly& p, const std::vector<std::vector<long>>& E) {
  int nv = p.nvars();
  // Image exponent of z^e is sum_j e_j * E[.][j] (possibly negative entries).
  std::vector<Expo> images;
  std::vector<Rat> coeffs;
  Expo min_e(nv, 0);
  for (auto& [e, c] : p.terms()) {
    Expo img(nv, 0);
    for (int j = 0; j < nv; ++j)
      for (int i = 0; i < nv; ++i) img[i] += (int)(E[i][j] * e[j]);
    for (int i = 0; i < nv; ++i) min_e[i] = std::min(min_e[i], img[i]);
    images.push_back(img);
    coeffs.push_back(c);
  }
  Expo clear(nv, 0);
  for (int i = 0; i < nv; ++i) clear[i] = -min_e[i];
  MPoly num(nv);
  for (size_t k = 0; k < images.size(); ++k)
    num.add_term(expo_add(images[k], clear), coeffs[k]);
  return {num, clear};
}

}  // namespace

RatFun RatFun::subs_monomial(const std::vector<std::vector<long>>& E) const {
  auto [nn, cn] = subs_monomial_poly(n_, E);
  auto [dd, cd] = subs_monomial_poly(d_, E);
  // n/d -> (nn/u^cn) / (dd/u^cd) = nn*u^cd / (dd*u^cn)
  MPoly num = nn * MPoly::monomial(nvars(), cd, Rat(1));
  MPoly den = dd * MPoly::monomial(nvars(), cn, Rat(1));
  return RatFun(num, den);
}

std::string RatFun::str(const std::vector<std::string>& names) const {
  if (is_polynomial()) {
    if (d_.constant_value().is_one()) return n_.str(names);
    return "(" + n_.str(names) + ")/" + d_.constant_value().str();
  }
  return "(" + n_.str(names) + ")/(" + d_.str(names) + ")";
}

RatFun RatFun::parse(const std::string& s,
                     const std::vector<std::string>& names) {
  // Accept "p" or "(p)/(q)" or "p/q" with q free of '/'.
  int depth = 0;
  long split = -1;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == '/' && depth == 0) {
      split = (long)i;
      break;
    }
  }
  if (split < 0) return RatFun(MPoly::parse(s, names));
  MPoly n = MPoly::parse(s.substr(0, split), names);
  MPoly d = MPoly::parse(s.substr(split + 1), names);
  return RatFun(n, d);
}

}  // namespace ps
