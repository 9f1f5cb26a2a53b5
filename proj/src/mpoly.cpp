#include "periodscope/mpoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ps {

long expo_total(const Expo& e) {
  long s = 0;
  for (int x : e) s += x;
  return s;
}

Expo expo_add(const Expo& a, const Expo& b) {
  Expo r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

std::optional<Expo> expo_sub(const Expo& a, const Expo& b) {
  Expo r(a);
  for (size_t i = 0; i < r.size(); ++i) {
    r[i] -= b[i];
    if (r[i] < 0) return std::nullopt;
  }
  return r;
}

bool GrlexLess::operator()(const Expo& a, const Expo& b) const {
  long ta = expo_total(a), tb = expo_total(b);
  if (ta != tb) return ta < tb;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

MPoly MPoly::constant(int nvars, const Rat& c) {
  MPoly p(nvars);
  if (!c.is_zero()) p.t_[Expo(nvars, 0)] = c;
  return p;
}

MPoly MPoly::var(int nvars, int i, int e) {
  Expo ex(nvars, 0);
  ex[i] = e;
  return monomial(nvars, ex, Rat(1));
}

MPoly MPoly::monomial(int nvars, const Expo& e, const Rat& c) {
  MPoly p(nvars);
  if (!c.is_zero()) p.t_[e] = c;
  return p;
}

bool MPoly::is_constant() const {
  if (t_.empty()) return true;
  return t_.size() == 1 && expo_total(t_.begin()->first) == 0;
}

Rat MPoly::constant_value() const {
  if (t_.empty()) return Rat(0);
  if (!is_constant()) throw std::domain_error("MPoly: not constant");
  return t_.begin()->second;
}

long MPoly::total_degree() const {
  if (t_.empty()) return -1;
  return expo_total(t_.rbegin()->first);
}

long MPoly::degree_in(int var) const {
  long d = 0;
  for (auto& [e, c] : t_) d = std::max(d, (long)e[var]);
  return d;
}

Rat MPoly::coeff(const Expo& e) const {
  auto it = t_.find(e);
  return it == t_.end() ? Rat(0) : it->second;
}

void MPoly::add_term(const Expo& e, const Rat& c) {
  if (c.is_zero()) return;
  auto it = t_.find(e);
  if (it == t_.end()) {
    t_[e] = c;
  } else {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

Rat MPoly::lead_coeff() const {
  if (t_.empty()) return Rat(0);
  return t_.rbegin()->second;
}

Expo MPoly::lead_expo() const {
  if (t_.empty()) throw std::domain_error("MPoly: lead_expo of zero");
  return t_.rbegin()->first;
}

MPoly MPoly::operator-() const {
  MPoly r(nv_);
  for (auto& [e, c] : t_) r.t_[e] = -c;
  return r;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  for (auto& [e, c] : o.t_) add_term(e, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  for (auto& [e, c] : o.t_) add_term(e, -c);
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  MPoly r(a.nv_);
  for (auto& [ea, ca] : a.t_)
    for (auto& [eb, cb] : b.t_) r.add_term(expo_add(ea, eb), ca * cb);
  return r;
}

MPoly MPoly::scaled(const Rat& c) const {
  MPoly r(nv_);
  if (c.is_zero()) return r;
  for (auto& [e, k] : t_) r.t_[e] = k * c;
  return r;
}

MPoly MPoly::pow(long e) const {
  if (e < 0) throw std::domain_error("MPoly: negative power");
  MPoly r = constant(nv_, Rat(1));
  MPoly base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

MPoly MPoly::derivative(int var) const {
  MPoly r(nv_);
  for (auto& [e, c] : t_) {
    if (e[var] == 0) continue;
    Expo e2(e);
    e2[var] -= 1;
    r.add_term(e2, c * Rat(e[var]));
  }
  return r;
}

MPoly MPoly::log_derivative(int var) const {
  MPoly r(nv_);
  for (auto& [e, c] : t_) {
    if (e[var] == 0) continue;
    r.add_term(e, c * Rat(e[var]));
  }
  return r;
}

bool MPoly::try_divide(const MPoly& d, MPoly* q) const {
  if (d.is_zero()) return false;
  MPoly rem = *this;
  MPoly quo(nv_);
  const Expo de = d.lead_expo();
  const Rat dc = d.lead_coeff();
  while (!rem.is_zero()) {
    auto diff = expo_sub(rem.lead_expo(), de);
    if (!diff) return false;
    Rat c = rem.lead_coeff() / dc;
    MPoly m = monomial(nv_, *diff, c);
    quo += m;
    rem -= m * d;
  }
  if (q) *q = quo;
  return true;
}

MPoly MPoly::divide_exact(const MPoly& d) const {
  MPoly q;
  if (!try_divide(d, &q)) throw std::domain_error("MPoly: inexact division");
  return q;
}

Rat MPoly::eval(const std::vector<Rat>& point) const {
  Rat r(0);
  for (auto& [e, c] : t_) {
    Rat m = c;
    for (int i = 0; i < nv_; ++i)
      if (e[i] != 0) m *= point[i].pow(e[i]);
    r += m;
  }
  return r;
}

MPoly MPoly::eval_partial(int var, const Rat& value) const {
  MPoly r(nv_);
  for (auto& [e, c] : t_) {
    Expo e2(e);
    int k = e2[var];
    e2[var] = 0;
    r.add_term(e2, c * value.pow(k));
  }
  return r;
}

MPoly MPoly::shift(const std::vector<Rat>& a) const {
  MPoly cur = *this;
  for (int v = 0; v < nv_; ++v) {
    if (a[v].is_zero()) continue;
    // Horner in variable v with polynomial coefficients.
    long d = cur.degree_in(v);
    std::vector<MPoly> coeffs((size_t)d + 1, MPoly(nv_));
    for (auto& [e, c] : cur.t_) {
      Expo e2(e);
      int k = e2[v];
      e2[v] = 0;
      coeffs[k].add_term(e2, c);
    }
    MPoly zv = var(nv_, v) + constant(nv_, a[v]);
    MPoly acc(nv_);
    for (long k = d; k >= 0; --k) acc = acc * zv + coeffs[k];
    cur = acc;
  }
  return cur;
}

MPoly MPoly::subs_scale(const std::vector<Rat>& s) const {
  MPoly r(nv_);
  for (auto& [e, c] : t_) {
    Rat m = c;
    for (int i = 0; i < nv_; ++i)
      if (e[i] != 0) m *= s[i].pow(e[i]);
    r.add_term(e, m);
  }
  return r;
}

Rat MPoly::signed_content() const {
  if (t_.empty()) return Rat(0);
  Int num_gcd(0), den_lcm(1);
  for (auto& [e, c] : t_) {
    num_gcd = gcd(num_gcd, c.num());
    den_lcm = lcm(den_lcm, c.den());
  }
  Rat c(num_gcd, den_lcm);
  if (lead_coeff().sign() < 0) c = -c;
  return c;
}

MPoly MPoly::primitive_part() const {
  if (t_.empty()) return *this;
  Rat c = signed_content();
  MPoly r(nv_);
  for (auto& [e, k] : t_) r.t_[e] = k / c;
  return r;
}

// ---------------------------------------------------------------------------
// gcd via primitive pseudo-remainder sequences

namespace {

// Univariate view in variable v: degree -> coefficient polynomial.
std::map<int, MPoly> uni_view(const MPoly& p, int v) {
  std::map<int, MPoly> r;
  for (auto& [e, c] : p.terms()) {
    Expo e2(e);
    int k = e2[v];
    e2[v] = 0;
    auto it = r.find(k);
    if (it == r.end()) it = r.emplace(k, MPoly(p.nvars())).first;
    it->second.add_term(e2, c);
  }
  for (auto it = r.begin(); it != r.end();) {
    if (it->second.is_zero())
      it = r.erase(it);
    else
      ++it;
  }
  return r;
}

MPoly from_uni_view(const std::map<int, MPoly>& u, int v, int nvars) {
  MPoly r(nvars);
  for (auto& [k, c] : u) {
    MPoly m = MPoly::var(nvars, v, k);
    if (k == 0) m = MPoly::constant(nvars, Rat(1));
    r += c * m;
  }
  return r;
}

MPoly gcd_pp(const MPoly& a, const MPoly& b);

// gcd of the coefficients of p viewed as univariate in v.
MPoly content_wrt(const MPoly& p, int v) {
  auto u = uni_view(p, v);
  MPoly g(p.nvars());
  for (auto& [k, c] : u) {
    g = gcd_pp(g, c.primitive_part());
    if (g.is_constant() && !g.is_zero()) break;
  }
  return g;
}

// Pseudo-remainder of a by b in variable v.
MPoly prem(const MPoly& a, const MPoly& b, int v) {
  long da = a.degree_in(v), db = b.degree_in(v);
  if (da < db) return a;
  auto ub = uni_view(b, v);
  MPoly lb = ub.rbegin()->second;
  MPoly r = a;
  long steps = da - db + 1;
  for (long s = 0; s < steps && !r.is_zero(); ++s) {
    long dr = r.degree_in(v);
    if (dr < db) break;
    auto ur = uni_view(r, v);
    MPoly lr = ur.rbegin()->second;
    MPoly xshift = MPoly::var(a.nvars(), v, (int)(dr - db));
    if (dr == db) xshift = MPoly::constant(a.nvars(), Rat(1));
    r = r * lb - b * lr * xshift;
  }
  return r;
}

MPoly gcd_pp(const MPoly& a, const MPoly& b);

// gcd against a single-term polynomial.
MPoly monomial_gcd(const MPoly& mono, const MPoly& other) {
  Expo e = mono.lead_expo();
  Expo m(e.size(), 0);
  bool first = true;
  for (auto& [oe, oc] : other.terms()) {
    for (size_t i = 0; i < m.size(); ++i)
      m[i] = first ? std::min(e[i], oe[i]) : std::min(m[i], oe[i]);
    first = false;
  }
  return MPoly::monomial(mono.nvars(), m, Rat(1));
}

// gcd of integer-primitive polynomials via the subresultant PRS.
MPoly gcd_pp(const MPoly& a, const MPoly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a == b) return a;
  if (a.nterms() == 1) return monomial_gcd(a, b);
  if (b.nterms() == 1) return monomial_gcd(b, a);
  int nv = a.nvars();
  int v = -1;
  for (int i = nv - 1; i >= 0; --i) {
    if (a.degree_in(i) > 0 || b.degree_in(i) > 0) {
      v = i;
      break;
    }
  }
  if (v < 0) return MPoly::constant(nv, Rat(1));
  if (a.degree_in(v) == 0) return gcd_pp(a, content_wrt(b, v));
  if (b.degree_in(v) == 0) return gcd_pp(b, content_wrt(a, v));

  MPoly ca = content_wrt(a, v), cb = content_wrt(b, v);
  MPoly c = gcd_pp(ca, cb);
  MPoly A = a.divide_exact(ca), B = b.divide_exact(cb);
  if (A.degree_in(v) < B.degree_in(v)) std::swap(A, B);
  MPoly g = MPoly::constant(nv, Rat(1));
  MPoly h = MPoly::constant(nv, Rat(1));
  while (true) {
    long d = A.degree_in(v) - B.degree_in(v);
    MPoly R = prem(A, B, v);
    if (R.is_zero()) break;
    if (R.degree_in(v) == 0) {
      B = MPoly::constant(nv, Rat(1));
      break;
    }
    A = B;
    B = R.divide_exact(g * h.pow(d));
    g = uni_view(A, v).rbegin()->second;
    if (d > 0) h = g.pow(d).divide_exact(h.pow(d - 1));
  }
  if (!B.is_constant()) {
    MPoly cont = content_wrt(B, v);
    if (!cont.is_constant()) B = B.divide_exact(cont);
    B = B.primitive_part();
  }
  return (c * B).primitive_part();
}

}  // namespace

MPoly gcd(const MPoly& p, const MPoly& q) {
  if (p.is_zero()) return q.primitive_part();
  if (q.is_zero()) return p.primitive_part();
  return gcd_pp(p.primitive_part(), q.primitive_part()).primitive_part();
}

MPoly resultant(const MPoly& p, const MPoly& q, int var) {
  if (var < 0 || var >= p.nvars())
    throw std::domain_error("resultant: variable not in ring");
  if (p.is_zero() || q.is_zero())
    return MPoly(p.nvars());
  long dp = p.degree_in(var), dq = q.degree_in(var);
  if (dp == 0 && dq == 0) return MPoly::constant(p.nvars(), Rat(1));
  if (dp == 0) return p.pow(dq);
  if (dq == 0) return q.pow(dp);
  auto up = uni_view(p, var), uq = uni_view(q, var);
  long n = dp + dq;
  std::vector<std::vector<MPoly>> m((size_t)n,
                                    std::vector<MPoly>((size_t)n, MPoly(p.nvars())));
  for (long i = 0; i < dq; ++i)
    for (auto& [k, c] : up) m[i][i + dp - k] = c;
  for (long i = 0; i < dp; ++i)
    for (auto& [k, c] : uq) m[dq + i][i + dq - k] = c;

  // Fraction-free Bareiss determinant.
  MPoly prev = MPoly::constant(p.nvars(), Rat(1));
  int sign = 1;
  for (long k = 0; k < n; ++k) {
    if (m[k][k].is_zero()) {
      long piv = -1;
      for (long i = k + 1; i < n; ++i)
        if (!m[i][k].is_zero()) {
          piv = i;
          break;
        }
      if (piv < 0) return MPoly(p.nvars());
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (long i = k + 1; i < n; ++i)
      for (long j = k + 1; j < n; ++j)
        m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]).divide_exact(prev);
    prev = m[k][k];
  }
  MPoly det = m[n - 1][n - 1];
  return sign < 0 ? -det : det;
}

MPoly squarefree_part(const MPoly& p) {
  if (p.is_zero()) throw std::domain_error("squarefree_part: zero input");
  MPoly g(p.nvars());
  for (int v = 0; v < p.nvars(); ++v) {
    MPoly d = p.derivative(v);
    if (d.is_zero()) continue;
    g = g.is_zero() ? gcd(p, d) : gcd(g, d);
    if (g.is_constant()) break;
  }
  if (g.is_zero() || g.is_constant()) return p.primitive_part();
  return p.divide_exact(g).primitive_part();
}

std::vector<MPoly> coprime_refine(std::vector<MPoly> fs) {
  std::vector<MPoly> out;
  for (auto& f0 : fs) {
    std::vector<MPoly> work{f0.primitive_part()};
    while (!work.empty()) {
      MPoly f = work.back();
      work.pop_back();
      if (f.is_constant()) continue;
      bool merged = false;
      for (size_t i = 0; i < out.size(); ++i) {
        if (out[i] == f) {
          merged = true;
          break;
        }
        MPoly g = gcd(out[i], f);
        if (g.is_constant()) continue;
        MPoly a = out[i].divide_exact(g).primitive_part();
        MPoly b = f.divide_exact(g).primitive_part();
        out[i] = g.primitive_part();
        if (!a.is_constant()) work.push_back(a);
        if (!b.is_constant()) work.push_back(b);
        merged = true;
        break;
      }
      if (!merged) out.push_back(f);
    }
  }
  std::sort(out.begin(), out.end(), [](const MPoly& a, const MPoly& b) {
    if (a.total_degree() != b.total_degree())
      return a.total_degree() < b.total_degree();
    return a.str() < b.str();
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// printing / parsing

std::vector<std::string> default_var_names(int nvars) {
  std::vector<std::string> r;
  for (int i = 0; i < nvars; ++i) r.push_back("z" + std::to_string(i + 1));
  return r;
}

std::string MPoly::str(const std::vector<std::string>& names_in) const {
  if (t_.empty()) return "0";
  std::vector<std::string> names =
      names_in.empty() ? default_var_names(nv_) : names_in;
  std::ostringstream os;
  bool first = true;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    const Expo& e = it->first;
    Rat c = it->second;
    if (first) {
      if (c.sign() < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
      c = c.abs();
    }
    first = false;
    bool has_var = expo_total(e) > 0;
    if (!has_var || !c.is_one()) {
      os << c.str();
      if (has_var) os << "*";
    }
    bool f2 = true;
    for (int i = 0; i < nv_; ++i) {
      if (e[i] == 0) continue;
      if (!f2) os << "*";
      f2 = false;
      os << names[i];
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;
  const std::vector<std::string>& names;
  int nv;

  void skip() {
    while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  char peek() {
    skip();
    return pos < s.size() ? s[pos] : '\0';
  }

  MPoly parse_expr() {
    MPoly r = parse_term();
    while (true) {
      char c = peek();
      if (c == '+') {
        ++pos;
        r += parse_term();
      } else if (c == '-') {
        ++pos;
        r -= parse_term();
      } else {
        return r;
      }
    }
  }

  MPoly parse_term() {
    MPoly r = parse_factor();
    while (true) {
      char c = peek();
      if (c == '*') {
        ++pos;
        r = r * parse_factor();
      } else {
        return r;
      }
    }
  }

  MPoly parse_factor() {
    MPoly b = parse_base();
    if (peek() == '^') {
      ++pos;
      skip();
      bool neg = eat('-');
      long e = parse_int();
      if (neg) throw std::domain_error("parse: negative exponent");
      return b.pow(e);
    }
    return b;
  }

  long parse_int() {
    skip();
    size_t start = pos;
    while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
    if (start == pos) throw std::domain_error("parse: expected integer");
    return std::stol(s.substr(start, pos - start));
  }

  MPoly parse_base() {
    char c = peek();
    if (c == '(') {
      ++pos;
      MPoly r = parse_expr();
      if (!eat(')')) throw std::domain_error("parse: expected ')'");
      return r;
    }
    if (c == '-') {
      ++pos;
      return -parse_base();
    }
    if (std::isdigit((unsigned char)c)) {
      long n = parse_int();
      if (peek() == '/') {
        ++pos;
        long d = parse_int();
        return MPoly::constant(nv, Rat(n, d));
      }
      return MPoly::constant(nv, Rat(n));
    }
    // variable name
    skip();
    size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum((unsigned char)s[pos]) || s[pos] == '_'))
      ++pos;
    std::string name = s.substr(start, pos - start);
    for (int i = 0; i < nv; ++i)
      if (names[i] == name) return MPoly::var(nv, i);
    throw std::domain_error("parse: unknown symbol '" + name + "'");
  }
};

}  // namespace

MPoly MPoly::parse(const std::string& s, const std::vector<std::string>& names) {
  Parser p{s, 0, names, (int)names.size()};
  MPoly r = p.parse_expr();
  p.skip();
  if (p.pos != s.size()) throw std::domain_error("parse: trailing input");
  return r;
}

}  // namespace ps
