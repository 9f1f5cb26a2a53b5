#include "periodscope/dmod.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ps {

DeltaOrder DeltaOrder::standard(int nvars) {
  DeltaOrder o;
  for (int i = 0; i < nvars; ++i) o.priority.push_back(i);
  return o;
}

bool DeltaOrder::less(const Expo& a, const Expo& b) const {
  long ta = expo_total(a), tb = expo_total(b);
  if (ta != tb) return ta < tb;
  // grevlex: larger iff the last (least significant) differing entry is smaller
  for (long i = (long)priority.size() - 1; i >= 0; --i) {
    int v = priority[(size_t)i];
    if (a[(size_t)v] != b[(size_t)v]) return a[(size_t)v] > b[(size_t)v];
  }
  return false;
}

LogDiffOp LogDiffOp::one(int nvars) {
  return coeff(RatFun::constant(nvars, Rat(1)));
}

LogDiffOp LogDiffOp::delta(int nvars, int i) {
  LogDiffOp op(nvars);
  Expo e((size_t)nvars, 0);
  e[(size_t)i] = 1;
  op.t_[e] = RatFun::constant(nvars, Rat(1));
  return op;
}

LogDiffOp LogDiffOp::coeff(const RatFun& f) {
  LogDiffOp op(f.nvars());
  if (!f.is_zero()) op.t_[Expo((size_t)f.nvars(), 0)] = f;
  return op;
}

LogDiffOp LogDiffOp::term(const RatFun& f, const Expo& d) {
  LogDiffOp op(f.nvars());
  if (!f.is_zero()) op.t_[d] = f;
  return op;
}

long LogDiffOp::order() const {
  long m = -1;
  for (auto& [e, c] : t_) m = std::max(m, expo_total(e));
  return m;
}

RatFun LogDiffOp::coeff_of(const Expo& d) const {
  auto it = t_.find(d);
  return it == t_.end() ? RatFun(nv_) : it->second;
}

void LogDiffOp::add_term(const Expo& d, const RatFun& c) {
  if (c.is_zero()) return;
  auto it = t_.find(d);
  if (it == t_.end()) {
    t_[d] = c;
  } else {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

LogDiffOp LogDiffOp::operator-() const {
  LogDiffOp r(nv_);
  for (auto& [e, c] : t_) r.t_[e] = -c;
  return r;
}

LogDiffOp& LogDiffOp::operator+=(const LogDiffOp& o) {
  for (auto& [e, c] : o.t_) add_term(e, c);
  return *this;
}

LogDiffOp& LogDiffOp::operator-=(const LogDiffOp& o) {
  for (auto& [e, c] : o.t_) add_term(e, -c);
  return *this;
}

LogDiffOp LogDiffOp::scaled(const RatFun& f) const {
  LogDiffOp r(nv_);
  if (f.is_zero()) return r;
  for (auto& [e, c] : t_) r.add_term(e, f * c);
  return r;
}

Expo LogDiffOp::lead_expo(const DeltaOrder& ord) const {
  if (t_.empty()) throw std::domain_error("LogDiffOp: lead of zero");
  const Expo* best = nullptr;
  for (auto& [e, c] : t_)
    if (!best || ord.less(*best, e)) best = &e;
  return *best;
}

RatFun LogDiffOp::lead_coeff(const DeltaOrder& ord) const {
  return coeff_of(lead_expo(ord));
}

LogDiffOp LogDiffOp::monic(const DeltaOrder& ord) const {
  if (t_.empty()) return *this;
  return scaled(lead_coeff(ord).inv());
}

namespace {

// delta_i * op
LogDiffOp apply_delta(const LogDiffOp& op, int i) {
  LogDiffOp r(op.nvars());
  for (auto& [e, c] : op.terms()) {
    Expo e2(e);
    e2[(size_t)i] += 1;
    r.add_term(e2, c);
    r.add_term(e, c.log_derivative(i));
  }
  return r;
}

}  // namespace

LogDiffOp ore_mul(const LogDiffOp& a, const LogDiffOp& b) {
  LogDiffOp r(a.nvars());
  for (auto& [ea, ca] : a.terms()) {
    LogDiffOp cur = b;
    for (size_t i = 0; i < ea.size(); ++i)
      for (int k = 0; k < ea[i]; ++k) cur = apply_delta(cur, (int)i);
    r += cur.scaled(ca);
  }
  return r;
}

// --------------------------------------------------------------------------
// conversions

namespace {

// Stirling numbers of the second kind: (z d/dz)^m = sum_j S(m,j) z^j (d/dz)^j.
std::vector<std::vector<Rat>> stirling2(int max_m) {
  std::vector<std::vector<Rat>> s((size_t)max_m + 1,
                                  std::vector<Rat>((size_t)max_m + 1, Rat(0)));
  s[0][0] = Rat(1);
  for (int m = 1; m <= max_m; ++m)
    for (int j = 1; j <= m; ++j)
      s[(size_t)m][(size_t)j] =
          s[(size_t)m - 1][(size_t)j - 1] +
          Rat(j) * s[(size_t)m - 1][(size_t)j];
  return s;
}

}  // namespace

PolyDiffOp to_partial(const LogDiffOp& op) {
  int nv = op.nvars();
  // common denominator
  MPoly den = MPoly::constant(nv, Rat(1));
  for (auto& [e, c] : op.terms()) {
    MPoly g = gcd(den, c.den());
    den = den * c.den().divide_exact(g);
  }
  int max_m = (int)std::max<long>(op.order(), 0);
  auto s2 = stirling2(max_m);
  PolyDiffOp out;
  out.nvars = nv;
  for (auto& [e, c] : op.terms()) {
    MPoly p = c.num() * den.divide_exact(c.den());
    // expand each delta_i^{e_i} into z^j partial^j
    std::vector<std::pair<Expo, MPoly>> acc = {{Expo((size_t)nv, 0), p}};
    for (int i = 0; i < nv; ++i) {
      if (e[(size_t)i] == 0) continue;
      std::vector<std::pair<Expo, MPoly>> next;
      for (int j = 1; j <= e[(size_t)i]; ++j) {
        Rat coef = s2[(size_t)e[(size_t)i]][(size_t)j];
        if (coef.is_zero()) continue;
        for (auto& [de, pc] : acc) {
          Expo d2(de);
          d2[(size_t)i] += j;
          MPoly zj = MPoly::var(nv, i, j);
          next.push_back({d2, pc * zj.scaled(coef)});
        }
      }
      acc = next;
    }
    for (auto& [de, pc] : acc) {
      auto it = out.terms.find(de);
      if (it == out.terms.end())
        out.terms[de] = pc;
      else {
        it->second += pc;
        if (it->second.is_zero()) out.terms.erase(de);
      }
    }
  }
  return out;
}

LogDiffOp from_partial(const PolyDiffOp& op) {
  int nv = op.nvars;
  LogDiffOp out(nv);
  for (auto& [de, p] : op.terms) {
    // z^de partial^de = prod_i d_i (d_i - 1) ... (d_i - de_i + 1)
    LogDiffOp fall = LogDiffOp::one(nv);
    for (int i = 0; i < nv; ++i)
      for (int k = 0; k < de[(size_t)i]; ++k) {
        LogDiffOp f = LogDiffOp::delta(nv, i);
        f += LogDiffOp::coeff(RatFun::constant(nv, Rat(-k)));
        fall = ore_mul(fall, f);
      }
    // coefficient p / z^de
    MPoly zde = MPoly::monomial(nv, de, Rat(1));
    RatFun c(p, zde);
    out += fall.scaled(c);
  }
  return out;
}

PolyDiffOp box_operator(const IVec& l) {
  bool nonzero = false;
  for (auto& x : l)
    if (x != 0) nonzero = true;
  if (!nonzero) throw std::domain_error("box_operator: zero relation vector");
  int nv = (int)l.size();
  Expo plus((size_t)nv, 0), minus((size_t)nv, 0);
  for (int i = 0; i < nv; ++i) {
    long li = l[(size_t)i].get_si();
    if (li > 0) plus[(size_t)i] = (int)li;
    if (li < 0) minus[(size_t)i] = (int)(-li);
  }
  PolyDiffOp out;
  out.nvars = nv;
  out.terms[plus] = MPoly::constant(nv, Rat(1));
  auto it = out.terms.find(minus);
  if (it != out.terms.end())
    it->second -= MPoly::constant(nv, Rat(1));
  else
    out.terms[minus] = MPoly::constant(nv, Rat(-1));
  return out;
}

std::vector<LogDiffOp> gkz_operators(const ToricData& suspended) {
  const IMat& bbar = suspended.B;
  int r = (int)bbar.size();
  int kbar = suspended.k;
  // sanity: suspended relations sum to zero
  for (auto& row : bbar) {
    Int s = 0;
    for (auto& x : row) s += x;
    if (s != 0)
      throw std::domain_error("gkz_operators: relations are not suspended");
  }
  // The torus-invariant reduction sends the j-th lambda log-derivation to
  // sum_m w_{mj} d_m + gamma_j with gamma = -e_{last} (twist by the
  // suspension coordinate).
  auto lambda_delta = [&](int j) {
    LogDiffOp L(r);
    for (int m = 0; m < r; ++m) {
      Rat w(bbar[(size_t)m][(size_t)j]);
      if (!w.is_zero())
        L += LogDiffOp::delta(r, m).scaled(RatFun::constant(r, w));
    }
    if (j == kbar - 1)
      L += LogDiffOp::coeff(RatFun::constant(r, Rat(-1)));
    return L;
  };
  std::vector<LogDiffOp> out;
  for (int i = 0; i < r; ++i) {
    IVec row = bbar[(size_t)i];
    PolyDiffOp box = box_operator(row);
    LogDiffOp fplus(r), fminus(r);
    fplus = LogDiffOp::one(r);
    fminus = LogDiffOp::one(r);
    for (int j = 0; j < kbar; ++j) {
      long lj = row[(size_t)j].get_si();
      if (lj > 0)
        for (long k = 0; k < lj; ++k) {
          LogDiffOp f = lambda_delta(j);
          f += LogDiffOp::coeff(RatFun::constant(r, Rat(-k)));
          fplus = ore_mul(fplus, f);
        }
      if (lj < 0)
        for (long k = 0; k < -lj; ++k) {
          LogDiffOp f = lambda_delta(j);
          f += LogDiffOp::coeff(RatFun::constant(r, Rat(-k)));
          fminus = ore_mul(fminus, f);
        }
    }
    RatFun zi(MPoly::var(r, i));
    out.push_back(fplus - fminus.scaled(zi));
  }
  return out;
}

LogDiffOp rescale(const LogDiffOp& op, const std::vector<Rat>& c) {
  std::vector<Rat> s;
  for (auto& ci : c) {
    if (ci.is_zero()) throw std::domain_error("rescale: zero scale factor");
    s.push_back(ci.inv());
  }
  LogDiffOp r(op.nvars());
  for (auto& [e, f] : op.terms()) r.add_term(e, f.subs_scale(s));
  return r;
}

std::optional<LogDiffOp> left_divide_first_order(const LogDiffOp& a,
                                                 const LogDiffOp& l,
                                                 const DeltaOrder& ord) {
  if (l.is_zero()) return std::nullopt;
  if (l.order() > 1) return std::nullopt;
  if (a.is_zero()) return LogDiffOp(a.nvars());
  int nv = a.nvars();
  if (l.order() == 0) {
    RatFun c = l.coeff_of(Expo((size_t)nv, 0));
    return a.scaled(c.inv());
  }
  Expo le = l.lead_expo(ord);
  RatFun lc = l.coeff_of(le);
  LogDiffOp rem = a, q(nv);
  while (!rem.is_zero()) {
    Expo re = rem.lead_expo(ord);
    auto diff = expo_sub(re, le);
    if (!diff) return std::nullopt;
    LogDiffOp qt = LogDiffOp::term(rem.coeff_of(re) / lc, *diff);
    q += qt;
    rem -= ore_mul(l, qt);
  }
  return q;
}

// --------------------------------------------------------------------------
// series solutions

namespace {

// Collects P = sum_alpha z^alpha g_alpha(d) with polynomial coefficients.
std::map<Expo, std::map<Expo, Rat, GrlexLess>, GrlexLess> z_collect(
    const LogDiffOp& op) {
  int nv = op.nvars();
  MPoly den = MPoly::constant(nv, Rat(1));
  for (auto& [e, c] : op.terms()) {
    MPoly g = gcd(den, c.den());
    den = den * c.den().divide_exact(g);
  }
  std::map<Expo, std::map<Expo, Rat, GrlexLess>, GrlexLess> out;
  for (auto& [de, c] : op.terms()) {
    MPoly p = c.num() * den.divide_exact(c.den());
    for (auto& [ze, coef] : p.terms()) out[ze][de] += coef;
  }
  return out;
}

Rat eval_delta_poly(const std::map<Expo, Rat, GrlexLess>& g, const Expo& m) {
  Rat r(0);
  for (auto& [de, c] : g) {
    Rat t = c;
    for (size_t i = 0; i < de.size(); ++i)
      t *= Rat(m[i]).pow(de[i]);
    r += t;
  }
  return r;
}

}  // namespace

SeriesSolution series_solution(const std::vector<LogDiffOp>& gens, int order) {
  if (gens.empty()) throw std::domain_error("series_solution: no generators");
  int nv = gens[0].nvars();
  std::vector<std::map<Expo, std::map<Expo, Rat, GrlexLess>, GrlexLess>> zc;
  for (auto& g : gens) zc.push_back(z_collect(g));

  SeriesSolution s;
  s.order = order;
  s.coeff[Expo((size_t)nv, 0)] = Rat(1);

  // enumerate exponents by total degree
  std::vector<Expo> exps;
  std::function<void(Expo&, int, int)> gen = [&](Expo& cur, int pos, int rest) {
    if (pos == nv - 1) {
      cur[(size_t)pos] = rest;
      exps.push_back(cur);
      return;
    }
    for (int v = 0; v <= rest; ++v) {
      cur[(size_t)pos] = v;
      gen(cur, pos + 1, rest - v);
    }
  };
  for (int d = 1; d <= order; ++d) {
    Expo cur((size_t)nv, 0);
    gen(cur, 0, d);
  }

  for (auto& m : exps) {
    bool solved = false;
    for (size_t gi = 0; gi < gens.size() && !solved; ++gi) {
      auto it0 = zc[gi].find(Expo((size_t)nv, 0));
      if (it0 == zc[gi].end()) continue;
      Rat g0 = eval_delta_poly(it0->second, m);
      if (g0.is_zero()) continue;
      Rat rhs(0);
      for (auto& [alpha, g] : zc[gi]) {
        if (expo_total(alpha) == 0) continue;
        auto prev = expo_sub(m, alpha);
        if (!prev) continue;
        auto pit = s.coeff.find(*prev);
        if (pit == s.coeff.end() || pit->second.is_zero()) continue;
        rhs += eval_delta_poly(g, *prev) * pit->second;
      }
      s.coeff[m] = -rhs / g0;
      solved = true;
    }
    if (!solved)
      throw std::domain_error(
          "series_solution: recursion singular (nonunique holomorphic solution)");
  }
  return s;
}

std::map<Expo, Rat, GrlexLess> apply_to_series(const LogDiffOp& op,
                                               const SeriesSolution& s) {
  auto zc = z_collect(op);
  std::map<Expo, Rat, GrlexLess> out;
  for (auto& [alpha, g] : zc) {
    for (auto& [m, cm] : s.coeff) {
      Expo target = expo_add(alpha, m);
      if (expo_total(target) > s.order) continue;
      Rat v = eval_delta_poly(g, m) * cm;
      if (v.is_zero()) continue;
      out[target] += v;
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

// --------------------------------------------------------------------------
// printing / parsing

std::string LogDiffOp::str() const {
  if (t_.empty()) return "0";
  std::vector<std::string> dn;
  for (int i = 0; i < nv_; ++i) dn.push_back("d" + std::to_string(i + 1));
  std::ostringstream os;
  // print in descending graded order for readability
  std::vector<const std::pair<const Expo, RatFun>*> items;
  for (auto& kv : t_) items.push_back(&kv);
  DeltaOrder ord = DeltaOrder::standard(nv_);
  std::sort(items.begin(), items.end(),
            [&](auto* a, auto* b) { return ord.less(b->first, a->first); });
  bool first = true;
  for (auto* kv : items) {
    if (!first) os << " + ";
    first = false;
    os << "(" << kv->second.str() << ")";
    for (int i = 0; i < nv_; ++i) {
      if (kv->first[(size_t)i] == 0) continue;
      os << "*" << dn[(size_t)i];
      if (kv->first[(size_t)i] > 1) os << "^" << kv->first[(size_t)i];
    }
  }
  return os.str();
}

namespace {

struct OpParser {
  const std::string& s;
  size_t pos = 0;
  int nv;

  void skip() {
    while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
  }
  char peek() {
    skip();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool eat(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }

  LogDiffOp expr() {
    LogDiffOp r = term();
    while (true) {
      char c = peek();
      if (c == '+') {
        ++pos;
        r += term();
      } else if (c == '-') {
        ++pos;
        r -= term();
      } else {
        return r;
      }
    }
  }

  LogDiffOp term() {
    LogDiffOp r = factor();
    while (peek() == '*') {
      ++pos;
      r = ore_mul(r, factor());
    }
    return r;
  }

  LogDiffOp factor() {
    LogDiffOp b = base();
    if (peek() == '^') {
      ++pos;
      long e = integer();
      LogDiffOp r = LogDiffOp::one(nv);
      for (long i = 0; i < e; ++i) r = ore_mul(r, b);
      return r;
    }
    return b;
  }

  long integer() {
    skip();
    size_t start = pos;
    while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
    if (start == pos) throw std::domain_error("op parse: expected integer");
    return std::stol(s.substr(start, pos - start));
  }

  LogDiffOp base() {
    char c = peek();
    if (c == '(') {
      ++pos;
      LogDiffOp r = expr();
      if (!eat(')')) throw std::domain_error("op parse: expected ')'");
      return r;
    }
    if (c == '-') {
      ++pos;
      return -base();
    }
    if (std::isdigit((unsigned char)c)) {
      long n = integer();
      if (peek() == '/') {
        ++pos;
        long d = integer();
        return LogDiffOp::coeff(RatFun::constant(nv, Rat(n, d)));
      }
      return LogDiffOp::coeff(RatFun::constant(nv, Rat(n)));
    }
    skip();
    size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum((unsigned char)s[pos]) || s[pos] == '_'))
      ++pos;
    std::string name = s.substr(start, pos - start);
    for (int i = 0; i < nv; ++i) {
      if (name == "d" + std::to_string(i + 1)) return LogDiffOp::delta(nv, i);
      if (name == "z" + std::to_string(i + 1))
        return LogDiffOp::coeff(RatFun(MPoly::var(nv, i)));
    }
    throw std::domain_error("op parse: unknown symbol '" + name + "'");
  }
};

}  // namespace

LogDiffOp LogDiffOp::parse(const std::string& s, int nvars) {
  OpParser p{s, 0, nvars};
  LogDiffOp r = p.expr();
  p.skip();
  if (p.pos != s.size()) throw std::domain_error("op parse: trailing input");
  return r;
}

}  // namespace ps
