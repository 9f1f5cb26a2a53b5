#include <algorithm>
#include <deque>

#include "periodscope/dmod.hpp"

namespace ps {

namespace {

constexpr int kPairCap = 10000;
constexpr long kCoeffDegCap = 64;

Expo expo_lcm(const Expo& a, const Expo& b) {
  Expo r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

// delta^shift * g
LogDiffOp shift_mul(const Expo& shift, const LogDiffOp& g) {
  LogDiffOp m = LogDiffOp::term(RatFun::constant(g.nvars(), Rat(1)), shift);
  return ore_mul(m, g);
}

// The Buchberger loop works fraction-free: operator coefficients stay
// polynomial and each element is kept primitive (coefficient gcd one).

MPoly op_content(const LogDiffOp& op) {
  MPoly c(op.nvars());
  for (auto& [e, f] : op.terms()) {
    if (!f.is_polynomial())
      throw std::logic_error("groebner: non-polynomial coefficient");
    c = c.is_zero() ? f.num().primitive_part() : gcd(c, f.num());
    if (c.is_constant() && !c.is_zero()) break;
  }
  return c;
}

LogDiffOp op_primitive(const LogDiffOp& op) {
  if (op.is_zero()) return op;
  MPoly c = op_content(op);
  if (c.is_constant()) {
    // normalize the rational content away
    Rat k(0);
    for (auto& [e, f] : op.terms()) {
      Rat s = f.num().signed_content();
      if (k.is_zero()) k = s;
      // gcd of rationals p1/q1, p2/q2: gcd(p)/lcm(q)
      k = Rat(gcd(k.num(), s.num()), lcm(k.den(), s.den()));
    }
    return op.scaled(RatFun::constant(op.nvars(), k.inv()));
  }
  LogDiffOp out(op.nvars());
  for (auto& [e, f] : op.terms())
    out.add_term(e, RatFun(f.num().divide_exact(c), f.den()));
  return op_primitive(out);
}

LogDiffOp clear_denominators(const LogDiffOp& op) {
  int nv = op.nvars();
  MPoly den = MPoly::constant(nv, Rat(1));
  for (auto& [e, c] : op.terms()) {
    MPoly g = gcd(den, c.den());
    den = den * c.den().divide_exact(g);
  }
  LogDiffOp out(nv);
  for (auto& [e, c] : op.terms())
    out.add_term(e, RatFun(c.num() * den.divide_exact(c.den())));
  return out;
}

void check_coeff_degrees(const LogDiffOp& op) {
  for (auto& [e, c] : op.terms())
    if (c.num().total_degree() > kCoeffDegCap ||
        c.den().total_degree() > kCoeffDegCap)
      throw ResourceError("groebner: coefficient degree cap exceeded");
}

struct FFParts {
  LogDiffOp rem;
  RatFun factor;  // op == factor * rem modulo the ideal
};

// Fraction-free reduction against a primitive polynomial-coefficient basis.
FFParts reduce_ff(const LogDiffOp& op, const std::vector<LogDiffOp>& basis,
                  const std::vector<Expo>& lms, const DeltaOrder& ord,
                  bool top_only) {
  int nv = op.nvars();
  FFParts out{op, RatFun::constant(nv, Rat(1))};
  while (!out.rem.is_zero()) {
    const Expo* target = nullptr;
    size_t which = 0;
    if (top_only) {
      Expo le = out.rem.lead_expo(ord);
      for (size_t i = 0; i < lms.size(); ++i)
        if (expo_sub(le, lms[i]).has_value()) {
          target = &out.rem.terms().find(le)->first;
          which = i;
          break;
        }
    } else {
      for (auto& [e, c] : out.rem.terms()) {
        for (size_t i = 0; i < lms.size(); ++i) {
          if (expo_sub(e, lms[i]).has_value()) {
            if (!target || ord.less(*target, e)) {
              target = &e;
              which = i;
            }
            break;
          }
        }
      }
    }
    if (!target) break;
    Expo e = *target;
    Expo shift = *expo_sub(e, lms[which]);
    LogDiffOp m = shift_mul(shift, basis[which]);
    RatFun lc = m.coeff_of(e);       // polynomial (basis lead coefficient)
    RatFun ct = out.rem.coeff_of(e);
    // rem <- lc * rem - ct * m (cancels the target term, stays polynomial)
    out.rem = out.rem.scaled(lc) - m.scaled(ct);
    out.factor = out.factor * lc.inv();
    if (!out.rem.is_zero()) {
      MPoly c = op_content(out.rem);
      LogDiffOp prim = op_primitive(out.rem);
      // rem = k * prim with k from both content passes
      RatFun k = out.rem.coeff_of(prim.lead_expo(ord)) /
                 prim.coeff_of(prim.lead_expo(ord));
      out.rem = prim;
      out.factor = out.factor * k;
    }
    check_coeff_degrees(out.rem);
  }
  return out;
}

}  // namespace

GroebnerBasis groebner(const std::vector<LogDiffOp>& gens_in,
                       const DeltaOrder& ord) {
  if (gens_in.empty()) throw std::domain_error("groebner: empty generators");
  int nv = gens_in[0].nvars();

  std::vector<LogDiffOp> basis;
  std::vector<Expo> lms;
  for (auto& g : gens_in) {
    if (g.is_zero()) continue;
    LogDiffOp p = op_primitive(clear_denominators(g));
    basis.push_back(p);
    lms.push_back(p.lead_expo(ord));
  }
  if (basis.empty()) throw std::domain_error("groebner: all generators zero");

  struct Pair {
    size_t i, j;
    Expo lcm;
  };
  auto pair_less = [&](const Pair& a, const Pair& b) {
    long ta = expo_total(a.lcm), tb = expo_total(b.lcm);
    if (ta != tb) return ta < tb;
    return std::lexicographical_compare(a.lcm.begin(), a.lcm.end(),
                                        b.lcm.begin(), b.lcm.end());
  };
  std::deque<Pair> queue;
  auto push_pairs = [&](size_t j) {
    for (size_t i = 0; i < j; ++i)
      queue.push_back({i, j, expo_lcm(lms[i], lms[j])});
    std::sort(queue.begin(), queue.end(), pair_less);
  };
  for (size_t j = 1; j < basis.size(); ++j) push_pairs(j);

  int processed = 0;
  while (!queue.empty()) {
    if (++processed > kPairCap)
      throw ResourceError("groebner: pair iteration cap exceeded");
    Pair p = queue.front();
    queue.pop_front();
    Expo si = *expo_sub(p.lcm, lms[p.i]);
    Expo sj = *expo_sub(p.lcm, lms[p.j]);
    LogDiffOp a = shift_mul(si, basis[p.i]);
    LogDiffOp b = shift_mul(sj, basis[p.j]);
    // cross-multiplied S-element, fraction-free
    LogDiffOp s =
        a.scaled(b.coeff_of(p.lcm)) - b.scaled(a.coeff_of(p.lcm));
    if (s.is_zero()) continue;
    s = op_primitive(s);
    LogDiffOp rem =
        reduce_ff(s, basis, lms, ord, /*top_only=*/true).rem;
    if (rem.is_zero()) continue;
    basis.push_back(rem);
    lms.push_back(rem.lead_expo(ord));
    push_pairs(basis.size() - 1);
  }

  // prune redundant generators, then inter-reduce
  std::vector<LogDiffOp> reduced;
  std::vector<Expo> rlms;
  for (size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (size_t j = 0; j < basis.size(); ++j) {
      if (i == j) continue;
      if (!expo_sub(lms[i], lms[j]).has_value()) continue;
      if (lms[i] == lms[j] && j > i) continue;
      redundant = true;
      break;
    }
    if (!redundant) {
      reduced.push_back(basis[i]);
      rlms.push_back(lms[i]);
    }
  }
  for (size_t i = 0; i < reduced.size(); ++i) {
    std::vector<LogDiffOp> others;
    std::vector<Expo> olms;
    for (size_t j = 0; j < reduced.size(); ++j)
      if (j != i) {
        others.push_back(reduced[j]);
        olms.push_back(rlms[j]);
      }
    reduced[i] = reduce_ff(reduced[i], others, olms, ord, false).rem;
  }

  GroebnerBasis gb;
  gb.ord = ord;
  std::vector<size_t> perm(reduced.size());
  for (size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end(), [&](size_t a, size_t b) {
    return ord.less(reduced[a].lead_expo(ord), reduced[b].lead_expo(ord));
  });
  for (size_t i : perm) {
    gb.prim.push_back(reduced[i]);
    gb.gens.push_back(reduced[i].monic(ord));
  }

  // staircase: finite iff a pure power of every variable leads some element
  std::vector<Expo> final_lms;
  for (auto& g : gb.gens) final_lms.push_back(g.lead_expo(ord));
  std::vector<long> bound((size_t)nv, -1);
  for (auto& lm : final_lms) {
    int support = 0, var = -1;
    for (int i = 0; i < nv; ++i)
      if (lm[(size_t)i] > 0) {
        ++support;
        var = i;
      }
    if (support == 0) {  // ideal contains an invertible element
      gb.finite = true;
      gb.staircase.clear();
      return gb;
    }
    if (support == 1 &&
        (bound[(size_t)var] < 0 || lm[(size_t)var] < bound[(size_t)var]))
      bound[(size_t)var] = lm[(size_t)var];
  }
  gb.finite = true;
  for (int i = 0; i < nv; ++i)
    if (bound[(size_t)i] < 0) gb.finite = false;
  if (gb.finite) {
    std::function<void(Expo&, int)> walk = [&](Expo& cur, int pos) {
      if (pos == nv) {
        for (auto& lm : final_lms)
          if (expo_sub(cur, lm).has_value()) return;
        gb.staircase.push_back(cur);
        return;
      }
      for (int v = 0; v < bound[(size_t)pos]; ++v) {
        cur[(size_t)pos] = v;
        walk(cur, pos + 1);
      }
      cur[(size_t)pos] = 0;
    };
    Expo cur((size_t)nv, 0);
    walk(cur, 0);
    std::sort(gb.staircase.begin(), gb.staircase.end(),
              [&](const Expo& a, const Expo& b) { return ord.less(a, b); });
  }
  return gb;
}

LogDiffOp normal_form(const LogDiffOp& op, const GroebnerBasis& gb) {
  if (op.is_zero()) return op;
  std::vector<Expo> lms;
  for (auto& g : gb.prim) lms.push_back(g.lead_expo(gb.ord));
  // reduce the denominator-cleared operator, then restore the factor
  int nv = op.nvars();
  MPoly den = MPoly::constant(nv, Rat(1));
  for (auto& [e, c] : op.terms()) {
    MPoly g = gcd(den, c.den());
    den = den * c.den().divide_exact(g);
  }
  LogDiffOp cleared(nv);
  for (auto& [e, c] : op.terms())
    cleared.add_term(e, RatFun(c.num() * den.divide_exact(c.den())));
  FFParts r = reduce_ff(cleared, gb.prim, lms, gb.ord, false);
  RatFun restore = r.factor / RatFun(den);
  return r.rem.scaled(restore);
}

int holonomic_rank(const GroebnerBasis& gb) {
  if (!gb.finite)
    throw std::domain_error("holonomic_rank: not holonomic at a generic point");
  return (int)gb.staircase.size();
}

Discriminant char_discriminant(const GroebnerBasis& gb,
                               const std::vector<LogDiffOp>& extra) {
  int nv = gb.gens.empty() ? 0 : gb.gens[0].nvars();
  if (nv != 2)
    throw std::domain_error("char_discriminant: two variables required");
  std::vector<LogDiffOp> members = gb.prim;
  for (auto& g : extra) members.push_back(op_primitive(clear_denominators(g)));
  // principal symbols sigma(z, xi) in a 2nv-variable ring (z's then xi's)
  std::vector<MPoly> symbols;
  for (auto& g : members) {
    PolyDiffOp p = to_partial(g);
    long ord = 0;
    for (auto& [e, c] : p.terms) ord = std::max(ord, expo_total(e));
    MPoly sym(2 * nv);
    for (auto& [e, c] : p.terms) {
      if (expo_total(e) != ord) continue;
      for (auto& [ze, coef] : c.terms()) {
        Expo full((size_t)(2 * nv), 0);
        for (int i = 0; i < nv; ++i) {
          full[(size_t)i] = ze[(size_t)i];
          full[(size_t)(nv + i)] = e[(size_t)i];
        }
        sym.add_term(full, coef);
      }
    }
    symbols.push_back(sym);
  }

  // The projection of the characteristic variety divides every pairwise
  // resultant, so take the gcd across pairs (per chart) before refining.
  std::vector<MPoly> collected;
  std::vector<int> boundary;
  bool any_route = false;
  for (int chart = 0; chart < 2; ++chart) {
    int set_one = nv + chart;
    int elim = nv + (1 - chart);
    MPoly acc(2 * nv);
    bool have = false;
    for (size_t i = 0; i < symbols.size() && !(have && acc.is_constant()); ++i)
      for (size_t j = i + 1; j < symbols.size(); ++j) {
        MPoly a = symbols[i].eval_partial(set_one, Rat(1));
        MPoly b = symbols[j].eval_partial(set_one, Rat(1));
        if (a.is_zero() || b.is_zero()) continue;
        MPoly res = resultant(a, b, elim);
        if (res.is_zero()) continue;  // degenerate pair on this chart
        acc = have ? gcd(acc, res) : res.primitive_part();
        have = true;
        if (acc.is_constant()) break;
      }
    if (!have) continue;
    any_route = true;
    MPoly red = acc;
    for (int v = 0; v < nv; ++v) {
      MPoly zv = MPoly::var(2 * nv, v);
      MPoly q;
      bool stripped = false;
      while (red.try_divide(zv, &q)) {
        red = q;
        stripped = true;
      }
      if (stripped &&
          std::find(boundary.begin(), boundary.end(), v) == boundary.end())
        boundary.push_back(v);
    }
    if (red.is_constant()) continue;
    collected.push_back(squarefree_part(red));
  }
  if (!any_route)
    throw std::domain_error(
        "char_discriminant: elimination degenerate on all generator pairs");

  std::vector<MPoly> refined = coprime_refine(collected);
  std::vector<MPoly> candidates;
  for (auto& f : refined) {
    MPoly g(nv);
    for (auto& [e, c] : f.terms()) {
      Expo ze((size_t)nv, 0);
      for (int i = 0; i < nv; ++i) ze[(size_t)i] = e[(size_t)i];
      for (int i = nv; i < 2 * nv; ++i)
        if (e[(size_t)i] != 0)
          throw std::logic_error(
              "char_discriminant: xi residue after elimination");
      g.add_term(ze, c);
    }
    candidates.push_back(g);
  }

  // The symbols come from finitely many basis elements, so the eliminant can
  // pick up apparent loci (leading-coefficient drops of the presentation).
  // Probe each candidate at rational points: genuine components carry a
  // common projective root of all symbols.
  auto common_root_at = [&](const std::vector<Rat>& zpt) {
    std::vector<std::vector<Rat>> forms;
    long max_ord = 0;
    for (auto& sym : symbols) {
      long ord = 0;
      for (auto& [e, c] : sym.terms())
        ord = std::max(ord, (long)(e[(size_t)nv] + e[(size_t)nv + 1]));
      max_ord = std::max(max_ord, ord);
      std::vector<Rat> f((size_t)ord + 1, Rat(0));
      for (auto& [e, c] : sym.terms()) {
        Rat zval = c;
        for (int i = 0; i < nv; ++i) zval *= zpt[(size_t)i].pow(e[(size_t)i]);
        f[(size_t)e[(size_t)nv]] += zval;  // exponent of xi1; xi2 = ord - it
      }
      bool zero = true;
      for (auto& x : f)
        if (!x.is_zero()) zero = false;
      // an identically vanishing restricted symbol imposes no condition
      if (!zero) forms.push_back(f);
    }
    if (forms.empty()) return true;
    // gcd over Q[x] of the dehomogenized forms
    auto trim = [](std::vector<Rat>& v) {
      while (!v.empty() && v.back().is_zero()) v.pop_back();
    };
    auto poly_mod = [&](std::vector<Rat> a, const std::vector<Rat>& b) {
      trim(a);
      while (a.size() >= b.size() && !a.empty()) {
        Rat q = a.back() / b.back();
        size_t off = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[off + i] -= q * b[(size_t)i];
        trim(a);
      }
      return a;
    };
    std::vector<Rat> g = forms[0];
    trim(g);
    for (size_t i = 1; i < forms.size(); ++i) {
      std::vector<Rat> b = forms[(size_t)i];
      trim(b);
      while (!b.empty()) {
        std::vector<Rat> r = poly_mod(g, b);
        g = b;
        b = r;
      }
      trim(g);
      if (g.size() <= 1) break;
    }
    if (g.size() > 1) return true;  // nonconstant gcd: affine common root
    // remaining direction (1:0): all top xi1-coefficients vanish
    for (auto& sym : symbols) {
      long ord = 0;
      for (auto& [e, c] : sym.terms())
        ord = std::max(ord, (long)(e[(size_t)nv] + e[(size_t)nv + 1]));
      Rat top(0);
      for (auto& [e, c] : sym.terms()) {
        if (e[(size_t)nv] != (int)ord) continue;
        Rat zval = c;
        for (int i = 0; i < nv; ++i) zval *= zpt[(size_t)i].pow(e[(size_t)i]);
        top += zval;
      }
      if (!top.is_zero()) return false;
    }
    return true;
  };

  const std::vector<Rat> probes = {Rat(0),  Rat(1),  Rat(-1), Rat(2),
                                   Rat(-2), Rat(3),  Rat(-3), Rat(5),
                                   Rat(1, 2), Rat(-1, 2), Rat(7), Rat(-5)};
  Discriminant out;
  out.boundary_vars = boundary;
  for (size_t ci = 0; ci < candidates.size(); ++ci) {
    const MPoly& f = candidates[ci];
    std::vector<std::vector<Rat>> points;
    for (int fixed_var = 0; fixed_var < 2 && points.size() < 3; ++fixed_var) {
      int free_var = 1 - fixed_var;
      for (auto& c : probes) {
        if (points.size() >= 3) break;
        MPoly uni = f.eval_partial(fixed_var, c);
        if (uni.is_zero() || uni.is_constant()) continue;
        long d = uni.degree_in(free_var);
        std::vector<Rat> coeffs((size_t)d + 1, Rat(0));
        for (auto& [e, cc] : uni.terms())
          coeffs[(size_t)e[(size_t)free_var]] += cc;
        bool complete = false;
        for (auto& [root, mult] : rational_roots(coeffs, &complete)) {
          std::vector<Rat> zpt(2);
          zpt[(size_t)fixed_var] = c;
          zpt[(size_t)free_var] = root;
          bool clean = true;
          for (size_t cj = 0; cj < candidates.size(); ++cj)
            if (cj != ci && candidates[cj].eval(zpt).is_zero()) clean = false;
          if (clean) points.push_back(zpt);
          if (points.size() >= 3) break;
        }
      }
    }
    bool genuine = points.empty();  // unprobed candidates are kept
    for (auto& zpt : points)
      if (common_root_at(zpt)) genuine = true;
    if (genuine) out.components.push_back(f);
  }
  return out;
}

}  // namespace ps
