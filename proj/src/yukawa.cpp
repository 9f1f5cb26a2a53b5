#include "periodscope/yukawa.hpp"

#include <algorithm>
#include <set>
#include <functional>
#include <sstream>

namespace ps {

namespace {

// transversality: <u|v> = 0 once (3-|u|) + (3-|v|) >= 4
bool forced_zero(const Expo& u, const Expo& v) {
  return expo_total(u) + expo_total(v) <= 2;
}

struct Lookup {
  int sign = 0;  // 0 when forced to vanish
  PairingKey key;
};

Lookup canonical(const Expo& u, const Expo& v) {
  if (u == v || forced_zero(u, v)) return {0, {}};
  if (v < u) return {-1, {v, u}};
  return {1, {u, v}};
}

std::vector<Expo> exponents_of_total(int nv, int total) {
  std::vector<Expo> out;
  std::function<void(Expo&, int, int)> gen = [&](Expo& cur, int pos, int rest) {
    if (pos == nv - 1) {
      cur[(size_t)pos] = rest;
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= rest; ++v) {
      cur[(size_t)pos] = v;
      gen(cur, pos + 1, rest - v);
    }
  };
  Expo cur((size_t)nv, 0);
  gen(cur, 0, total);
  return out;
}

}  // namespace

RatFun NPointTable::lookup(const Expo& u, const Expo& v) const {
  int nv = (int)u.size();
  auto l = canonical(u, v);
  if (l.sign == 0) return RatFun(nv);
  auto it = ratio.find(l.key);
  if (it == ratio.end())
    throw std::domain_error("NPointTable: pairing outside the solved range");
  return l.sign > 0 ? it->second : -it->second;
}

NPointTable solve_npoint(const std::vector<LogDiffOp>& pf, int max_order) {
  if (pf.empty()) throw std::domain_error("solve_npoint: empty system");
  int nv = pf[0].nvars();
  if (nv != 2) throw std::domain_error("solve_npoint: two variables required");
  if (max_order < 5)
    throw std::domain_error("solve_npoint: order cap below five");

  NPointTable table;
  table.max_order = max_order;
  const Expo gen_right = {3, 0};  // K30 = <(0,0)|(3,0)>
  const Expo zero = {0, 0};

  for (int level = 3; level <= max_order; ++level) {
    // unknowns: canonical nonzero pairings of this level
    std::vector<PairingKey> unknowns;
    for (int lu = 0; lu <= level; ++lu) {
      for (auto& u : exponents_of_total(nv, lu))
        for (auto& v : exponents_of_total(nv, level - lu)) {
          auto l = canonical(u, v);
          if (l.sign == 0) continue;
          if (std::find(unknowns.begin(), unknowns.end(), l.key) ==
              unknowns.end())
            unknowns.push_back(l.key);
        }
    }
    auto index_of = [&](const PairingKey& k) {
      for (size_t i = 0; i < unknowns.size(); ++i)
        if (!(unknowns[i] < k) && !(k < unknowns[i])) return (long)i;
      return (long)-1;
    };

    std::vector<std::vector<RatFun>> rows;
    std::vector<RatFun> rhs;  // coefficient of K30 on the right-hand side

    auto blank_row = [&]() { return std::vector<RatFun>(unknowns.size(), RatFun(nv)); };

    // (a) operator relations <u | d^w P> = 0
    for (auto& p : pf) {
      long op_ord = p.order();
      for (int lu = 0; lu + op_ord <= level; ++lu)
        for (int lw = 0; lw + lu + (int)op_ord == level && lw >= 0; ++lw) {
          for (auto& u : exponents_of_total(nv, lu))
            for (auto& w : exponents_of_total(nv, lw)) {
              LogDiffOp op = ore_mul(
                  LogDiffOp::term(RatFun::constant(nv, Rat(1)), w), p);
              auto row = blank_row();
              RatFun r(nv);
              bool nontrivial = false;
              for (auto& [beta, coef] : op.terms()) {
                auto l = canonical(u, beta);
                if (l.sign == 0) continue;
                int lv = (int)(expo_total(u) + expo_total(beta));
                RatFun signed_coef =
                    l.sign > 0 ? coef : -coef;
                if (lv == level) {
                  long idx = index_of(l.key);
                  row[(size_t)idx] += signed_coef;
                  nontrivial = true;
                } else {
                  auto it = table.ratio.find(l.key);
                  if (it == table.ratio.end())
                    throw std::logic_error("solve_npoint: missing lower level");
                  r -= signed_coef * it->second;
                  nontrivial = true;
                }
              }
              if (nontrivial) {
                rows.push_back(row);
                rhs.push_back(r);
              }
            }
        }
    }

    // (b) Leibniz relations from the previous level
    for (int lu = 0; lu <= level - 1; ++lu) {
      for (auto& u : exponents_of_total(nv, lu))
        for (auto& v : exponents_of_total(nv, level - 1 - lu)) {
          if (!(u < v)) continue;  // one representative per unordered pair
          for (int s = 0; s < nv; ++s) {
            Expo ue = u, ve = v;
            ue[(size_t)s] += 1;
            Expo u2 = u;
            Expo v2 = v;
            v2[(size_t)s] += 1;
            // d_s <u|v> = <u+e_s|v> + <u|v+e_s>
            auto row = blank_row();
            RatFun r(nv);
            auto add_term = [&](const Expo& a, const Expo& b,
                                const Rat& sgn) {
              auto l = canonical(a, b);
              if (l.sign == 0) return;
              RatFun c = RatFun::constant(nv, l.sign > 0 ? sgn : -sgn);
              int lv = (int)(expo_total(a) + expo_total(b));
              if (lv == level) {
                row[(size_t)index_of(l.key)] += c;
              } else {
                auto it = table.ratio.find(l.key);
                if (it == table.ratio.end())
                  throw std::logic_error("solve_npoint: missing lower level");
                r -= c * it->second;
              }
            };
            add_term(ue, v, Rat(1));
            add_term(u2, v2, Rat(1));
            // left-hand side: derivative of the known lower-level value
            auto l = canonical(u, v);
            if (l.sign == 0) {
              rows.push_back(row);
              rhs.push_back(r);
              continue;
            }
            auto it = table.ratio.find(l.key);
            if (it == table.ratio.end())
              throw std::logic_error("solve_npoint: missing lower level");
            RatFun f = l.sign > 0 ? it->second : -it->second;
            // d_s (f K30) = (d_s f) K30 + f * d_s K30
            r += f.log_derivative(s);
            if (level == 4) {
              // d_s K30 itself expands into level-4 unknowns
              Expo es((size_t)nv, 0);
              es[(size_t)s] = 1;
              Expo g2 = gen_right;
              g2[(size_t)s] += 1;
              auto l1 = canonical(es, gen_right);
              if (l1.sign != 0)
                row[(size_t)index_of(l1.key)] -= l1.sign > 0 ? f : -f;
              auto l2 = canonical(zero, g2);
              if (l2.sign != 0)
                row[(size_t)index_of(l2.key)] -= l2.sign > 0 ? f : -f;
            } else if (level >= 5) {
              const RatFun& rho = s == 0 ? table.rho1 : table.rho2;
              r += f * rho;
            }
            rows.push_back(row);
            rhs.push_back(r);
          }
        }
    }

    // assemble and solve
    FMat m = fmat_zero((int)rows.size(), (int)unknowns.size(), nv);
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < unknowns.size(); ++j)
        m.at((int)i, (int)j) = rows[i][j];

    if (level == 3) {
      // homogeneous: the solution line is spanned by K30
      std::vector<RatFun> zero_rhs(rows.size(), RatFun(nv));
      LinSolve sol = solve_linear(m, zero_rhs);
      if (!sol.consistent || sol.kernel.size() != 1)
        throw std::domain_error(
            "solve_npoint: three-point solution space is not a line");
      long kidx = index_of({zero, gen_right});
      RatFun gen_val = sol.kernel[0][(size_t)kidx];
      if (gen_val.is_zero())
        throw std::domain_error("solve_npoint: generator pairing vanishes");
      for (size_t j = 0; j < unknowns.size(); ++j)
        table.ratio[unknowns[j]] = sol.kernel[0][j] / gen_val;
    } else {
      LinSolve sol = solve_linear(m, rhs);
      if (!sol.consistent)
        throw std::domain_error("solve_npoint: inconsistent pairing system");
      if (!sol.kernel.empty())
        throw std::domain_error(
            "solve_npoint: rank deficiency leaves extra generators");
      for (size_t j = 0; j < unknowns.size(); ++j)
        table.ratio[unknowns[j]] = sol.particular[j];
      if (level == 4) {
        Expo e1 = {1, 0}, e2 = {0, 1};
        Expo g1 = {4, 0}, g2 = {3, 1};
        table.rho1 = table.lookup(e1, gen_right) + table.lookup(zero, g1);
        table.rho2 = table.lookup(e2, gen_right) + table.lookup(zero, g2);
      }
    }
  }

  // integrability of the first-order system
  RatFun lhs = table.rho1.log_derivative(1);
  RatFun rhs2 = table.rho2.log_derivative(0);
  if (lhs != rhs2)
    throw std::logic_error("solve_npoint: integrability check failed");
  return table;
}

std::string ClosedForm::str(const std::vector<std::string>& names) const {
  std::ostringstream os;
  os << "c";
  for (auto& [f, e] : factors) {
    os << " * (" << f.str(names) << ")";
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

RatFun ClosedForm::value(int nvars) const {
  RatFun v = RatFun::constant(nvars, Rat(1));
  for (auto& [f, e] : factors) {
    RatFun fe(f);
    for (long k = 0; k < std::abs(e); ++k) v = e > 0 ? v * fe : v / fe;
  }
  return v;
}

ClosedForm integrate_closed_form(const RatFun& rho1, const RatFun& rho2,
                                 const std::vector<MPoly>& factor_basis) {
  int nv = 2;
  std::vector<RatFun> rhos = {rho1, rho2};
  // unknown integer exponents e_f with rho_s = sum_f e_f d_s(f)/f
  std::vector<std::vector<RatFun>> logs;  // [factor][var]
  for (auto& f : factor_basis) {
    RatFun rf(f);
    logs.push_back({rf.log_derivative(0) / rf, rf.log_derivative(1) / rf});
  }
  // match coefficients over a common denominator
  std::vector<std::vector<Rat>> rows;
  std::vector<Rat> rhs;
  for (int s = 0; s < nv; ++s) {
    MPoly den = rhos[(size_t)s].den();
    for (auto& l : logs) den = den * l[(size_t)s].den();
    std::vector<MPoly> cols;
    for (auto& l : logs)
      cols.push_back(l[(size_t)s].num() *
                     den.divide_exact(l[(size_t)s].den()));
    MPoly target =
        rhos[(size_t)s].num() * den.divide_exact(rhos[(size_t)s].den());
    // collect all monomials
    std::set<Expo> monos;
    for (auto& c : cols)
      for (auto& [e, k] : c.terms()) monos.insert(e);
    for (auto& [e, k] : target.terms()) monos.insert(e);
    for (auto& e : monos) {
      std::vector<Rat> row;
      for (auto& c : cols) row.push_back(c.coeff(e));
      rows.push_back(row);
      rhs.push_back(target.coeff(e));
    }
  }
  FMat m = fmat_zero((int)rows.size(), (int)factor_basis.size(), 0);
  std::vector<RatFun> b;
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < factor_basis.size(); ++j)
      m.at((int)i, (int)j) = RatFun::constant(0, rows[i][j]);
    b.push_back(RatFun::constant(0, rhs[i]));
  }
  LinSolve sol = solve_linear(m, b);
  if (!sol.consistent)
    throw std::domain_error(
        "integrate_closed_form: no solution over the factor basis");
  ClosedForm out;
  for (size_t j = 0; j < factor_basis.size(); ++j) {
    Rat e = sol.particular[j].constant_value();
    if (e.is_zero()) continue;
    if (!e.is_integer())
      throw std::domain_error(
          "integrate_closed_form: non-integer exponent over the basis");
    out.factors.push_back({factor_basis[j], e.to_long()});
  }
  // exact verification
  for (int s = 0; s < nv; ++s) {
    RatFun acc(nv);
    for (auto& [f, e] : out.factors) {
      RatFun rf(f);
      acc += (rf.log_derivative(s) / rf) * RatFun::constant(nv, Rat(e));
    }
    if (acc != rhos[(size_t)s])
      throw std::logic_error("integrate_closed_form: verification failed");
  }
  return out;
}

IntersectionResult intersection_matrix(const NPointTable& table,
                                       const ClosedForm& cf,
                                       const Frame& frame,
                                       const std::vector<Rat>& point) {
  int n = (int)frame.monomials.size();
  int nv = 2;
  IntersectionResult out;
  out.q_ratio = fmat_zero(n, n, nv);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out.q_ratio.at(i, j) =
          table.lookup(frame.monomials[(size_t)i], frame.monomials[(size_t)j]);
  RatFun k30 = cf.value(nv);
  out.q0 = qmat_zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      RatFun v = out.q_ratio.at(i, j) * k30;
      if (v.regular_at(point)) {
        out.q0.at(i, j) = v.eval(point);
      } else {
        out.q0.at(i, j) =
            v.restrict_var(1, point[1]).restrict_var(0, point[0]).constant_value();
      }
    }
  Rat corner = out.q0.at(0, n - 1);
  if (corner.is_zero())
    throw std::domain_error("intersection_matrix: degenerate corner entry");
  out.scale = corner.abs();
  out.q0_normalized = qmat_scale(out.q0, out.scale.inv());
  return out;
}

}  // namespace ps
