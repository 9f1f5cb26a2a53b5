#include "periodscope/gaussmanin.hpp"

#include <algorithm>

namespace ps {

namespace {

// Coordinates of a reduced operator in the staircase basis.
std::vector<RatFun> staircase_coords(const LogDiffOp& nf,
                                     const GroebnerBasis& gb) {
  std::vector<RatFun> v;
  for (auto& m : gb.staircase) v.push_back(nf.coeff_of(m));
  size_t supported = 0;
  for (auto& x : v)
    if (!x.is_zero()) ++supported;
  size_t nonzero = 0;
  for (auto& [e, c] : nf.terms())
    if (!c.is_zero()) ++nonzero;
  if (supported != nonzero)
    throw std::logic_error("connection: normal form escapes the staircase");
  return v;
}

LogDiffOp monomial_op(int nv, const Expo& e) {
  return LogDiffOp::term(RatFun::constant(nv, Rat(1)), e);
}

}  // namespace

Connection connection(const GroebnerBasis& gb, const Frame& frame) {
  int nv = gb.gens.empty() ? 0 : gb.gens[0].nvars();
  int n = (int)frame.monomials.size();
  if (!gb.finite || (int)gb.staircase.size() != n)
    throw std::domain_error("connection: frame size differs from the rank");

  FMat T = fmat_zero(n, n, nv);
  for (int j = 0; j < n; ++j) {
    LogDiffOp nf = normal_form(monomial_op(nv, frame.monomials[(size_t)j]), gb);
    auto coords = staircase_coords(nf, gb);
    for (int i = 0; i < n; ++i) T.at(i, j) = coords[(size_t)i];
  }
  auto Tinv = fmat_inverse(T);
  if (!Tinv)
    throw std::domain_error("connection: frame is not a basis of the quotient");

  Connection out;
  out.frame = frame;
  for (int var = 0; var < nv; ++var) {
    FMat cols = fmat_zero(n, n, nv);
    for (int j = 0; j < n; ++j) {
      LogDiffOp op = ore_mul(LogDiffOp::delta(nv, var),
                             monomial_op(nv, frame.monomials[(size_t)j]));
      LogDiffOp nf = normal_form(op, gb);
      auto coords = staircase_coords(nf, gb);
      for (int i = 0; i < n; ++i) cols.at(i, j) = coords[(size_t)i];
    }
    out.R.push_back(fmat_mul(*Tinv, cols));
  }
  return out;
}

bool flatness_check(const Connection& c) {
  if (c.R.size() != 2) throw std::domain_error("flatness_check: two variables");
  auto d = [&](const FMat& m, int var) {
    return fmat_map(m, [&](const RatFun& f) { return f.log_derivative(var); });
  };
  // integrability of d_i + R_i acting on coordinate columns
  FMat lhs = fmat_add(d(c.R[1], 0), fmat_mul(c.R[0], c.R[1]));
  FMat rhs = fmat_add(d(c.R[0], 1), fmat_mul(c.R[1], c.R[0]));
  return fmat_is_zero(fmat_sub(lhs, rhs));
}

Connection gauge(const Connection& c, const FMat& g) {
  auto ginv = fmat_inverse(g);
  if (!ginv) throw std::domain_error("gauge: singular gauge matrix");
  Connection out;
  out.frame = c.frame;
  for (size_t var = 0; var < c.R.size(); ++var) {
    FMat dg = fmat_map(
        g, [&](const RatFun& f) { return f.log_derivative((int)var); });
    out.R.push_back(fmat_add(fmat_mul(*ginv, fmat_mul(c.R[(size_t)var], g)),
                             fmat_mul(*ginv, dg)));
  }
  return out;
}

namespace {

// Staged evaluation: restrict the second coordinate first, then the first.
Rat staged_eval(const RatFun& f, const std::vector<Rat>& point) {
  if (f.regular_at(point)) return f.eval(point);
  RatFun r = f.restrict_var(1, point[1]);
  r = r.restrict_var(0, point[0]);
  return r.constant_value();
}

QMat staged_eval_mat(const FMat& m, const std::vector<Rat>& point) {
  QMat out = qmat_zero(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      out.at(i, j) = staged_eval(m.at(i, j), point);
  return out;
}

QMat flag_span(const Frame& frame, long max_order) {
  int n = (int)frame.monomials.size();
  std::vector<int> idx;
  for (int j = 0; j < n; ++j)
    if (expo_total(frame.monomials[(size_t)j]) <= max_order) idx.push_back(j);
  QMat s = qmat_zero(n, (int)idx.size());
  for (size_t k = 0; k < idx.size(); ++k) s.at(idx[k], (int)k) = Rat(1);
  return s;
}

ResidueData residues_impl(const Connection& c, const std::vector<Rat>& point,
                          const FMat* total_gauge) {
  ResidueData out;
  out.point = point;
  out.n1 = staged_eval_mat(c.R[0], point);
  out.n2 = staged_eval_mat(c.R[1], point);
  out.commute = qmat_is_zero(
      qmat_sub(qmat_mul(out.n1, out.n2), qmat_mul(out.n2, out.n1)));
  auto [ev1, ok1] = rational_eigenvalues(out.n1);
  auto [ev2, ok2] = rational_eigenvalues(out.n2);
  out.eigen.ev1 = ev1;
  out.eigen.ev2 = ev2;
  out.eigen.rational = ok1 && ok2;
  out.unipotent = out.eigen.rational;
  for (auto& [v, m] : ev1)
    if (!v.is_zero()) out.unipotent = false;
  for (auto& [v, m] : ev2)
    if (!v.is_zero()) out.unipotent = false;

  QMat f3 = flag_span(c.frame, 0), f2 = flag_span(c.frame, 1),
       f1 = flag_span(c.frame, 2);
  if (total_gauge) {
    auto ginv = fmat_inverse(*total_gauge);
    if (!ginv) throw std::logic_error("residues: singular tracked gauge");
    QMat gi = staged_eval_mat(*ginv, point);
    out.f3 = span_columns(qmat_mul(gi, f3));
    out.f2 = span_columns(qmat_mul(gi, f2));
    out.f1 = span_columns(qmat_mul(gi, f1));
  } else {
    out.f3 = f3;
    out.f2 = f2;
    out.f1 = f1;
  }
  return out;
}

}  // namespace

ResidueData residues(const Connection& c, const std::vector<Rat>& point) {
  return residues_impl(c, point, nullptr);
}

ResidueData normalize_boundary(const Connection& c,
                               const std::vector<Rat>& point) {
  int n = c.R.empty() ? 0 : c.R[0].rows();
  int nv = 2;
  ResidueData first = residues_impl(c, point, nullptr);
  if (!first.commute) {
    first.note = "residues fail to commute (chart unsuitable)";
    return first;
  }
  if (!first.eigen.rational) {
    first.note = "non-rational residue eigenvalues";
    return first;
  }
  bool integral = true;
  for (auto& [v, m] : first.eigen.ev1)
    if (!v.is_integer()) integral = false;
  for (auto& [v, m] : first.eigen.ev2)
    if (!v.is_integer()) integral = false;
  if (first.unipotent) return first;

  // Joint generalized eigenspaces of the commuting residue pair; shift the
  // integer parts to zero with a monomial gauge.
  QMat basis = qmat_zero(n, 0);
  std::vector<std::pair<Rat, Rat>> col_shift;
  auto floor_of = [](const Rat& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.num().get_mpz_t(), x.den().get_mpz_t());
    return Rat(q);
  };
  for (auto& [l1, m1] : first.eigen.ev1) {
    QMat k1 = qmat_kernel(
        qmat_pow(qmat_sub(first.n1, qmat_scale(qmat_identity(n), l1)), n));
    for (auto& [l2, m2] : first.eigen.ev2) {
      QMat k2 = qmat_kernel(
          qmat_pow(qmat_sub(first.n2, qmat_scale(qmat_identity(n), l2)), n));
      QMat joint = span_intersect(k1, k2);
      for (int col = 0; col < joint.cols(); ++col) {
        QMat add = qmat_zero(n, basis.cols() + 1);
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < basis.cols(); ++j) add.at(i, j) = basis.at(i, j);
          add.at(i, basis.cols()) = joint.at(i, col);
        }
        if (qmat_rank(add) > basis.cols()) {
          basis = add;
          col_shift.push_back({floor_of(l1), floor_of(l2)});
        }
      }
    }
  }
  if (basis.cols() != n) {
    first.note = "joint eigenbasis incomplete";
    return first;
  }
  FMat g = fmat_zero(n, n, nv);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (basis.at(i, j).is_zero()) continue;
      long a = -col_shift[(size_t)j].first.to_long();
      long b = -col_shift[(size_t)j].second.to_long();
      Expo pos((size_t)nv, 0), neg((size_t)nv, 0);
      (a >= 0 ? pos : neg)[0] = (int)std::abs(a);
      (b >= 0 ? pos : neg)[1] = (int)std::abs(b);
      MPoly num = MPoly::monomial(nv, pos, basis.at(i, j));
      MPoly den = MPoly::monomial(nv, neg, Rat(1));
      g.at(i, j) = RatFun(num, den);
    }
  Connection moved = gauge(c, g);
  ResidueData out = residues_impl(moved, point, &g);
  if (!integral) {
    out.unipotent = false;
    out.note = "quasi-unipotent: fractional residue eigenvalues reported";
  }
  return out;
}

}  // namespace ps
