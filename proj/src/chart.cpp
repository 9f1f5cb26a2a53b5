#include "periodscope/dmod.hpp"

namespace ps {

namespace {

LogDiffOp apply_shift(const LogDiffOp& op, const std::vector<Rat>& a) {
  bool trivial = true;
  for (auto& x : a)
    if (!x.is_zero()) trivial = false;
  if (trivial) return op;
  // Route through the partial form: d/dz is shift-invariant.
  PolyDiffOp p = to_partial(op);
  PolyDiffOp q;
  q.nvars = p.nvars;
  for (auto& [e, c] : p.terms) q.terms[e] = c.shift(a);
  return from_partial(q);
}

LogDiffOp apply_monomial(const LogDiffOp& op,
                         const std::vector<std::vector<long>>& E) {
  int nv = op.nvars();
  bool identity = true;
  for (int i = 0; i < nv; ++i)
    for (int j = 0; j < nv; ++j)
      if (E[(size_t)i][(size_t)j] != (i == j ? 1 : 0)) identity = false;
  if (identity) return op;
  QMat eq = qmat_zero(nv, nv);
  for (int i = 0; i < nv; ++i)
    for (int j = 0; j < nv; ++j) eq.at(i, j) = Rat(E[(size_t)i][(size_t)j]);
  auto inv = qmat_inverse(eq);
  if (!inv) throw std::domain_error("change_chart: exponent matrix singular");
  // d_{z_j} = sum_i inv[j][i] d_{u_i}
  std::vector<LogDiffOp> dz;
  for (int j = 0; j < nv; ++j) {
    LogDiffOp l(nv);
    for (int i = 0; i < nv; ++i) {
      Rat c = inv->at(j, i);
      if (!c.is_zero())
        l += LogDiffOp::delta(nv, i).scaled(RatFun::constant(nv, c));
    }
    dz.push_back(l);
  }
  LogDiffOp out(nv);
  for (auto& [e, c] : op.terms()) {
    LogDiffOp mono = LogDiffOp::one(nv);
    for (int j = 0; j < nv; ++j)
      for (int k = 0; k < e[(size_t)j]; ++k) mono = ore_mul(mono, dz[(size_t)j]);
    out += mono.scaled(c.subs_monomial(E));
  }
  return out;
}

}  // namespace

LogDiffOp apply_stage(const LogDiffOp& op, const ChartStage& st) {
  LogDiffOp cur = op;
  if (!st.shift.empty()) cur = apply_shift(cur, st.shift);
  if (!st.expo.empty()) cur = apply_monomial(cur, st.expo);
  if (!st.rescale.empty()) cur = rescale(cur, st.rescale);
  return cur;
}

std::vector<LogDiffOp> change_chart(const std::vector<LogDiffOp>& ops,
                                    const Chart& chart) {
  std::vector<LogDiffOp> out;
  for (auto& op : ops) {
    LogDiffOp cur = op;
    for (auto& st : chart.stages) cur = apply_stage(cur, st);
    // normalize by an overall function unit when the stages introduced
    // denominators: clear them and strip the common polynomial content
    int nv = cur.nvars();
    bool poly = true;
    for (auto& [e, c] : cur.terms())
      if (!c.is_polynomial()) poly = false;
    if (poly) {
      out.push_back(cur);
      continue;
    }
    MPoly den = MPoly::constant(nv, Rat(1));
    for (auto& [e, c] : cur.terms()) {
      MPoly g = gcd(den, c.den());
      den = den * c.den().divide_exact(g);
    }
    MPoly content(nv);
    std::map<Expo, MPoly> cleared;
    for (auto& [e, c] : cur.terms()) {
      MPoly p = c.num() * den.divide_exact(c.den());
      cleared[e] = p;
      content = content.is_zero() ? p.primitive_part() : gcd(content, p);
    }
    LogDiffOp norm(nv);
    if (!content.is_zero() && !content.is_constant()) {
      for (auto& [e, p] : cleared)
        norm.add_term(e, RatFun(p.divide_exact(content)));
    } else {
      for (auto& [e, p] : cleared) norm.add_term(e, RatFun(p));
    }
    out.push_back(norm);
  }
  return out;
}

}  // namespace ps
