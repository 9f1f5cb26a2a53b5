#include "periodscope/pf.hpp"

#include <algorithm>

namespace ps {

namespace {

bool mum_at_origin(const GroebnerBasis& gb) {
  // The staircase need not extend across the boundary; try the standard
  // order-filtered frames as well before giving up on a candidate.
  std::vector<Frame> frames = {
      Frame{gb.staircase},
      Frame{{{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 0}, {2, 1}}},
      Frame{{{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0, 2}, {1, 2}}}};
  for (auto& frame : frames) {
    if (frame.monomials.size() != gb.staircase.size()) continue;
    try {
      Connection c = connection(gb, frame);
      std::vector<Rat> origin(2, Rat(0));
      ResidueData res = residues(c, origin);
      if (!res.commute || !res.unipotent) continue;
      return mum_check(res.n1, res.n2).is_mum;
    } catch (const std::exception&) {
      continue;  // frame not a basis or singular at the origin
    }
  }
  return false;
}

std::vector<LogDiffOp> first_order_candidates(int nv) {
  std::vector<LogDiffOp> out;
  for (int c1 = -3; c1 <= 3; ++c1)
    for (int c2 = -3; c2 <= 3; ++c2) {
      if (c1 == 0 && c2 == 0) continue;
      for (int c0 = -3; c0 <= 3; ++c0) {
        LogDiffOp l(nv);
        if (c1 != 0)
          l += LogDiffOp::delta(nv, 0).scaled(RatFun::constant(nv, Rat(c1)));
        if (c2 != 0 && nv > 1)
          l += LogDiffOp::delta(nv, 1).scaled(RatFun::constant(nv, Rat(c2)));
        if (c0 != 0) l += LogDiffOp::coeff(RatFun::constant(nv, Rat(c0)));
        out.push_back(l);
      }
    }
  // canonical sign: positive leading delta-coefficient
  DeltaOrder ord = DeltaOrder::standard(nv);
  std::vector<LogDiffOp> kept;
  for (auto& l : out)
    if (l.lead_coeff(ord).num().lead_coeff().sign() > 0) kept.push_back(l);
  out = kept;
  // simple factors first
  auto weight = [](const LogDiffOp& l) {
    long w = 0;
    for (auto& [e, c] : l.terms())
      w += (expo_total(e) == 0 ? 2 : 1) *
           (c.num().lead_coeff().abs().num().get_si());
    return w;
  };
  std::stable_sort(out.begin(), out.end(), [&](auto& a, auto& b) {
    return weight(a) < weight(b);
  });
  return out;
}

}  // namespace

PFResult pf_from_gkz(const std::vector<LogDiffOp>& gkz) {
  if (gkz.empty()) throw std::domain_error("pf_from_gkz: no generators");
  int nv = gkz[0].nvars();
  if (nv != 2) throw std::domain_error("pf_from_gkz: two parameters required");
  const int target = 2 * nv + 2;
  DeltaOrder ord = DeltaOrder::standard(nv);
  auto candidates = first_order_candidates(nv);

  PFResult out;
  out.gens = gkz;
  out.gb = groebner(gkz, ord);
  int rank = out.gb.finite ? (int)out.gb.staircase.size() : -1;

  if (rank == target) {
    // Already minimal; simplify the presentation by stripping exact
    // first-order left factors that leave the ideal unchanged.
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t gi = 0; gi < out.gens.size() && !changed; ++gi) {
        if (out.gens[gi].order() < 2) continue;
        for (auto& l : candidates) {
          auto q = left_divide_first_order(out.gens[gi], l, ord);
          if (!q || q->order() >= out.gens[gi].order()) continue;
          std::vector<LogDiffOp> trial = out.gens;
          trial[gi] = *q;
          GroebnerBasis gb2 = groebner(trial, ord);
          if (gb2.finite && (int)gb2.staircase.size() == target) {
            out.gens = trial;
            out.gb = gb2;
            out.note += "stripped a first-order left factor from generator " +
                        std::to_string(gi + 1) + "; ";
            changed = true;
            break;
          }
        }
      }
    }
    if (out.note.empty()) out.note = "generators already of minimal rank";
    return out;
  }

  // Search integer combinations with an exact first-order left factor.
  struct Combo {
    std::vector<int> coeff;
    size_t replace;
  };
  std::vector<Combo> combos;
  for (size_t gi = 0; gi < gkz.size(); ++gi) {
    Combo c;
    c.coeff.assign(gkz.size(), 0);
    c.coeff[gi] = 1;
    c.replace = gi;
    combos.push_back(c);
  }
  {
    std::vector<Combo> pairs;
    for (size_t gi = 0; gi < gkz.size(); ++gi)
      for (size_t gj = gi + 1; gj < gkz.size(); ++gj)
        for (int a = -3; a <= 3; ++a)
          for (int b = -3; b <= 3; ++b) {
            if (a == 0 || b == 0) continue;
            if (std::abs(a) != 1 && std::abs(b) != 1) continue;
            Combo c;
            c.coeff.assign(gkz.size(), 0);
            c.coeff[gi] = a;
            c.coeff[gj] = b;
            c.replace = std::abs(b) == 1 ? gj : gi;
            pairs.push_back(c);
          }
    std::stable_sort(pairs.begin(), pairs.end(), [](auto& x, auto& y) {
      int wx = 0, wy = 0;
      for (int c : x.coeff) wx += std::abs(c);
      for (int c : y.coeff) wy += std::abs(c);
      return wx < wy;
    });
    for (auto& c : pairs) combos.push_back(c);
  }

  for (auto& combo : combos) {
    LogDiffOp target_op(nv);
    for (size_t gi = 0; gi < gkz.size(); ++gi) {
      if (combo.coeff[gi] == 0) continue;
      target_op += gkz[gi].scaled(RatFun::constant(nv, Rat(combo.coeff[gi])));
    }
    if (target_op.is_zero()) continue;
    for (auto& l : candidates) {
      auto q = left_divide_first_order(target_op, l, ord);
      if (!q || q->order() >= target_op.order()) continue;
      std::vector<LogDiffOp> trial = gkz;
      trial[combo.replace] = *q;
      GroebnerBasis gb2;
      try {
        gb2 = groebner(trial, ord);
      } catch (const ResourceError&) {
        continue;
      }
      if (!gb2.finite || (int)gb2.staircase.size() != target) continue;
      if (!mum_at_origin(gb2)) continue;
      out.gens = trial;
      out.gb = gb2;
      out.factored = true;
      out.note = "replaced generator " + std::to_string(combo.replace + 1) +
                 " by the right factor of an integer combination under " +
                 l.str();
      return out;
    }
  }
  throw RefusalError(
      "pf_from_gkz: no rank-" + std::to_string(target) +
      " quotient found within the search bounds; supply the factor manually");
}

}  // namespace ps
