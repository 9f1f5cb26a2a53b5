#pragma once

#include "periodscope/gaussmanin.hpp"

namespace ps {

// Pairing <u|v> between delta-derivatives of the canonical section, stored
// for canonical keys (u lexicographically below v); antisymmetric, and zero
// below total order three by transversality.
struct PairingKey {
  Expo left, right;
  bool operator<(const PairingKey& o) const {
    if (left != o.left) return left < o.left;
    return right < o.right;
  }
  bool operator==(const PairingKey& o) const {
    return left == o.left && right == o.right;
  }
};

struct NPointTable {
  // value / K30 for every canonical nonzero pairing up to the order cap
  std::map<PairingKey, RatFun> ratio;
  RatFun rho1, rho2;  // d_i K30 = rho_i K30
  int max_order = 5;

  // signed lookup: returns ratio of <u|v> to K30 (zero when forced)
  RatFun lookup(const Expo& u, const Expo& v) const;
};

NPointTable solve_npoint(const std::vector<LogDiffOp>& pf, int max_order = 5);

struct ClosedForm {
  std::vector<std::pair<MPoly, long>> factors;  // K30 = c * prod f^e
  std::string str(const std::vector<std::string>& names = {}) const;
  RatFun value(int nvars) const;  // with c = 1
};

// Solves rho_s = sum_f e_f d_s(f)/f for integer exponents over the factor
// basis; throws with the residual when no solution exists over the basis.
ClosedForm integrate_closed_form(const RatFun& rho1, const RatFun& rho2,
                                 const std::vector<MPoly>& factor_basis);

struct IntersectionResult {
  FMat q_ratio;        // pairings of the frame divided by K30
  QMat q0;             // evaluated at the point with c = 1
  Rat scale;           // positive unit with q0 = scale * q0_normalized
  QMat q0_normalized;  // corner entry (1, n) equal to +-1
};

IntersectionResult intersection_matrix(const NPointTable& table,
                                       const ClosedForm& cf,
                                       const Frame& frame,
                                       const std::vector<Rat>& point);

}  // namespace ps
