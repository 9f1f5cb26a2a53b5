#pragma once

#include "periodscope/gaussmanin.hpp"
#include "periodscope/hodge.hpp"

namespace ps {

struct PFResult {
  std::vector<LogDiffOp> gens;  // presentation generators of the quotient
  GroebnerBasis gb;
  bool factored = false;
  std::string note;
};

// Cuts the hypergeometric system down to the holonomic-rank-(2r+2) quotient
// annihilating the canonical periods: searches integer combinations of the
// generators for exact left factors of first order, accepting a replacement
// only when the quotient ideal has the expected rank and its origin residues
// pass the maximal-unipotent test.
PFResult pf_from_gkz(const std::vector<LogDiffOp>& gkz);

}  // namespace ps
