#pragma once

#include "periodscope/dmod.hpp"

namespace ps {

// Ordered monomial basis of the holonomic quotient; the first element is the
// canonical section, Hodge level of an element = 3 - its total delta-order.
struct Frame {
  std::vector<Expo> monomials;
};

// Connection matrices in the frame, convention nabla_{d_i} w = w * R[i].
struct Connection {
  Frame frame;
  std::vector<FMat> R;
};

// Builds the connection from the Picard-Fuchs basis. The frame may be any
// monomial basis of the quotient (checked); coordinates are obtained through
// the staircase transition matrix.
Connection connection(const GroebnerBasis& gb, const Frame& frame);

bool flatness_check(const Connection& c);

Connection gauge(const Connection& c, const FMat& g);

struct EigenReport {
  std::vector<std::pair<Rat, int>> ev1, ev2;  // eigenvalue, multiplicity
  bool rational = true;
};

struct ResidueData {
  std::vector<Rat> point;
  QMat n1, n2;
  bool commute = false;
  bool unipotent = false;
  EigenReport eigen;
  // limit Hodge flag as constant column spans (F3 in F2 in F1 in F0 = all)
  QMat f3, f2, f1;
  std::string note;
};

// Residues of the connection at a boundary point by staged evaluation
// (second coordinate restricted first); throws when entries keep poles.
ResidueData residues(const Connection& c, const std::vector<Rat>& point);

// Residue extraction with monomial-gauge normalization: integer eigenvalue
// parts are shifted to zero, fractional parts are reported (quasi-unipotent).
ResidueData normalize_boundary(const Connection& c,
                               const std::vector<Rat>& point);

}  // namespace ps
