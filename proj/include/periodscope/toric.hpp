#pragma once

#include <optional>
#include <string>
#include <vector>

#include "periodscope/intlinalg.hpp"

namespace ps {

// Raised when an operation declines to answer (caller may treat as exit 2).
struct RefusalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Integer toric data: columns of A are the rays, rows of B span the relation
// lattice. Invariant: A B^t = 0 and B's rows are a basis of ker_Z(A).
struct ToricData {
  std::string name;
  int n = 0;  // lattice rank
  int k = 0;  // ray count
  IMat A;     // n x k
  IMat B;     // (k-n) x k
};

struct ValidateReport {
  bool ok = true;
  int rank_A = 0;
  int r = 0;  // k - n
  std::string message;
};

ValidateReport validate(const ToricData& td);
IMat relation_lattice(const IMat& A);  // HNF basis of ker_Z(A), rows
ToricData suspend(const ToricData& td);

struct Facet {
  IVec normal;  // primitive inward normal
  Int support;  // <p, normal> >= support for all p
};

struct Face {
  std::vector<int> point_idx;   // lattice points on the face
  std::vector<int> facet_idx;   // facets containing the face
  int dim = -1;
};

struct Polytope {
  int dim = 0;
  std::vector<IVec> gens;    // generating points as given
  std::vector<Facet> facets;
  std::vector<IVec> points;  // all lattice points
};

Polytope make_polytope(const std::vector<IVec>& pts);
std::vector<IVec> columns_of(const IMat& a);

bool is_reflexive(const Polytope& p);
// Polar dual; requires 0 interior. For reflexive input this is again a
// lattice polytope with vertices the facet normals.
Polytope polar_dual(const Polytope& p);

std::vector<Face> face_lattice(const Polytope& p);
int relative_interior_count(const Polytope& p, const Face& f);
// Dual face in q (= polar dual of p): points of q pairing to -1 with all of f.
Face dual_face(const Polytope& p, const Polytope& q, const Face& f);

struct InteriorFiltered {
  std::vector<IVec> all_points;
  std::vector<IVec> filtered;  // facet-interior points removed
};
InteriorFiltered interior_filtered_points(const Polytope& p);

bool moduli_equality_check(const Polytope& p);

struct SecondaryFanData {
  std::vector<IVec> rays;              // primitive, sorted counterclockwise
  std::vector<int> multiplicities;
};
SecondaryFanData secondary_rays(const IMat& b_bar);

struct FanSymmetry {
  std::vector<int> perm;  // ray i maps to ray perm[i]
  IMat matrix;            // unimodular, matrix * v_i = v_{perm[i]}
};

std::vector<FanSymmetry> aut_xi(const ToricData& td);
// aut_xi filtered through the facet-permutation verification; throws if some
// element fails (the two groups are expected to coincide here).
std::vector<FanSymmetry> aut_sigma(const ToricData& td);
bool t_trivial(const FanSymmetry& sym, const IMat& b_bar);

// True when some ray admits a Demazure root (a one-parameter additive
// symmetry); phi_degree refuses in that case.
bool has_root_symmetry(const ToricData& td);

int phi_degree(const ToricData& td);

std::pair<long, long> hodge_numbers(const Polytope& p);  // (h11, h21)

}  // namespace ps
