#pragma once

#include <optional>
#include <string>
#include <vector>

#include "periodscope/linalg.hpp"
#include "periodscope/toric.hpp"  // RefusalError

namespace ps {

// Monodromy weight filtration centered at weight 3: spans W[0] .. W[6].
struct WeightFiltration {
  std::vector<QMat> W;       // column spans, W[6] = everything
  std::vector<int> gr_dims;  // graded dimensions by weight 0..6
};

WeightFiltration weight_filtration(const QMat& n);
std::vector<int> jordan_signature(const QMat& n);  // block sizes, descending

// Limiting mixed Hodge structure type for Hodge numbers (1,2,2,1):
// families I..IV with index; the ambiguity set lists all catalog matches
// when the limit Hodge flag is not supplied.
struct LMHSType {
  int family = 1;  // 1=I, 2=II, 3=III, 4=IV
  int index = 0;
  std::vector<std::pair<int, int>> ambiguity;  // alternative (family, index)
  std::string str() const;
  bool same_type(const LMHSType& o) const {
    return family == o.family && index == o.index;
  }
};

struct ConeType {
  LMHSType a, b, c;
  bool monotone = true;  // advisory: interior family not below the boundary
  std::string str() const;
};

// Limit Hodge flag as constant column spans.
struct LimitFlag {
  QMat f3, f2, f1;
};

bool polarization_check(const QMat& n, const QMat& q);

// Diamond catalog entry (admissible types only).
struct DiamondEntry {
  int family, index;
  std::vector<int> gr_dims;                 // weights 0..6
  std::vector<std::vector<int>> hpq;        // 4x4 Hodge-Deligne numbers
};
const std::vector<DiamondEntry>& diamond_catalog();

LMHSType lmhs_type(const QMat& n, const QMat& q,
                   const std::optional<LimitFlag>& f);

ConeType cone_type(const QMat& n1, const QMat& n2, const QMat& q,
                   const std::optional<LimitFlag>& f);

// True when the pair defines a maximal unipotent degeneration: Hodge-Tate
// weight structure and invertible pairing matrix on W2/W0.
struct MumReport {
  bool is_mum = false;
  std::vector<int> gr_dims;
  QMat m;  // the r x r pairing matrix
};
MumReport mum_check(const QMat& n1, const QMat& n2);

int knu_flip_degree(const ConeType& ct, bool flip_symmetry_present);

// 1 when the frame vector spanning the limit F^3 is moved to independent
// directions by the two residues; 0 means inconclusive.
int local_iso_degree(const QMat& n1, const QMat& n2, const QMat& f3);

struct DegreeBreakdown {
  int local_degree = 0;
  int flip_degree = 0;
  int generic = 0;
  std::string chosen;
};
// Product formula for the generic degree; refuses unless the chosen cone
// type is unique in the catalog and the local piece is an isomorphism.
DegreeBreakdown generic_degree(
    const std::vector<std::pair<std::string, ConeType>>& catalog,
    const std::string& chosen, bool flip_symmetry_present, int local_result);

}  // namespace ps
