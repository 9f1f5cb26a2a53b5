#pragma once

#include <optional>
#include <vector>

#include "periodscope/linalg.hpp"
#include "periodscope/rat.hpp"

namespace ps {

using IVec = std::vector<Int>;
using IMat = std::vector<IVec>;  // row-major

IMat imat_identity(int n);
IMat imat_mul(const IMat& a, const IMat& b);
IMat imat_transpose(const IMat& a);
int imat_rank(const IMat& a);
Int imat_det(const IMat& a);
QMat imat_to_q(const IMat& a);

// Canonical row-style Hermite normal form of the row lattice (zero rows dropped).
IMat row_hnf(const IMat& a);

// Basis (as rows) of the integer kernel {x : a x = 0}.
IMat integer_kernel(const IMat& a);

// Index of the lattice spanned by sub's rows inside the lattice spanned by
// full's rows; nullopt if sub is not contained in full or ranks differ.
std::optional<Int> lattice_index(const IMat& sub, const IMat& full);

// Primitive part of an integer vector (divide by gcd, keep orientation).
IVec primitive(const IVec& v);

}  // namespace ps
