#include "doctest.h"

#include "periodscope/gaussmanin.hpp"

using namespace ps;

namespace {

GroebnerBasis pf_gb_229() {
  LogDiffOp p1 = LogDiffOp::parse(
      "d1^3 + z1*(d1+d2+1/3)*(d1+d2+2/3)*(d1+d2+1)", 2);
  LogDiffOp p2 = LogDiffOp::parse(
      "(d1^2-d1*d2+d2^2) + (z1+z2)*(d1+d2+1/3)*(d1+d2+2/3)", 2);
  return groebner({p1, p2}, DeltaOrder::standard(2));
}

GroebnerBasis pf_gb_238() {
  LogDiffOp p1 = LogDiffOp::parse("d1*(d1-3*d2) + z1*(d1+1/3)*(d1+2/3)", 2);
  LogDiffOp p2 = LogDiffOp::parse(
      "d2^3 - z2*(1/3*d1-d2)*(1/3*d1-d2-1/3)*(1/3*d1-d2-2/3)", 2);
  return groebner({p1, p2}, DeltaOrder::standard(2));
}

Frame frame_229() {
  return Frame{{{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 0}, {2, 1}}};
}

Frame frame_238() {
  return Frame{{{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0, 2}, {1, 2}}};
}

long entry(const QMat& m, int i, int j) { return m.at(i, j).num().get_si(); }

}  // namespace

TEST_CASE("trivial connection") {
  auto gb = groebner({LogDiffOp::delta(2, 0), LogDiffOp::delta(2, 1)},
                     DeltaOrder::standard(2));
  Frame f{{{0, 0}}};
  auto c = connection(gb, f);
  CHECK(c.R[0].at(0, 0).is_zero());
  CHECK(c.R[1].at(0, 0).is_zero());
  CHECK(flatness_check(c));
}

TEST_CASE("V229 connection reproduces the boundary residues") {
  auto gb = pf_gb_229();
  auto c = connection(gb, frame_229());
  CHECK(flatness_check(c));
  // sparsity pattern of the first matrix: subdiagonal ones plus z1-columns
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 6; ++i) {
      RatFun e = c.R[0].at(i, j);
      bool one = (j == 0 && i == 1) || (j == 1 && i == 4) ||
                 (j == 2 && i == 3) || (j == 3 && i == 5);
      if (one) {
        CHECK(e.is_constant());
        CHECK(e.constant_value() == Rat(1));
      } else {
        CHECK(e.is_zero());
      }
    }
  for (int j = 4; j < 6; ++j)
    for (int i = 0; i < 6; ++i) {
      RatFun e = c.R[0].at(i, j);
      if (e.is_zero()) continue;
      // vanishes at z1 = 0
      CHECK(e.restrict_var(0, Rat(0)).is_zero());
    }

  auto res = residues(c, {Rat(0), Rat(0)});
  CHECK(res.commute);
  CHECK(res.unipotent);
  QMat n1 = qmat_zero(6, 6), n2 = qmat_zero(6, 6);
  n1.at(1, 0) = n1.at(3, 2) = n1.at(4, 1) = n1.at(5, 3) = Rat(1);
  n2.at(2, 0) = n2.at(3, 1) = n2.at(3, 2) = n2.at(5, 3) = n2.at(5, 4) = Rat(1);
  n2.at(4, 2) = Rat(-1);
  CHECK(res.n1 == n1);
  CHECK(res.n2 == n2);
}

TEST_CASE("V238 connection reproduces the boundary residues") {
  auto gb = pf_gb_238();
  auto c = connection(gb, frame_238());
  CHECK(flatness_check(c));
  auto res = residues(c, {Rat(0), Rat(0)});
  CHECK(res.commute);
  CHECK(res.unipotent);
  QMat n1 = qmat_zero(6, 6), n2 = qmat_zero(6, 6);
  n1.at(1, 0) = Rat(1);
  n1.at(3, 1) = Rat(3);
  n1.at(3, 2) = Rat(1);
  n1.at(5, 3) = Rat(3);
  n1.at(5, 4) = Rat(1);
  n2.at(2, 0) = n2.at(3, 1) = n2.at(4, 2) = n2.at(5, 3) = Rat(1);
  CHECK(res.n1 == n1);
  CHECK(res.n2 == n2);
}

TEST_CASE("gauge transformations") {
  auto gb = pf_gb_229();
  auto c = connection(gb, frame_229());
  // diagonal polynomial gauge and its inverse round-trip
  FMat g = fmat_identity(6, 2);
  for (int i = 3; i < 6; ++i) g.at(i, i) = RatFun(MPoly::var(2, 1));
  auto moved = gauge(c, g);
  CHECK(flatness_check(moved));
  auto ginv = fmat_inverse(g);
  REQUIRE(ginv.has_value());
  auto back = gauge(moved, *ginv);
  for (int v = 0; v < 2; ++v)
    CHECK(fmat_is_zero(fmat_sub(back.R[(size_t)v], c.R[(size_t)v])));
  // identity gauge
  auto same = gauge(c, fmat_identity(6, 2));
  for (int v = 0; v < 2; ++v)
    CHECK(fmat_is_zero(fmat_sub(same.R[(size_t)v], c.R[(size_t)v])));
  // scalar gauge shifts by the logarithmic derivative
  FMat s = fmat_identity(6, 2);
  RatFun fz(MPoly::parse("1 + z1", {"z1", "z2"}));
  for (int i = 0; i < 6; ++i) s.at(i, i) = fz;
  auto shifted = gauge(c, s);
  RatFun expect = fz.log_derivative(0) / fz;
  RatFun got = shifted.R[0].at(0, 0) - c.R[0].at(0, 0);
  CHECK(got == expect);
}

TEST_CASE("normalize_boundary at an already-nilpotent point") {
  auto gb = pf_gb_229();
  auto c = connection(gb, frame_229());
  auto res = normalize_boundary(c, {Rat(0), Rat(0)});
  CHECK(res.unipotent);
  CHECK(res.note.empty());
  CHECK(span_dim(res.f3) == 1);
  CHECK(span_dim(res.f2) == 3);
  CHECK(span_dim(res.f1) == 5);
}
