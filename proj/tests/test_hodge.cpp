#include "doctest.h"

#include "periodscope/hodge.hpp"

using namespace ps;

namespace {

QMat from_rows(const std::vector<std::vector<long>>& rows) {
  QMat m = qmat_zero((int)rows.size(), (int)rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[0].size(); ++j)
      m.at((int)i, (int)j) = Rat((long)rows[i][j]);
  return m;
}

// residue pairs at the large-volume boundary points
QMat n1_229() {
  return from_rows({{0, 0, 0, 0, 0, 0},
                    {1, 0, 0, 0, 0, 0},
                    {0, 0, 0, 0, 0, 0},
                    {0, 0, 1, 0, 0, 0},
                    {0, 1, 0, 0, 0, 0},
                    {0, 0, 0, 1, 0, 0}});
}
QMat n2_229() {
  return from_rows({{0, 0, 0, 0, 0, 0},
                    {0, 0, 0, 0, 0, 0},
                    {1, 0, 0, 0, 0, 0},
                    {0, 1, 1, 0, 0, 0},
                    {0, 0, -1, 0, 0, 0},
                    {0, 0, 0, 1, 1, 0}});
}
QMat q_229() {
  return from_rows({{0, 0, 0, 0, 0, 1},
                    {0, 0, 0, -1, 0, 0},
                    {0, 0, 0, -1, -1, 0},
                    {0, 1, 1, 0, 0, 0},
                    {0, 0, 1, 0, 0, 0},
                    {-1, 0, 0, 0, 0, 0}});
}

QMat n1_238() {
  return from_rows({{0, 0, 0, 0, 0, 0},
                    {1, 0, 0, 0, 0, 0},
                    {0, 0, 0, 0, 0, 0},
                    {0, 3, 1, 0, 0, 0},
                    {0, 0, 0, 0, 0, 0},
                    {0, 0, 0, 3, 1, 0}});
}
QMat n2_238() {
  return from_rows({{0, 0, 0, 0, 0, 0},
                    {0, 0, 0, 0, 0, 0},
                    {1, 0, 0, 0, 0, 0},
                    {0, 1, 0, 0, 0, 0},
                    {0, 0, 1, 0, 0, 0},
                    {0, 0, 0, 1, 0, 0}});
}
QMat q_238() {
  // the intersection pairing in the frame of the printed residue pair; the
  // published display transposes the two order-one frame vectors
  return from_rows({{0, 0, 0, 0, 0, 1},
                    {0, 0, 0, -3, -1, 0},
                    {0, 0, 0, -1, 0, 0},
                    {0, 3, 1, 0, 0, 0},
                    {0, 1, 0, 0, 0, 0},
                    {-1, 0, 0, 0, 0, 0}});
}

QMat n1_286() {
  return from_rows({{0, 0, 0, 0, 0, 0},
                    {1, 0, 0, 0, 0, 0},
                    {0, 0, 0, 0, 0, 0},
                    {0, 0, 1, 0, 0, 0},
                    {0, 1, 0, 0, 0, 0},
                    {0, 0, 0, 1, 2, 0}});
}
QMat n2_286() {
  return from_rows({{0, 0, 0, 0, 0, 0},
                    {0, 0, 0, 0, 0, 0},
                    {1, 0, 0, 0, 0, 0},
                    {0, 1, 0, 0, 0, 0},
                    {0, 0, 0, 0, 0, 0},
                    {0, 0, 0, 0, 1, 0}});
}
QMat q_286() {
  return from_rows({{0, 0, 0, 0, 0, 1},
                    {0, 0, 0, -1, -2, 0},
                    {0, 0, 0, 0, -1, 0},
                    {0, 1, 0, 0, 0, 0},
                    {0, 2, 1, 0, 0, 0},
                    {-1, 0, 0, 0, 0, 0}});
}

LimitFlag standard_flag() {
  // frame orders 0,1,1,2,2,3
  LimitFlag f;
  f.f3 = qmat_zero(6, 1);
  f.f3.at(0, 0) = Rat(1);
  f.f2 = qmat_zero(6, 3);
  for (int i = 0; i < 3; ++i) f.f2.at(i, i) = Rat(1);
  f.f1 = qmat_zero(6, 5);
  for (int i = 0; i < 5; ++i) f.f1.at(i, i) = Rat(1);
  return f;
}

}  // namespace

TEST_CASE("weight filtration basics") {
  QMat zero = qmat_zero(6, 6);
  auto wf = weight_filtration(zero);
  CHECK(wf.gr_dims == std::vector<int>{0, 0, 0, 6, 0, 0, 0});

  QMat n = qmat_add(n1_229(), n2_229());
  auto wfn = weight_filtration(n);
  CHECK(wfn.gr_dims == std::vector<int>{1, 0, 2, 0, 2, 0, 1});

  auto wf38 = weight_filtration(n1_238());
  CHECK(wf38.gr_dims == std::vector<int>{1, 0, 1, 2, 1, 0, 1});

  QMat notnilp = qmat_identity(3);
  CHECK_THROWS(weight_filtration(notnilp));

  // graded isomorphism property N^k : Gr_{3+k} -> Gr_{3-k}
  for (int k = 1; k <= 3; ++k) {
    QMat img = qmat_mul(qmat_pow(n, k), wfn.W[(size_t)(3 + k)]);
    QMat below = wfn.W[(size_t)(3 - k) == 0 ? 0 : (size_t)(2 - k + 1)];
    // dim check: rank of the induced graded map
    int top = wfn.gr_dims[(size_t)(3 + k)];
    QMat wlow = (3 - k - 1) >= 0 ? wfn.W[(size_t)(3 - k - 1)]
                                 : qmat_zero(6, 0);
    int got = span_dim(span_sum(img, wlow)) - span_dim(wlow);
    CHECK(got == top);
  }
}

TEST_CASE("jordan signatures") {
  auto s1 = jordan_signature(n1_229());
  CHECK(s1 == std::vector<int>{3, 3});
  auto s2 = jordan_signature(n2_286());
  CHECK(s2 == std::vector<int>{2, 2, 2});
  auto s0 = jordan_signature(qmat_zero(6, 6));
  CHECK(s0 == std::vector<int>{1, 1, 1, 1, 1, 1});
}

TEST_CASE("polarization checks") {
  CHECK(polarization_check(n1_229(), q_229()));
  CHECK(polarization_check(n2_229(), q_229()));
  CHECK(polarization_check(n1_238(), q_238()));
  CHECK(polarization_check(n2_238(), q_238()));
  CHECK(polarization_check(n1_286(), q_286()));
  CHECK(polarization_check(n2_286(), q_286()));
  CHECK(polarization_check(qmat_zero(6, 6), q_229()));
}

TEST_CASE("lmhs types with the limit flag") {
  auto f = standard_flag();
  auto t = lmhs_type(qmat_add(n1_286(), n2_286()), q_286(), f);
  CHECK(t.family == 4);
  CHECK(t.index == 2);
  auto t2 = lmhs_type(n2_286(), q_286(), f);
  CHECK(t2.family == 2);
  CHECK(t2.index == 1);
  auto t0 = lmhs_type(qmat_zero(6, 6), q_229(), f);
  CHECK(t0.family == 1);
  CHECK(t0.index == 0);
}

TEST_CASE("lmhs without flag reports catalog matches") {
  auto amb = lmhs_type(qmat_add(n1_229(), n2_229()), q_229(), std::nullopt);
  CHECK(amb.family == 4);
  CHECK(amb.index == 2);
  CHECK(amb.ambiguity.size() == 1);  // IV_2 graded dims are unique
  // I_2 and II_0 share graded dimensions (0,0,2,2,2,0,0)
  QMat n = qmat_zero(6, 6);
  n.at(3, 1) = Rat(1);
  n.at(4, 2) = Rat(1);
  QMat q = q_229();
  if (polarization_check(n, q)) {
    auto a2 = lmhs_type(n, q, std::nullopt);
    CHECK(a2.ambiguity.size() >= 1);
  }
}

TEST_CASE("cone types of the three fixtures") {
  auto f = standard_flag();
  auto c229 = cone_type(n1_229(), n2_229(), q_229(), f);
  CHECK(c229.str() == "<III_0|IV_2|III_0>");
  auto c238 = cone_type(n1_238(), n2_238(), q_238(), f);
  CHECK(c238.str() == "<IV_1|IV_2|III_0>");
  auto c286 = cone_type(n1_286(), n2_286(), q_286(), f);
  CHECK(c286.str() == "<IV_2|IV_2|II_1>");
  // non-commuting rejection
  QMat a = qmat_zero(6, 6), b = qmat_zero(6, 6);
  a.at(1, 0) = Rat(1);
  b.at(2, 1) = Rat(1);
  CHECK_THROWS(cone_type(a, b, q_229(), f));
}

TEST_CASE("mum checks") {
  auto m229 = mum_check(n1_229(), n2_229());
  CHECK(m229.is_mum);
  CHECK(m229.gr_dims == std::vector<int>{1, 0, 2, 0, 2, 0, 1});
  auto mzero = mum_check(qmat_zero(6, 6), qmat_zero(6, 6));
  CHECK(!mzero.is_mum);
  // the second family's origin also passes the pairing-matrix test
  auto m238 = mum_check(n1_238(), n2_238());
  CHECK(m238.is_mum);
}

TEST_CASE("flip and local degrees") {
  auto f = standard_flag();
  auto c229 = cone_type(n1_229(), n2_229(), q_229(), f);
  CHECK(knu_flip_degree(c229, true) == 2);
  CHECK(knu_flip_degree(c229, false) == 1);
  auto c238 = cone_type(n1_238(), n2_238(), q_238(), f);
  CHECK(knu_flip_degree(c238, true) == 1);  // A != C
  auto c286 = cone_type(n1_286(), n2_286(), q_286(), f);
  CHECK(knu_flip_degree(c286, false) == 1);

  QMat e1 = qmat_zero(6, 1);
  e1.at(0, 0) = Rat(1);
  CHECK(local_iso_degree(n1_229(), n2_229(), e1) == 1);
  CHECK(local_iso_degree(n1_238(), n2_238(), e1) == 1);
  CHECK(local_iso_degree(n1_286(), n2_286(), e1) == 1);
  CHECK(local_iso_degree(n1_229(), n1_229(), e1) == 0);
}

TEST_CASE("generic degree assembly") {
  auto f = standard_flag();
  std::vector<std::pair<std::string, ConeType>> catalog;
  catalog.push_back({"origin", cone_type(n1_229(), n2_229(), q_229(), f)});
  catalog.push_back({"other", cone_type(n1_238(), n2_238(), q_238(), f)});
  auto d = generic_degree(catalog, "origin", true, 1);
  CHECK(d.generic == 2);
  CHECK(d.local_degree == 1);
  CHECK(d.flip_degree == 2);
  // duplicate type refusal
  catalog.push_back({"copy", cone_type(n1_229(), n2_229(), q_229(), f)});
  CHECK_THROWS_AS(generic_degree(catalog, "origin", true, 1), RefusalError);
}
