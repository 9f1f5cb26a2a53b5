#include "doctest.h"

#include <random>

#include "periodscope/intlinalg.hpp"
#include "periodscope/linalg.hpp"
#include "periodscope/mpoly.hpp"
#include "periodscope/ratfun.hpp"

using namespace ps;

namespace {

const std::vector<std::string> Z2 = {"z1", "z2"};

MPoly P(const std::string& s) { return MPoly::parse(s, Z2); }

MPoly random_poly(std::mt19937_64& rng, int nv, int max_deg, int terms) {
  std::uniform_int_distribution<int> dcoef(-5, 5), de(0, max_deg);
  MPoly p(nv);
  for (int t = 0; t < terms; ++t) {
    Expo e(nv, 0);
    for (int i = 0; i < nv; ++i) e[(size_t)i] = de(rng);
    p.add_term(e, Rat(dcoef(rng)));
  }
  return p;
}

}  // namespace

TEST_CASE("rat basics") {
  Rat a(2, 4);
  CHECK(a == Rat(1, 2));
  CHECK(a.str() == "1/2");
  CHECK((a + Rat(1, 2)).is_one());
  CHECK(Rat(-3, 6).den() == 2);
  CHECK(Rat::parse("-7/21") == Rat(-1, 3));
  CHECK(Rat(2).pow(-2) == Rat(1, 4));
}

TEST_CASE("mpoly parse/print round trip") {
  MPoly p = P("(z1+z2+1)^3 - 27*z1*z2");
  CHECK(P(p.str(Z2)) == p);
  CHECK(p.total_degree() == 3);
  CHECK(p.coeff({1, 1}) == Rat(-21));  // cross term 3*... - 27
  MPoly q = P("z1^3 + 3*z1^2*z2 + 3*z1^2 + 3*z1*z2^2 - 21*z1*z2 + 3*z1 + z2^3 + 3*z2^2 + 3*z2 + 1");
  CHECK(p == q);
}

TEST_CASE("gcd examples") {
  CHECK(gcd(P("z1^2 - z2^2"), P("z1 - z2")) == P("z1 - z2"));
  MPoly p = P("6*z1^2*z2 - 4*z1");
  CHECK(gcd(p, MPoly(2)) == p.primitive_part());
  MPoly da = P("(z1+z2+1)^3 - 27*z1*z2");
  CHECK(gcd(da * da, da) == da);
  // divides-both oracle
  MPoly g = gcd(da * da, da);
  MPoly q;
  CHECK((da * da).try_divide(g, &q));
  CHECK(da.try_divide(g, &q));
}

TEST_CASE("resultant examples") {
  std::vector<std::string> names = {"xi", "z1"};
  MPoly p = MPoly::parse("xi^2 - z1", names);
  MPoly q = MPoly::parse("xi - 1", names);
  MPoly r = resultant(p, q, 0);
  CHECK(r == MPoly::parse("1 - z1", names));
  CHECK(resultant(MPoly::parse("xi", names), MPoly::parse("xi", names), 0)
            .is_zero());
  std::vector<std::string> abcd = {"xi", "a", "b", "c", "d"};
  MPoly f = MPoly::parse("a*xi + b", abcd);
  MPoly gq = MPoly::parse("c*xi + d", abcd);
  CHECK(resultant(f, gq, 0) == MPoly::parse("a*d - b*c", abcd));
}

TEST_CASE("squarefree part") {
  CHECK(squarefree_part(P("(z1+z2+1)^2")) == P("z1+z2+1"));
  CHECK(squarefree_part(P("z1^3*z2")) == P("z1*z2"));
  MPoly da = P("(1+z1)^3 + z1^3*z2");
  CHECK(squarefree_part(da) == da.primitive_part());
  // gcd with both partials is constant
  CHECK(gcd(da, gcd(da.derivative(0), da.derivative(1))).is_constant());
}

TEST_CASE("gcd of common-multiple property (random)") {
  std::mt19937_64 rng(12345);
  for (int it = 0; it < 20; ++it) {
    MPoly p = random_poly(rng, 2, 2, 3);
    MPoly q = random_poly(rng, 2, 2, 3);
    MPoly r = random_poly(rng, 2, 2, 2);
    if (r.is_zero()) continue;
    MPoly g = gcd(p * r, q * r);
    MPoly quo;
    CHECK(g.try_divide(r.primitive_part(), &quo));
  }
}

TEST_CASE("resultant vanishes iff common factor (small random)") {
  std::mt19937_64 rng(999);
  for (int it = 0; it < 15; ++it) {
    MPoly p = random_poly(rng, 2, 2, 3);
    MPoly q = random_poly(rng, 2, 2, 3);
    if (p.degree_in(0) == 0 || q.degree_in(0) == 0) continue;
    MPoly r = resultant(p, q, 0);
    MPoly g = gcd(p, q);
    bool common = g.degree_in(0) > 0;
    if (common) CHECK(r.is_zero());
    if (!r.is_zero()) CHECK(!common);
  }
}

TEST_CASE("ratfun normalization idempotent and arithmetic") {
  RatFun f(P("2*z1^2 - 2*z2^2"), P("4*z1 - 4*z2"));
  CHECK(f.num() == P("1/2*z1 + 1/2*z2"));
  CHECK(f.den() == P("1"));
  RatFun g(f.num(), f.den());
  CHECK(f == g);
  RatFun h = f * f.inv();
  CHECK(h.is_constant());
  CHECK(h.constant_value().is_one());
  // denominator positive lead
  RatFun k(P("z1"), P("-z2 + 1"));
  CHECK(k.den().lead_coeff().sign() > 0);
}

TEST_CASE("ratfun log derivative") {
  RatFun f(P("z1"), P("z1 + z2 - 2"));
  RatFun d1 = f.log_derivative(0);
  // z1 d/dz1 log-ish: d1 = f * (1 - z1/(z1+z2-2)) / ... explicit check:
  RatFun expect(P("z1*(z2 - 2)"), P("(z1 + z2 - 2)^2"));
  CHECK(d1 == expect);
}

TEST_CASE("restrict_var cancels common factors") {
  RatFun f(P("z2*(z1 + 1)"), P("z2*(z1 - 1)"));
  RatFun r = f.restrict_var(1, Rat(0));
  CHECK(r == RatFun(P("z1 + 1"), P("z1 - 1")));
  RatFun pole(P("1"), P("z2"));
  CHECK_THROWS(pole.restrict_var(1, Rat(0)));
}

TEST_CASE("solve_linear identity and kernel") {
  int nv = 2;
  FMat id = fmat_identity(3, nv);
  std::vector<RatFun> b = {RatFun(P("z1")), RatFun(P("z2")), RatFun(P("1"))};
  LinSolve s = solve_linear(id, b);
  CHECK(s.consistent);
  CHECK(s.kernel.empty());
  for (int i = 0; i < 3; ++i) CHECK(s.particular[(size_t)i] == b[(size_t)i]);

  FMat zero = fmat_zero(2, 3, nv);
  std::vector<RatFun> zb = {RatFun(nv), RatFun(nv)};
  LinSolve s2 = solve_linear(zero, zb);
  CHECK(s2.consistent);
  CHECK(s2.kernel.size() == 3);

  // inconsistent
  FMat m = fmat_zero(2, 1, nv);
  m.at(0, 0) = RatFun(P("z1"));
  std::vector<RatFun> b3 = {RatFun(P("z1")), RatFun(P("1"))};
  LinSolve s3 = solve_linear(m, b3);
  CHECK(!s3.consistent);
  CHECK(s3.failed_row == 1);
}

TEST_CASE("solve_linear exactness (random)") {
  std::mt19937_64 rng(777);
  for (int it = 0; it < 10; ++it) {
    int rows = 3, cols = 4;
    FMat m = fmat_zero(rows, cols, 2);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        m.at(i, j) = RatFun(random_poly(rng, 2, 1, 2));
    std::vector<RatFun> x0;
    for (int j = 0; j < cols; ++j) x0.push_back(RatFun(random_poly(rng, 2, 1, 2)));
    std::vector<RatFun> b(rows, RatFun(2));
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) b[(size_t)i] += m.at(i, j) * x0[(size_t)j];
    LinSolve s = solve_linear(m, b);
    REQUIRE(s.consistent);
    for (int i = 0; i < rows; ++i) {
      RatFun acc = -b[(size_t)i];
      for (int j = 0; j < cols; ++j)
        acc += m.at(i, j) * s.particular[(size_t)j];
      CHECK(acc.is_zero());
    }
    for (auto& k : s.kernel) {
      for (int i = 0; i < rows; ++i) {
        RatFun acc(2);
        for (int j = 0; j < cols; ++j) acc += m.at(i, j) * k[(size_t)j];
        CHECK(acc.is_zero());
      }
    }
  }
}

TEST_CASE("integer kernel and hnf") {
  IMat a = {{1, 1}};
  IMat k = integer_kernel(a);
  REQUIRE(k.size() == 1);
  CHECK((k[0] == IVec{1, -1} || k[0] == IVec{-1, 1}));

  IMat a2 = {{2, 4, 6}};
  IMat k2 = integer_kernel(a2);
  CHECK(k2.size() == 2);
  for (auto& row : k2) {
    Int s = 2 * row[0] + 4 * row[1] + 6 * row[2];
    CHECK(s == 0);
  }
}

TEST_CASE("rational eigenvalues") {
  QMat m = qmat_zero(2, 2);
  m.at(0, 0) = Rat(1, 3);
  m.at(1, 1) = Rat(-2);
  auto [roots, complete] = rational_eigenvalues(m);
  CHECK(complete);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].first == Rat(-2));
  CHECK(roots[1].first == Rat(1, 3));
}
