#include "doctest.h"

#include "periodscope/dmod.hpp"

using namespace ps;

namespace {

ToricData v229_bar() {
  ToricData td;
  td.name = "V229_bar";
  td.n = 5;
  td.k = 7;
  td.A = {{1, 0, 0, 0, 1, -2, 0},
          {0, 1, 0, -1, 1, -1, 0},
          {0, 0, 1, -1, 2, -2, 0},
          {0, 0, 0, 0, 3, -3, 0},
          {1, 1, 1, 1, 1, 1, 1}};
  td.B = {{1, 0, 0, 0, 1, 1, -3}, {0, 1, 1, 1, 0, 0, -3}};
  return td;
}

ToricData v238_bar() {
  ToricData td;
  td.name = "V238_bar";
  td.n = 5;
  td.k = 7;
  td.A = {{1, 0, 0, 1, -4, -1, 0},
          {0, 1, 0, 2, -5, -1, 0},
          {0, 0, 1, 1, -2, 0, 0},
          {0, 0, 0, 3, -3, 0, 0},
          {1, 1, 1, 1, 1, 1, 1}};
  td.B = {{1, 1, 0, 0, 0, 1, -3}, {0, 0, 1, 1, 1, -3, 0}};
  return td;
}

LogDiffOp Op(const std::string& s) { return LogDiffOp::parse(s, 2); }

}  // namespace

TEST_CASE("ore product basics") {
  LogDiffOp d1 = LogDiffOp::delta(2, 0);
  LogDiffOp z1 = LogDiffOp::coeff(RatFun(MPoly::var(2, 0)));
  CHECK(ore_mul(d1, z1) == Op("z1*d1 + z1"));
  CHECK(ore_mul(Op("d1 + d2"), Op("z1 + z2")) ==
        Op("(z1 + z2)*(d1 + d2) + z1 + z2"));
}

TEST_CASE("delta/partial round trip") {
  LogDiffOp op = Op("d1^2*d2 + z1*d1 + 3");
  PolyDiffOp p = to_partial(op);
  LogDiffOp back = from_partial(p);
  CHECK(back == op);
}

TEST_CASE("box operators") {
  IVec l = {1, 0, 0, 0, 1, 1, -3};
  PolyDiffOp b = box_operator(l);
  Expo plus = {1, 0, 0, 0, 1, 1, 0};
  Expo minus = {0, 0, 0, 0, 0, 0, 3};
  REQUIRE(b.terms.size() == 2);
  CHECK(b.terms.at(plus).constant_value() == Rat(1));
  CHECK(b.terms.at(minus).constant_value() == Rat(-1));

  PolyDiffOp b2 = box_operator({1, -1});
  CHECK(b2.terms.at({1, 0}).constant_value() == Rat(1));
  CHECK(b2.terms.at({0, 1}).constant_value() == Rat(-1));

  CHECK_THROWS(box_operator(IVec{0, 0}));
}

TEST_CASE("gkz operators V229 match the explicit pair") {
  auto ops = gkz_operators(v229_bar());
  REQUIRE(ops.size() == 2);
  LogDiffOp p1 =
      Op("d1^3 + z1*(3*d1+3*d2+1)*(3*d1+3*d2+2)*(3*d1+3*d2+3)");
  LogDiffOp p2 =
      Op("d2^3 + z2*(3*d1+3*d2+1)*(3*d1+3*d2+2)*(3*d1+3*d2+3)");
  CHECK(ops[0] == p1);
  CHECK(ops[1] == p2);
}

TEST_CASE("gkz operators V238: first factors through delta1") {
  auto ops = gkz_operators(v238_bar());
  REQUIRE(ops.size() == 2);
  LogDiffOp q1 = Op("d1*(d1-3*d2) + 3*z1*(3*d1+1)*(3*d1+2)");
  LogDiffOp p2 =
      Op("d2^3 - z2*(d1-3*d2)*(d1-3*d2-1)*(d1-3*d2-2)");
  CHECK(ops[0] == ore_mul(LogDiffOp::delta(2, 0), q1));
  CHECK(ops[1] == p2);
  DeltaOrder ord = DeltaOrder::standard(2);
  auto quot = left_divide_first_order(ops[0], LogDiffOp::delta(2, 0), ord);
  REQUIRE(quot.has_value());
  CHECK(*quot == q1);
}

TEST_CASE("one-relation rank-1 example") {
  // relation (1,1,-2) on the suspension of a single ray
  ToricData td;
  td.name = "p1";
  td.n = 2;
  td.k = 3;
  td.A = {{1, -1, 0}, {1, 1, 1}};
  td.B = {{1, 1, -2}};
  auto ops = gkz_operators(td);
  REQUIRE(ops.size() == 1);
  LogDiffOp expect = LogDiffOp::parse("d1^2 - z1*(2*d1+1)*(2*d1+2)", 1);
  CHECK(ops[0] == expect);
}

TEST_CASE("rescale") {
  LogDiffOp p1 =
      Op("d1^3 + z1*(3*d1+3*d2+1)*(3*d1+3*d2+2)*(3*d1+3*d2+3)");
  LogDiffOp scaled = rescale(p1, {Rat(27), Rat(27)});
  LogDiffOp expect =
      Op("d1^3 + z1*(d1+d2+1/3)*(d1+d2+2/3)*(d1+d2+1)");
  CHECK(scaled == expect);
  CHECK(rescale(p1, {Rat(1), Rat(1)}) == p1);
  CHECK_THROWS(rescale(p1, {Rat(0), Rat(1)}));
  // group action property
  LogDiffOp twice = rescale(rescale(p1, {Rat(3), Rat(5)}), {Rat(9), Rat(27, 5)});
  CHECK(twice == rescale(p1, {Rat(27), Rat(27)}));
}

TEST_CASE("groebner basics") {
  DeltaOrder ord = DeltaOrder::standard(2);
  auto gb = groebner({LogDiffOp::delta(2, 0), LogDiffOp::delta(2, 1)}, ord);
  CHECK(gb.gens.size() == 2);
  REQUIRE(gb.finite);
  CHECK(gb.staircase.size() == 1);
  CHECK(holonomic_rank(gb) == 1);

  auto gb2 = groebner({LogDiffOp::parse("d1^2 - z1", 1)},
                      DeltaOrder::standard(1));
  REQUIRE(gb2.finite);
  CHECK(gb2.staircase.size() == 2);

  // member reduction and idempotence
  LogDiffOp p1 = Op("d1^3 + z1*(d1+d2+1/3)*(d1+d2+2/3)*(d1+d2+1)");
  LogDiffOp p2 =
      Op("(d1^2-d1*d2+d2^2) + (z1+z2)*(d1+d2+1/3)*(d1+d2+2/3)");
  auto gbpf = groebner({p1, p2}, DeltaOrder::standard(2));
  REQUIRE(gbpf.finite);
  CHECK(holonomic_rank(gbpf) == 6);
  CHECK(normal_form(p1, gbpf).is_zero());
  CHECK(normal_form(p2, gbpf).is_zero());
  CHECK(normal_form(ore_mul(Op("d2 + z1"), p2), gbpf).is_zero());
  LogDiffOp one = LogDiffOp::one(2);
  CHECK(normal_form(one, gbpf) == one);
  LogDiffOp nf = normal_form(Op("d1^3"), gbpf);
  CHECK(normal_form(nf, gbpf) == nf);
}

TEST_CASE("V229 staircase under the standard order") {
  LogDiffOp p1 = Op("d1^3 + z1*(d1+d2+1/3)*(d1+d2+2/3)*(d1+d2+1)");
  LogDiffOp p2 =
      Op("(d1^2-d1*d2+d2^2) + (z1+z2)*(d1+d2+1/3)*(d1+d2+2/3)");
  auto gb = groebner({p1, p2}, DeltaOrder::standard(2));
  REQUIRE(gb.finite);
  std::vector<Expo> expect = {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0, 2}, {0, 3}};
  std::sort(expect.begin(), expect.end());
  std::vector<Expo> got = gb.staircase;
  std::sort(got.begin(), got.end());
  CHECK(got == expect);
}

TEST_CASE("V238 staircase under the standard order") {
  LogDiffOp p1 = Op("d1*(d1-3*d2) + z1*(d1+1/3)*(d1+2/3)");
  LogDiffOp p2 =
      Op("d2^3 - z2*(1/3*d1-d2)*(1/3*d1-d2-1/3)*(1/3*d1-d2-2/3)");
  auto gb = groebner({p1, p2}, DeltaOrder::standard(2));
  REQUIRE(gb.finite);
  CHECK(holonomic_rank(gb) == 6);
  std::vector<Expo> expect = {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0, 2}, {0, 3}};
  std::sort(expect.begin(), expect.end());
  std::vector<Expo> got = gb.staircase;
  std::sort(got.begin(), got.end());
  CHECK(got == expect);
}

TEST_CASE("discriminants") {
  LogDiffOp p1 = Op("d1^3 + z1*(d1+d2+1/3)*(d1+d2+2/3)*(d1+d2+1)");
  LogDiffOp p2 =
      Op("(d1^2-d1*d2+d2^2) + (z1+z2)*(d1+d2+1/3)*(d1+d2+2/3)");
  auto gb = groebner({p1, p2}, DeltaOrder::standard(2));
  auto disc = char_discriminant(gb, {p1, p2});
  MPoly da = MPoly::parse("(z1+z2+1)^3 - 27*z1*z2", {"z1", "z2"});
  bool found = false;
  for (auto& c : disc.components)
    if (c == da.primitive_part()) found = true;
  CHECK(found);

  LogDiffOp q1 = Op("d1*(d1-3*d2) + z1*(d1+1/3)*(d1+2/3)");
  LogDiffOp q2 =
      Op("d2^3 - z2*(1/3*d1-d2)*(1/3*d1-d2-1/3)*(1/3*d1-d2-2/3)");
  auto gb38 = groebner({q1, q2}, DeltaOrder::standard(2));
  auto disc38 = char_discriminant(gb38, {q1, q2});
  MPoly da38 = MPoly::parse("(1+z1)^3 + z1^3*z2", {"z1", "z2"});
  MPoly d1c = MPoly::parse("1 + z2", {"z1", "z2"});
  bool f1 = false, f2 = false;
  for (auto& c : disc38.components) {
    if (c == da38.primitive_part()) f1 = true;
    if (c == d1c) f2 = true;
  }
  CHECK(f1);
  CHECK(f2);
}

TEST_CASE("series solutions") {
  LogDiffOp p1raw =
      Op("d1^3 + z1*(3*d1+3*d2+1)*(3*d1+3*d2+2)*(3*d1+3*d2+3)");
  LogDiffOp p2raw =
      Op("d2^3 + z2*(3*d1+3*d2+1)*(3*d1+3*d2+2)*(3*d1+3*d2+3)");
  SeriesSolution s = series_solution({p1raw, p2raw}, 4);
  CHECK(s.coeff.at({0, 0}) == Rat(1));
  CHECK(s.coeff.at({1, 0}) == Rat(-6));
  CHECK(s.coeff.at({1, 0}) == s.coeff.at({0, 1}));
  // annihilation through the truncation order
  for (auto& [e, c] : apply_to_series(p1raw, s)) CHECK(expo_total(e) > 4);
  for (auto& [e, c] : apply_to_series(p2raw, s)) CHECK(expo_total(e) > 4);
  // order 0: the constant series
  SeriesSolution s0 = series_solution({p1raw, p2raw}, 0);
  CHECK(s0.coeff.size() == 1);
}

TEST_CASE("charts") {
  // delta mapping for (s,t) = (z1/z2^3, z2): E = [[1,0],[3,1]]
  ChartStage st;
  st.expo = {{1, 0}, {3, 1}};
  LogDiffOp d1 = apply_stage(LogDiffOp::delta(2, 0), st);
  LogDiffOp d2 = apply_stage(LogDiffOp::delta(2, 1), st);
  CHECK(d1 == LogDiffOp::delta(2, 0));
  CHECK(d2 == Op("d2 - 3*d1"));

  // identity chart
  Chart idchart;
  idchart.name = "id";
  LogDiffOp p1 = Op("d1^3 + z1*(d1+d2+1/3)*(d1+d2+2/3)*(d1+d2+1)");
  auto moved = change_chart({p1}, idchart);
  CHECK(moved[0] == p1);
}

TEST_CASE("V238 second chart reproduces the printed operators") {
  // from the unrescaled pair, z1 = z1'z2', z2 = z2'^-3, then rescale (81, 1/3)
  LogDiffOp p1 = Op("d1*(d1-3*d2) + 3*z1*(3*d1+1)*(3*d1+2)");
  LogDiffOp p2 =
      Op("d2^3 - z2*(d1-3*d2)*(d1-3*d2-1)*(d1-3*d2-2)");
  Chart ch;
  ch.name = "chartB";
  ChartStage st;
  st.expo = {{1, 0}, {1, -3}};
  st.rescale = {Rat(81), Rat(1, 3)};
  ch.stages.push_back(st);
  auto moved = change_chart({p1, p2}, ch);
  LogDiffOp q1 = Op("d1*d2 + z1*z2*(d1+1/3)*(d1+2/3)");
  // note: direct substitution carries a factor 3^-3 through the second
  // operator relative to the printed display
  LogDiffOp q2 = Op("z2^3*(d1-d2)^3 - d2*(d2-1)*(d2-2)");
  // same ideal generators up to an invertible coefficient: compare reduced GBs
  auto gb1 = groebner(moved, DeltaOrder::standard(2));
  auto gb2 = groebner({q1, q2}, DeltaOrder::standard(2));
  REQUIRE(gb1.gens.size() == gb2.gens.size());
  for (size_t i = 0; i < gb1.gens.size(); ++i)
    CHECK(gb1.gens[i] == gb2.gens[i]);
}
