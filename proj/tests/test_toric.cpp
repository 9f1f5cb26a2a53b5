#include "doctest.h"

#include <algorithm>
#include <set>

#include "periodscope/toric.hpp"

using namespace ps;

namespace {

ToricData v229() {
  ToricData td;
  td.name = "V229";
  td.n = 4;
  td.k = 6;
  td.A = {{1, 0, 0, 0, 1, -2},
          {0, 1, 0, -1, 1, -1},
          {0, 0, 1, -1, 2, -2},
          {0, 0, 0, 0, 3, -3}};
  td.B = {{1, 0, 0, 0, 1, 1}, {0, 1, 1, 1, 0, 0}};
  return td;
}

ToricData v238() {
  // includes the crepant-resolution ray (-1,-1,0,0)
  ToricData td;
  td.name = "V238";
  td.n = 4;
  td.k = 6;
  td.A = {{1, 0, 0, 1, -4, -1},
          {0, 1, 0, 2, -5, -1},
          {0, 0, 1, 1, -2, 0},
          {0, 0, 0, 3, -3, 0}};
  td.B = {{1, 1, 0, 0, 0, 1}, {0, 0, 1, 1, 1, -3}};
  return td;
}

std::set<std::vector<long>> ray_set(const SecondaryFanData& s) {
  std::set<std::vector<long>> out;
  for (auto& r : s.rays) out.insert({r[0].get_si(), r[1].get_si()});
  return out;
}

}  // namespace

TEST_CASE("validate fixtures") {
  auto rep = validate(v229());
  CHECK(rep.ok);
  CHECK(rep.r == 2);
  auto rep2 = validate(v238());
  CHECK(rep2.ok);
  CHECK(rep2.r == 2);

  ToricData id2;
  id2.n = 2;
  id2.k = 2;
  id2.A = {{1, 0}, {0, 1}};
  auto rep3 = validate(id2);
  CHECK(rep3.ok);
  CHECK(rep3.r == 0);

  ToricData bad = v229();
  for (auto& x : bad.B[0]) x *= 2;
  auto rep4 = validate(bad);
  CHECK(!rep4.ok);
  CHECK(rep4.message.find("index 2") != std::string::npos);
}

TEST_CASE("relation lattice and suspension") {
  IMat a = {{1, 1}};
  IMat b = relation_lattice(a);
  REQUIRE(b.size() == 1);
  CHECK((b[0] == IVec{1, -1} || b[0] == IVec{-1, 1}));

  ToricData bar = suspend(v229());
  CHECK(bar.k == 7);
  IMat expect = {{1, 0, 0, 0, 1, 1, -3}, {0, 1, 1, 1, 0, 0, -3}};
  auto idx = lattice_index(expect, bar.B);
  REQUIRE(idx.has_value());
  CHECK(*idx == 1);
  auto idx2 = lattice_index(bar.B, expect);
  REQUIRE(idx2.has_value());
  CHECK(*idx2 == 1);

  ToricData bar38 = suspend(v238());
  IMat expect38 = {{1, 1, 0, 0, 0, 1, -3}, {0, 0, 1, 1, 1, -3, 0}};
  auto idx3 = lattice_index(expect38, bar38.B);
  REQUIRE(idx3.has_value());
  CHECK(*idx3 == 1);

  ToricData ray1;
  ray1.name = "ray";
  ray1.n = 1;
  ray1.k = 1;
  ray1.A = {{1}};
  ray1.B = {};
  ToricData bar1 = suspend(ray1);
  CHECK(bar1.A == IMat{{1, 0}, {1, 1}});
  for (auto& row : bar1.B) {
    Int s = 0;
    for (auto& x : row) s += x;
    CHECK(s == 0);
  }
}

TEST_CASE("facet counts") {
  auto p229 = make_polytope(columns_of(v229().A));
  CHECK(p229.facets.size() == 9);

  std::vector<IVec> simplex = {{0, 0, 0, 0},
                               {1, 0, 0, 0},
                               {0, 1, 0, 0},
                               {0, 0, 1, 0},
                               {0, 0, 0, 1}};
  CHECK(make_polytope(simplex).facets.size() == 5);

  std::vector<IVec> cross = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  CHECK(make_polytope(cross).facets.size() == 4);

  std::vector<IVec> degenerate = {{0, 0}, {1, 0}, {2, 0}};
  CHECK_THROWS(make_polytope(degenerate));
}

TEST_CASE("reflexivity and polar duality") {
  auto p229 = make_polytope(columns_of(v229().A));
  CHECK(is_reflexive(p229));
  auto dual = polar_dual(p229);
  auto bidual = polar_dual(dual);
  std::set<std::vector<long>> s1, s2;
  for (auto& f : dual.facets) {
    std::vector<long> v;
    for (auto& x : f.normal) v.push_back(x.get_si());
    s1.insert(v);
  }
  for (auto& g : p229.gens) {
    std::vector<long> v;
    for (auto& x : g) v.push_back(x.get_si());
    s2.insert(v);
  }
  CHECK(s1 == s2);
  CHECK(bidual.points.size() == p229.points.size());

  std::vector<IVec> cross = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  auto pc = make_polytope(cross);
  CHECK(is_reflexive(pc));
  auto pcd = polar_dual(pc);
  CHECK(pcd.gens.size() == 4);  // the unit square corners
  CHECK(pcd.points.size() == 9);

  std::vector<IVec> stretched = {{2, 0}, {-2, 0}, {0, 1}, {0, -1}};
  CHECK(!is_reflexive(make_polytope(stretched)));
}

TEST_CASE("interior filtered points") {
  auto p229 = make_polytope(columns_of(v229().A));
  auto f = interior_filtered_points(p229);
  CHECK(f.all_points.size() == 7);
  CHECK(f.filtered.size() == 7);

  auto p238 = make_polytope(columns_of(v238().A));
  auto f38 = interior_filtered_points(p238);
  bool has_zero = false, has_res = false;
  for (auto& pt : f38.filtered) {
    if (pt == IVec{0, 0, 0, 0}) has_zero = true;
    if (pt == IVec{-1, -1, 0, 0}) has_res = true;
  }
  CHECK(has_zero);
  CHECK(has_res);
}

TEST_CASE("moduli equality criterion") {
  CHECK(moduli_equality_check(make_polytope(columns_of(v229().A))));
  auto p238 = make_polytope(columns_of(v238().A));
  CHECK(moduli_equality_check(p238));
  // the 2-face {v3,v4,v5} has an interior point; its dual face is the
  // lattice segment between (-1,2,-1,-1) and (2,-1,-1,0)
  auto q = polar_dual(p238);
  auto faces = face_lattice(p238);
  bool checked = false;
  for (auto& f : faces) {
    if (f.dim != 2 || relative_interior_count(p238, f) == 0) continue;
    Face d = dual_face(p238, q, f);
    CHECK(d.dim == 1);
    std::set<std::vector<long>> pts;
    for (int i : d.point_idx) {
      std::vector<long> v;
      for (auto& x : q.points[(size_t)i]) v.push_back(x.get_si());
      pts.insert(v);
    }
    CHECK(pts.count({-1, 2, -1, -1}) == 1);
    CHECK(pts.count({2, -1, -1, 0}) == 1);
    CHECK(pts.size() == 2);
    checked = true;
  }
  CHECK(checked);

  std::vector<IVec> simplex4 = {{1, 0, 0, 0},
                                {0, 1, 0, 0},
                                {0, 0, 1, 0},
                                {0, 0, 0, 1},
                                {-1, -1, -1, -1}};
  CHECK(moduli_equality_check(make_polytope(simplex4)));
}

TEST_CASE("secondary fan rays") {
  ToricData bar = suspend(v229());
  auto s = secondary_rays(bar.B);
  CHECK(ray_set(s) == std::set<std::vector<long>>{{1, 0}, {0, 1}, {-1, -1}});
  ToricData bar38 = suspend(v238());
  auto s38 = secondary_rays(bar38.B);
  CHECK(ray_set(s38) ==
        std::set<std::vector<long>>{{1, 0}, {0, 1}, {1, -3}, {-1, 0}});

  IMat rep = {{1, 1, 0}, {0, 0, 1}};
  auto sr = secondary_rays(rep);
  CHECK(sr.rays.size() == 2);
  CHECK((sr.multiplicities == std::vector<int>{2, 1} ||
         sr.multiplicities == std::vector<int>{1, 2}));
}

TEST_CASE("ray symmetries of V229") {
  auto g = aut_xi(v229());
  CHECK(g.size() == 36);
  // generators a=(234), b=(34)(56), c=(12)(35)(46), as 0-based images
  std::vector<int> a = {0, 2, 3, 1, 4, 5};
  std::vector<int> b = {0, 1, 3, 2, 5, 4};
  std::vector<int> c = {1, 0, 4, 5, 2, 3};
  int found = 0;
  for (auto& s : g)
    if (s.perm == a || s.perm == b || s.perm == c) ++found;
  CHECK(found == 3);

  ToricData bar = suspend(v229());
  for (auto& s : g) {
    if (s.perm == a) CHECK(t_trivial(s, bar.B));
    if (s.perm == c) CHECK(!t_trivial(s, bar.B));
    if (s.perm == std::vector<int>{0, 1, 2, 3, 4, 5})
      CHECK(t_trivial(s, bar.B));
  }
  // matrix identity M*A = A*P(perm)
  auto td = v229();
  for (auto& s : g) {
    for (int j = 0; j < 6; ++j)
      for (int i = 0; i < 4; ++i) {
        Int acc = 0;
        for (int l = 0; l < 4; ++l)
          acc += s.matrix[(size_t)i][(size_t)l] * td.A[(size_t)l][(size_t)j];
        CHECK(acc == td.A[(size_t)i][(size_t)s.perm[(size_t)j]]);
      }
  }
}

TEST_CASE("aut of a segment") {
  ToricData seg;
  seg.name = "seg";
  seg.n = 1;
  seg.k = 2;
  seg.A = {{1, -1}};
  seg.B = {{1, 1}};
  CHECK(aut_xi(seg).size() == 2);
}

TEST_CASE("phi degrees") {
  CHECK(!has_root_symmetry(v229()));
  CHECK(!has_root_symmetry(v238()));
  CHECK(phi_degree(v229()) == 2);
  CHECK(phi_degree(v238()) == 1);
}

TEST_CASE("hodge numbers") {
  auto h229 = hodge_numbers(make_polytope(columns_of(v229().A)));
  CHECK(h229.first == 29);
  CHECK(h229.second == 2);

  auto h238 = hodge_numbers(make_polytope(columns_of(v238().A)));
  CHECK(h238.first == 38);
  CHECK(h238.second == 2);

  std::vector<IVec> quintic = {{4, -1, -1, -1},
                               {-1, 4, -1, -1},
                               {-1, -1, 4, -1},
                               {-1, -1, -1, 4},
                               {-1, -1, -1, -1}};
  auto hq = hodge_numbers(make_polytope(quintic));
  CHECK(hq.first == 1);
  CHECK(hq.second == 101);
}
