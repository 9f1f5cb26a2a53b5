#include "periodscope/toric.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace ps {

std::vector<IVec> columns_of(const IMat& a) {
  std::vector<IVec> cols;
  if (a.empty()) return cols;
  for (size_t j = 0; j < a[0].size(); ++j) {
    IVec c;
    for (size_t i = 0; i < a.size(); ++i) c.push_back(a[i][j]);
    cols.push_back(c);
  }
  return cols;
}

ValidateReport validate(const ToricData& td) {
  ValidateReport rep;
  rep.r = td.k - td.n;
  rep.rank_A = imat_rank(td.A);
  for (int i = 0; i < td.n; ++i) {
    for (size_t bi = 0; bi < td.B.size(); ++bi) {
      Int s = 0;
      for (int j = 0; j < td.k; ++j)
        s += td.A[(size_t)i][(size_t)j] * td.B[bi][(size_t)j];
      if (s != 0) {
        rep.ok = false;
        std::ostringstream os;
        os << "A row " << i + 1 << " does not annihilate B row " << bi + 1;
        rep.message = os.str();
        return rep;
      }
    }
  }
  if (rep.rank_A != td.n) {
    rep.ok = false;
    rep.message = "A does not have full row rank";
    return rep;
  }
  IMat ker = integer_kernel(td.A);
  if ((int)ker.size() != rep.r || (int)td.B.size() != rep.r) {
    rep.ok = false;
    rep.message = "B has wrong number of rows for the relation lattice";
    return rep;
  }
  if (rep.r > 0) {
    auto idx = lattice_index(td.B, ker);
    if (!idx) {
      rep.ok = false;
      rep.message = "B rows do not lie in the relation lattice";
      return rep;
    }
    if (*idx != 1) {
      rep.ok = false;
      rep.message = "B rows span a sublattice of index " + idx->get_str() +
                    " (kernel-basis check fails)";
      return rep;
    }
  }
  rep.message = "ok";
  return rep;
}

IMat relation_lattice(const IMat& A) {
  int n = (int)A.size();
  if (imat_rank(A) != n) {
    QMat q = imat_to_q(A);
    for (int i = 1; i <= n; ++i) {
      QMat sub = qmat_zero(i, q.cols());
      for (int r = 0; r < i; ++r)
        for (int c = 0; c < q.cols(); ++c) sub.at(r, c) = q.at(r, c);
      if (qmat_rank(sub) < i)
        throw std::domain_error("relation_lattice: row " + std::to_string(i) +
                                " is dependent on earlier rows");
    }
    throw std::domain_error("relation_lattice: A not of full row rank");
  }
  return integer_kernel(A);
}

ToricData suspend(const ToricData& td) {
  ToricData out;
  out.name = td.name + "_bar";
  out.n = td.n + 1;
  out.k = td.k + 1;
  out.A.assign((size_t)out.n, IVec((size_t)out.k, 0));
  for (int i = 0; i < td.n; ++i)
    for (int j = 0; j < td.k; ++j)
      out.A[(size_t)i][(size_t)j] = td.A[(size_t)i][(size_t)j];
  for (int j = 0; j < out.k; ++j) out.A[(size_t)td.n][(size_t)j] = 1;
  out.B = relation_lattice(out.A);
  for (auto& row : out.B) {
    Int s = 0;
    for (auto& x : row) s += x;
    if (s != 0)
      throw std::logic_error("suspend: relation row does not sum to zero");
  }
  return out;
}

namespace {

Int dot(const IVec& a, const IVec& b) {
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

int affine_rank(const std::vector<IVec>& pts) {
  if (pts.empty()) return -1;
  IMat diffs;
  for (size_t i = 1; i < pts.size(); ++i) {
    IVec d(pts[i]);
    for (size_t j = 0; j < d.size(); ++j) d[j] -= pts[0][j];
    diffs.push_back(d);
  }
  if (diffs.empty()) return 0;
  return imat_rank(diffs);
}

std::optional<IVec> hyperplane_normal(const std::vector<IVec>& pts) {
  size_t n = pts[0].size();
  IMat diffs;
  for (size_t i = 1; i < pts.size(); ++i) {
    IVec d(pts[i]);
    for (size_t j = 0; j < n; ++j) d[j] -= pts[0][j];
    diffs.push_back(d);
  }
  IMat ker = integer_kernel(diffs);
  if (ker.size() != 1) return std::nullopt;
  return primitive(ker[0]);
}

}  // namespace

Polytope make_polytope(const std::vector<IVec>& pts) {
  if (pts.empty()) throw std::domain_error("make_polytope: no points");
  int n = (int)pts[0].size();
  if (n > 4) throw std::domain_error("make_polytope: rank > 4 unsupported");
  if (affine_rank(pts) != n)
    throw std::domain_error("make_polytope: points do not span full dimension");
  if (pts.size() > 40)
    throw std::domain_error("make_polytope: too many generators");

  Polytope p;
  p.dim = n;
  p.gens = pts;

  std::set<std::pair<std::vector<std::string>, std::string>> seen;
  std::vector<int> idx((size_t)n);
  std::function<void(size_t, int)> rec = [&](size_t pos, int start) {
    if (pos == (size_t)n) {
      std::vector<IVec> sel;
      for (int i : idx) sel.push_back(pts[(size_t)i]);
      auto nrm = hyperplane_normal(sel);
      if (!nrm) return;
      Int c = dot(*nrm, sel[0]);
      bool all_ge = true, all_le = true;
      for (auto& q : pts) {
        Int v = dot(*nrm, q);
        if (v < c) all_ge = false;
        if (v > c) all_le = false;
      }
      if (!all_ge && !all_le) return;
      IVec normal = *nrm;
      Int support = c;
      if (!all_ge) {
        for (auto& x : normal) x = -x;
        support = -c;
      }
      std::vector<std::string> key;
      for (auto& x : normal) key.push_back(x.get_str());
      if (!seen.insert({key, support.get_str()}).second) return;
      p.facets.push_back({normal, support});
      return;
    }
    for (int i = start; i <= (int)pts.size() - (n - (int)pos); ++i) {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);

  IVec lo(pts[0]), hi(pts[0]);
  for (auto& q : pts)
    for (int j = 0; j < n; ++j) {
      lo[(size_t)j] = std::min(lo[(size_t)j], q[(size_t)j]);
      hi[(size_t)j] = std::max(hi[(size_t)j], q[(size_t)j]);
    }
  IVec cur = lo;
  while (true) {
    bool inside = true;
    for (auto& f : p.facets)
      if (dot(f.normal, cur) < f.support) {
        inside = false;
        break;
      }
    if (inside) p.points.push_back(cur);
    int j = 0;
    for (; j < n; ++j) {
      if (cur[(size_t)j] < hi[(size_t)j]) {
        ++cur[(size_t)j];
        break;
      }
      cur[(size_t)j] = lo[(size_t)j];
    }
    if (j == n) break;
  }
  return p;
}

bool is_reflexive(const Polytope& p) {
  for (auto& f : p.facets)
    if (f.support != -1) return false;
  IVec zero((size_t)p.dim, 0);
  for (auto& f : p.facets)
    if (dot(f.normal, zero) <= f.support) return false;
  return true;
}

Polytope polar_dual(const Polytope& p) {
  IVec zero((size_t)p.dim, 0);
  for (auto& f : p.facets)
    if (dot(f.normal, zero) <= f.support)
      throw std::domain_error("polar_dual: 0 not interior, dual unbounded");
  if (!is_reflexive(p))
    throw std::domain_error("polar_dual: only implemented for reflexive input");
  std::vector<IVec> verts;
  for (auto& f : p.facets) verts.push_back(f.normal);
  return make_polytope(verts);
}

std::vector<Face> face_lattice(const Polytope& p) {
  std::vector<std::set<int>> facet_pts(p.facets.size());
  for (size_t fi = 0; fi < p.facets.size(); ++fi)
    for (size_t pi = 0; pi < p.points.size(); ++pi)
      if (dot(p.facets[fi].normal, p.points[pi]) == p.facets[fi].support)
        facet_pts[fi].insert((int)pi);

  std::set<std::vector<int>> face_sets;
  for (auto& s : facet_pts)
    face_sets.insert(std::vector<int>(s.begin(), s.end()));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<int>> cur(face_sets.begin(), face_sets.end());
    for (auto& f : cur)
      for (auto& g : facet_pts) {
        std::vector<int> inter;
        std::set_intersection(f.begin(), f.end(), g.begin(), g.end(),
                              std::back_inserter(inter));
        if (!inter.empty() && face_sets.insert(inter).second) grew = true;
      }
  }

  std::vector<Face> faces;
  for (auto& s : face_sets) {
    Face f;
    f.point_idx = s;
    std::vector<IVec> pts;
    for (int i : s) pts.push_back(p.points[(size_t)i]);
    f.dim = affine_rank(pts);
    for (size_t fi = 0; fi < p.facets.size(); ++fi) {
      bool contained = true;
      for (int i : s)
        if (!facet_pts[fi].count(i)) {
          contained = false;
          break;
        }
      if (contained) f.facet_idx.push_back((int)fi);
    }
    faces.push_back(f);
  }
  return faces;
}

int relative_interior_count(const Polytope& p, const Face& f) {
  std::set<int> fset(f.facet_idx.begin(), f.facet_idx.end());
  int count = 0;
  for (int pi : f.point_idx) {
    std::set<int> pset;
    for (size_t fi = 0; fi < p.facets.size(); ++fi)
      if (dot(p.facets[fi].normal, p.points[(size_t)pi]) ==
          p.facets[fi].support)
        pset.insert((int)fi);
    if (pset == fset) ++count;
  }
  return count;
}

Face dual_face(const Polytope& p, const Polytope& q, const Face& f) {
  Face d;
  for (size_t qi = 0; qi < q.points.size(); ++qi) {
    bool all = true;
    for (int pi : f.point_idx)
      if (dot(q.points[qi], p.points[(size_t)pi]) != -1) {
        all = false;
        break;
      }
    if (all) d.point_idx.push_back((int)qi);
  }
  std::vector<IVec> pts;
  for (int i : d.point_idx) pts.push_back(q.points[(size_t)i]);
  d.dim = affine_rank(pts);
  for (size_t fi = 0; fi < q.facets.size(); ++fi) {
    bool contained = true;
    for (int i : d.point_idx)
      if (dot(q.facets[fi].normal, q.points[(size_t)i]) !=
          q.facets[fi].support) {
        contained = false;
        break;
      }
    if (contained) d.facet_idx.push_back((int)fi);
  }
  return d;
}

InteriorFiltered interior_filtered_points(const Polytope& p) {
  InteriorFiltered out;
  out.all_points = p.points;
  for (auto& pt : p.points) {
    int on_facets = 0;
    for (auto& f : p.facets)
      if (dot(f.normal, pt) == f.support) ++on_facets;
    if (on_facets == 1) continue;  // facet-interior point
    out.filtered.push_back(pt);
  }
  return out;
}

bool moduli_equality_check(const Polytope& p) {
  Polytope q = polar_dual(p);
  for (auto& f : face_lattice(p)) {
    if (f.dim != 2) continue;
    if (relative_interior_count(p, f) == 0) continue;
    Face d = dual_face(p, q, f);
    if (relative_interior_count(q, d) != 0) return false;
  }
  return true;
}

SecondaryFanData secondary_rays(const IMat& b_bar) {
  if (b_bar.size() != 2)
    throw std::domain_error("secondary_rays: only r = 2 supported");
  std::map<std::pair<std::string, std::string>, std::pair<IVec, int>> seen;
  for (auto& col : columns_of(b_bar)) {
    if (col[0] == 0 && col[1] == 0) continue;
    IVec pr = primitive(col);
    auto key = std::make_pair(pr[0].get_str(), pr[1].get_str());
    auto it = seen.find(key);
    if (it == seen.end())
      seen[key] = {pr, 1};
    else
      it->second.second += 1;
  }
  std::vector<std::pair<IVec, int>> rays;
  for (auto& [k, v] : seen) rays.push_back(v);
  auto half = [](const IVec& v) {
    return (v[1] > 0 || (v[1] == 0 && v[0] > 0)) ? 0 : 1;
  };
  std::sort(rays.begin(), rays.end(), [&](auto& a, auto& b) {
    int ha = half(a.first), hb = half(b.first);
    if (ha != hb) return ha < hb;
    Int cross = a.first[0] * b.first[1] - a.first[1] * b.first[0];
    return cross > 0;
  });
  SecondaryFanData out;
  for (auto& [ray, mult] : rays) {
    out.rays.push_back(ray);
    out.multiplicities.push_back(mult);
  }
  return out;
}

namespace {

std::optional<IMat> symmetry_matrix(const ToricData& td,
                                    const std::vector<int>& perm) {
  QMat aq = imat_to_q(td.A);
  std::vector<int> base;
  for (int j = 0; j < td.k && (int)base.size() < td.n; ++j) {
    QMat cand = qmat_zero(td.n, (int)base.size() + 1);
    for (size_t bi = 0; bi < base.size(); ++bi)
      for (int i = 0; i < td.n; ++i)
        cand.at(i, (int)bi) = aq.at(i, base[bi]);
    for (int i = 0; i < td.n; ++i) cand.at(i, (int)base.size()) = aq.at(i, j);
    if (qmat_rank(cand) == (int)base.size() + 1) base.push_back(j);
  }
  if ((int)base.size() != td.n) return std::nullopt;
  QMat v = qmat_zero(td.n, td.n), w = qmat_zero(td.n, td.n);
  for (int c = 0; c < td.n; ++c)
    for (int i = 0; i < td.n; ++i) {
      v.at(i, c) = aq.at(i, base[(size_t)c]);
      w.at(i, c) = aq.at(i, perm[(size_t)base[(size_t)c]]);
    }
  auto vinv = qmat_inverse(v);
  if (!vinv) return std::nullopt;
  QMat m = qmat_mul(w, *vinv);
  IMat mi((size_t)td.n, IVec((size_t)td.n, 0));
  for (int i = 0; i < td.n; ++i)
    for (int j = 0; j < td.n; ++j) {
      if (!m.at(i, j).is_integer()) return std::nullopt;
      mi[(size_t)i][(size_t)j] = m.at(i, j).num();
    }
  Int det = imat_det(mi);
  if (det != 1 && det != -1) return std::nullopt;
  for (int j = 0; j < td.k; ++j)
    for (int i = 0; i < td.n; ++i) {
      Rat s(0);
      for (int l = 0; l < td.n; ++l)
        s += m.at(i, l) * Rat(td.A[(size_t)l][(size_t)j]);
      if (s != Rat(td.A[(size_t)i][(size_t)perm[(size_t)j]]))
        return std::nullopt;
    }
  return mi;
}

}  // namespace

std::vector<FanSymmetry> aut_xi(const ToricData& td) {
  if (td.k > 8) throw std::domain_error("aut_xi: k > 8 unsupported");
  std::vector<int> perm((size_t)td.k);
  for (int i = 0; i < td.k; ++i) perm[(size_t)i] = i;
  std::vector<FanSymmetry> group;
  do {
    auto m = symmetry_matrix(td, perm);
    if (m) group.push_back({perm, *m});
  } while (std::next_permutation(perm.begin(), perm.end()));
  auto find_perm = [&](const std::vector<int>& p) {
    for (auto& g : group)
      if (g.perm == p) return true;
    return false;
  };
  for (auto& g : group)
    for (auto& h : group) {
      std::vector<int> comp((size_t)td.k);
      for (int i = 0; i < td.k; ++i)
        comp[(size_t)i] = g.perm[(size_t)h.perm[(size_t)i]];
      if (!find_perm(comp))
        throw std::logic_error("aut_xi: output not closed under composition");
    }
  return group;
}

std::vector<FanSymmetry> aut_sigma(const ToricData& td) {
  auto group = aut_xi(td);
  Polytope p = make_polytope(columns_of(td.A));
  std::vector<std::set<int>> fsets;
  for (auto& f : p.facets) {
    std::set<int> s;
    for (int j = 0; j < td.k; ++j) {
      IVec col;
      for (int i = 0; i < td.n; ++i) col.push_back(td.A[(size_t)i][(size_t)j]);
      if (dot(f.normal, col) == f.support) s.insert(j);
    }
    fsets.push_back(s);
  }
  for (auto& g : group) {
    for (auto& s : fsets) {
      std::set<int> img;
      for (int j : s) img.insert(g.perm[(size_t)j]);
      if (std::find(fsets.begin(), fsets.end(), img) == fsets.end())
        throw std::logic_error(
            "aut_sigma: a ray symmetry does not permute the facets");
    }
  }
  return group;
}

bool t_trivial(const FanSymmetry& sym, const IMat& b_bar) {
  size_t kbar = b_bar.empty() ? 0 : b_bar[0].size();
  if (sym.perm.size() + 1 != kbar)
    throw std::domain_error(
        "t_trivial: symmetry does not extend to the suspension");
  for (auto& row : b_bar)
    for (size_t i = 0; i < sym.perm.size(); ++i)
      if (row[(size_t)sym.perm[i]] != row[i]) return false;
  return true;
}

bool has_root_symmetry(const ToricData& td) {
  // The hypersurface family lives in the polytope construction whose fan is
  // the normal fan of conv(Xi); its Cox variables correspond to the facet
  // normals, so Demazure roots are sought among those rays.
  Polytope p = make_polytope(columns_of(td.A));
  std::vector<IVec> cols;
  for (auto& f : p.facets) cols.push_back(f.normal);
  int n = td.n;
  int k = (int)cols.size();
  for (int i = 0; i < k; ++i) {
    std::vector<std::vector<Rat>> verts;
    std::vector<int> others;
    for (int j = 0; j < k; ++j)
      if (j != i) others.push_back(j);
    std::vector<int> sel((size_t)n - 1);
    std::function<void(size_t, size_t)> rec = [&](size_t pos, size_t start) {
      if (pos + 1 == (size_t)n) {
        QMat m = qmat_zero(n, n);
        for (int c = 0; c < n; ++c)
          m.at(0, c) = Rat(cols[(size_t)i][(size_t)c]);
        for (size_t ri = 0; ri + 1 < (size_t)n; ++ri)
          for (int c = 0; c < n; ++c)
            m.at((int)ri + 1, c) =
                Rat(cols[(size_t)others[(size_t)sel[ri]]][(size_t)c]);
        auto minv = qmat_inverse(m);
        if (!minv) return;
        std::vector<Rat> v((size_t)n, Rat(0));
        for (int r = 0; r < n; ++r) v[(size_t)r] = -minv->at(r, 0);
        for (int j : others) {
          Rat s(0);
          for (int c = 0; c < n; ++c)
            s += v[(size_t)c] * Rat(cols[(size_t)j][(size_t)c]);
          if (s.sign() < 0) return;
        }
        verts.push_back(v);
        return;
      }
      for (size_t j = start; j < others.size(); ++j) {
        sel[pos] = (int)j;
        rec(pos + 1, j + 1);
      }
    };
    rec(0, 0);
    if (verts.empty()) continue;
    IVec lo((size_t)n), hi((size_t)n);
    for (int c = 0; c < n; ++c) {
      Rat mn = verts[0][(size_t)c], mx = mn;
      for (auto& v : verts) {
        mn = std::min(mn, v[(size_t)c]);
        mx = std::max(mx, v[(size_t)c]);
      }
      Int lo_i, hi_i;
      mpz_fdiv_q(lo_i.get_mpz_t(), mn.num().get_mpz_t(), mn.den().get_mpz_t());
      mpz_cdiv_q(hi_i.get_mpz_t(), mx.num().get_mpz_t(), mx.den().get_mpz_t());
      lo[(size_t)c] = lo_i;
      hi[(size_t)c] = hi_i;
    }
    IVec cur = lo;
    while (true) {
      bool ok = dot(cur, cols[(size_t)i]) == -1;
      if (ok)
        for (int j : others)
          if (dot(cur, cols[(size_t)j]) < 0) {
            ok = false;
            break;
          }
      if (ok) return true;
      int c = 0;
      for (; c < n; ++c) {
        if (cur[(size_t)c] < hi[(size_t)c]) {
          ++cur[(size_t)c];
          break;
        }
        cur[(size_t)c] = lo[(size_t)c];
      }
      if (c == n) break;
    }
  }
  return false;
}

int phi_degree(const ToricData& td) {
  if (has_root_symmetry(td))
    throw RefusalError(
        "phi_degree: root symmetries present; degree formula not applicable");
  auto group = aut_sigma(td);
  ToricData bar = suspend(td);
  std::vector<FanSymmetry> triv;
  for (auto& g : group)
    if (t_trivial(g, bar.B)) triv.push_back(g);
  auto in_triv = [&](const std::vector<int>& p) {
    for (auto& t : triv)
      if (t.perm == p) return true;
    return false;
  };
  for (auto& a : triv)
    for (auto& b : triv) {
      std::vector<int> comp(a.perm.size());
      for (size_t i = 0; i < comp.size(); ++i)
        comp[i] = a.perm[(size_t)b.perm[i]];
      if (!in_triv(comp))
        throw std::logic_error("phi_degree: trivial part not a subgroup");
    }
  for (auto& g : group) {
    std::vector<int> ginv(g.perm.size());
    for (size_t i = 0; i < g.perm.size(); ++i)
      ginv[(size_t)g.perm[i]] = (int)i;
    for (auto& t : triv) {
      std::vector<int> conj(g.perm.size());
      for (size_t i = 0; i < conj.size(); ++i)
        conj[i] = g.perm[(size_t)t.perm[(size_t)ginv[i]]];
      if (!in_triv(conj))
        throw std::logic_error("phi_degree: trivial part not normal");
    }
  }
  if (triv.empty() || group.size() % triv.size() != 0)
    throw std::logic_error("phi_degree: order division failure");
  return (int)(group.size() / triv.size());
}

namespace {

long batyrev_formula(const Polytope& q, const Polytope& qdual) {
  long l = (long)q.points.size();
  long facet_interior = 0, twoface_corr = 0;
  auto faces = face_lattice(q);
  for (auto& f : faces) {
    if (f.dim == q.dim - 1) facet_interior += relative_interior_count(q, f);
    if (f.dim == 2 && q.dim == 4) {
      long li = relative_interior_count(q, f);
      if (li == 0) continue;
      Face d = dual_face(q, qdual, f);
      twoface_corr += li * relative_interior_count(qdual, d);
    }
  }
  return l - 5 - facet_interior + twoface_corr;
}

}  // namespace

std::pair<long, long> hodge_numbers(const Polytope& p) {
  if (p.dim != 4)
    throw std::domain_error("hodge_numbers: rank-4 input required");
  if (!is_reflexive(p))
    throw std::domain_error("hodge_numbers: non-reflexive input");
  Polytope q = polar_dual(p);
  long h21 = batyrev_formula(p, q);
  long h11 = batyrev_formula(q, p);
  return {h11, h21};
}

}  // namespace ps
