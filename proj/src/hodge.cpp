#include "periodscope/hodge.hpp"

#include <algorithm>
#include <sstream>

namespace ps {

WeightFiltration weight_filtration(const QMat& n) {
  int dim = n.rows();
  if (!qmat_is_zero(qmat_pow(n, dim)))
    throw std::domain_error("weight_filtration: input not nilpotent");
  WeightFiltration wf;
  wf.W.resize(7);
  // W_{3+k} = sum_i ker N^{k+i+1} cap im N^i  (centered at weight 3)
  std::vector<QMat> pows;
  for (int i = 0; i <= dim; ++i) pows.push_back(qmat_pow(n, i));
  auto ker = [&](int m) {
    if (m <= 0) return qmat_zero(dim, 0);
    return qmat_kernel(pows[(size_t)std::min(m, dim)]);
  };
  auto im = [&](int m) {
    if (m <= 0) return qmat_identity(dim);
    return qmat_image(pows[(size_t)std::min(m, dim)]);
  };
  for (int k = -3; k <= 3; ++k) {
    QMat acc = qmat_zero(dim, 0);
    for (int i = 0; i <= dim; ++i) {
      QMat piece = span_intersect(ker(k + i + 1), im(i));
      acc = span_sum(acc, piece);
    }
    wf.W[(size_t)(3 + k)] = acc;
  }
  wf.gr_dims.resize(7);
  for (int w = 0; w <= 6; ++w) {
    int below = w == 0 ? 0 : span_dim(wf.W[(size_t)w - 1]);
    wf.gr_dims[(size_t)w] = span_dim(wf.W[(size_t)w]) - below;
  }
  // defining properties
  for (int w = 1; w <= 6; ++w)
    if (!span_contains(wf.W[(size_t)w], wf.W[(size_t)w - 1]))
      throw std::logic_error("weight_filtration: not a filtration");
  for (int w = 2; w <= 6; ++w) {
    QMat img = qmat_mul(n, wf.W[(size_t)w]);
    if (!span_contains(wf.W[(size_t)w - 2], img))
      throw std::logic_error("weight_filtration: N does not shift by -2");
  }
  return wf;
}

std::vector<int> jordan_signature(const QMat& n) {
  int dim = n.rows();
  std::vector<int> rank;
  QMat p = qmat_identity(dim);
  rank.push_back(dim);
  for (int i = 1; i <= dim + 1; ++i) {
    p = qmat_mul(p, n);
    rank.push_back(qmat_rank(p));
  }
  std::vector<int> sig;
  for (int k = 1; k <= dim; ++k) {
    // number of blocks of size exactly k
    int count = (rank[(size_t)k - 1] - rank[(size_t)k]) -
                (rank[(size_t)k] - rank[(size_t)std::min(k + 1, dim + 1)]);
    for (int c = 0; c < count; ++c) sig.push_back(k);
  }
  std::sort(sig.rbegin(), sig.rend());
  return sig;
}

std::string LMHSType::str() const {
  static const char* fam[] = {"", "I", "II", "III", "IV"};
  std::ostringstream os;
  os << fam[family] << "_" << index;
  bool first = true;
  for (auto& [f, i] : ambiguity) {
    if (f == family && i == index) continue;
    os << (first ? "(" : ",") << fam[f] << "_" << i;
    first = false;
  }
  if (!first) os << ")";
  return os.str();
}

std::string ConeType::str() const {
  return "<" + a.str() + "|" + b.str() + "|" + c.str() + ">";
}

bool polarization_check(const QMat& n, const QMat& q) {
  return qmat_is_zero(qmat_add(qmat_mul(qmat_transpose(n), q), qmat_mul(q, n)));
}

const std::vector<DiamondEntry>& diamond_catalog() {
  static std::vector<DiamondEntry> catalog = [] {
    std::vector<DiamondEntry> out;
    auto admissible = [](const std::vector<int>& gr) {
      // block counts from the graded dimensions must be nonnegative and the
      // diamond weight-symmetric
      for (int k = 0; k <= 3; ++k)
        if (gr[(size_t)(3 + k)] != gr[(size_t)(3 - k)]) return false;
      if (gr[4] < gr[6]) return false;  // size-2 blocks
      if (gr[3] < gr[5]) return false;  // size-1 blocks
      return true;
    };
    auto push = [&](int family, int index, std::vector<int> gr,
                    std::vector<std::vector<int>> hpq) {
      if (!admissible(gr)) return;
      out.push_back({family, index, gr, hpq});
    };
    const int r = 2;
    for (int a = 0; a <= r; ++a) {
      // I_a
      std::vector<std::vector<int>> h(4, std::vector<int>(4, 0));
      h[3][0] = h[0][3] = 1;
      h[2][1] = h[1][2] = r - a;
      h[2][2] = h[1][1] = a;
      push(1, a, {0, 0, a, 2 + 2 * (r - a), a, 0, 0}, h);
    }
    for (int a = 0; a <= r - 1; ++a) {
      // II_a, a + b = r - 1
      int b = r - 1 - a;
      std::vector<std::vector<int>> h(4, std::vector<int>(4, 0));
      h[3][1] = h[1][3] = 1;
      h[2][0] = h[0][2] = 1;
      h[2][2] = h[1][1] = a;
      h[2][1] = h[1][2] = b;
      push(2, a, {0, 0, a + 2, 2 * b, a + 2, 0, 0}, h);
    }
    for (int a = 0; a <= r - 1; ++a) {
      // III_a, a + b = r - 1
      int b = r - 1 - a;
      std::vector<std::vector<int>> h(4, std::vector<int>(4, 0));
      h[3][2] = h[2][3] = 1;
      h[1][0] = h[0][1] = 1;
      h[2][2] = h[1][1] = a;
      h[2][1] = h[1][2] = b;
      push(3, a, {0, 2, a, 2 * b, a, 2, 0}, h);
    }
    for (int a = 0; a <= r; ++a) {
      // IV_a
      std::vector<std::vector<int>> h(4, std::vector<int>(4, 0));
      h[3][3] = h[0][0] = 1;
      h[2][2] = h[1][1] = a;
      h[2][1] = h[1][2] = r - a;
      push(4, a, {1, 0, a, 2 * (r - a), a, 0, 1}, h);
    }
    return out;
  }();
  return catalog;
}

namespace {

int graded_piece_dim(const QMat& fp, const QMat& fnext, const QMat& ww,
                     const QMat& wbelow) {
  QMat top = span_sum(span_intersect(fp, ww), wbelow);
  QMat bot = span_sum(span_intersect(fnext, ww), wbelow);
  return span_dim(top) - span_dim(bot);
}

}  // namespace

LMHSType lmhs_type(const QMat& n, const QMat& q,
                   const std::optional<LimitFlag>& f) {
  if (!polarization_check(n, q))
    throw std::domain_error("lmhs_type: polarization check failed");
  WeightFiltration wf = weight_filtration(n);
  auto& catalog = diamond_catalog();

  if (!f) {
    LMHSType out;
    bool first = true;
    for (auto& entry : catalog) {
      if (entry.gr_dims != wf.gr_dims) continue;
      if (first) {
        out.family = entry.family;
        out.index = entry.index;
        first = false;
      }
      out.ambiguity.push_back({entry.family, entry.index});
    }
    if (first)
      throw std::domain_error(
          "lmhs_type: no admissible diamond matches the weight data");
    return out;
  }

  int dim = n.rows();
  QMat f0 = qmat_identity(dim);
  std::vector<QMat> flags = {f0, f->f1, f->f2, f->f3, qmat_zero(dim, 0)};
  // Hodge-Deligne dimensions h^{p,q} = dim Gr_F^p Gr^W_{p+q}
  std::vector<std::vector<int>> h(4, std::vector<int>(4, 0));
  for (int p = 0; p <= 3; ++p)
    for (int qq = 0; qq <= 3; ++qq) {
      int w = p + qq;
      QMat ww = wf.W[(size_t)w];
      QMat wbelow = w == 0 ? qmat_zero(dim, 0) : wf.W[(size_t)w - 1];
      h[(size_t)p][(size_t)qq] = graded_piece_dim(
          flags[(size_t)p], flags[(size_t)p + 1], ww, wbelow);
    }
  for (auto& entry : catalog) {
    if (entry.gr_dims != wf.gr_dims) continue;
    if (entry.hpq == h) {
      LMHSType out;
      out.family = entry.family;
      out.index = entry.index;
      return out;
    }
  }
  throw std::domain_error(
      "lmhs_type: Hodge-Deligne numbers match no admissible diamond");
}

ConeType cone_type(const QMat& n1, const QMat& n2, const QMat& q,
                   const std::optional<LimitFlag>& f) {
  if (!qmat_is_zero(qmat_sub(qmat_mul(n1, n2), qmat_mul(n2, n1))))
    throw std::domain_error("cone_type: inputs do not commute");
  ConeType ct;
  ct.a = lmhs_type(n1, q, f);
  ct.b = lmhs_type(qmat_add(n1, n2), q, f);
  ct.c = lmhs_type(n2, q, f);
  ct.monotone =
      ct.b.family >= ct.a.family && ct.b.family >= ct.c.family;
  return ct;
}

MumReport mum_check(const QMat& n1, const QMat& n2) {
  MumReport rep;
  QMat n = qmat_add(n1, n2);
  WeightFiltration wf = weight_filtration(n);
  rep.gr_dims = wf.gr_dims;
  // Hodge-Tate weight structure: nothing in odd weights
  for (int w = 1; w <= 5; w += 2)
    if (wf.gr_dims[(size_t)w] != 0) return rep;
  if (wf.gr_dims[0] != 1) return rep;
  int r = wf.gr_dims[2];
  QMat w0 = wf.W[0];
  QMat w2 = wf.W[2];
  if (span_dim(w0) != 1 || span_dim(w2) != 1 + r) return rep;
  // basis e_0 of W0, lifts e_1..e_r completing W2
  QMat e0 = w0;
  QMat basis = w0;
  std::vector<QMat> lifts;
  for (int c = 0; c < w2.cols() && (int)lifts.size() < r; ++c) {
    QMat v = qmat_zero(n.rows(), 1);
    for (int i = 0; i < n.rows(); ++i) v.at(i, 0) = w2.at(i, c);
    QMat cand = span_sum(basis, v);
    if (span_dim(cand) > span_dim(basis)) {
      basis = cand;
      lifts.push_back(v);
    }
  }
  if ((int)lifts.size() != r) return rep;
  rep.m = qmat_zero(r, r);
  std::vector<QMat> ns = {n1, n2};
  // N_i e_j = m_ij e_0 exactly (N maps W2 into W0)
  int pivot = -1;
  for (int i = 0; i < n.rows(); ++i)
    if (!e0.at(i, 0).is_zero()) {
      pivot = i;
      break;
    }
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      QMat img = qmat_mul(ns[(size_t)i], lifts[(size_t)j]);
      if (!span_contains(w0, img)) return rep;
      rep.m.at(i, j) = img.at(pivot, 0) / e0.at(pivot, 0);
    }
  rep.is_mum = !qmat_det(rep.m).is_zero();
  return rep;
}

int knu_flip_degree(const ConeType& ct, bool flip_symmetry_present) {
  if (!ct.a.same_type(ct.c)) return 1;
  return flip_symmetry_present ? 2 : 1;
}

int local_iso_degree(const QMat& n1, const QMat& n2, const QMat& f3) {
  QMat v1 = qmat_mul(n1, f3);
  QMat v2 = qmat_mul(n2, f3);
  QMat joint = span_sum(span_columns(v1), span_columns(v2));
  return span_dim(joint) == 2 ? 1 : 0;
}

DegreeBreakdown generic_degree(
    const std::vector<std::pair<std::string, ConeType>>& catalog,
    const std::string& chosen, bool flip_symmetry_present, int local_result) {
  const ConeType* sel = nullptr;
  for (auto& [name, ct] : catalog)
    if (name == chosen) sel = &ct;
  if (!sel) throw std::domain_error("generic_degree: unknown chosen point");
  std::vector<std::string> clashes;
  for (auto& [name, ct] : catalog) {
    if (name == chosen) continue;
    if (ct.a.same_type(sel->a) && ct.b.same_type(sel->b) &&
        ct.c.same_type(sel->c))
      clashes.push_back(name);
  }
  if (!clashes.empty()) {
    std::string msg = "generic_degree: chosen cone type not unique; clashes:";
    for (auto& c : clashes) msg += " " + c;
    throw RefusalError(msg);
  }
  if (local_result != 1)
    throw RefusalError("generic_degree: local degree not certified");
  DegreeBreakdown out;
  out.local_degree = local_result;
  out.flip_degree = knu_flip_degree(*sel, flip_symmetry_present);
  out.generic = out.local_degree * out.flip_degree;
  out.chosen = chosen;
  return out;
}

}  // namespace ps
