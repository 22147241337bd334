#include "weylhull/gcm.hpp"

#include "weylhull/fourier_motzkin.hpp"
#include "weylhull/linalg.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace weylhull {

namespace {

std::string cycle_msg(const std::vector<std::size_t>& cyc) {
  std::string s = "matrix is not symmetrizable; violating cycle:";
  for (auto i : cyc) s += " " + std::to_string(i + 1);
  return s;
}

QMat to_rat(const IMat& a) {
  QMat m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i].assign(a[i].begin(), a[i].end());
  return m;
}

// Scale a positive rational vector to the primitive integer vector on its ray.
QVec normalize_witness(QVec lambda) {
  Int l = 1;
  for (const auto& q : lambda) l = lcm(l, denominator(q));
  Int g = 0;
  for (auto& q : lambda) {
    q *= l;
    g = gcd(g, numerator(q));
  }
  if (g > 1)
    for (auto& q : lambda) q /= g;
  return lambda;
}

int vec_sign(const QVec& v) {  // +1 if all >0, -1 if all <0, 0 if all =0, else 2
  bool pos = true, neg = true, zero = true;
  for (const auto& q : v) {
    if (q <= 0) pos = false;
    if (q >= 0) neg = false;
    if (q != 0) zero = false;
  }
  return pos ? 1 : neg ? -1 : zero ? 0 : 2;
}

GcmType classify_component(const IMat& sub) {
  const std::size_t m = sub.size();
  QMat a = to_rat(sub);

  // Principal-minor trichotomy: every principal minor positive means finite
  // type; singular with all proper principal minors positive means affine.
  Rat full_det = linalg::det(a);
  bool proper_positive = true;
  for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << m) && proper_positive; ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (std::size_t{1} << i)) idx.push_back(i);
    if (linalg::det(to_rat(principal_submatrix(sub, idx))) <= 0) proper_positive = false;
  }

  GcmType out;
  if (proper_positive && full_det > 0) {
    out.tag = GcmTag::Finite;
    // A^{-1} has positive entries in finite type, so lambda = A^{-1} * 1 > 0.
    auto lambda = linalg::solve(a, QVec(m, 1));
    out.witness = normalize_witness(*lambda);
    return out;
  }
  if (proper_positive && full_det == 0) {
    out.tag = GcmTag::Affine;
    auto ker = linalg::kernel(a);
    QVec lambda = ker.at(0);
    if (vec_sign(lambda) == -1)
      for (auto& q : lambda) q = -q;
    out.witness = normalize_witness(std::move(lambda));
    return out;
  }

  out.tag = GcmTag::Indefinite;
  // Search lambda >= 1 with A*lambda <= -1; scaling makes the bounds harmless.
  std::vector<fm::Constraint> cons;
  for (std::size_t i = 0; i < m; ++i) {
    QVec e(m, 0);
    e[i] = 1;
    cons.push_back({e, 1, fm::Rel::Ge});
    QVec row(m);
    for (std::size_t j = 0; j < m; ++j) row[j] = -a[i][j];
    cons.push_back({row, 1, fm::Rel::Ge});  // -(A*lambda)_i >= 1
  }
  auto lambda = fm::feasible(std::move(cons), m);
  out.witness = normalize_witness(*lambda);
  return out;
}

}  // namespace

NotSymmetrizable::NotSymmetrizable(std::vector<std::size_t> cyc)
    : std::invalid_argument(cycle_msg(cyc)), cycle(std::move(cyc)) {}

std::string to_string(GcmTag t) {
  switch (t) {
    case GcmTag::Finite: return "finite";
    case GcmTag::Affine: return "affine";
    default: return "indefinite";
  }
}

IMat principal_submatrix(const IMat& a, const std::vector<std::size_t>& idx) {
  IMat sub(idx.size(), std::vector<Int>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) sub[i][j] = a[idx[i]][idx[j]];
  return sub;
}

Gcm validate_gcm(const IMat& matrix) {
  using K = GcmValidationError::Kind;
  const std::size_t n = matrix.size();
  for (const auto& row : matrix)
    if (row.size() != n) throw std::invalid_argument("matrix is not square");

  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i][i] != 2)
      throw GcmValidationError(K::DiagonalNotTwo, i + 1, i + 1,
                               "diagonal entry a_" + std::to_string(i + 1) +
                                   std::to_string(i + 1) + " is not 2");
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      std::string ij = std::to_string(i + 1) + std::to_string(j + 1);
      if (matrix[i][j] > 0)
        throw GcmValidationError(K::PositiveOffDiagonal, i + 1, j + 1,
                                 "off-diagonal entry a_" + ij + " is positive");
      if (matrix[i][j] == 0 && matrix[j][i] != 0)
        throw GcmValidationError(K::AsymmetricZero, i + 1, j + 1,
                                 "a_" + ij + " = 0 but a_" + std::to_string(j + 1) +
                                     std::to_string(i + 1) + " != 0");
    }
  }

  Gcm g;
  g.n = n;
  g.a = matrix;
  std::vector<bool> seen(n, false);
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp;
    std::deque<std::size_t> queue{s};
    seen[s] = true;
    while (!queue.empty()) {
      std::size_t i = queue.front();
      queue.pop_front();
      comp.push_back(i);
      for (std::size_t j = 0; j < n; ++j)
        if (!seen[j] && matrix[i][j] != 0) {
          seen[j] = true;
          queue.push_back(j);
        }
    }
    std::sort(comp.begin(), comp.end());
    g.components.push_back(std::move(comp));
  }
  return g;
}

std::vector<GcmType> classify(const Gcm& gcm) {
  std::vector<GcmType> out;
  out.reserve(gcm.components.size());
  for (const auto& comp : gcm.components)
    out.push_back(classify_component(principal_submatrix(gcm.a, comp)));
  return out;
}

Symmetrizer symmetrizer(const Gcm& gcm) {
  const std::size_t n = gcm.n;
  QVec d(n, 0);
  std::vector<std::ptrdiff_t> parent(n, -1);

  for (const auto& comp : gcm.components) {
    // Propagate d_j = d_i * a_ji / a_ij along a BFS spanning tree, then check
    // every edge; a failing edge closes a violating cycle through the tree.
    d[comp[0]] = 1;
    std::deque<std::size_t> queue{comp[0]};
    while (!queue.empty()) {
      std::size_t i = queue.front();
      queue.pop_front();
      for (std::size_t j : comp)
        if (d[j] == 0 && gcm.a[i][j] != 0) {
          d[j] = d[i] * make_rat(gcm.a[j][i], gcm.a[i][j]);
          parent[j] = static_cast<std::ptrdiff_t>(i);
          queue.push_back(j);
        }
    }
    for (std::size_t i : comp)
      for (std::size_t j : comp) {
        if (gcm.a[i][j] == 0 || d[j] * gcm.a[i][j] == d[i] * gcm.a[j][i]) continue;
        auto path_to_root = [&](std::size_t v) {
          std::vector<std::size_t> p{v};
          while (parent[p.back()] >= 0) p.push_back(static_cast<std::size_t>(parent[p.back()]));
          return p;
        };
        auto pi = path_to_root(i), pj = path_to_root(j);
        while (pi.size() > 1 && pj.size() > 1 && pi[pi.size() - 2] == pj[pj.size() - 2]) {
          pi.pop_back();
          pj.pop_back();
        }
        std::vector<std::size_t> cycle(pi.begin(), pi.end());
        cycle.insert(cycle.end(), pj.rbegin() + 1, pj.rend());
        throw NotSymmetrizable(std::move(cycle));
      }
    // Rescale the component to the smallest positive integer diagonal.
    Int l = 1;
    for (std::size_t i : comp) l = lcm(l, denominator(d[i]));
    Int g = 0;
    for (std::size_t i : comp) g = gcd(g, numerator(Rat(d[i] * l)));
    for (std::size_t i : comp) d[i] *= Rat(l, g);
  }

  Symmetrizer s;
  s.d = std::move(d);
  s.b.assign(n, QVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s.b[i][j] = Rat(gcm.a[i][j]) / s.d[i];
  return s;
}

}  // namespace weylhull
