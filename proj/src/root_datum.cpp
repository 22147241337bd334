#include "weylhull/root_datum.hpp"

#include "weylhull/linalg.hpp"

namespace weylhull {

namespace {

QMat int_rows_to_rat(const IMat& rows) {
  QMat m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) m[i].assign(rows[i].begin(), rows[i].end());
  return m;
}

// Fills in the derived fields (basis, inverse, pairing table) once the raw
// datum has been checked.
void finish(RootDatum& rd) {
  rd.basis = int_rows_to_rat(rd.h);
  for (const auto& row : rd.extension) rd.basis.emplace_back(row.begin(), row.end());
  rd.basis_inv = *linalg::inverse(rd.basis);
  rd.alpha_on_basis = linalg::mul(int_rows_to_rat(rd.c), linalg::transpose(rd.basis));
}

// Greedily appends unit rows of length d to `rows` until rank reaches `target`.
IMat complete_with_unit_rows(QMat rows, std::size_t d, std::size_t target) {
  IMat added;
  std::size_t r = linalg::rank(rows);
  for (std::size_t k = 0; k < d && r < target; ++k) {
    QVec e(d, 0);
    e[k] = 1;
    rows.push_back(e);
    if (linalg::rank(rows) > r) {
      ++r;
      std::vector<Int> row(d, 0);
      row[k] = 1;
      added.push_back(std::move(row));
    } else {
      rows.pop_back();
    }
  }
  return added;
}

}  // namespace

RootDatum make_kac_datum(const Gcm& gcm) {
  const std::size_t n = gcm.n;
  QMat at = linalg::transpose(int_rows_to_rat(gcm.a));
  const std::size_t r = linalg::rank(at);
  const std::size_t d = 2 * n - r;

  RootDatum rd;
  rd.gcm = gcm;
  rd.d = d;
  rd.h.assign(n, std::vector<Int>(d, 0));
  for (std::size_t i = 0; i < n; ++i) rd.h[i][i] = 1;
  rd.extension.assign(d - n, std::vector<Int>(d, 0));
  for (std::size_t k = 0; k < d - n; ++k) rd.extension[k][n + k] = 1;

  // c_j = (a_1j .. a_nj, x_j) with the tail columns completing A^T to rank n.
  auto extra = complete_with_unit_rows(linalg::transpose(at), n, n);  // columns of A
  rd.c.assign(n, std::vector<Int>(d, 0));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) rd.c[j][i] = gcm.a[i][j];
  for (std::size_t k = 0; k < d - n; ++k)
    for (std::size_t j = 0; j < n; ++j) rd.c[j][n + k] = extra[k][j];

  finish(rd);
  return rd;
}

RootDatum validate_datum(const Gcm& gcm, std::size_t d, const IMat& c, const IMat& h) {
  using K = DatumError::Kind;
  const std::size_t n = gcm.n;
  if (c.size() != n || h.size() != n) throw std::invalid_argument("datum: need n rows for c and h");
  for (const auto& row : c)
    if (row.size() != d) throw std::invalid_argument("datum: c row length != d");
  for (const auto& row : h)
    if (row.size() != d) throw std::invalid_argument("datum: h row length != d");

  QMat cq = int_rows_to_rat(c), hq = int_rows_to_rat(h);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Int p = 0;
      for (std::size_t k = 0; k < d; ++k) p += c[j][k] * h[i][k];
      if (p != gcm.a[i][j])
        throw DatumError(K::PairingMismatch,
                         "<c_" + std::to_string(j + 1) + ", h_" + std::to_string(i + 1) +
                             "> != a_" + std::to_string(i + 1) + std::to_string(j + 1),
                         i + 1, j + 1);
    }
  if (linalg::rank(cq) != n) throw DatumError(K::NotFree, "the c_i are linearly dependent");
  if (linalg::rank(hq) != n) throw DatumError(K::NotCofree, "the h_i are linearly dependent");
  // Implied by free + cofree, but kept as an explicit guard for raw input.
  const std::size_t ra = linalg::rank(int_rows_to_rat(gcm.a));
  if (d + ra < 2 * n)
    throw DatumError(K::RankTooSmall, "lattice rank " + std::to_string(d) +
                                          " is below 2n - rank(A) = " + std::to_string(2 * n - ra));

  RootDatum rd;
  rd.gcm = gcm;
  rd.d = d;
  rd.c = c;
  rd.h = h;
  rd.extension = complete_with_unit_rows(hq, d, d);
  finish(rd);
  return rd;
}

DualBasis dual_basis(const RootDatum& datum) {
  QMat rows = linalg::transpose(datum.basis_inv);  // rows dual to the rows of basis
  DualBasis db;
  db.omega.assign(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(datum.n()));
  db.phi.assign(rows.begin() + static_cast<std::ptrdiff_t>(datum.n()), rows.end());
  return db;
}

QVec from_b_coords(const RootDatum& datum, const QVec& x) {
  return linalg::mul(linalg::transpose(datum.basis), x);
}

QVec to_b_coords(const RootDatum& datum, const QVec& point) {
  return linalg::mul(linalg::transpose(datum.basis_inv), point);
}

Rat pair_b(const RootDatum& datum, const QVec& lambda, const QVec& x) {
  return dot(lambda, from_b_coords(datum, x));
}

Rat alpha_value(const RootDatum& datum, std::size_t i, const QVec& x) {
  return dot(datum.alpha_on_basis[i], x);
}

}  // namespace weylhull
