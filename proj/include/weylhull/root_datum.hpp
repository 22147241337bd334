#pragma once

#include "weylhull/gcm.hpp"

namespace weylhull {

struct DatumError : std::invalid_argument {
  enum class Kind { PairingMismatch, NotFree, NotCofree, RankTooSmall };
  Kind kind;
  std::size_t i = 0, j = 0;  // 1-based, PairingMismatch only
  DatumError(Kind k, const std::string& msg, std::size_t i_ = 0, std::size_t j_ = 0)
      : std::invalid_argument(msg), kind(k), i(i_), j(j_) {}
};

/// A Kac-Moody root datum with the free+cofree assumption enforced.
/// Points of the Cartan space are handled in the basis
/// B = {alpha_1^vee .. alpha_n^vee, h_{n+1} .. h_d} throughout.
struct RootDatum {
  Gcm gcm;
  std::size_t d = 0;
  IMat c;          // n rows of length d: coordinates of c_i = alpha_i in Lambda
  IMat h;          // n rows of length d: coordinates of h_i = alpha_i^vee in Lambda^vee
  IMat extension;  // d-n rows completing {h_i} to a basis of Lambda^vee (x) Q

  QMat basis;      // d x d, rows = h_1..h_n, extension
  QMat basis_inv;  // basis^{-1}

  // alpha_on_basis[i][j] = <alpha_i, B_j>; integer-valued, first n columns = A^T.
  QMat alpha_on_basis;

  std::size_t n() const { return gcm.n; }
};

/// Dual basis functionals as rational rows in Lambda coordinates; on a point
/// in B coordinates they act as plain coordinate projections.
struct DualBasis {
  QMat omega;  // n rows
  QMat phi;    // d-n rows
};

/// Standard realization with d = 2n - rank(A): h_i = e_i, c_i integral.
RootDatum make_kac_datum(const Gcm& gcm);

/// Checks the pairing and the free/cofree assumption, then completes {h_i}
/// to a basis. Throws DatumError on rejection.
RootDatum validate_datum(const Gcm& gcm, std::size_t d, const IMat& c, const IMat& h);

DualBasis dual_basis(const RootDatum& datum);

/// <lambda, x> for lambda a row in Lambda coordinates and x in B coordinates.
Rat pair_b(const RootDatum& datum, const QVec& lambda, const QVec& x);

/// <alpha_i, x> for x in B coordinates.
Rat alpha_value(const RootDatum& datum, std::size_t i, const QVec& x);

/// Lambda^vee coordinates -> B coordinates and back.
QVec to_b_coords(const RootDatum& datum, const QVec& point);
QVec from_b_coords(const RootDatum& datum, const QVec& x);

}  // namespace weylhull
