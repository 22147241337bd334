#pragma once

#include "weylhull/rational.hpp"

#include <cstddef>
#include <stdexcept>

namespace weylhull {

using IMat = std::vector<std::vector<Int>>;

/// Raised by validate_gcm. Indices are 1-based to match human-facing output.
struct GcmValidationError : std::invalid_argument {
  enum class Kind { DiagonalNotTwo, PositiveOffDiagonal, AsymmetricZero };
  Kind kind;
  std::size_t i, j;  // j unused for DiagonalNotTwo
  GcmValidationError(Kind k, std::size_t i_, std::size_t j_, const std::string& msg)
      : std::invalid_argument(msg), kind(k), i(i_), j(j_) {}
};

struct NotSymmetrizable : std::invalid_argument {
  std::vector<std::size_t> cycle;  // 0-based index cycle violating d_i a_ij = d_j a_ji
  explicit NotSymmetrizable(std::vector<std::size_t> cyc);
};

/// A validated generalized Cartan matrix. Indices are 0-based internally.
struct Gcm {
  std::size_t n = 0;
  IMat a;
  std::vector<std::vector<std::size_t>> components;  // sorted, ordered by smallest index
};

enum class GcmTag { Finite, Affine, Indefinite };

std::string to_string(GcmTag t);

/// Classification of one indecomposable component.
struct GcmType {
  GcmTag tag;
  QVec witness;  // lambda > 0 with A*lambda >0 / =0 / <0; primitive integer vector
};

struct Symmetrizer {
  QVec d;  // positive; smallest positive integers per component
  QMat b;  // symmetric, A = D*B
};

Gcm validate_gcm(const IMat& matrix);

/// One GcmType per component, in component order.
std::vector<GcmType> classify(const Gcm& gcm);

Symmetrizer symmetrizer(const Gcm& gcm);

/// Submatrix of g restricted to the given (sorted) index set.
IMat principal_submatrix(const IMat& a, const std::vector<std::size_t>& idx);

}  // namespace weylhull
