#pragma once

#include "weylhull/rational.hpp"

#include <cstddef>
#include <optional>

namespace weylhull::linalg {

QMat identity(std::size_t n);
QMat transpose(const QMat& a);
QMat mul(const QMat& a, const QMat& b);
QVec mul(const QMat& a, const QVec& x);

std::size_t rank(QMat a);
Rat det(QMat a);

/// Inverse of a square matrix; std::nullopt if singular.
std::optional<QMat> inverse(const QMat& a);

/// One solution of a*x = b (a may be rectangular); std::nullopt if inconsistent.
std::optional<QVec> solve(QMat a, QVec b);

/// Basis of the right kernel of a, deterministic (free columns in order).
std::vector<QVec> kernel(QMat a);

}  // namespace weylhull::linalg
