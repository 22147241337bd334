#pragma once

#include "weylhull/rational.hpp"

#include <optional>

namespace weylhull::fm {

enum class Rel { Eq, Ge, Gt };

/// A linear constraint  a . x  (=|>=|>)  b.
struct Constraint {
  QVec a;
  Rat b;
  Rel rel;
};

/// Exact Fourier-Motzkin feasibility over the rationals.
/// Returns a witness point if the system is satisfiable.
std::optional<QVec> feasible(std::vector<Constraint> cons, std::size_t nvars);

}  // namespace weylhull::fm
