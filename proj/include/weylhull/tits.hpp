#pragma once

#include "weylhull/coxeter.hpp"

namespace weylhull {

struct NotRegularDominant : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotDominant : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Outcome of pushing a point into the closed fundamental chamber.
/// in_cone => input = w(dominant), all <alpha_i, dominant> >= 0 and
/// cell = {i : <alpha_i, dominant> = 0}. Otherwise the budget ran out,
/// which leaves Tits-cone membership undecided (the point may be external).
struct ChamberReduction {
  bool in_cone = false;
  WeylElement w;
  QVec dominant;
  std::vector<std::size_t> cell;
  std::size_t steps = 0;  // reflections applied
  QVec last;              // current point when the budget ran out
};

inline constexpr std::size_t kDefaultReductionBudget = 10'000;

ChamberReduction reduce_to_chamber(const WeylGroup& wg, const QVec& x,
                                   std::size_t budget = kDefaultReductionBudget);

/// J = {i : <alpha_i, x> = 0} for a dominant point; throws NotDominant.
std::vector<std::size_t> cell_type(const RootDatum& datum, const QVec& dominant);

/// Coefficients c_1..c_n of h - w(h) in the simple coroots, for regular
/// dominant h. Checks the support law c_i > 0 <=> i in supp(w).
QVec weyl_difference(const WeylGroup& wg, const QVec& h, const WeylElement& w);

/// True iff <alpha_i, x> > 0 for all i.
bool is_regular_dominant(const RootDatum& datum, const QVec& x);

}  // namespace weylhull
