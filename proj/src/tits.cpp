#include "weylhull/tits.hpp"
#include <algorithm>

namespace weylhull {

bool is_regular_dominant(const RootDatum& datum, const QVec& x) {
  for (std::size_t i = 0; i < datum.n(); ++i)
    if (alpha_value(datum, i, x) <= 0) return false;
  return true;
}

ChamberReduction reduce_to_chamber(const WeylGroup& wg, const QVec& x, std::size_t budget) {
  const RootDatum& rd = wg.datum();
  ChamberReduction out;
  QVec cur = x;
  std::vector<std::size_t> letters;
  for (std::size_t step = 0; step <= budget; ++step) {
    std::size_t pivot = rd.n();
    for (std::size_t i = 0; i < rd.n() && pivot == rd.n(); ++i)
      if (alpha_value(rd, i, cur) < 0) pivot = i;
    if (pivot == rd.n()) {
      out.in_cone = true;
      out.dominant = cur;
      out.cell = cell_type(rd, cur);
      out.steps = step;
      // cur = s_{i_k}...s_{i_1}(x), so x = s_{i_1}...s_{i_k}(cur).
      out.w = wg.compose(letters);
      return out;
    }
    if (step == budget) break;
    cur = wg.act(wg.generator(pivot), cur);
    letters.push_back(pivot);
  }
  out.in_cone = false;
  out.w = wg.identity();
  out.steps = budget;
  out.last = std::move(cur);
  return out;
}

std::vector<std::size_t> cell_type(const RootDatum& datum, const QVec& dominant) {
  std::vector<std::size_t> j;
  for (std::size_t i = 0; i < datum.n(); ++i) {
    Rat v = alpha_value(datum, i, dominant);
    if (v < 0) throw NotDominant("point has <alpha_" + std::to_string(i + 1) + ", x> < 0");
    if (v == 0) j.push_back(i);
  }
  return j;
}

QVec weyl_difference(const WeylGroup& wg, const QVec& h, const WeylElement& w) {
  const RootDatum& rd = wg.datum();
  if (!is_regular_dominant(rd, h))
    throw NotRegularDominant("h is not in the open fundamental chamber");
  QVec wh = wg.act(w, h);
  QVec c(rd.n());
  for (std::size_t i = 0; i < rd.n(); ++i) c[i] = h[i] - wh[i];
  // h - w(h) lies in the span of the simple coroots: extension coords cancel.
  for (std::size_t k = rd.n(); k < rd.d; ++k)
    if (h[k] != wh[k]) throw std::logic_error("weyl_difference: extension coordinate moved");
  auto supp = wg.support(w);
  for (std::size_t i = 0; i < rd.n(); ++i) {
    bool in_supp = std::find(supp.begin(), supp.end(), i) != supp.end();
    if (in_supp != (c[i] > 0) || (!in_supp && c[i] != 0))
      throw std::logic_error("weyl_difference: support law violated");
  }
  return c;
}

}  // namespace weylhull
