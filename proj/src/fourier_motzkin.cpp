#include "weylhull/fourier_motzkin.hpp"

#include <stdexcept>

namespace weylhull::fm {

namespace {

Rat eval(const QVec& coeffs, const QVec& x) {
  Rat s = 0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) s += coeffs[j] * x[j];
  return s;
}

}  // namespace

std::optional<QVec> feasible(std::vector<Constraint> cons, std::size_t nvars) {
  for (const auto& c : cons)
    if (c.a.size() != nvars) throw std::invalid_argument("fm: width mismatch");

  if (nvars == 0) {
    for (const auto& c : cons) {
      bool ok = c.rel == Rel::Eq ? c.b == 0 : c.rel == Rel::Ge ? c.b <= 0 : c.b < 0;
      if (!ok) return std::nullopt;
    }
    return QVec{};
  }

  const std::size_t k = nvars - 1;

  // Substitute x_k away if an equality pins it.
  for (std::size_t e = 0; e < cons.size(); ++e) {
    if (cons[e].rel != Rel::Eq || cons[e].a[k] == 0) continue;
    QVec sub(k);  // x_k = sub . x_{<k} + sub_b
    Rat sub_b = cons[e].b / cons[e].a[k];
    for (std::size_t j = 0; j < k; ++j) sub[j] = -cons[e].a[j] / cons[e].a[k];
    std::vector<Constraint> rest;
    for (std::size_t i = 0; i < cons.size(); ++i) {
      if (i == e) continue;
      Constraint c;
      c.rel = cons[i].rel;
      c.a.resize(k);
      for (std::size_t j = 0; j < k; ++j) c.a[j] = cons[i].a[j] + cons[i].a[k] * sub[j];
      c.b = cons[i].b - cons[i].a[k] * sub_b;
      rest.push_back(std::move(c));
    }
    auto w = feasible(std::move(rest), k);
    if (!w) return std::nullopt;
    w->push_back(eval(sub, *w) + sub_b);
    return w;
  }

  // Classic elimination: lower/upper bound pairs on x_k.
  struct Bound {
    QVec a;  // x_k (>= | >) a . x_{<k} + b   (lower) or reversed (upper)
    Rat b;
    bool strict;
  };
  std::vector<Bound> lower, upper;
  std::vector<Constraint> rest;
  for (const auto& c : cons) {
    if (c.a[k] == 0) {
      Constraint r{QVec(c.a.begin(), c.a.begin() + k), c.b, c.rel};
      rest.push_back(std::move(r));
      continue;
    }
    Bound bd;
    bd.strict = c.rel == Rel::Gt;
    bd.a.resize(k);
    for (std::size_t j = 0; j < k; ++j) bd.a[j] = -c.a[j] / c.a[k];
    bd.b = c.b / c.a[k];
    if (c.rel == Rel::Eq) throw std::logic_error("fm: unhandled equality");
    (c.a[k] > 0 ? lower : upper).push_back(std::move(bd));
  }
  for (const auto& lo : lower)
    for (const auto& up : upper) {
      Constraint c;
      c.rel = (lo.strict || up.strict) ? Rel::Gt : Rel::Ge;
      c.a.resize(k);
      for (std::size_t j = 0; j < k; ++j) c.a[j] = up.a[j] - lo.a[j];
      c.b = lo.b - up.b;
      rest.push_back(std::move(c));
    }

  auto w = feasible(std::move(rest), k);
  if (!w) return std::nullopt;

  std::optional<Rat> lo, hi;
  for (const auto& bd : lower) {
    Rat v = eval(bd.a, *w) + bd.b;
    if (!lo || v > *lo) lo = v;
  }
  for (const auto& bd : upper) {
    Rat v = eval(bd.a, *w) + bd.b;
    if (!hi || v < *hi) hi = v;
  }
  // Feasibility of the projected system guarantees lo <= hi, with equality
  // only when no bound at the shared value is strict.
  Rat xk;
  if (lo && hi)
    xk = (*lo == *hi) ? *lo : (*lo + *hi) / 2;
  else if (lo)
    xk = *lo + 1;
  else if (hi)
    xk = *hi - 1;
  else
    xk = 0;
  w->push_back(xk);
  return w;
}

}  // namespace weylhull::fm
