#include "weylhull/iwasawa.hpp"

#include "weylhull/fourier_motzkin.hpp"
#include "weylhull/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdlib>
#include <numeric>
#include <thread>

namespace weylhull::numeric {

namespace {

DMat didentity(std::size_t n) {
  DMat m(n, DVec(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0;
  return m;
}

DMat dmul(const DMat& a, const DMat& b) {
  const std::size_t n = a.size(), m = b[0].size(), kk = b.size();
  DMat c(n, DVec(m, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < kk; ++k)
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

DMat dtranspose(const DMat& a) {
  DMat t(a[0].size(), DVec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

/// Rotation by gamma in the (p, q) coordinate plane, identity elsewhere.
DMat plane_rotation(std::size_t n, std::size_t p, std::size_t q, double gamma) {
  DMat m = didentity(n);
  m[p][p] = std::cos(gamma);
  m[p][q] = -std::sin(gamma);
  m[q][p] = std::sin(gamma);
  m[q][q] = std::cos(gamma);
  return m;
}

void check_traceless(const DVec& h) {
  double s = std::accumulate(h.begin(), h.end(), 0.0);
  if (std::abs(s) > 1e-9) throw std::invalid_argument("diagonal vector must sum to zero");
}

void check_regular(const DVec& h) {
  check_traceless(h);
  for (std::size_t i = 0; i + 1 < h.size(); ++i)
    if (!(h[i] > h[i + 1])) throw NotRegular("entries must be strictly decreasing");
}

/// gamma with the SL2 projection of diag(e^r, e^-r) R_gamma having first
/// logarithm t; requires |t| <= r.
double invert_sl2(double r, double t) {
  if (r <= 0.0) return 0.0;
  double c2 = (std::exp(2 * t) - std::exp(-2 * r)) / (std::exp(2 * r) - std::exp(-2 * r));
  c2 = std::clamp(c2, 0.0, 1.0);
  return std::acos(std::sqrt(c2));
}

}  // namespace

IwasawaTriple sl2_iwasawa(double r, double gamma) {
  if (!std::isfinite(r) || !std::isfinite(gamma))
    throw std::invalid_argument("sl2_iwasawa: non-finite input");
  double c = std::cos(gamma), s = std::sin(gamma);
  // At the coordinate axes the factorization is exact (k is a signed
  // permutation); snap so the endpoint projections are hit without rounding.
  if (std::abs(s) < 1e-15) {
    s = 0.0;
    c = c < 0 ? -1.0 : 1.0;
  } else if (std::abs(c) < 1e-15) {
    c = 0.0;
    s = s < 0 ? -1.0 : 1.0;
  }
  const double er = std::exp(r), emr = std::exp(-r);
  const double rho2 = er * er * c * c + emr * emr * s * s;
  const double rho = std::sqrt(rho2);

  IwasawaTriple out;
  out.logA = {std::log(rho), -std::log(rho)};
  out.k = {{er * c / rho, -emr * s / rho}, {emr * s / rho, er * c / rho}};
  out.u = {{1.0, (emr * emr - er * er) * c * s / rho2}, {0.0, 1.0}};
  if (s == 0.0) {  // exact endpoints: rho = e^r, a = diag(e^r, e^-r)
    out.logA = {r, -r};
    out.k = {{c, 0.0}, {0.0, c}};
    out.u = didentity(2);
  } else if (c == 0.0) {
    out.logA = {-r, r};
    out.k = {{0.0, -s}, {s, 0.0}};
    out.u = didentity(2);
  }

  const DMat g = {{er * std::cos(gamma), -er * std::sin(gamma)},
                  {emr * std::sin(gamma), emr * std::cos(gamma)}};
  DMat au = out.u;
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t l = 0; l < 2; ++l) au[j][l] *= std::exp(out.logA[j]);
  DMat rec = dmul(out.k, au);
  double res = 0.0;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) res = std::max(res, std::abs(rec[i][j] - g[i][j]));
  out.residual = res;
  return out;
}

IwasawaTriple qr_iwasawa(const DMat& g) {
  const std::size_t n = g.size();
  for (const auto& row : g)
    if (row.size() != n) throw std::invalid_argument("qr_iwasawa: matrix not square");

  double scale = 0.0;
  for (const auto& row : g)
    for (double v : row) scale = std::max(scale, std::abs(v));
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw SingularInput("qr_iwasawa: zero or non-finite matrix");

  // Modified Gram-Schmidt on columns; R gets a positive diagonal because the
  // pivots are column norms.
  DMat q(n, DVec(n));  // columns of q in column-major scratch
  std::vector<DVec> col(n, DVec(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) col[j][i] = g[i][j];
  DMat r(n, DVec(n, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t p = 0; p < j; ++p) {
      double proj = 0.0;
      for (std::size_t i = 0; i < n; ++i) proj += col[p][i] * col[j][i];
      r[p][j] = proj;
      for (std::size_t i = 0; i < n; ++i) col[j][i] -= proj * col[p][i];
    }
    double norm = 0.0;
    for (double v : col[j]) norm += v * v;
    norm = std::sqrt(norm);
    if (!(norm > 1e-13 * scale) || !std::isfinite(norm))
      throw SingularInput("qr_iwasawa: numerically singular column");
    r[j][j] = norm;
    for (std::size_t i = 0; i < n; ++i) col[j][i] /= norm;
  }

  IwasawaTriple out;
  out.k.assign(n, DVec(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) out.k[i][j] = col[j][i];
  out.logA.resize(n);
  out.u.assign(n, DVec(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    out.logA[i] = std::log(r[i][i]);
    out.u[i][i] = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) out.u[i][j] = r[i][j] / r[i][i];
  }

  DMat rec = dmul(out.k, r);
  double res = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) res = std::max(res, std::abs(rec[i][j] - g[i][j]));
  out.residual = res;
  return out;
}

DVec kostant_project(const DVec& h, const DMat& k) {
  check_traceless(h);
  const std::size_t n = h.size();
  if (k.size() != n) throw std::invalid_argument("kostant_project: dimension mismatch");
  DMat g(n, DVec(n));
  for (std::size_t i = 0; i < n; ++i) {
    const double e = std::exp(h[i]);
    for (std::size_t j = 0; j < n; ++j) g[i][j] = e * k[i][j];
  }
  return qr_iwasawa(g).logA;
}

DVec linear_project(const DVec& h, const DMat& k) {
  check_traceless(h);
  const std::size_t n = h.size();
  if (k.size() != n) throw std::invalid_argument("linear_project: dimension mismatch");
  DVec out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i] += k[i][j] * h[j] * k[i][j];
  return out;
}

double permutohedron_slack(const DVec& h, const DVec& x) {
  const std::size_t n = h.size();
  if (x.size() != n) throw std::invalid_argument("permutohedron_slack: dimension mismatch");
  DVec xs = x;
  std::sort(xs.begin(), xs.end(), std::greater<>());
  double slack = 0.0, ph = 0.0, px = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    ph += h[k];
    px += xs[k];
    slack = std::min(slack, ph - px);
  }
  const double total_h = std::accumulate(h.begin(), h.end(), 0.0);
  const double total_x = std::accumulate(x.begin(), x.end(), 0.0);
  slack = std::min(slack, -std::abs(total_h - total_x));
  return slack;
}

std::uint64_t Rng::next() {
  state_ += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double Rng::uniform01() {
  return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::gaussian() {
  const double u1 = uniform01(), u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

DMat haar_orthogonal(std::size_t n, Rng& rng) {
  for (;;) {
    DMat g(n, DVec(n));
    for (auto& row : g)
      for (double& v : row) v = rng.gaussian();
    try {
      return qr_iwasawa(g).k;
    } catch (const SingularInput&) {
      // measure-zero event; redraw
    }
  }
}

std::size_t worker_count() {
  std::size_t w = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("WEYLHULL_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) w = static_cast<std::size_t>(v);
  }
  return std::clamp<std::size_t>(w, 1, 8);
}

namespace {

constexpr std::size_t kChunks = 8;  // fixed logical chunks: reports do not
                                    // depend on the physical thread count

struct ChunkResult {
  double worstSlack = 0.0;
  std::vector<double> firsts;  // first coordinates of the projections
  std::vector<DVec> points;
};

template <typename Project>
VerificationReport run_verification(std::size_t n, const DVec& h, std::size_t samples,
                                    std::uint64_t seed, Project project,
                                    std::vector<DVec>* samples_out) {
  check_regular(h);
  if (n != h.size() || n < 2 || n > 4)
    throw std::invalid_argument("verification models support n in {2, 3, 4}");

  std::vector<ChunkResult> results(kChunks);
  auto run_chunk = [&](std::size_t c) {
    Rng rng(seed + (c + 1) * 0x9E3779B97F4A7C15ull);
    std::size_t count = samples / kChunks + (c < samples % kChunks ? 1 : 0);
    ChunkResult& res = results[c];
    res.firsts.reserve(count);
    for (std::size_t s = 0; s < count; ++s) {
      // chunk 0 leads with the identity so the untouched diagonal is always
      // in the sample set
      DMat k = (c == 0 && s == 0) ? didentity(n) : haar_orthogonal(n, rng);
      DVec x = project(h, k);
      res.worstSlack = std::min(res.worstSlack, permutohedron_slack(h, x));
      res.firsts.push_back(x[0]);
      if (samples_out) res.points.push_back(std::move(x));
    }
  };

  const std::size_t workers = std::min(worker_count(), kChunks);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t c = w; c < kChunks; c += workers) run_chunk(c);
    });
  for (auto& t : pool) t.join();

  VerificationReport report;
  report.samples = samples;
  report.seed = seed;
  std::vector<double> firsts;
  for (auto& res : results) {  // merge in chunk order: deterministic
    report.worstSlack = std::min(report.worstSlack, res.worstSlack);
    firsts.insert(firsts.end(), res.firsts.begin(), res.firsts.end());
    if (samples_out)
      samples_out->insert(samples_out->end(), std::make_move_iterator(res.points.begin()),
                          std::make_move_iterator(res.points.end()));
  }

  // Coverage along the first coordinate, whose attainable range is
  // [h_n, h_1]: grid targets lacking a nearby sample, and the largest hole.
  // Only meaningful for n = 2, where the image is the full interval; in
  // higher rank the marginal density vanishes at the extremes.
  if (n != 2) return report;
  const double lo = h[n - 1], hi = h[0];
  std::sort(firsts.begin(), firsts.end());
  firsts.insert(firsts.begin(), lo);
  firsts.push_back(hi);
  for (std::size_t i = 0; i + 1 < firsts.size(); ++i)
    report.maxGap = std::max(report.maxGap, firsts[i + 1] - firsts[i]);
  const std::size_t grid = 200;
  for (std::size_t g = 1; g < grid; ++g) {
    const double t = lo + (hi - lo) * static_cast<double>(g) / grid;
    auto it = std::lower_bound(firsts.begin(), firsts.end(), t);
    double best = std::numeric_limits<double>::infinity();
    if (it != firsts.end()) best = std::min(best, *it - t);
    if (it != firsts.begin()) best = std::min(best, t - *(it - 1));
    if (best > 0.01) report.coverageGaps.push_back(t);
  }
  return report;
}

}  // namespace

VerificationReport verify_nonlinear(std::size_t n, const DVec& h, std::size_t samples,
                                    std::uint64_t seed, std::vector<DVec>* samples_out) {
  return run_verification(
      n, h, samples, seed,
      [](const DVec& hh, const DMat& k) { return kostant_project(hh, k); }, samples_out);
}

VerificationReport verify_linear(std::size_t n, const DVec& h, std::size_t samples,
                                 std::uint64_t seed, std::vector<DVec>* samples_out) {
  VerificationReport report = run_verification(
      n, h, samples, seed,
      [](const DVec& hh, const DMat& k) { return linear_project(hh, k); }, samples_out);

  // Pinching pass: drive the diagonal to random majorized targets (convex
  // combinations of permutations of h) and fold failures into the coverage
  // report.
  Rng rng(seed ^ 0xD1B54A32D192ED03ull);
  std::vector<DVec> perms;
  DVec p = h;
  std::sort(p.begin(), p.end());
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  for (std::size_t trial = 0; trial < 20; ++trial) {
    DVec weights(perms.size());
    double total = 0.0;
    for (double& wv : weights) total += (wv = rng.uniform01());
    DVec target(n, 0.0);
    for (std::size_t r = 0; r < perms.size(); ++r)
      for (std::size_t i = 0; i < n; ++i) target[i] += weights[r] / total * perms[r][i];
    DMat k = pinch(h, target);
    DVec got = linear_project(h, k);
    for (std::size_t i = 0; i < n; ++i)
      if (std::abs(got[i] - target[i]) > 1e-8) {
        report.coverageGaps.push_back(target[0]);
        break;
      }
  }
  return report;
}

AttainResult attain(std::size_t n, const DVec& h, const DVec& target) {
  check_regular(h);
  check_traceless(target);
  if (n != h.size() || target.size() != n || (n != 2 && n != 3))
    throw std::invalid_argument("attain supports n in {2, 3}");
  if (permutohedron_slack(h, target) < -1e-12)
    throw TargetOutsideHull("target is not in the orbit hull");

  AttainResult out;
  if (n == 2) {
    out.k = plane_rotation(2, 0, 1, invert_sl2(h[0], target[0]));
  } else {
    const double t = target[0];
    DMat k1, wrep = didentity(3);
    DVec y(3);
    if (t >= h[1]) {
      // slice level crosses the edge [h, s_1(h)]: rotate in the (0,1) block
      y = {t, h[0] + h[1] - t, h[2]};
      const double r = (h[0] - h[1]) / 2, center = (h[0] + h[1]) / 2;
      k1 = plane_rotation(3, 0, 1, invert_sl2(r, std::clamp(t - center, -r, r)));
    } else {
      // level crosses the edge [s_1(h), s_1 s_2(h)] = s_1([h, s_2(h)]): the
      // translated block mixes coordinates 0 and 2, and the chamber
      // translation s_1 is absorbed into K on the left
      y = {t, h[0], -t - h[0]};
      const double r = (h[1] - h[2]) / 2, center = (h[1] + h[2]) / 2;
      k1 = plane_rotation(3, 0, 2, invert_sl2(r, std::clamp(t - center, -r, r)));
      wrep = {{0.0, -1.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}};  // s_1 in SO(3)
    }
    // second step: sweep the slice segment conv{y, s_2(y)} with a rotation in
    // the complementary (1,2) block
    const double r2 = (y[1] - y[2]) / 2, center2 = (y[1] + y[2]) / 2;
    DMat k2 = plane_rotation(3, 1, 2, invert_sl2(r2, std::clamp(target[1] - center2, -r2, r2)));
    out.k = dmul(dtranspose(wrep), dmul(k1, k2));
  }

  auto error_of = [&](const DMat& k) {
    DVec got = kostant_project(h, k);
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i) e = std::max(e, std::abs(got[i] - target[i]));
    return e;
  };
  out.error = error_of(out.k);

  if (out.error > 1e-9) {
    // Derivative-free refinement: compass search over plane-rotation angles.
    out.fallback = true;
    std::vector<std::pair<std::size_t, std::size_t>> planes;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) planes.emplace_back(p, q);
    std::vector<double> angles(planes.size(), 0.0);
    auto build = [&](const std::vector<double>& a) {
      DMat k = didentity(n);
      for (std::size_t r = 0; r < planes.size(); ++r)
        k = dmul(k, plane_rotation(n, planes[r].first, planes[r].second, a[r]));
      return k;
    };
    double best = error_of(build(angles));
    for (double step = 0.5; step > 1e-10;) {
      bool improved = false;
      for (std::size_t r = 0; r < angles.size(); ++r)
        for (double dir : {step, -step}) {
          auto trial = angles;
          trial[r] += dir;
          double e = error_of(build(trial));
          if (e < best) {
            best = e;
            angles = trial;
            improved = true;
          }
        }
      if (!improved) step /= 2;
    }
    if (best < out.error) {
      out.k = build(angles);
      out.error = best;
    }
  }
  out.achieved = kostant_project(h, out.k);
  if (out.error > 1e-6)
    throw ToleranceNotMet("attain stalled at error " + std::to_string(out.error));
  return out;
}

DMat pinch(const DVec& h, const DVec& target) {
  const std::size_t n = h.size();
  if (target.size() != n) throw std::invalid_argument("pinch: dimension mismatch");
  DVec hs = h, ts = target;
  std::sort(hs.begin(), hs.end(), std::greater<>());
  std::sort(ts.begin(), ts.end(), std::greater<>());
  if (permutohedron_slack(hs, target) < -1e-12)
    throw TargetOutsideHull("target is not majorized by the diagonal");

  // Deflating Givens construction: each step pins one diagonal entry to the
  // largest remaining target value and leaves the rest diagonal.  Off-diagonal
  // debris only ever touches frozen rows, so the final diagonal is exact.
  struct Slot {
    std::size_t pos;
    double value;
  };
  std::vector<Slot> active(n);
  for (std::size_t i = 0; i < n; ++i) active[i] = {i, hs[i]};
  std::vector<std::size_t> rank_pos(n);  // position that received ts[m]
  DMat k = didentity(n);
  for (std::size_t m = 0; m + 1 < n; ++m) {
    std::sort(active.begin(), active.end(),
              [](const Slot& a, const Slot& b) { return a.value > b.value; });
    std::size_t a = 0;  // adjacent straddling pair: value[a] >= ts[m] >= value[a+1]
    while (a + 2 < active.size() && active[a + 1].value >= ts[m]) ++a;
    Slot hiSlot = active[a], loSlot = active[a + 1];
    double c2 = hiSlot.value == loSlot.value
                    ? 1.0
                    : (ts[m] - loSlot.value) / (hiSlot.value - loSlot.value);
    c2 = std::clamp(c2, 0.0, 1.0);
    const double gamma = std::acos(std::sqrt(c2));
    k = dmul(plane_rotation(n, hiSlot.pos, loSlot.pos, gamma), k);
    rank_pos[m] = hiSlot.pos;
    active.erase(active.begin() + a);
    active[a] = {loSlot.pos, hiSlot.value + loSlot.value - ts[m]};
  }
  rank_pos[n - 1] = active[0].pos;

  // Permute so the requested (unsorted) target order lands on the diagonal.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return target[a] > target[b]; });
  DMat perm(n, DVec(n, 0.0));
  for (std::size_t m = 0; m < n; ++m) perm[order[m]][rank_pos[m]] = 1.0;
  DMat out = dmul(perm, k);
  // keep det +1: a row sign does not affect the conjugated diagonal
  std::vector<std::size_t> image(n);
  for (std::size_t m = 0; m < n; ++m) image[rank_pos[m]] = order[m];
  std::size_t cycles = 0;
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (std::size_t j = i; !seen[j]; j = image[j]) seen[j] = true;
  }
  if ((n - cycles) % 2)  // odd permutation
    for (double& v : out[0]) v = -v;
  return out;
}

HorosphereWitness horosphere_witness(const RootDatum& datum) {
  const std::size_t n = datum.n(), d = datum.d;
  auto verify = [&](const QVec& h, bool extension_case) {
    HullContext ctx(datum, h);
    Membership check = hull_membership(ctx, QVec(d, 0));
    if (check.verdict != Membership::Verdict::Out)
      throw std::logic_error("horosphere witness candidate does not exclude the origin");
    HorosphereWitness out;
    out.h = h;
    out.violated = check.violated;
    out.extension_case = extension_case;
    out.check = std::move(check);
    return out;
  };

  if (d > n) {
    // Extension case: pick a regular dominant point and push it off every
    // level set through the origin using the kernel of the simple roots.
    QVec ones(n, 1);
    QVec base = *linalg::solve(datum.alpha_on_basis, ones);
    std::vector<QVec> shifts = linalg::kernel(datum.alpha_on_basis);
    shifts.insert(shifts.begin(), QVec(d, 0));
    for (const QVec& v : shifts) {
      QVec h(d);
      for (std::size_t i = 0; i < d; ++i) h[i] = base[i] + v[i];
      HullContext ctx(datum, h);
      if (hull_membership(ctx, QVec(d, 0)).verdict == Membership::Verdict::Out)
        return verify(h, true);
    }
    throw std::logic_error("no level constraint excludes the origin");
  }

  bool indefinite = false;
  for (const auto& t : classify(datum.gcm))
    if (t.tag == GcmTag::Indefinite) indefinite = true;
  if (!indefinite)
    throw NotApplicable("finite type with a minimal Cartan has 0 in every orbit hull");

  // Indefinite case: lambda with A^T lambda >= 1 exists and must have a
  // negative coordinate; h = sum lambda_i alpha_i^vee is regular dominant
  // with <omega_j, h> = lambda_j < 0 for some j, so 0 violates that bound.
  std::vector<fm::Constraint> cons;
  for (std::size_t j = 0; j < n; ++j) {
    QVec row(n);
    for (std::size_t i = 0; i < n; ++i) row[i] = Rat(datum.gcm.a[i][j]);
    cons.push_back({row, Rat(1), fm::Rel::Ge});
  }
  auto lambda = fm::feasible(cons, n);
  if (!lambda) throw std::logic_error("indefinite datum admits no dominant coroot combination");
  return verify(*lambda, false);
}

}  // namespace weylhull::numeric
