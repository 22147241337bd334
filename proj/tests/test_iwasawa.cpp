#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "weylhull/iwasawa.hpp"
#include "weylhull/linalg.hpp"

#include <cmath>
#include <cstdlib>

using namespace weylhull;
using namespace weylhull::numeric;

namespace {

double max_abs_diff(const DVec& a, const DVec& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double orthogonality_defect(const DMat& k) {
  const std::size_t n = k.size();
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t r = 0; r < n; ++r) dot += k[r][i] * k[r][j];
      m = std::max(m, std::abs(dot - (i == j ? 1.0 : 0.0)));
    }
  return m;
}

DMat matmul(const DMat& a, const DMat& b) {
  DMat c(a.size(), DVec(b[0].size(), 0.0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

DMat scaled_rows(const DVec& h, const DMat& k) {
  DMat g = k;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (double& v : g[i]) v *= std::exp(h[i]);
  return g;
}

bool reports_equal(const VerificationReport& a, const VerificationReport& b) {
  return a.samples == b.samples && a.worstSlack == b.worstSlack && a.maxGap == b.maxGap &&
         a.coverageGaps == b.coverageGaps && a.seed == b.seed;
}

}  // namespace

TEST_CASE("sl2 closed form at the endpoints and the diagonal") {
  auto at0 = sl2_iwasawa(1.0, 0.0);
  CHECK(at0.logA == DVec{1.0, -1.0});
  auto at90 = sl2_iwasawa(1.0, M_PI / 2);
  CHECK(at90.logA == DVec{-1.0, 1.0});
  auto at45 = sl2_iwasawa(1.0, M_PI / 4);
  double rho = std::sqrt((std::exp(2.0) + std::exp(-2.0)) / 2);
  CHECK(std::abs(std::exp(at45.logA[0]) - rho) < 1e-14);
  CHECK(at45.residual < 1e-14);
  CHECK(orthogonality_defect(at45.k) < 1e-14);
  CHECK(at45.u[1][0] == 0.0);
  CHECK(at45.u[0][0] == 1.0);
  CHECK(at45.u[1][1] == 1.0);
}

TEST_CASE("sl2 closed form agrees with Gram-Schmidt") {
  Rng rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    double r = 2.0 * rng.uniform01() + 0.1;
    double gamma = 2.0 * M_PI * rng.uniform01();
    auto closed = sl2_iwasawa(r, gamma);
    DMat g = {{std::exp(r) * std::cos(gamma), -std::exp(r) * std::sin(gamma)},
              {std::exp(-r) * std::sin(gamma), std::exp(-r) * std::cos(gamma)}};
    auto qr = qr_iwasawa(g);
    CHECK(max_abs_diff(closed.logA, qr.logA) < 1e-12);
  }
}

TEST_CASE("Gram-Schmidt factorization invariants") {
  SUBCASE("identity and positive diagonal inputs") {
    auto id = qr_iwasawa({{1, 0}, {0, 1}});
    CHECK(id.logA == DVec{0.0, 0.0});
    CHECK(id.residual == 0.0);
    auto diag = qr_iwasawa({{2, 0, 0}, {0, 1, 0}, {0, 0, 0.5}});
    CHECK(max_abs_diff(diag.logA, {std::log(2.0), 0.0, std::log(0.5)}) < 1e-15);
    CHECK(orthogonality_defect(diag.k) == 0.0);
  }
  SUBCASE("permuted diagonal") {
    // exp(diag h) P = P exp(diag h') with h' the pulled-back diagonal, so the
    // A factor is the permuted exponential
    DVec h = {0.7, 0.1, -0.8};
    DMat p = {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}};
    auto t = qr_iwasawa(scaled_rows(h, p));
    CHECK(max_abs_diff(t.logA, {0.1, -0.8, 0.7}) < 1e-15);
  }
  SUBCASE("random well-conditioned inputs") {
    Rng rng(5);
    int accepted = 0;
    while (accepted < 2000) {
      std::size_t n = 2 + rng.next() % 3;  // n in {2,3,4}
      DMat g(n, DVec(n));
      for (auto& row : g)
        for (double& v : row) v = rng.gaussian();
      IwasawaTriple t;
      try {
        t = qr_iwasawa(g);
      } catch (const SingularInput&) {
        continue;
      }
      if (*std::min_element(t.logA.begin(), t.logA.end()) < -12.0) continue;  // ill-conditioned
      ++accepted;
      CHECK(t.residual <= 1e-9);
      CHECK(orthogonality_defect(t.k) <= 1e-9);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(t.u[i][i] == 1.0);
        for (std::size_t j = 0; j < i; ++j) CHECK(t.u[i][j] == 0.0);
      }
    }
  }
  SUBCASE("singular input") {
    CHECK_THROWS_AS(qr_iwasawa({{1, 1}, {1, 1}}), SingularInput);
  }
}

TEST_CASE("Cartan projection basics") {
  DVec h = {1.0, 0.0, -1.0};
  SUBCASE("identity projects to h") {
    CHECK(kostant_project(h, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}) == h);
    CHECK(linear_project(h, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}) == h);
  }
  SUBCASE("two-dimensional rotations match the closed form") {
    Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
      double gamma = 2.0 * M_PI * rng.uniform01();
      DMat r = {{std::cos(gamma), -std::sin(gamma)}, {std::sin(gamma), std::cos(gamma)}};
      CHECK(max_abs_diff(kostant_project({1.0, -1.0}, r), sl2_iwasawa(1.0, gamma).logA) < 1e-12);
      CHECK(max_abs_diff(linear_project({1.0, -1.0}, r),
                         {std::cos(2 * gamma), -std::cos(2 * gamma)}) < 1e-12);
    }
  }
  SUBCASE("signed permutations permute the diagonal") {
    DMat p = {{0, -1, 0}, {1, 0, 0}, {0, 0, 1}};  // transposition with det +1
    CHECK(max_abs_diff(kostant_project(h, p), {0.0, 1.0, -1.0}) < 1e-15);
    CHECK(max_abs_diff(linear_project(h, p), {0.0, 1.0, -1.0}) < 1e-15);
  }
  SUBCASE("left K-invariance of the A factor") {
    Rng rng(17);
    DMat k = haar_orthogonal(3, rng);
    DMat g = scaled_rows(h, k);
    for (int trial = 0; trial < 50; ++trial) {
      DMat q = haar_orthogonal(3, rng);
      CHECK(max_abs_diff(qr_iwasawa(matmul(q, g)).logA, qr_iwasawa(g).logA) < 1e-10);
    }
  }
  SUBCASE("nonlinear and linear projections differ pointwise") {
    // at gamma = pi/4 the nonlinear value stays positive while the linear one
    // vanishes
    double lin = std::cos(M_PI / 2);
    double nonlin = sl2_iwasawa(1.0, M_PI / 4).logA[0];
    CHECK(std::abs(nonlin - lin) > 0.1);
  }
}

TEST_CASE("permutohedron slack") {
  DVec h = {1.0, 0.0, -1.0};
  CHECK(permutohedron_slack(h, h) == 0.0);
  CHECK(permutohedron_slack(h, {-1.0, 1.0, 0.0}) == 0.0);  // vertex
  CHECK(permutohedron_slack(h, {0.0, 0.0, 0.0}) == 0.0);  // interior: partial sums strictly below
  CHECK(permutohedron_slack(h, {1.5, -0.75, -0.75}) < 0.0);
  CHECK(permutohedron_slack(h, {0.5, 0.5, -1.0}) == 0.0);  // boundary
}

TEST_CASE("nonlinear verification") {
  auto rep = verify_nonlinear(2, {1.0, -1.0}, 20000, 42);
  CHECK(rep.samples == 20000);
  CHECK(rep.worstSlack >= -1e-9);
  CHECK(rep.coverageGaps.empty());
  CHECK(rep.maxGap < 0.01);

  auto rep3 = verify_nonlinear(3, {1.0, 0.0, -1.0}, 2000, 42);
  CHECK(rep3.worstSlack >= -1e-9);

  CHECK_THROWS_AS(verify_nonlinear(2, {-1.0, 1.0}, 10, 0), NotRegular);
}

TEST_CASE("verification reports are deterministic across thread counts") {
  auto base = verify_nonlinear(3, {1.0, 0.0, -1.0}, 500, 7);
  CHECK(reports_equal(base, verify_nonlinear(3, {1.0, 0.0, -1.0}, 500, 7)));
  setenv("WEYLHULL_THREADS", "1", 1);
  auto serial = verify_nonlinear(3, {1.0, 0.0, -1.0}, 500, 7);
  setenv("WEYLHULL_THREADS", "8", 1);
  auto parallel = verify_nonlinear(3, {1.0, 0.0, -1.0}, 500, 7);
  unsetenv("WEYLHULL_THREADS");
  CHECK(reports_equal(base, serial));
  CHECK(reports_equal(base, parallel));
}

TEST_CASE("constructive attainment") {
  DVec h = {1.0, 0.0, -1.0};
  SUBCASE("the point itself needs no rotation") {
    auto res = attain(3, h, h);
    CHECK(res.error <= 1e-12);
    CHECK_FALSE(res.fallback);
  }
  SUBCASE("closed-form inversion in rank one") {
    auto res = attain(2, {1.0, -1.0}, {0.0, 0.0});
    double expected = std::acos(std::sqrt((1 - std::exp(-2.0)) / (std::exp(2.0) - std::exp(-2.0))));
    CHECK(std::abs(std::abs(std::atan2(res.k[1][0], res.k[0][0])) - expected) < 1e-12);
    CHECK(res.error <= 1e-12);
  }
  SUBCASE("barycenter of adjacent vertices uses a single block rotation") {
    DVec target = {0.5, 0.5, -1.0};
    auto res = attain(3, h, target);
    CHECK(res.error <= 1e-9);
    CHECK_FALSE(res.fallback);
    // only the leading 2x2 block rotates
    CHECK(std::abs(res.k[2][2] - 1.0) < 1e-12);
    CHECK(std::abs(res.k[0][2]) < 1e-12);
    CHECK(std::abs(res.k[2][0]) < 1e-12);
  }
  SUBCASE("random interior targets round-trip") {
    Rng rng(99);
    const DVec verts[6] = {{1, 0, -1}, {0, 1, -1}, {-1, 1, 0}, {-1, 0, 1}, {0, -1, 1}, {1, -1, 0}};
    for (int trial = 0; trial < 100; ++trial) {
      DVec target(3, 0.0);
      double total = 0.0;
      DVec w(6);
      for (double& v : w) total += (v = rng.uniform01() + 0.01);
      for (int r = 0; r < 6; ++r)
        for (int i = 0; i < 3; ++i) target[i] += w[r] / total * verts[r][i];
      auto res = attain(3, h, target);
      CHECK(res.error <= 1e-6);
      CHECK(max_abs_diff(res.achieved, target) <= 1e-6);
    }
  }
  SUBCASE("rejects exterior targets") {
    CHECK_THROWS_AS(attain(3, h, {2.0, 0.0, -2.0}), TargetOutsideHull);
    CHECK_THROWS_AS(attain(2, {1.0, -1.0}, {1.5, -1.5}), TargetOutsideHull);
  }
}

TEST_CASE("pinching realizes majorized diagonals") {
  DVec h = {1.0, 0.0, -1.0};
  SUBCASE("barycenter") {
    DMat k = pinch(h, {0.0, 0.0, 0.0});
    CHECK(max_abs_diff(linear_project(h, k), {0.0, 0.0, 0.0}) < 1e-12);
    CHECK(orthogonality_defect(k) < 1e-12);
  }
  SUBCASE("random majorized targets") {
    Rng rng(123);
    DVec p = h;
    std::sort(p.begin(), p.end());
    std::vector<DVec> perms;
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    for (int trial = 0; trial < 100; ++trial) {
      DVec target(3, 0.0);
      double total = 0.0;
      DVec w(perms.size());
      for (double& v : w) total += (v = rng.uniform01());
      for (std::size_t r = 0; r < perms.size(); ++r)
        for (int i = 0; i < 3; ++i) target[i] += w[r] / total * perms[r][i];
      DMat k = pinch(h, target);
      CHECK(max_abs_diff(linear_project(h, k), target) <= 1e-8);
    }
  }
  SUBCASE("two by two") {
    DMat k = pinch({1.0, -1.0}, {0.25, -0.25});
    CHECK(max_abs_diff(linear_project({1.0, -1.0}, k), {0.25, -0.25}) < 1e-12);
  }
  SUBCASE("rejects non-majorized targets") {
    CHECK_THROWS_AS(pinch(h, {1.5, 0.0, -1.5}), TargetOutsideHull);
  }
}

TEST_CASE("linear verification with pinching pass") {
  auto rep2 = verify_linear(2, {1.0, -1.0}, 20000, 42);
  CHECK(rep2.worstSlack >= -1e-9);
  CHECK(rep2.coverageGaps.empty());
  CHECK(rep2.maxGap < 0.01);
  auto rep3 = verify_linear(3, {1.0, 0.0, -1.0}, 2000, 42);
  CHECK(rep3.worstSlack >= -1e-9);
  CHECK(rep3.coverageGaps.empty());
}

TEST_CASE("horosphere witness") {
  SUBCASE("indefinite block with minimal Cartan") {
    auto datum = make_kac_datum(validate_gcm({{2, -3}, {-3, 2}}));
    REQUIRE(datum.d == 2);
    auto wit = horosphere_witness(datum);
    CHECK_FALSE(wit.extension_case);
    CHECK(wit.check.verdict == Membership::Verdict::Out);
    CHECK(is_regular_dominant(datum, wit.h));
    bool negative = false;
    for (std::size_t i = 0; i < 2; ++i) negative = negative || wit.h[i] < 0;
    CHECK(negative);  // some fundamental-weight target is negative
    CHECK_FALSE(wit.violated.empty());
  }
  SUBCASE("extension direction excludes the origin by a level constraint") {
    // rank-one finite type with an extra lattice direction (d > n)
    auto a1 = validate_gcm({{2}});
    RootDatum datum = validate_datum(a1, 2, {{2, 1}}, {{1, 0}});
    REQUIRE(datum.d == 2);
    auto wit = horosphere_witness(datum);
    CHECK(wit.extension_case);
    CHECK(wit.check.verdict == Membership::Verdict::Out);
    CHECK(is_regular_dominant(datum, wit.h));
  }
  SUBCASE("affine datum uses the extension case") {
    auto datum = make_kac_datum(validate_gcm({{2, -2}, {-2, 2}}));
    REQUIRE(datum.d == 3);
    auto wit = horosphere_witness(datum);
    CHECK(wit.extension_case);
    CHECK(wit.check.verdict == Membership::Verdict::Out);
  }
  SUBCASE("mixed finite and indefinite blocks") {
    auto datum = make_kac_datum(validate_gcm({{2, 0, 0}, {0, 2, -3}, {0, -3, 2}}));
    REQUIRE(datum.d == 3);
    auto wit = horosphere_witness(datum);
    CHECK(wit.check.verdict == Membership::Verdict::Out);
    CHECK(is_regular_dominant(datum, wit.h));
  }
  SUBCASE("finite type with minimal Cartan is not applicable") {
    auto datum = make_kac_datum(validate_gcm({{2, -1}, {-1, 2}}));
    REQUIRE(datum.d == 2);
    CHECK_THROWS_AS(horosphere_witness(datum), NotApplicable);
  }
}
