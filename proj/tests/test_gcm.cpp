#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "weylhull/fourier_motzkin.hpp"
#include "weylhull/gcm.hpp"
#include "weylhull/linalg.hpp"

using namespace weylhull;

namespace {

QVec apply(const IMat& a, const QVec& x) {
  QMat m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i].assign(a[i].begin(), a[i].end());
  return linalg::mul(m, x);
}

bool all_pos(const QVec& v) {
  for (const auto& q : v)
    if (q <= 0) return false;
  return true;
}
bool all_neg(const QVec& v) {
  for (const auto& q : v)
    if (q >= 0) return false;
  return true;
}
bool all_zero(const QVec& v) {
  for (const auto& q : v)
    if (q != 0) return false;
  return true;
}

// Independent trichotomy oracle: decide each class by exact linear feasibility.
GcmTag feasibility_oracle(const IMat& a) {
  using namespace weylhull::fm;
  const std::size_t m = a.size();
  auto system = [&](int sign) {  // lambda >= 1, sign * (A lambda) >= (sign != 0)
    std::vector<Constraint> cons;
    for (std::size_t i = 0; i < m; ++i) {
      QVec e(m, 0);
      e[i] = 1;
      cons.push_back({e, 1, Rel::Ge});
      QVec row(m);
      for (std::size_t j = 0; j < m; ++j) row[j] = (sign == 0 ? 1 : sign) * Rat(a[i][j]);
      cons.push_back({row, sign == 0 ? Rat(0) : Rat(1), sign == 0 ? Rel::Eq : Rel::Ge});
    }
    return static_cast<bool>(feasible(cons, m));
  };
  if (system(1)) return GcmTag::Finite;
  if (system(0)) return GcmTag::Affine;
  REQUIRE(system(-1));
  return GcmTag::Indefinite;
}

}  // namespace

TEST_CASE("validation accepts GCMs and reports the violated condition") {
  auto g = validate_gcm({{2, -1}, {-1, 2}});
  CHECK(g.components == std::vector<std::vector<std::size_t>>{{0, 1}});

  auto diag = validate_gcm({{2, 0}, {0, 2}});
  CHECK(diag.components == std::vector<std::vector<std::size_t>>{{0}, {1}});

  CHECK_THROWS_AS(validate_gcm({{1}}), GcmValidationError);
  CHECK_THROWS_AS(validate_gcm({{2, 1}, {-1, 2}}), GcmValidationError);
  try {
    validate_gcm({{2, -1}, {0, 2}});
    FAIL("expected AsymmetricZero");
  } catch (const GcmValidationError& e) {
    CHECK(e.kind == GcmValidationError::Kind::AsymmetricZero);
    CHECK(e.i == 2);
    CHECK(e.j == 1);
  }
}

TEST_CASE("component decomposition follows the nonzero pattern") {
  auto g = validate_gcm({{2, 0, 0}, {0, 2, -2}, {0, -2, 2}});
  CHECK(g.components == std::vector<std::vector<std::size_t>>{{0}, {1, 2}});
}

TEST_CASE("classification trichotomy on catalog matrices") {
  auto check_one = [](const IMat& a, GcmTag want) {
    auto g = validate_gcm(a);
    auto types = classify(g);
    REQUIRE(types.size() == 1);
    CHECK(types[0].tag == want);
    const QVec& lam = types[0].witness;
    REQUIRE(lam.size() == a.size());
    CHECK(all_pos(lam));
    for (const auto& q : lam) CHECK(denominator(q) == 1);
    QVec alam = apply(a, lam);
    if (want == GcmTag::Finite) CHECK(all_pos(alam));
    if (want == GcmTag::Affine) CHECK(all_zero(alam));
    if (want == GcmTag::Indefinite) CHECK(all_neg(alam));
  };
  check_one({{2}}, GcmTag::Finite);
  check_one({{2, -1}, {-1, 2}}, GcmTag::Finite);
  check_one({{2, -1}, {-2, 2}}, GcmTag::Finite);
  check_one({{2, -2}, {-2, 2}}, GcmTag::Affine);
  check_one({{2, -1}, {-4, 2}}, GcmTag::Affine);
  check_one({{2, -3}, {-3, 2}}, GcmTag::Indefinite);
  check_one({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}, GcmTag::Finite);
}

TEST_CASE("classification handles multiple components independently") {
  auto g = validate_gcm({{2, 0, 0}, {0, 2, -2}, {0, -2, 2}});
  auto types = classify(g);
  REQUIRE(types.size() == 2);
  CHECK(types[0].tag == GcmTag::Finite);
  CHECK(types[1].tag == GcmTag::Affine);
  CHECK(types[1].witness == QVec{1, 1});
}

TEST_CASE("classification matches the exact feasibility oracle for n <= 3") {
  // All valid indecomposable patterns with entries in [-3, 0].
  std::vector<IMat> cases;
  for (int a12 = -3; a12 <= -1; ++a12)
    for (int a21 = -3; a21 <= -1; ++a21) cases.push_back({{2, a12}, {a21, 2}});
  for (int a12 = -3; a12 <= -1; ++a12)
    for (int a21 = -3; a21 <= -1; ++a21)
      for (int a23 = -3; a23 <= -1; ++a23)
        for (int a32 = -3; a32 <= -1; ++a32)
          cases.push_back({{2, a12, 0}, {a21, 2, a23}, {0, a32, 2}});
  for (const auto& a : cases) {
    auto types = classify(validate_gcm(a));
    REQUIRE(types.size() == 1);
    CHECK(types[0].tag == feasibility_oracle(a));
  }
}

TEST_CASE("symmetrizer produces the smallest positive integer diagonal") {
  auto g = validate_gcm({{2, -1}, {-2, 2}});
  auto s = symmetrizer(g);
  CHECK(s.d == QVec{1, 2});
  CHECK(s.b == QMat{{2, -1}, {-1, 1}});
  CHECK(linalg::transpose(s.b) == s.b);

  auto sym = symmetrizer(validate_gcm({{2, -1}, {-1, 2}}));
  CHECK(sym.d == QVec{1, 1});
}

TEST_CASE("symmetrizer reports a violating cycle when none exists") {
  // Directed triangle with mismatched products around the cycle.
  IMat bad = {{2, -1, -2}, {-2, 2, -1}, {-1, -2, 2}};
  CHECK(validate_gcm(bad).components.size() == 1);
  try {
    symmetrizer(validate_gcm(bad));
    FAIL("expected NotSymmetrizable");
  } catch (const NotSymmetrizable& e) {
    REQUIRE(e.cycle.size() >= 3);
    // The products of entries around the reported cycle must disagree.
    Int fwd = 1, bwd = 1;
    for (std::size_t k = 0; k < e.cycle.size(); ++k) {
      std::size_t i = e.cycle[k], j = e.cycle[(k + 1) % e.cycle.size()];
      fwd *= bad[i][j];
      bwd *= bad[j][i];
    }
    CHECK(fwd != bwd);
  }
}

TEST_CASE("symmetrizer reconstructs the input exactly") {
  for (const IMat& a : {IMat{{2, -1}, {-3, 2}}, IMat{{2, -2, 0}, {-1, 2, -1}, {0, -2, 2}}}) {
    auto g = validate_gcm(a);
    auto s = symmetrizer(g);
    for (std::size_t i = 0; i < g.n; ++i) {
      CHECK(s.d[i] > 0);
      CHECK(denominator(s.d[i]) == 1);
      for (std::size_t j = 0; j < g.n; ++j) {
        CHECK(s.d[i] * s.b[i][j] == a[i][j]);
        CHECK(s.b[i][j] == s.b[j][i]);
      }
    }
  }
}
