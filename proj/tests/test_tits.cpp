#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "weylhull/linalg.hpp"
#include "weylhull/tits.hpp"

#include <random>

using namespace weylhull;

namespace {

const IMat kA2 = {{2, -1}, {-1, 2}};
const IMat kAffine = {{2, -2}, {-2, 2}};
const IMat kIndef = {{2, -3}, {-3, 2}};

WeylGroup group_of(const IMat& a) { return WeylGroup(make_kac_datum(validate_gcm(a))); }

// Regular dominant point with <alpha_i, .> = targets_i.
QVec dominant_point(const RootDatum& rd, const QVec& targets) {
  auto h = linalg::solve(rd.alpha_on_basis, targets);
  REQUIRE(h);
  return *h;
}

}  // namespace

TEST_CASE("dominant points reduce trivially") {
  auto wg = group_of(kA2);
  QVec h = {1, 1};
  auto red = reduce_to_chamber(wg, h);
  REQUIRE(red.in_cone);
  CHECK(wg.is_identity(red.w));
  CHECK(red.dominant == h);
  CHECK(red.cell.empty());
  CHECK(red.steps == 0);
}

TEST_CASE("rank-one flip") {
  auto wg = group_of(IMat{{2}});
  auto red = reduce_to_chamber(wg, {-1});
  REQUIRE(red.in_cone);
  CHECK(red.w.word == std::vector<std::size_t>{0});
  CHECK(red.dominant == QVec{1});
}

TEST_CASE("round trip through the reducing element") {
  for (const auto& a : {kA2, kAffine, kIndef}) {
    auto wg = group_of(a);
    QVec h = dominant_point(wg.datum(), QVec(wg.n(), 1));
    for (const auto& w : wg.enumerate_by_length(6)) {
      QVec x = wg.act(w, h);
      auto red = reduce_to_chamber(wg, x);
      REQUIRE(red.in_cone);
      CHECK(red.dominant == h);           // uniqueness of the dominant representative
      CHECK(wg.act(red.w, red.dominant) == x);  // exact round trip
      CHECK(wg.equal(red.w, w));          // regular orbit: stabilizer trivial
    }
  }
}

TEST_CASE("negative level in affine type is inconclusive at any budget") {
  auto wg = group_of(kAffine);
  const auto& rd = wg.datum();
  auto db = dual_basis(rd);
  // Point with phi-level -1: the level is W-invariant and nonnegative on the cone.
  QVec x = {Rat(1, 3), Rat(-2, 7), 0};
  x[2] = -1;  // basis is the standard one here, third coordinate is the level
  CHECK(dot(db.phi[0], from_b_coords(rd, x)) < 0);
  for (std::size_t budget : {10u, 100u, 1000u}) {
    auto red = reduce_to_chamber(wg, x, budget);
    CHECK(!red.in_cone);
    CHECK(red.steps == budget);
    // The invariant level is unchanged on the last point reached.
    CHECK(dot(db.phi[0], from_b_coords(rd, red.last)) == dot(db.phi[0], from_b_coords(rd, x)));
  }
}

TEST_CASE("cell type lists the tight walls") {
  auto wg = group_of(kA2);
  CHECK(cell_type(wg.datum(), {1, 1}).empty());
  CHECK(cell_type(wg.datum(), {0, 0}) == std::vector<std::size_t>{0, 1});
  // <alpha_1,.> = 0, <alpha_2,.> = 1 at the solve point.
  QVec x = dominant_point(wg.datum(), {0, 1});
  CHECK(cell_type(wg.datum(), x) == std::vector<std::size_t>{0});
  CHECK_THROWS_AS(cell_type(wg.datum(), {-1, 0}), NotDominant);
}

TEST_CASE("weyl difference coefficients") {
  auto wg = group_of(kA2);
  QVec h = {1, 1};  // <alpha_1,h> = <alpha_2,h> = 1
  CHECK(weyl_difference(wg, h, wg.identity()) == QVec{0, 0});
  CHECK(weyl_difference(wg, h, wg.generator(0)) == QVec{1, 0});
  auto s1s2 = wg.mul(wg.generator(0), wg.generator(1));
  CHECK(weyl_difference(wg, h, s1s2) == QVec{2, 1});
  CHECK_THROWS_AS(weyl_difference(wg, QVec{0, 1}, s1s2), NotRegularDominant);
}

TEST_CASE("chamber characterization: orbit differences have nonnegative coefficients") {
  std::mt19937_64 rng(20260823);
  std::uniform_int_distribution<int> num(1, 9), den(1, 5);
  for (const auto& a : {kA2, kAffine, kIndef}) {
    auto wg = group_of(a);
    auto els = wg.enumerate_by_length(6);
    for (int trial = 0; trial < 200; ++trial) {
      QVec targets(wg.n());
      for (auto& t : targets) t = make_rat(num(rng), den(rng));
      QVec h = dominant_point(wg.datum(), targets);
      for (const auto& w : els) {
        QVec c = weyl_difference(wg, h, w);
        for (const auto& ci : c) CHECK(ci >= 0);
      }
    }
  }
}

TEST_CASE("support positivity up to length eight") {
  for (const auto& a : {kA2, kAffine, kIndef}) {
    auto wg = group_of(a);
    QVec h = dominant_point(wg.datum(), QVec(wg.n(), 1));
    for (const auto& w : wg.enumerate_by_length(8)) {
      QVec c = weyl_difference(wg, h, w);  // throws if the support law fails
      auto supp = wg.support(w);
      std::size_t positive = 0;
      for (const auto& ci : c) positive += ci > 0;
      CHECK(positive == supp.size());
    }
  }
}
