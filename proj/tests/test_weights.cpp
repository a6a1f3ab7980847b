#include "dd/Weights.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <random>

using dd::ComplexValue;
using dd::WeightOne;
using dd::WeightRef;
using dd::WeightTable;
using dd::WeightZero;

namespace {
constexpr double InvSqrt2 = 0.70710678118654752440;

double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11U) * 0x1p-53;
  return lo + u * (hi - lo);
}
} // namespace

TEST_CASE("exact constants resolve to the pinned handles") {
  WeightTable table;
  CHECK(table.lookup({1.0, 0.0}) == WeightOne);
  CHECK(table.lookup({0.0, 0.0}) == WeightZero);
  CHECK(table.value(WeightOne) == ComplexValue{1.0, 0.0});
  CHECK(table.value(WeightZero) == ComplexValue{0.0, 0.0});
}

TEST_CASE("values below tolerance collapse to zero exactly") {
  WeightTable table({1e-10});
  CHECK(table.lookup({0.0, 1e-13}) == WeightZero);
  CHECK(table.lookup({-5e-11, 5e-11}) == WeightZero);
  CHECK(table.lookup({1.0 - 1e-12, 0.0}) == WeightOne);
  // Just outside tolerance stays distinct.
  CHECK(table.lookup({2e-10, 0.0}) != WeightZero);
}

TEST_CASE("uniquing is idempotent") {
  WeightTable table;
  const auto a = table.lookup({InvSqrt2, 0.0});
  const auto b = table.lookup({InvSqrt2, 0.0});
  CHECK(a == b);
  // A value within eps of the stored one also unifies.
  const auto c = table.lookup({InvSqrt2 + 4e-11, -4e-11});
  CHECK(c == a);
}

TEST_CASE("non-finite input is rejected") {
  WeightTable table;
  CHECK_THROWS_AS(table.lookup({std::nan(""), 0.0}), std::domain_error);
  CHECK_THROWS_AS(table.lookup({0.0, HUGE_VAL}), std::domain_error);
}

TEST_CASE("uniquing is a congruence within twice the tolerance") {
  WeightTable table({1e-10});
  std::mt19937_64 rng(41);
  for (int i = 0; i < 2000; ++i) {
    const ComplexValue base{uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0)};
    const ComplexValue nudged{base.real() + uniform(rng, -2e-10, 2e-10),
                              base.imag() + uniform(rng, -2e-10, 2e-10)};
    const auto ra = table.lookup(base);
    const auto rb = table.lookup(nudged);
    if (ra == rb) {
      CHECK(std::abs(base.real() - nudged.real()) <= 2e-10);
      CHECK(std::abs(base.imag() - nudged.imag()) <= 2e-10);
    }
  }
}

TEST_CASE("arithmetic identities on canonical handles") {
  WeightTable table;
  std::mt19937_64 rng(17);
  for (int i = 0; i < 500; ++i) {
    const ComplexValue v{uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
    const auto w = table.lookup(v);
    CHECK(table.mul(WeightZero, w) == WeightZero); // zero annihilates
    CHECK(table.mul(WeightOne, w) == w);           // one is neutral
    CHECK(table.conj(table.conj(w)) == w);         // conj is an involution
    CHECK(table.add(WeightZero, w) == w);
  }
}

TEST_CASE("conjugation and squared magnitude") {
  WeightTable table;
  const auto w = table.lookup({0.0, 1.0});
  const auto c = table.conj(w);
  CHECK(table.value(c) == ComplexValue{0.0, -1.0});
  const auto h = table.lookup({InvSqrt2, 0.0});
  CHECK(table.normSquared(h) == Catch::Approx(0.5).margin(1e-15));
}

TEST_CASE("negation stores a distinct canonical value") {
  WeightTable table;
  const auto w = table.lookup({0.25, -0.5});
  const auto n = table.neg(w);
  CHECK(n != w);
  CHECK(table.value(n) == ComplexValue{-0.25, 0.5});
  CHECK(table.neg(WeightZero) == WeightZero);
}
