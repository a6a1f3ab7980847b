#include "dd/Algebra.hpp"
#include "dd/Context.hpp"
#include "sim/Models.hpp"
#include "sim/Oracle.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <memory>
#include <random>
#include <vector>

using dd::ComplexValue;
using dd::Context;
using dd::OperatorDD;
using dd::StateDD;

namespace {

constexpr double Pi = 3.14159265358979323846;
constexpr double InvSqrt2 = 0.70710678118654752440;

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (static_cast<double>(rng() >> 11U) * 0x1p-53) * (hi - lo);
}

std::vector<ComplexValue> randomAmplitudes(std::mt19937_64& rng,
                                           std::size_t n) {
  std::vector<ComplexValue> amps(n);
  double norm2 = 0.0;
  for (auto& a : amps) {
    a = {uniform(rng, -0.5, 0.5), uniform(rng, -0.5, 0.5)};
    norm2 += std::norm(a);
  }
  for (auto& a : amps) {
    a /= std::sqrt(norm2);
  }
  return amps;
}

sim::GateSpec randomGate(std::mt19937_64& rng, std::uint32_t sites) {
  const double theta = uniform(rng, -Pi, Pi);
  const auto a = static_cast<std::uint32_t>(rng() % sites);
  auto b = static_cast<std::uint32_t>(rng() % sites);
  while (b == a) {
    b = static_cast<std::uint32_t>(rng() % sites);
  }
  switch (rng() % 5) {
  case 0:
    return sim::GateSpec::rxx(theta, a, b);
  case 1:
    return sim::GateSpec::ryy(theta, a, b);
  case 2:
    return sim::GateSpec::rzz(theta, a, b);
  case 3:
    return sim::GateSpec::rz(theta, a);
  default:
    return sim::GateSpec::x(a);
  }
}

} // namespace

TEST_CASE("kron of basis states concatenates the bit strings") {
  Context ctx;
  const StateDD zero = dd::basisState(ctx, 1, {0});
  const StateDD one = dd::basisState(ctx, 1, {1});
  const StateDD combined = dd::kron(zero, one);
  const StateDD expected = dd::basisState(ctx, 2, {0, 1});
  CHECK(combined.sites() == 2);
  CHECK(combined.root().target == expected.root().target);
  CHECK(combined.root().weight == expected.root().weight);
}

TEST_CASE("chained kron of single-site states stays one node per site") {
  Context ctx;
  std::mt19937_64 rng(3);
  StateDD psi = dd::stateFromAmplitudes(ctx, randomAmplitudes(rng, 2));
  for (int s = 1; s < 8; ++s) {
    psi = dd::kron(psi, dd::stateFromAmplitudes(ctx, randomAmplitudes(rng, 2)));
  }
  CHECK(psi.sites() == 8);
  CHECK(psi.nodeCount() == 8);
}

TEST_CASE("kron matches the dense kronecker product") {
  Context ctx;
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = randomAmplitudes(rng, 4);
    const auto b = randomAmplitudes(rng, 4);
    const StateDD psi =
        dd::kron(dd::stateFromAmplitudes(ctx, a), dd::stateFromAmplitudes(ctx, b));
    const auto got = psi.amplitudes();
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        CHECK(std::abs(got[i * 4 + j] - a[i] * b[j]) < 1e-12);
      }
    }
  }
}

TEST_CASE("adding the zero edge is the identity") {
  Context ctx;
  std::mt19937_64 rng(7);
  const StateDD psi = dd::stateFromAmplitudes(ctx, randomAmplitudes(rng, 16));
  const StateDD zero(ctx, dd::VectorEdge::zero(), 4);
  const StateDD sum = dd::add(psi, zero);
  CHECK(sum.root().target == psi.root().target);
  CHECK(sum.root().weight == psi.root().weight);
}

TEST_CASE("sum of the all-zero and all-one kets renormalizes to ghz") {
  Context ctx;
  const StateDD a = dd::basisState(ctx, 5, {0, 0, 0, 0, 0});
  const StateDD b = dd::basisState(ctx, 5, {1, 1, 1, 1, 1});
  const StateDD sum = dd::add(a, b);
  const StateDD normalized = dd::scaled(sum, {1.0 / sum.norm(), 0.0});
  const StateDD ghz = dd::ghzState(ctx, 5);
  CHECK(normalized.root().target == ghz.root().target);
  CHECK(normalized.root().weight == ghz.root().weight);
}

TEST_CASE("addition matches dense sums on random vectors") {
  Context ctx;
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = randomAmplitudes(rng, 64);
    const auto b = randomAmplitudes(rng, 64);
    const StateDD sum = dd::add(dd::stateFromAmplitudes(ctx, a),
                                dd::stateFromAmplitudes(ctx, b));
    const auto got = sum.amplitudes();
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(std::abs(got[i] - (a[i] + b[i])) < 1e-11);
    }
  }
}

TEST_CASE("applying the identity returns the identical root") {
  Context ctx;
  std::mt19937_64 rng(13);
  const StateDD psi = dd::stateFromAmplitudes(ctx, randomAmplitudes(rng, 32));
  const OperatorDD id = dd::identityOperator(ctx, 5);
  const StateDD out = dd::applyOperator(id, psi);
  CHECK(out.root().target == psi.root().target);
  CHECK(out.root().weight == psi.root().weight);
}

TEST_CASE("pauli x flips a basis state") {
  Context ctx;
  const StateDD zero = dd::basisState(ctx, 1, {0});
  const OperatorDD x = dd::singleSiteOperator(ctx, dd::pauli::X, 0, 1);
  const StateDD flipped = dd::applyOperator(x, zero);
  CHECK(std::abs(flipped.amplitude(1) - ComplexValue{1, 0}) < 1e-12);
  CHECK(std::abs(flipped.amplitude(0)) < 1e-15);
}

TEST_CASE("xx rotation entangles the all-zero state") {
  Context ctx;
  const OperatorDD rxx =
      dd::twoSiteRotation(ctx, dd::RotationAxes::XX, Pi / 2, 0, 1, 2);
  const StateDD zero = dd::basisState(ctx, 2, {0, 0});
  const StateDD out = dd::applyOperator(rxx, zero);
  CHECK(std::abs(out.amplitude(0) - ComplexValue{InvSqrt2, 0.0}) < 1e-12);
  CHECK(std::abs(out.amplitude(3) - ComplexValue{0.0, -InvSqrt2}) < 1e-12);
  CHECK(std::abs(out.amplitude(1)) < 1e-15);
  CHECK(std::abs(out.amplitude(2)) < 1e-15);
}

TEST_CASE("matrix products compose correctly") {
  Context ctx;

  SECTION("identity is neutral") {
    const OperatorDD rxx =
        dd::twoSiteRotation(ctx, dd::RotationAxes::XX, 0.83, 0, 2, 3);
    const OperatorDD id = dd::identityOperator(ctx, 3);
    const OperatorDD prod = dd::compose(id, rxx);
    CHECK(prod.root().target == rxx.root().target);
    CHECK(prod.root().weight == rxx.root().weight);
  }

  SECTION("x squared is the identity") {
    const OperatorDD x = dd::singleSiteOperator(ctx, dd::pauli::X, 1, 3);
    const OperatorDD id = dd::identityOperator(ctx, 3);
    const OperatorDD prod = dd::compose(x, x);
    CHECK(prod.root().target == id.root().target);
    CHECK(prod.root().weight == id.root().weight);
  }

  SECTION("z rotations add their angles up to global phase") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 6; ++trial) {
      const double a = uniform(rng, -Pi, Pi);
      const double b = uniform(rng, -Pi, Pi);
      const OperatorDD prod =
          dd::compose(dd::singleSiteOperator(ctx, dd::rotationZ(a), 0, 2),
                      dd::singleSiteOperator(ctx, dd::rotationZ(b), 0, 2));
      const OperatorDD direct =
          dd::singleSiteOperator(ctx, dd::rotationZ(a + b), 0, 2);
      const auto dp = prod.toDense();
      const auto dq = direct.toDense();
      // Same up to a global phase: compare ratios on the diagonal.
      const ComplexValue phase = dp[0] / dq[0];
      CHECK(std::abs(std::abs(phase) - 1.0) < 1e-11);
      for (std::size_t i = 0; i < dp.size(); ++i) {
        CHECK(std::abs(dp[i] - phase * dq[i]) < 1e-11);
      }
    }
  }
}

TEST_CASE("inner products of basis states are orthonormal") {
  Context ctx;
  const StateDD a = dd::basisState(ctx, 4, {0, 0, 0, 0});
  const StateDD b = dd::basisState(ctx, 4, {1, 1, 1, 1});
  CHECK(std::abs(dd::innerProduct(a, a) - ComplexValue{1, 0}) < 1e-12);
  CHECK(std::abs(dd::innerProduct(a, b)) < 1e-15);
}

TEST_CASE("inner product conjugates the left operand") {
  Context ctx;
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = randomAmplitudes(rng, 64);
    const auto b = randomAmplitudes(rng, 64);
    ComplexValue expected{};
    for (std::size_t i = 0; i < a.size(); ++i) {
      expected += std::conj(a[i]) * b[i];
    }
    const auto got = dd::innerProduct(dd::stateFromAmplitudes(ctx, a),
                                      dd::stateFromAmplitudes(ctx, b));
    CHECK(std::abs(got - expected) < 1e-11);
  }
}

TEST_CASE("inner product is linear in the right operand") {
  Context ctx;
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 8; ++trial) {
    const StateDD a = dd::stateFromAmplitudes(ctx, randomAmplitudes(rng, 256));
    const StateDD b = dd::stateFromAmplitudes(ctx, randomAmplitudes(rng, 256));
    const StateDD c = dd::stateFromAmplitudes(ctx, randomAmplitudes(rng, 256));
    const auto lhs = dd::innerProduct(a, dd::add(b, c));
    const auto rhs = dd::innerProduct(a, b) + dd::innerProduct(a, c);
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("gate application preserves the norm") {
  Context ctx;
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 8; ++trial) {
    StateDD psi = dd::stateFromAmplitudes(ctx, randomAmplitudes(rng, 64));
    for (int g = 0; g < 6; ++g) {
      const auto gate = randomGate(rng, 6);
      psi = dd::applyOperator(sim::buildGate(ctx, gate, 6), psi);
    }
    CHECK(psi.norm() == Catch::Approx(1.0).margin(1e-9));
  }
}

TEST_CASE("expectation values of pauli observables") {
  Context ctx;

  SECTION("<0|sz|0> = 1") {
    const StateDD zero = dd::basisState(ctx, 1, {0});
    const OperatorDD sz = dd::singleSiteOperator(ctx, dd::pauli::Z, 0, 1);
    CHECK(dd::expectation(zero, sz) == Catch::Approx(1.0).margin(1e-12));
  }

  SECTION("ghz correlation equals the dense 4x4 evaluation") {
    const StateDD ghz = dd::ghzState(ctx, 2);
    const auto obs = sim::ObservableSpec::sxsx(0, 1);
    const OperatorDD xx = sim::buildObservable(ctx, obs, 2);
    const double got = dd::expectation(ghz, xx);
    // Dense oracle on the same state.
    sim::oracle::DenseState dense(4);
    const auto amps = ghz.amplitudes();
    for (std::size_t i = 0; i < 4; ++i) {
      dense(static_cast<std::int64_t>(i)) = amps[i];
    }
    const double expected =
        sim::oracle::expectation(dense, sim::oracle::observableMatrix(obs, 2));
    CHECK(got == Catch::Approx(expected).margin(1e-12));
    CHECK(got == Catch::Approx(1.0).margin(1e-12));
  }

  SECTION("one-step expectation-value protocol matches the dense oracle") {
    // Three-site chain, J = g = 1, a single step of size t = 1, <sz(1)>.
    sim::ModelSpec model;
    model.family = sim::ModelFamily::IsingChain;
    model.sites = 3;
    model.coupling = 1.0;
    model.field = 1.0;
    const auto circuit = sim::trotterStepCircuit(model, 1.0);
    const StateDD psi0 = dd::basisState(ctx, 3, {0, 0, 0});
    const StateDD evolved = sim::applyCircuit(psi0, circuit);
    const OperatorDD sz = dd::singleSiteOperator(ctx, dd::pauli::Z, 1, 3);
    const double got = dd::expectation(evolved, sz);

    auto dense = sim::oracle::basisState(3);
    dense = sim::oracle::applyCircuit(std::move(dense), circuit, 3);
    const double expected = sim::oracle::expectation(
        dense, sim::oracle::embedSingle(dd::pauli::Z, 1, 3));
    CHECK(got == Catch::Approx(expected).margin(1e-10));
  }

  SECTION("non-hermitian operands are rejected") {
    const StateDD plus = dd::stateFromAmplitudes(
        ctx, std::vector<ComplexValue>{{InvSqrt2, 0}, {InvSqrt2, 0}});
    // A z rotation is unitary but not Hermitian; its sandwich has a complex
    // value with a large imaginary part.
    const OperatorDD rz =
        dd::singleSiteOperator(ctx, dd::rotationZ(Pi / 2), 0, 1);
    CHECK_THROWS_AS(dd::expectation(plus, rz), dd::ContractViolation);
  }
}

TEST_CASE("site-count mismatches are rejected") {
  Context ctx;
  const StateDD psi = dd::basisState(ctx, 3, {0, 0, 0});
  const OperatorDD op = dd::identityOperator(ctx, 4);
  CHECK_THROWS_AS(dd::applyOperator(op, psi), std::invalid_argument);
  const StateDD other = dd::basisState(ctx, 4, {0, 0, 0, 0});
  CHECK_THROWS_AS(dd::innerProduct(psi, other), std::invalid_argument);
}

TEST_CASE("random circuits agree with the dense oracle") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const auto sites = static_cast<std::uint32_t>(2 + rng() % 5);
    Context ctx;
    StateDD psi = dd::basisState(
        ctx, sites, std::vector<std::uint8_t>(sites, 0));
    auto dense = sim::oracle::basisState(sites);
    const int depth = 1 + static_cast<int>(rng() % 12);
    for (int g = 0; g < depth; ++g) {
      const auto gate = randomGate(rng, sites);
      psi = dd::applyOperator(sim::buildGate(ctx, gate, sites), psi);
      sim::oracle::applyGate(dense, gate, sites);
    }
    const auto amps = psi.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
      CHECK(std::abs(amps[i] - dense(static_cast<std::int64_t>(i))) < 1e-9);
    }
    const auto obs = sim::ObservableSpec::sz((sites - 1) / 2);
    const double got =
        dd::expectation(psi, sim::buildObservable(ctx, obs, sites));
    const double expected = sim::oracle::expectation(
        dense, sim::oracle::observableMatrix(obs, sites));
    CHECK(got == Catch::Approx(expected).margin(1e-9));
  }
}

TEST_CASE("results are identical with caching disabled") {
  std::mt19937_64 rng(37);
  const auto amps = randomAmplitudes(rng, 32);
  std::vector<sim::GateSpec> gates;
  for (int g = 0; g < 8; ++g) {
    gates.push_back(randomGate(rng, 5));
  }

  auto run = [&](bool cachingEnabled) {
    dd::ContextOptions opts;
    opts.cachingEnabled = cachingEnabled;
    auto ctx = std::make_unique<Context>(opts);
    StateDD psi = dd::stateFromAmplitudes(*ctx, amps);
    for (const auto& gate : gates) {
      psi = dd::applyOperator(sim::buildGate(*ctx, gate, 5), psi);
    }
    std::vector<ComplexValue> weights;
    // Bit-level comparison at the canonical-weight level: resolve every
    // amplitude through the weight table.
    for (const auto& a : psi.amplitudes()) {
      weights.push_back(a);
    }
    return weights;
  };

  const auto cached = run(true);
  const auto uncached = run(false);
  REQUIRE(cached.size() == uncached.size());
  for (std::size_t i = 0; i < cached.size(); ++i) {
    CHECK(cached[i].real() == uncached[i].real());
    CHECK(cached[i].imag() == uncached[i].imag());
  }
}
