#include "sim/Oracle.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

using sim::ModelFamily;
using sim::ModelSpec;
using namespace sim::oracle;

namespace {
constexpr double InvSqrt2 = 0.70710678118654752440;
using Cplx = std::complex<double>;
} // namespace

TEST_CASE("two-site bare ising chain has the expected spectrum") {
  ModelSpec model;
  model.family = ModelFamily::IsingChain;
  model.sites = 2;
  model.coupling = 1.0;
  model.field = 0.0;
  const DenseOperator h = hamiltonian(model);
  Eigen::SelfAdjointEigenSolver<DenseOperator> solver(h);
  const auto& evals = solver.eigenvalues();
  CHECK(evals(0) == Catch::Approx(-1.0).margin(1e-12));
  CHECK(evals(1) == Catch::Approx(-1.0).margin(1e-12));
  CHECK(evals(2) == Catch::Approx(1.0).margin(1e-12));
  CHECK(evals(3) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("hamiltonians are hermitian by construction") {
  for (const auto family : {ModelFamily::IsingChain, ModelFamily::HeisenbergXXX,
                            ModelFamily::SpinGlassChain}) {
    ModelSpec model;
    model.family = family;
    model.sites = 5;
    model.coupling = 0.8;
    model.field = family == ModelFamily::SpinGlassChain ? 0.0 : 0.4;
    model.seed = 99;
    const DenseOperator h = hamiltonian(model);
    CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("spin glass bond terms commute pairwise") {
  ModelSpec model;
  model.family = ModelFamily::SpinGlassChain;
  model.sites = 5;
  model.seed = 7;
  model.finalize();
  std::vector<DenseOperator> terms;
  dd::Matrix4 xx{};
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      xx[r * 4 + c] = dd::pauli::X[(r >> 1U) * 2 + (c >> 1U)] *
                      dd::pauli::X[(r & 1U) * 2 + (c & 1U)];
    }
  }
  for (std::uint32_t l = 0; l + 1 < model.sites; ++l) {
    terms.push_back(model.bonds[l] * embedPair(xx, l, l + 1, model.sites));
  }
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      const DenseOperator comm = terms[i] * terms[j] - terms[j] * terms[i];
      CHECK(comm.cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("dense circuit application basics") {
  SECTION("identity circuit leaves the state unchanged") {
    const DenseState psi = basisState(3);
    sim::TrotterCircuit empty;
    const DenseState out = applyCircuit(psi, empty, 3);
    CHECK((out - psi).cwiseAbs().maxCoeff() == 0.0);
  }

  SECTION("x gate flips |0> to |1>") {
    DenseState psi = basisState(1);
    applyGate(psi, sim::GateSpec::x(0), 1);
    CHECK(std::abs(psi(0)) < 1e-15);
    CHECK(std::abs(psi(1) - Cplx{1, 0}) < 1e-15);
  }

  SECTION("norm is preserved by random circuits") {
    std::mt19937_64 rng(5);
    DenseState psi = basisState(5);
    for (int g = 0; g < 30; ++g) {
      const double theta =
          (static_cast<double>(rng() >> 11U) * 0x1p-53) * 6.28 - 3.14;
      const auto a = static_cast<std::uint32_t>(rng() % 5);
      auto b = static_cast<std::uint32_t>(rng() % 5);
      while (b == a) {
        b = static_cast<std::uint32_t>(rng() % 5);
      }
      switch (rng() % 3) {
      case 0:
        applyGate(psi, sim::GateSpec::rxx(theta, a, b), 5);
        break;
      case 1:
        applyGate(psi, sim::GateSpec::rzz(theta, a, b), 5);
        break;
      default:
        applyGate(psi, sim::GateSpec::rz(theta, a), 5);
        break;
      }
    }
    CHECK(psi.norm() == Catch::Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("gate kernels match their embedded matrices") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const double theta =
        (static_cast<double>(rng() >> 11U) * 0x1p-53) * 6.28 - 3.14;
    const std::uint32_t sites = 4;
    std::vector<sim::GateSpec> gates{
        sim::GateSpec::rxx(theta, 0, 3), sim::GateSpec::ryy(theta, 1, 2),
        sim::GateSpec::rzz(theta, 2, 0), sim::GateSpec::rz(theta, 3)};
    for (const auto& gate : gates) {
      DenseState psi = DenseState::Random(1 << sites);
      psi.normalize();
      DenseState viaKernel = psi;
      applyGate(viaKernel, gate, sites);
      const DenseState viaMatrix = gateMatrix(gate, sites) * psi;
      CHECK((viaKernel - viaMatrix).cwiseAbs().maxCoeff() < 1e-13);
    }
  }
}

TEST_CASE("exact evolution via eigendecomposition") {
  SECTION("t = 0 is the identity") {
    ModelSpec model;
    model.family = ModelFamily::IsingChain;
    model.sites = 3;
    model.field = 0.7;
    const DenseOperator h = hamiltonian(model);
    const DenseState psi = basisState(3);
    const DenseState out = exactEvolve(h, 0.0, psi);
    CHECK((out - psi).cwiseAbs().maxCoeff() < 1e-12);
  }

  SECTION("z rotation of |+> lands on |-> up to global phase") {
    DenseOperator h(2, 2);
    h << 1.0, 0.0, 0.0, -1.0; // sigma_z
    DenseState plus(2);
    plus << InvSqrt2, InvSqrt2;
    const DenseState out = exactEvolve(h, 3.14159265358979323846 / 2, plus);
    // e^{-i pi/2 sz}|+> = -i |->  (phases e^{-i pi/2} and e^{+i pi/2})
    const Cplx ratio0 = out(0) / InvSqrt2;
    const Cplx ratio1 = out(1) / InvSqrt2;
    CHECK(std::abs(ratio0 + ratio1) < 1e-12); // opposite signs
    CHECK(std::abs(std::abs(ratio0) - 1.0) < 1e-12);
  }

  SECTION("unitarity of the evolved state") {
    ModelSpec model;
    model.family = ModelFamily::HeisenbergXXX;
    model.sites = 4;
    model.field = 1.0;
    const DenseOperator h = hamiltonian(model);
    DenseState psi = DenseState::Random(16);
    psi.normalize();
    for (const double t : {0.3, 1.7, 9.2}) {
      CHECK(exactEvolve(h, t, psi).norm() ==
            Catch::Approx(1.0).margin(1e-10));
    }
  }

  SECTION("non-hermitian input is rejected") {
    DenseOperator h(2, 2);
    h << 0.0, 1.0, 0.0, 0.0;
    CHECK_THROWS_AS(exactEvolve(h, 1.0, basisState(1)),
                    std::invalid_argument);
  }
}

TEST_CASE("single glass step equals exact evolution for commuting terms") {
  for (std::uint32_t sites = 2; sites <= 8; ++sites) {
    ModelSpec model;
    model.family = ModelFamily::SpinGlassChain;
    model.sites = sites;
    model.seed = 1234;
    model.finalize();
    const DenseOperator h = hamiltonian(model);
    const DenseState psi0 = basisState(sites);
    for (const double t : {0.1, 1.0, 4.3}) {
      const auto circuit = sim::trotterStepCircuit(model, t);
      const DenseState stepped = applyCircuit(psi0, circuit, sites);
      const DenseState exact = exactEvolve(h, t, psi0);
      CHECK((stepped - exact).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("dense expectation values") {
  SECTION("<0|sz|0> = 1") {
    CHECK(expectation(basisState(1), embedSingle(dd::pauli::Z, 0, 1)) ==
          Catch::Approx(1.0).margin(1e-14));
  }
  SECTION("<+|sx|+> = 1") {
    DenseState plus(2);
    plus << InvSqrt2, InvSqrt2;
    CHECK(expectation(plus, embedSingle(dd::pauli::X, 0, 1)) ==
          Catch::Approx(1.0).margin(1e-12));
  }
  SECTION("dimension mismatch is rejected") {
    CHECK_THROWS_AS(expectation(basisState(2), embedSingle(dd::pauli::Z, 0, 1)),
                    std::invalid_argument);
  }
}

TEST_CASE("trotterized evolution converges to the exact result") {
  ModelSpec model;
  model.family = ModelFamily::IsingChain;
  model.sites = 4;
  model.coupling = 1.0;
  model.field = 1.0;
  const DenseOperator h = hamiltonian(model);
  const DenseState psi0 = basisState(4);
  const double t = 1.0;
  const DenseState exact = exactEvolve(h, t, psi0);
  double previous = 1e9;
  for (const int n : {1, 2, 4, 8, 16}) {
    const auto circuit = sim::trotterStepCircuit(model, t / n);
    DenseState psi = psi0;
    for (int k = 0; k < n; ++k) {
      psi = applyCircuit(std::move(psi), circuit, 4);
    }
    const double err = (psi - exact).cwiseAbs().maxCoeff();
    CHECK(err < previous);
    previous = err;
  }
  CHECK(previous < 0.05);
}

TEST_CASE("the site cap guards dense allocations") {
  ModelSpec model;
  model.family = ModelFamily::IsingChain;
  model.sites = 20;
  CHECK_THROWS_AS(hamiltonian(model), std::invalid_argument);
  CHECK_THROWS_AS(requireWithinCap(13), std::invalid_argument);
}
