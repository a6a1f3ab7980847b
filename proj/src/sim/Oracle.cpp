#include "sim/Oracle.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <cstdio>
#include <stdexcept>

namespace sim::oracle {

namespace {

using Cplx = std::complex<double>;

Eigen::Matrix2cd toEigen(const dd::Matrix2& u) {
  Eigen::Matrix2cd m;
  m << u[0], u[1], u[2], u[3];
  return m;
}

} // namespace

void requireWithinCap(std::uint32_t sites) {
  if (sites > DenseSiteCap) {
    char buf[80];
    std::snprintf(buf, sizeof buf,
                  "dense oracle: %u sites exceeds the cap of %u", sites,
                  DenseSiteCap);
    throw std::invalid_argument(buf);
  }
}

DenseState basisState(std::uint32_t sites,
                      const std::vector<std::uint8_t>& bits) {
  requireWithinCap(sites);
  std::uint64_t index = 0;
  if (!bits.empty()) {
    if (bits.size() != sites) {
      throw std::invalid_argument("basisState: need one bit per site");
    }
    for (const auto bit : bits) {
      index = (index << 1U) | bit;
    }
  }
  DenseState psi = DenseState::Zero(std::int64_t{1} << sites);
  psi(static_cast<std::int64_t>(index)) = 1.0;
  return psi;
}

DenseOperator embedSingle(const dd::Matrix2& u, std::uint32_t target,
                          std::uint32_t sites) {
  requireWithinCap(sites);
  // Bottom-up: each new site becomes the leftmost (most significant) factor.
  DenseOperator m = DenseOperator::Identity(1, 1);
  for (std::uint32_t s = 0; s < sites; ++s) {
    const DenseOperator factor =
        s == target ? DenseOperator(toEigen(u))
                    : DenseOperator(DenseOperator::Identity(2, 2));
    DenseOperator next(m.rows() * 2, m.cols() * 2);
    for (std::int64_t r = 0; r < 2; ++r) {
      for (std::int64_t c = 0; c < 2; ++c) {
        next.block(r * m.rows(), c * m.cols(), m.rows(), m.cols()) =
            factor(r, c) * m;
      }
    }
    m = std::move(next);
  }
  return m;
}

DenseOperator embedPair(const dd::Matrix4& u, std::uint32_t siteA,
                        std::uint32_t siteB, std::uint32_t sites) {
  requireWithinCap(sites);
  if (siteA == siteB || siteA >= sites || siteB >= sites) {
    throw std::invalid_argument("embedPair: bad target sites");
  }
  const auto hi = std::max(siteA, siteB);
  const auto lo = std::min(siteA, siteB);
  const std::int64_t dim = std::int64_t{1} << sites;
  DenseOperator m = DenseOperator::Zero(dim, dim);
  const std::uint64_t hiBit = std::uint64_t{1} << hi;
  const std::uint64_t loBit = std::uint64_t{1} << lo;
  for (std::int64_t col = 0; col < dim; ++col) {
    const auto c = static_cast<std::uint64_t>(col);
    const std::size_t colBlock =
        2 * ((c & hiBit) != 0 ? 1 : 0) + ((c & loBit) != 0 ? 1 : 0);
    const std::uint64_t base = c & ~(hiBit | loBit);
    for (std::size_t rowBlock = 0; rowBlock < 4; ++rowBlock) {
      const Cplx v = u[rowBlock * 4 + colBlock];
      if (v == Cplx{}) {
        continue;
      }
      const std::uint64_t row = base | ((rowBlock & 2U) != 0 ? hiBit : 0) |
                                ((rowBlock & 1U) != 0 ? loBit : 0);
      m(static_cast<std::int64_t>(row), col) += v;
    }
  }
  return m;
}

namespace {

dd::Matrix4 rotationPair(dd::RotationAxes axes, double theta) {
  const dd::Matrix2& p = axes == dd::RotationAxes::XX  ? dd::pauli::X
                         : axes == dd::RotationAxes::YY ? dd::pauli::Y
                                                        : dd::pauli::Z;
  const Cplx c{std::cos(theta / 2), 0.0};
  const Cplx ms{0.0, -std::sin(theta / 2)};
  dd::Matrix4 u{};
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t col = 0; col < 4; ++col) {
      Cplx v = ms * p[(r >> 1U) * 2 + (col >> 1U)] *
               p[(r & 1U) * 2 + (col & 1U)];
      if (r == col) {
        v += c;
      }
      u[r * 4 + col] = v;
    }
  }
  return u;
}

dd::Matrix4 pairMatrixOf(const GateSpec& gate) {
  switch (gate.kind) {
  case GateKind::RotXX:
    return rotationPair(dd::RotationAxes::XX, gate.angle);
  case GateKind::RotYY:
    return rotationPair(dd::RotationAxes::YY, gate.angle);
  case GateKind::RotZZ:
    return rotationPair(dd::RotationAxes::ZZ, gate.angle);
  default:
    throw std::invalid_argument("not a two-site gate");
  }
}

dd::Matrix2 singleMatrixOf(const GateSpec& gate) {
  switch (gate.kind) {
  case GateKind::RotZ:
    return dd::rotationZ(gate.angle);
  case GateKind::PauliX:
    return dd::pauli::X;
  case GateKind::PauliY:
    return dd::pauli::Y;
  case GateKind::PauliZ:
    return dd::pauli::Z;
  case GateKind::Custom2x2:
    return gate.matrix;
  default:
    throw std::invalid_argument("not a single-site gate");
  }
}

} // namespace

DenseOperator gateMatrix(const GateSpec& gate, std::uint32_t sites) {
  if (gate.numTargets == 2) {
    return embedPair(pairMatrixOf(gate), gate.targets[0], gate.targets[1],
                     sites);
  }
  return embedSingle(singleMatrixOf(gate), gate.targets[0], sites);
}

DenseOperator hamiltonian(const ModelSpec& model) {
  ModelSpec spec = model;
  spec.finalize();
  requireWithinCap(spec.sites);
  const std::int64_t dim = std::int64_t{1} << spec.sites;
  DenseOperator h = DenseOperator::Zero(dim, dim);

  dd::Matrix4 xx{};
  dd::Matrix4 yy{};
  dd::Matrix4 zz{};
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      xx[r * 4 + c] = dd::pauli::X[(r >> 1U) * 2 + (c >> 1U)] *
                      dd::pauli::X[(r & 1U) * 2 + (c & 1U)];
      yy[r * 4 + c] = dd::pauli::Y[(r >> 1U) * 2 + (c >> 1U)] *
                      dd::pauli::Y[(r & 1U) * 2 + (c & 1U)];
      zz[r * 4 + c] = dd::pauli::Z[(r >> 1U) * 2 + (c >> 1U)] *
                      dd::pauli::Z[(r & 1U) * 2 + (c & 1U)];
    }
  }

  switch (spec.family) {
  case ModelFamily::IsingChain:
    for (std::uint32_t l = 0; l + 1 < spec.sites; ++l) {
      h -= spec.coupling * embedPair(xx, l, l + 1, spec.sites);
    }
    for (std::uint32_t l = 0; l < spec.sites; ++l) {
      h -= spec.field * embedSingle(dd::pauli::Z, l, spec.sites);
    }
    break;
  case ModelFamily::HeisenbergXXX:
    for (std::uint32_t l = 0; l + 1 < spec.sites; ++l) {
      h -= spec.coupling * embedPair(xx, l, l + 1, spec.sites);
      h -= spec.coupling * embedPair(yy, l, l + 1, spec.sites);
      h -= spec.coupling * embedPair(zz, l, l + 1, spec.sites);
    }
    for (std::uint32_t l = 0; l < spec.sites; ++l) {
      h -= spec.field * embedSingle(dd::pauli::Z, l, spec.sites);
    }
    break;
  case ModelFamily::SpinGlassChain:
    for (std::uint32_t l = 0; l + 1 < spec.sites; ++l) {
      h -= spec.bonds[l] * embedPair(xx, l, l + 1, spec.sites);
    }
    break;
  }
  return h;
}

void applyGate(DenseState& psi, const GateSpec& gate, std::uint32_t sites) {
  const std::uint64_t dim = std::uint64_t{1} << sites;
  if (gate.numTargets == 1) {
    const dd::Matrix2 u = singleMatrixOf(gate);
    const std::uint64_t bit = std::uint64_t{1} << gate.targets[0];
    for (std::uint64_t i = 0; i < dim; ++i) {
      if ((i & bit) != 0) {
        continue;
      }
      const auto i0 = static_cast<std::int64_t>(i);
      const auto i1 = static_cast<std::int64_t>(i | bit);
      const Cplx a0 = psi(i0);
      const Cplx a1 = psi(i1);
      psi(i0) = u[0] * a0 + u[1] * a1;
      psi(i1) = u[2] * a0 + u[3] * a1;
    }
    return;
  }
  const dd::Matrix4 u = pairMatrixOf(gate);
  const std::uint64_t hiBit =
      std::uint64_t{1} << std::max(gate.targets[0], gate.targets[1]);
  const std::uint64_t loBit =
      std::uint64_t{1} << std::min(gate.targets[0], gate.targets[1]);
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & hiBit) != 0 || (i & loBit) != 0) {
      continue;
    }
    std::array<std::int64_t, 4> idx{
        static_cast<std::int64_t>(i), static_cast<std::int64_t>(i | loBit),
        static_cast<std::int64_t>(i | hiBit),
        static_cast<std::int64_t>(i | hiBit | loBit)};
    std::array<Cplx, 4> amp{};
    for (std::size_t k = 0; k < 4; ++k) {
      amp[k] = psi(idx[k]);
    }
    for (std::size_t r = 0; r < 4; ++r) {
      Cplx acc{};
      for (std::size_t c = 0; c < 4; ++c) {
        acc += u[r * 4 + c] * amp[c];
      }
      psi(idx[r]) = acc;
    }
  }
}

DenseState applyCircuit(DenseState psi, const TrotterCircuit& circuit,
                        std::uint32_t sites) {
  requireWithinCap(sites);
  for (const auto& gate : circuit.gates) {
    applyGate(psi, gate, sites);
  }
  return psi;
}

DenseState exactEvolve(const DenseOperator& hamiltonian, double t,
                       const DenseState& psi0) {
  if (hamiltonian.rows() != hamiltonian.cols() ||
      hamiltonian.rows() != psi0.size()) {
    throw std::invalid_argument("exactEvolve: dimension mismatch");
  }
  if (!hamiltonian.isApprox(hamiltonian.adjoint(), 1e-12)) {
    throw std::invalid_argument("exactEvolve: Hamiltonian is not Hermitian");
  }
  const Eigen::SelfAdjointEigenSolver<DenseOperator> solver(hamiltonian);
  const Eigen::VectorXd& evals = solver.eigenvalues();
  const DenseOperator& evecs = solver.eigenvectors();
  DenseState phases(evals.size());
  for (std::int64_t i = 0; i < evals.size(); ++i) {
    phases(i) = std::exp(Cplx{0.0, -evals(i) * t});
  }
  return evecs * phases.cwiseProduct(evecs.adjoint() * psi0);
}

double expectation(const DenseState& psi, const DenseOperator& op) {
  if (op.rows() != psi.size() || op.cols() != psi.size()) {
    throw std::invalid_argument("expectation: dimension mismatch");
  }
  const Cplx value = psi.dot(op * psi); // Eigen's dot conjugates the left side
  if (std::abs(value.imag()) >= 1e-10) {
    char buf[96];
    std::snprintf(buf, sizeof buf,
                  "dense expectation: imaginary residue %.3e", value.imag());
    throw dd::ContractViolation(buf);
  }
  return value.real();
}

DenseOperator observableMatrix(const ObservableSpec& obs,
                               std::uint32_t sites) {
  if (obs.kind == ObservableSpec::Kind::SigmaZ) {
    return embedSingle(dd::pauli::Z, obs.siteA, sites);
  }
  dd::Matrix4 xx{};
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      xx[r * 4 + c] = dd::pauli::X[(r >> 1U) * 2 + (c >> 1U)] *
                      dd::pauli::X[(r & 1U) * 2 + (c & 1U)];
    }
  }
  return embedPair(xx, obs.siteA, obs.siteB, sites);
}

} // namespace sim::oracle
