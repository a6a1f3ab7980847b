#pragma once

#include "sim/Models.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace sim::oracle {

/// Brute-force reference arithmetic. Everything here enumerates all 2^L
/// amplitudes (and 4^L operator entries), so calls are guarded by a site cap.
inline constexpr std::uint32_t DenseSiteCap = 12;

using DenseState = Eigen::VectorXcd;
using DenseOperator = Eigen::MatrixXcd;

/// @throws std::invalid_argument when L exceeds the cap.
void requireWithinCap(std::uint32_t sites);

/// |0...0> unless bits are given (bits[0] = most significant / top site).
DenseState basisState(std::uint32_t sites,
                      const std::vector<std::uint8_t>& bits = {});

/// Dense 2^L x 2^L embedding of a single 2x2 operator at `target`.
DenseOperator embedSingle(const dd::Matrix2& u, std::uint32_t target,
                          std::uint32_t sites);

/// Dense embedding of a 4x4 two-site operator at (siteA, siteB); the first
/// tensor factor of `u` acts on the higher site.
DenseOperator embedPair(const dd::Matrix4& u, std::uint32_t siteA,
                        std::uint32_t siteB, std::uint32_t sites);

/// Dense gate matrix of a GateSpec.
DenseOperator gateMatrix(const GateSpec& gate, std::uint32_t sites);

/// Hermitian Hamiltonian of the model, assembled from Kronecker-embedded
/// Pauli terms with the model's signs.
DenseOperator hamiltonian(const ModelSpec& model);

/// Apply one gate in place via its 2x2/4x4 kernel (no 2^L x 2^L matrix is
/// materialized).
void applyGate(DenseState& psi, const GateSpec& gate, std::uint32_t sites);

/// Sequential dense application of a circuit.
DenseState applyCircuit(DenseState psi, const TrotterCircuit& circuit,
                        std::uint32_t sites);

/// e^{-iHt} psi0 via Hermitian eigendecomposition (phases applied in the
/// eigenbasis).
/// @throws std::invalid_argument for a non-Hermitian H.
DenseState exactEvolve(const DenseOperator& hamiltonian, double t,
                       const DenseState& psi0);

/// Re(psi^dagger O psi).
/// @throws ContractViolation when the imaginary residue exceeds 1e-10.
double expectation(const DenseState& psi, const DenseOperator& op);

DenseOperator observableMatrix(const ObservableSpec& obs, std::uint32_t sites);

} // namespace sim::oracle
