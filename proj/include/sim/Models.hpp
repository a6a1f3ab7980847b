#pragma once

#include "dd/Algebra.hpp"
#include "dd/Context.hpp"
#include "dd/OperatorDD.hpp"
#include "dd/StateDD.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sim {

enum class ModelFamily { IsingChain, HeisenbergXXX, SpinGlassChain };

[[nodiscard]] std::string toString(ModelFamily family);
[[nodiscard]] std::optional<ModelFamily> parseModelFamily(
    const std::string& name);

/**
 * @brief Hamiltonian family plus parameters (hbar = 1).
 *
 * IsingChain:      H = -J sum sx sx - g sum sz       (coupling J, field g)
 * HeisenbergXXX:   H = -J sum (sx sx + sy sy + sz sz) - h sum sz
 * SpinGlassChain:  H = -sum_l J_l sx sx, J_l ~ N(0,1) drawn from `seed`
 */
struct ModelSpec {
  ModelFamily family = ModelFamily::IsingChain;
  std::uint32_t sites = 2;
  double coupling = 1.0;     // J
  double field = 0.0;        // g (Ising) or h (Heisenberg); unused for glass
  std::vector<double> bonds; // per-bond couplings; spin glass only
  std::uint64_t seed = 0;

  /// Validate and, for the spin glass, materialize bonds from the seed if
  /// they were not supplied.
  void finalize();
};

enum class GateKind : std::uint8_t {
  RotXX,
  RotYY,
  RotZZ,
  RotZ,
  PauliX,
  PauliY,
  PauliZ,
  Custom2x2,
};

/// One gate application: a kind, a rotation angle where applicable, and one
/// or two distinct target sites.
struct GateSpec {
  GateKind kind = GateKind::RotZ;
  double angle = 0.0;
  std::array<std::uint32_t, 2> targets{0, 0};
  std::uint8_t numTargets = 1;
  dd::Matrix2 matrix{}; // Custom2x2 only

  [[nodiscard]] static GateSpec rxx(double angle, std::uint32_t a,
                                    std::uint32_t b) {
    return {GateKind::RotXX, angle, {a, b}, 2, {}};
  }
  [[nodiscard]] static GateSpec ryy(double angle, std::uint32_t a,
                                    std::uint32_t b) {
    return {GateKind::RotYY, angle, {a, b}, 2, {}};
  }
  [[nodiscard]] static GateSpec rzz(double angle, std::uint32_t a,
                                    std::uint32_t b) {
    return {GateKind::RotZZ, angle, {a, b}, 2, {}};
  }
  [[nodiscard]] static GateSpec rz(double angle, std::uint32_t t) {
    return {GateKind::RotZ, angle, {t, 0}, 1, {}};
  }
  [[nodiscard]] static GateSpec x(std::uint32_t t) {
    return {GateKind::PauliX, 0.0, {t, 0}, 1, {}};
  }
  [[nodiscard]] static GateSpec custom(const dd::Matrix2& u, std::uint32_t t) {
    return {GateKind::Custom2x2, 0.0, {t, 0}, 1, u};
  }
};

/// One first-order product-formula step U(dt) as an ordered gate list.
struct TrotterCircuit {
  std::vector<GateSpec> gates;
  double dt = 0.0;
  int stepsRepresented = 1;
};

/// Build one Trotter step for the model: two-site rotations on even bonds
/// then odd bonds (angle -2 J dt), followed by single-site Rz(-2 g dt) where
/// the family has a field. Heisenberg runs the xx, yy and zz layers in
/// sequence before the field layer.
TrotterCircuit trotterStepCircuit(const ModelSpec& model, double dt);

/// A model-shaped circuit with raw angles substituted for the bond and field
/// rotations (redundancy-landscape probes). Ising and Heisenberg only.
TrotterCircuit rawAngleStepCircuit(ModelFamily family, std::uint32_t sites,
                                   double twoSiteAngle, double singleSiteAngle);

/// Build the DD of one gate.
dd::OperatorDD buildGate(dd::Context& ctx, const GateSpec& gate,
                         std::uint32_t sites);

/// Apply all gates in order. Norm is preserved within numerical accuracy.
/// Checks the garbage-collection threshold between gates.
dd::StateDD applyCircuit(const dd::StateDD& psi, const TrotterCircuit& circuit);

/// sz(i) or sxsx(i,j).
struct ObservableSpec {
  enum class Kind { SigmaZ, SigmaXSigmaX };
  Kind kind = Kind::SigmaZ;
  std::uint32_t siteA = 0;
  std::uint32_t siteB = 0;

  [[nodiscard]] static ObservableSpec sz(std::uint32_t site) {
    return {Kind::SigmaZ, site, 0};
  }
  [[nodiscard]] static ObservableSpec sxsx(std::uint32_t a, std::uint32_t b) {
    return {Kind::SigmaXSigmaX, a, b};
  }
  /// Parse "sz(i)" / "sxsx(i,j)".
  [[nodiscard]] static std::optional<ObservableSpec> parse(
      const std::string& text);
  [[nodiscard]] std::string name() const;
  /// CSV-safe column name ("sz_3", "sxsx_0_4").
  [[nodiscard]] std::string columnName() const;
};

dd::OperatorDD buildObservable(dd::Context& ctx, const ObservableSpec& obs,
                               std::uint32_t sites);

enum class EvolutionMode {
  /// Repeatedly apply U(dt), sampling after each step.
  Stepwise,
  /// For each sample time t_k, apply a single step of size t_k to a fresh
  /// copy of the initial state. Exact when all Hamiltonian terms commute.
  SingleStepPerTime,
};

struct EvolutionPlan {
  ModelSpec model;
  double dt = 0.1;
  std::uint32_t steps = 100;
  std::vector<ObservableSpec> observables;
  std::uint32_t sampleEvery = 1;
  EvolutionMode mode = EvolutionMode::Stepwise;
};

struct Sample {
  double t = 0.0;
  std::vector<double> observables;
  std::size_t nodeCount = 0;
  double wallMs = 0.0; // cumulative
};

struct TimeSeries {
  std::vector<Sample> samples;
  std::vector<std::string> warnings;
};

/// Run the plan from psi0. The series starts with the t=0 sample.
TimeSeries evolve(const EvolutionPlan& plan, const dd::StateDD& psi0);

/// L-1 couplings drawn from N(0,1) with a splitmix64 stream and the Marsaglia
/// polar transform; identical seeds give identical bonds on every platform.
std::vector<double> gaussianBonds(std::uint32_t sites, std::uint64_t seed);

/// True when the family's Hamiltonian terms all commute, making a single
/// Trotter step exact.
[[nodiscard]] bool commutingTerms(const ModelSpec& model);

} // namespace sim
