#include "sim/Models.hpp"

#include <cassert>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace sim {

std::string toString(ModelFamily family) {
  switch (family) {
  case ModelFamily::IsingChain:
    return "ising";
  case ModelFamily::HeisenbergXXX:
    return "heisenberg";
  case ModelFamily::SpinGlassChain:
    return "spinglass";
  }
  return "?";
}

std::optional<ModelFamily> parseModelFamily(const std::string& name) {
  if (name == "ising") {
    return ModelFamily::IsingChain;
  }
  if (name == "heisenberg") {
    return ModelFamily::HeisenbergXXX;
  }
  if (name == "spinglass") {
    return ModelFamily::SpinGlassChain;
  }
  return std::nullopt;
}

void ModelSpec::finalize() {
  if (sites < 2) {
    throw std::invalid_argument("model: need at least 2 sites");
  }
  if (family == ModelFamily::SpinGlassChain) {
    if (bonds.empty()) {
      bonds = gaussianBonds(sites, seed);
    }
    if (bonds.size() != sites - 1) {
      throw std::invalid_argument("model: need one bond coupling per pair");
    }
  } else if (!bonds.empty()) {
    throw std::invalid_argument("model: per-bond couplings are spin-glass only");
  }
}

namespace {

void appendBondLayer(std::vector<GateSpec>& gates, std::uint32_t sites,
                     GateKind kind, double angle) {
  // Even bonds (0,1), (2,3), ... then odd bonds (1,2), (3,4), ...
  for (std::uint32_t parity = 0; parity < 2; ++parity) {
    for (std::uint32_t l = parity; l + 1 < sites; l += 2) {
      gates.push_back({kind, angle, {l, l + 1}, 2, {}});
    }
  }
}

void appendFieldLayer(std::vector<GateSpec>& gates, std::uint32_t sites,
                      double angle) {
  for (std::uint32_t l = 0; l < sites; ++l) {
    gates.push_back(GateSpec::rz(angle, l));
  }
}

} // namespace

TrotterCircuit trotterStepCircuit(const ModelSpec& model, double dt) {
  ModelSpec spec = model;
  spec.finalize();
  TrotterCircuit circuit;
  circuit.dt = dt;
  switch (spec.family) {
  case ModelFamily::IsingChain:
    appendBondLayer(circuit.gates, spec.sites, GateKind::RotXX,
                    -2.0 * spec.coupling * dt);
    appendFieldLayer(circuit.gates, spec.sites, -2.0 * spec.field * dt);
    break;
  case ModelFamily::HeisenbergXXX:
    appendBondLayer(circuit.gates, spec.sites, GateKind::RotXX,
                    -2.0 * spec.coupling * dt);
    appendBondLayer(circuit.gates, spec.sites, GateKind::RotYY,
                    -2.0 * spec.coupling * dt);
    appendBondLayer(circuit.gates, spec.sites, GateKind::RotZZ,
                    -2.0 * spec.coupling * dt);
    appendFieldLayer(circuit.gates, spec.sites, -2.0 * spec.field * dt);
    break;
  case ModelFamily::SpinGlassChain:
    for (std::uint32_t parity = 0; parity < 2; ++parity) {
      for (std::uint32_t l = parity; l + 1 < spec.sites; l += 2) {
        circuit.gates.push_back(
            GateSpec::rxx(-2.0 * spec.bonds[l] * dt, l, l + 1));
      }
    }
    break;
  }
  return circuit;
}

TrotterCircuit rawAngleStepCircuit(ModelFamily family, std::uint32_t sites,
                                   double twoSiteAngle,
                                   double singleSiteAngle) {
  TrotterCircuit circuit;
  circuit.dt = 0.0;
  switch (family) {
  case ModelFamily::IsingChain:
    appendBondLayer(circuit.gates, sites, GateKind::RotXX, twoSiteAngle);
    appendFieldLayer(circuit.gates, sites, singleSiteAngle);
    break;
  case ModelFamily::HeisenbergXXX:
    appendBondLayer(circuit.gates, sites, GateKind::RotXX, twoSiteAngle);
    appendBondLayer(circuit.gates, sites, GateKind::RotYY, twoSiteAngle);
    appendBondLayer(circuit.gates, sites, GateKind::RotZZ, twoSiteAngle);
    appendFieldLayer(circuit.gates, sites, singleSiteAngle);
    break;
  case ModelFamily::SpinGlassChain:
    throw std::invalid_argument(
        "rawAngleStepCircuit: spin glass has per-bond angles");
  }
  return circuit;
}

dd::OperatorDD buildGate(dd::Context& ctx, const GateSpec& gate,
                         std::uint32_t sites) {
  switch (gate.kind) {
  case GateKind::RotXX:
    return dd::twoSiteRotation(ctx, dd::RotationAxes::XX, gate.angle,
                               gate.targets[0], gate.targets[1], sites);
  case GateKind::RotYY:
    return dd::twoSiteRotation(ctx, dd::RotationAxes::YY, gate.angle,
                               gate.targets[0], gate.targets[1], sites);
  case GateKind::RotZZ:
    return dd::twoSiteRotation(ctx, dd::RotationAxes::ZZ, gate.angle,
                               gate.targets[0], gate.targets[1], sites);
  case GateKind::RotZ:
    return dd::singleSiteOperator(ctx, dd::rotationZ(gate.angle),
                                  gate.targets[0], sites);
  case GateKind::PauliX:
    return dd::singleSiteOperator(ctx, dd::pauli::X, gate.targets[0], sites);
  case GateKind::PauliY:
    return dd::singleSiteOperator(ctx, dd::pauli::Y, gate.targets[0], sites);
  case GateKind::PauliZ:
    return dd::singleSiteOperator(ctx, dd::pauli::Z, gate.targets[0], sites);
  case GateKind::Custom2x2:
    return dd::singleSiteOperator(ctx, gate.matrix, gate.targets[0], sites);
  }
  throw std::invalid_argument("buildGate: unknown gate kind");
}

dd::StateDD applyCircuit(const dd::StateDD& psi, const TrotterCircuit& circuit) {
  auto& ctx = psi.context();
  dd::StateDD current = psi;
  for (const auto& gate : circuit.gates) {
    const dd::OperatorDD op = buildGate(ctx, gate, psi.sites());
    current = dd::applyOperator(op, current);
    ctx.maybeGarbageCollect();
  }
  return current;
}

std::optional<ObservableSpec> ObservableSpec::parse(const std::string& text) {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  if (std::sscanf(text.c_str(), "sz(%u)", &a) == 1) {
    return sz(a);
  }
  if (std::sscanf(text.c_str(), "sxsx(%u,%u)", &a, &b) == 2) {
    return sxsx(a, b);
  }
  return std::nullopt;
}

std::string ObservableSpec::name() const {
  char buf[48];
  if (kind == Kind::SigmaZ) {
    std::snprintf(buf, sizeof buf, "sz(%u)", siteA);
  } else {
    std::snprintf(buf, sizeof buf, "sxsx(%u,%u)", siteA, siteB);
  }
  return buf;
}

std::string ObservableSpec::columnName() const {
  char buf[48];
  if (kind == Kind::SigmaZ) {
    std::snprintf(buf, sizeof buf, "sz_%u", siteA);
  } else {
    std::snprintf(buf, sizeof buf, "sxsx_%u_%u", siteA, siteB);
  }
  return buf;
}

dd::OperatorDD buildObservable(dd::Context& ctx, const ObservableSpec& obs,
                               std::uint32_t sites) {
  if (obs.kind == ObservableSpec::Kind::SigmaZ) {
    return dd::singleSiteOperator(ctx, dd::pauli::Z, obs.siteA, sites);
  }
  dd::Matrix4 xx{};
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      xx[r * 4 + c] = dd::pauli::X[(r >> 1U) * 2 + (c >> 1U)] *
                      dd::pauli::X[(r & 1U) * 2 + (c & 1U)];
    }
  }
  return dd::twoSiteOperator(ctx, xx, obs.siteA, obs.siteB, sites);
}

bool commutingTerms(const ModelSpec& model) {
  switch (model.family) {
  case ModelFamily::SpinGlassChain:
    return true;
  case ModelFamily::IsingChain:
    return model.field == 0.0;
  case ModelFamily::HeisenbergXXX:
    return false;
  }
  return false;
}

namespace {

using Clock = std::chrono::steady_clock;

double msSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

Sample takeSample(const dd::StateDD& psi,
                  const std::vector<dd::OperatorDD>& observables, double t,
                  Clock::time_point start) {
  Sample sample;
  sample.t = t;
  sample.observables.reserve(observables.size());
  for (const auto& obs : observables) {
    sample.observables.push_back(dd::expectation(psi, obs));
  }
  sample.nodeCount = psi.nodeCount();
  sample.wallMs = msSince(start);
  return sample;
}

} // namespace

TimeSeries evolve(const EvolutionPlan& plan, const dd::StateDD& psi0) {
  if (plan.dt <= 0.0 && plan.steps > 0) {
    throw std::invalid_argument("evolve: timestep must be positive");
  }
  if (plan.sampleEvery == 0) {
    throw std::invalid_argument("evolve: sample stride must be >= 1");
  }
  ModelSpec model = plan.model;
  model.finalize();
  auto& ctx = psi0.context();

  TimeSeries series;
  if (plan.mode == EvolutionMode::SingleStepPerTime && !commutingTerms(model)) {
    series.warnings.push_back(
        "single-step mode with non-commuting terms: results are a "
        "coarse approximation");
  }

  std::vector<dd::OperatorDD> observables;
  observables.reserve(plan.observables.size());
  for (const auto& spec : plan.observables) {
    observables.push_back(buildObservable(ctx, spec, model.sites));
  }

  const auto start = Clock::now();
  series.samples.push_back(takeSample(psi0, observables, 0.0, start));

  if (plan.mode == EvolutionMode::Stepwise) {
    const TrotterCircuit step = trotterStepCircuit(model, plan.dt);
    dd::StateDD psi = psi0;
    for (std::uint32_t k = 1; k <= plan.steps; ++k) {
      psi = applyCircuit(psi, step);
      if (k % plan.sampleEvery == 0 || k == plan.steps) {
        series.samples.push_back(
            takeSample(psi, observables, k * plan.dt, start));
      }
    }
  } else {
    for (std::uint32_t k = 1; k <= plan.steps; ++k) {
      if (k % plan.sampleEvery != 0 && k != plan.steps) {
        continue;
      }
      const double t = k * plan.dt;
      const TrotterCircuit step = trotterStepCircuit(model, t);
      const dd::StateDD psi = applyCircuit(psi0, step);
      series.samples.push_back(takeSample(psi, observables, t, start));
    }
  }
  return series;
}

std::vector<double> gaussianBonds(std::uint32_t sites, std::uint64_t seed) {
  if (sites < 2) {
    throw std::invalid_argument("gaussianBonds: need at least 2 sites");
  }
  // splitmix64 stream.
  std::uint64_t state = seed;
  auto nextU64 = [&state]() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  // Uniform in (-1, 1), zero excluded to keep the polar loop well-defined.
  auto nextUniform = [&nextU64]() {
    return 2.0 * (static_cast<double>(nextU64() >> 11U) * 0x1p-53) - 1.0;
  };

  std::vector<double> bonds;
  bonds.reserve(sites - 1);
  double spare = 0.0;
  bool haveSpare = false;
  while (bonds.size() < sites - 1) {
    if (haveSpare) {
      bonds.push_back(spare);
      haveSpare = false;
      continue;
    }
    // Marsaglia polar method.
    double u = 0.0;
    double v = 0.0;
    double s = 0.0;
    do {
      u = nextUniform();
      v = nextUniform();
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    bonds.push_back(u * m);
    spare = v * m;
    haveSpare = true;
  }
  return bonds;
}

} // namespace sim
