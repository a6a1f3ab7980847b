#pragma once

#include "sim/Models.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace sim {

/// Machine-readable experiment output: a '#'-prefixed key=value metadata
/// block followed by a CSV header row and data rows. Identical configs and
/// seeds produce identical bytes apart from the timing metadata and wall-time
/// columns.
struct ResultTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void addMeta(std::string key, std::string value) {
    metadata.emplace_back(std::move(key), std::move(value));
  }
  void write(std::ostream& os) const;
  [[nodiscard]] std::string toString() const;
};

// Shared formatting helpers (deterministic, locale-independent).
[[nodiscard]] std::string formatDouble(double v);
[[nodiscard]] std::string formatSci(double v);

struct LandscapeConfig {
  ModelFamily family = ModelFamily::IsingChain;
  std::uint32_t sites = 12;
  std::uint32_t gridPerAxis = 101;
  double angleLo = -3.14159265358979323846;
  double angleHi = 3.14159265358979323846;
  std::vector<int> trotterNumbers{1, 2};
  std::uint32_t threads = 0; // 0 = machine parallelism
  dd::Tolerance tolerance{};
  std::size_t gcThreshold = std::size_t{1} << 20U;
};

/// Node counts of |0...0> evolved by model-shaped circuits with raw angles on
/// a (single-site angle, two-site angle) grid, one row per grid point per
/// Trotter number. Grid points run on isolated contexts in parallel; rows
/// are emitted in deterministic grid order.
ResultTable runLandscape(const LandscapeConfig& config);

struct ScalingConfig {
  ModelFamily family = ModelFamily::IsingChain;
  std::uint32_t sitesLo = 2;
  std::uint32_t sitesHi = 10;
  double coupling = 1.0;
  double field = 0.001; // Heisenberg default is 1.0; resolved by the CLI
  double dt = 0.1;
  std::uint32_t steps = 100;
  std::uint64_t seed = 0;
  std::uint32_t threads = 0;
  dd::Tolerance tolerance{};
  std::size_t gcThreshold = std::size_t{1} << 20U;
};

/// Node count after every Trotter step for each chain length in the range.
ResultTable runScaling(const ScalingConfig& config);

struct EvolveConfig {
  ModelSpec model;
  double dt = 0.1;
  std::uint32_t steps = 100;
  std::vector<ObservableSpec> observables;
  std::uint32_t sampleEvery = 1;
  EvolutionMode mode = EvolutionMode::Stepwise;
  bool denseCheck = false;
  dd::Tolerance tolerance{};
  std::size_t gcThreshold = std::size_t{1} << 20U;
};

/// Time series of observable expectations, node counts and cumulative wall
/// time; with denseCheck (L within the oracle cap) also the dense-oracle
/// values of the same protocol and the absolute deviations.
ResultTable runEvolve(const EvolveConfig& config);

struct BenchConfig {
  ModelSpec model;
  double dt = 0.1;
  std::uint32_t steps = 1;
  std::vector<ObservableSpec> observables;
  EvolutionMode mode = EvolutionMode::Stepwise;
  std::uint32_t repetitions = 10;
  dd::Tolerance tolerance{};
  std::size_t gcThreshold = std::size_t{1} << 20U;
};

/// Median and mean wall time over R repetitions (one untimed warm-up) for the
/// DD evolution and, when the site count is within the oracle cap, the dense
/// execution of the same plan.
ResultTable runBench(const BenchConfig& config);

} // namespace sim
