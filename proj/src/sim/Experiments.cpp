#include "sim/Experiments.hpp"

#include "sim/Oracle.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace sim {

void ResultTable::write(std::ostream& os) const {
  for (const auto& [key, value] : metadata) {
    os << "# " << key << "=" << value << "\n";
  }
  for (std::size_t i = 0; i < header.size(); ++i) {
    os << (i == 0 ? "" : ",") << header[i];
  }
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i == 0 ? "" : ",") << row[i];
    }
    os << "\n";
  }
}

std::string ResultTable::toString() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

std::string formatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string formatSci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

namespace {

using Clock = std::chrono::steady_clock;

double msSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

std::uint32_t resolveThreads(std::uint32_t requested) {
  if (requested != 0) {
    return requested;
  }
  const auto hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Run `count` independent tasks on a pool of worker threads; tasks are
/// indexed so results land in deterministic order.
void parallelFor(std::size_t count, std::uint32_t threads,
                 const std::function<void(std::size_t)>& task) {
  const auto workers = std::min<std::size_t>(resolveThreads(threads), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      task(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) {
          return;
        }
        task(i);
      }
    });
  }
  for (auto& t : pool) {
    t.join();
  }
}

void addCommonMeta(ResultTable& table, const char* command) {
  table.addMeta("artifact", "ddsim");
  table.addMeta("version", "0.1.0");
  table.addMeta("command", command);
}

void addTimingMeta(ResultTable& table, Clock::time_point start) {
  // Timing metadata is excluded from the byte-determinism guarantee.
  table.addMeta("elapsed_ms", formatDouble(msSince(start)));
}

dd::StateDD allZeroState(dd::Context& ctx, std::uint32_t sites) {
  return dd::basisState(ctx, sites, std::vector<std::uint8_t>(sites, 0));
}

} // namespace

ResultTable runLandscape(const LandscapeConfig& config) {
  if (config.gridPerAxis < 2) {
    throw std::invalid_argument("landscape: grid resolution must be >= 2");
  }
  if (config.family == ModelFamily::SpinGlassChain) {
    throw std::invalid_argument(
        "landscape: spin glass has per-bond angles; use ising or heisenberg");
  }
  if (!(config.angleLo < config.angleHi)) {
    throw std::invalid_argument("landscape: empty angle range");
  }
  if (config.trotterNumbers.empty() || config.trotterNumbers.front() < 1 ||
      !std::is_sorted(config.trotterNumbers.begin(),
                      config.trotterNumbers.end())) {
    throw std::invalid_argument(
        "landscape: Trotter numbers must be ascending and >= 1");
  }
  const auto start = Clock::now();
  const std::uint32_t n = config.gridPerAxis;
  const double step = (config.angleHi - config.angleLo) /
                      static_cast<double>(n - 1);
  auto angleAt = [&](std::uint32_t i) {
    return config.angleLo + static_cast<double>(i) * step;
  };

  struct Cell {
    std::vector<std::size_t> nodeCounts; // one per trotter number
  };
  std::vector<Cell> cells(static_cast<std::size_t>(n) * n);

  parallelFor(cells.size(), config.threads, [&](std::size_t idx) {
    const std::uint32_t si = static_cast<std::uint32_t>(idx / n);
    const std::uint32_t ti = static_cast<std::uint32_t>(idx % n);
    const double thetaSingle = angleAt(si);
    const double thetaTwo = angleAt(ti);
    dd::ContextOptions opts;
    opts.tolerance = config.tolerance;
    opts.gcNodeThreshold = config.gcThreshold;
    dd::Context ctx(opts);
    const TrotterCircuit circuit = rawAngleStepCircuit(
        config.family, config.sites, thetaTwo, thetaSingle);
    dd::StateDD psi = allZeroState(ctx, config.sites);
    auto& cell = cells[idx];
    int applied = 0;
    for (const int trotter : config.trotterNumbers) {
      for (; applied < trotter; ++applied) {
        psi = applyCircuit(psi, circuit);
      }
      cell.nodeCounts.push_back(psi.nodeCount());
    }
  });

  ResultTable table;
  addCommonMeta(table, "landscape");
  table.addMeta("model", toString(config.family));
  table.addMeta("sites", std::to_string(config.sites));
  table.addMeta("grid", std::to_string(n));
  table.addMeta("angle_lo", formatDouble(config.angleLo));
  table.addMeta("angle_hi", formatDouble(config.angleHi));
  {
    std::string ns;
    for (const int t : config.trotterNumbers) {
      ns += (ns.empty() ? "" : " ") + std::to_string(t);
    }
    table.addMeta("trotter_steps", ns);
  }
  table.addMeta("tolerance", formatDouble(config.tolerance.eps));
  table.addMeta("threads", std::to_string(resolveThreads(config.threads)));
  table.header = {"theta_single", "theta_two", "trotter_steps", "node_count"};
  for (std::uint32_t si = 0; si < n; ++si) {
    for (std::uint32_t ti = 0; ti < n; ++ti) {
      const auto& cell = cells[static_cast<std::size_t>(si) * n + ti];
      for (std::size_t k = 0; k < config.trotterNumbers.size(); ++k) {
        table.rows.push_back({formatDouble(angleAt(si)),
                              formatDouble(angleAt(ti)),
                              std::to_string(config.trotterNumbers[k]),
                              std::to_string(cell.nodeCounts[k])});
      }
    }
  }
  addTimingMeta(table, start);
  return table;
}

ResultTable runScaling(const ScalingConfig& config) {
  if (config.sitesLo < 2 || config.sitesLo > config.sitesHi) {
    throw std::invalid_argument("scaling: bad site range");
  }
  const auto start = Clock::now();
  const std::size_t count = config.sitesHi - config.sitesLo + 1;

  std::vector<std::vector<std::size_t>> counts(count);
  parallelFor(count, config.threads, [&](std::size_t idx) {
    const auto sites = static_cast<std::uint32_t>(config.sitesLo + idx);
    ModelSpec model;
    model.family = config.family;
    model.sites = sites;
    model.coupling = config.coupling;
    model.field = config.family == ModelFamily::SpinGlassChain ? 0.0
                                                               : config.field;
    model.seed = config.seed;
    model.finalize();
    dd::ContextOptions opts;
    opts.tolerance = config.tolerance;
    opts.gcNodeThreshold = config.gcThreshold;
    dd::Context ctx(opts);
    const TrotterCircuit stepCircuit = trotterStepCircuit(model, config.dt);
    dd::StateDD psi = allZeroState(ctx, sites);
    auto& series = counts[idx];
    series.reserve(config.steps);
    for (std::uint32_t k = 0; k < config.steps; ++k) {
      psi = applyCircuit(psi, stepCircuit);
      series.push_back(psi.nodeCount());
    }
  });

  ResultTable table;
  addCommonMeta(table, "scaling");
  table.addMeta("model", toString(config.family));
  table.addMeta("sites_lo", std::to_string(config.sitesLo));
  table.addMeta("sites_hi", std::to_string(config.sitesHi));
  table.addMeta("coupling", formatDouble(config.coupling));
  table.addMeta("field", formatDouble(config.field));
  table.addMeta("dt", formatDouble(config.dt));
  table.addMeta("steps", std::to_string(config.steps));
  table.addMeta("seed", std::to_string(config.seed));
  table.addMeta("tolerance", formatDouble(config.tolerance.eps));
  table.header = {"L", "step", "node_count"};
  for (std::size_t idx = 0; idx < count; ++idx) {
    const auto sites = config.sitesLo + idx;
    for (std::uint32_t k = 0; k < counts[idx].size(); ++k) {
      table.rows.push_back({std::to_string(sites), std::to_string(k + 1),
                            std::to_string(counts[idx][k])});
    }
  }
  addTimingMeta(table, start);
  return table;
}

namespace {

std::vector<double> denseObservables(
    const oracle::DenseState& psi,
    const std::vector<oracle::DenseOperator>& observables) {
  std::vector<double> values;
  values.reserve(observables.size());
  for (const auto& obs : observables) {
    values.push_back(oracle::expectation(psi, obs));
  }
  return values;
}

/// Dense reference run of the same evolution protocol, sampled at the same
/// times as the DD series.
std::vector<std::vector<double>> denseReferenceSeries(
    const EvolveConfig& config, const ModelSpec& model,
    const std::vector<double>& sampleTimes) {
  std::vector<oracle::DenseOperator> observables;
  observables.reserve(config.observables.size());
  for (const auto& spec : config.observables) {
    observables.push_back(oracle::observableMatrix(spec, model.sites));
  }
  std::vector<std::vector<double>> series;
  series.reserve(sampleTimes.size());
  const oracle::DenseState psi0 = oracle::basisState(model.sites);
  if (config.mode == EvolutionMode::Stepwise) {
    const TrotterCircuit step = trotterStepCircuit(model, config.dt);
    oracle::DenseState psi = psi0;
    double t = 0.0;
    for (const double target : sampleTimes) {
      while (t + config.dt / 2 < target) {
        psi = oracle::applyCircuit(std::move(psi), step, model.sites);
        t += config.dt;
      }
      series.push_back(denseObservables(psi, observables));
    }
  } else {
    for (const double target : sampleTimes) {
      if (target == 0.0) {
        series.push_back(denseObservables(psi0, observables));
        continue;
      }
      const TrotterCircuit step = trotterStepCircuit(model, target);
      const oracle::DenseState psi =
          oracle::applyCircuit(psi0, step, model.sites);
      series.push_back(denseObservables(psi, observables));
    }
  }
  return series;
}

} // namespace

ResultTable runEvolve(const EvolveConfig& config) {
  ModelSpec model = config.model;
  model.finalize();
  if (config.denseCheck) {
    oracle::requireWithinCap(model.sites); // refuse instead of silently skip
  }
  const auto start = Clock::now();

  dd::ContextOptions opts;
  opts.tolerance = config.tolerance;
  opts.gcNodeThreshold = config.gcThreshold;
  dd::Context ctx(opts);

  EvolutionPlan plan;
  plan.model = model;
  plan.dt = config.dt;
  plan.steps = config.steps;
  plan.observables = config.observables;
  plan.sampleEvery = config.sampleEvery;
  plan.mode = config.mode;

  const dd::StateDD psi0 = allZeroState(ctx, model.sites);
  const TimeSeries series = evolve(plan, psi0);

  std::vector<std::vector<double>> reference;
  if (config.denseCheck) {
    std::vector<double> sampleTimes;
    sampleTimes.reserve(series.samples.size());
    for (const auto& s : series.samples) {
      sampleTimes.push_back(s.t);
    }
    reference = denseReferenceSeries(config, model, sampleTimes);
  }

  ResultTable table;
  addCommonMeta(table, "evolve");
  table.addMeta("model", toString(model.family));
  table.addMeta("sites", std::to_string(model.sites));
  table.addMeta("coupling", formatDouble(model.coupling));
  table.addMeta("field", formatDouble(model.field));
  table.addMeta("dt", formatDouble(config.dt));
  table.addMeta("steps", std::to_string(config.steps));
  table.addMeta("sample_every", std::to_string(config.sampleEvery));
  table.addMeta("mode", config.mode == EvolutionMode::Stepwise
                            ? "stepwise"
                            : "single-step");
  table.addMeta("seed", std::to_string(model.seed));
  {
    std::string names;
    for (const auto& obs : config.observables) {
      names += (names.empty() ? "" : " ") + obs.name();
    }
    table.addMeta("observables", names);
  }
  table.addMeta("dense_check", config.denseCheck ? "true" : "false");
  table.addMeta("tolerance", formatDouble(config.tolerance.eps));
  for (const auto& warning : series.warnings) {
    table.addMeta("warning", warning);
  }

  table.header = {"t"};
  for (const auto& obs : config.observables) {
    table.header.push_back(obs.columnName());
  }
  table.header.push_back("node_count");
  table.header.push_back("wall_ms");
  if (config.denseCheck) {
    for (const auto& obs : config.observables) {
      table.header.push_back("oracle_" + obs.columnName());
    }
    for (const auto& obs : config.observables) {
      table.header.push_back("abs_err_" + obs.columnName());
    }
  }

  for (std::size_t i = 0; i < series.samples.size(); ++i) {
    const auto& s = series.samples[i];
    std::vector<std::string> row{formatDouble(s.t)};
    for (const double v : s.observables) {
      row.push_back(formatDouble(v));
    }
    row.push_back(std::to_string(s.nodeCount));
    row.push_back(formatDouble(s.wallMs));
    if (config.denseCheck) {
      for (const double v : reference[i]) {
        row.push_back(formatDouble(v));
      }
      for (std::size_t j = 0; j < reference[i].size(); ++j) {
        row.push_back(formatSci(std::abs(s.observables[j] - reference[i][j])));
      }
    }
    table.rows.push_back(std::move(row));
  }
  addTimingMeta(table, start);
  return table;
}

ResultTable runBench(const BenchConfig& config) {
  if (config.repetitions < 1) {
    throw std::invalid_argument("bench: need at least one repetition");
  }
  ModelSpec model = config.model;
  model.finalize();
  const auto start = Clock::now();

  EvolutionPlan plan;
  plan.model = model;
  plan.dt = config.dt;
  plan.steps = config.steps;
  plan.observables = config.observables;
  plan.mode = config.mode;

  auto ddRun = [&]() {
    dd::ContextOptions opts;
    opts.tolerance = config.tolerance;
    opts.gcNodeThreshold = config.gcThreshold;
    dd::Context ctx(opts);
    const dd::StateDD psi0 = allZeroState(ctx, model.sites);
    (void)evolve(plan, psi0);
  };
  auto denseRun = [&]() {
    std::vector<oracle::DenseOperator> observables;
    for (const auto& spec : config.observables) {
      observables.push_back(oracle::observableMatrix(spec, model.sites));
    }
    oracle::DenseState psi = oracle::basisState(model.sites);
    (void)denseObservables(psi, observables);
    if (plan.mode == EvolutionMode::Stepwise) {
      const TrotterCircuit step = trotterStepCircuit(model, config.dt);
      for (std::uint32_t k = 1; k <= config.steps; ++k) {
        psi = oracle::applyCircuit(std::move(psi), step, model.sites);
        (void)denseObservables(psi, observables);
      }
    } else {
      const oracle::DenseState psi0 = oracle::basisState(model.sites);
      for (std::uint32_t k = 1; k <= config.steps; ++k) {
        const TrotterCircuit step = trotterStepCircuit(model, k * config.dt);
        const oracle::DenseState evolved =
            oracle::applyCircuit(psi0, step, model.sites);
        (void)denseObservables(evolved, observables);
      }
    }
  };

  auto timeIt = [&](const std::function<void()>& run) {
    run(); // warm-up, untimed
    std::vector<double> times;
    times.reserve(config.repetitions);
    for (std::uint32_t r = 0; r < config.repetitions; ++r) {
      const auto t0 = Clock::now();
      run();
      times.push_back(msSince(t0));
    }
    std::vector<double> sorted = times;
    std::sort(sorted.begin(), sorted.end());
    const double median =
        sorted.size() % 2 == 1
            ? sorted[sorted.size() / 2]
            : 0.5 * (sorted[sorted.size() / 2 - 1] + sorted[sorted.size() / 2]);
    const double mean =
        std::accumulate(times.begin(), times.end(), 0.0) /
        static_cast<double>(times.size());
    return std::pair<double, double>{median, mean};
  };

  ResultTable table;
  addCommonMeta(table, "bench");
  table.addMeta("model", toString(model.family));
  table.addMeta("sites", std::to_string(model.sites));
  table.addMeta("coupling", formatDouble(model.coupling));
  table.addMeta("field", formatDouble(model.field));
  table.addMeta("dt", formatDouble(config.dt));
  table.addMeta("steps", std::to_string(config.steps));
  table.addMeta("reps", std::to_string(config.repetitions));
  table.addMeta("seed", std::to_string(model.seed));
  table.addMeta("dense_cap", std::to_string(oracle::DenseSiteCap));
  table.header = {"L", "steps", "method", "reps", "median_ms", "mean_ms"};

  const auto [ddMedian, ddMean] = timeIt(ddRun);
  table.rows.push_back({std::to_string(model.sites),
                        std::to_string(config.steps), "dd",
                        std::to_string(config.repetitions),
                        formatDouble(ddMedian), formatDouble(ddMean)});
  if (model.sites <= oracle::DenseSiteCap) {
    const auto [dMedian, dMean] = timeIt(denseRun);
    table.rows.push_back({std::to_string(model.sites),
                          std::to_string(config.steps), "dense",
                          std::to_string(config.repetitions),
                          formatDouble(dMedian), formatDouble(dMean)});
  } else {
    table.rows.push_back({std::to_string(model.sites),
                          std::to_string(config.steps), "dense", "0",
                          "unavailable", "unavailable"});
  }
  addTimingMeta(table, start);
  return table;
}

} // namespace sim
