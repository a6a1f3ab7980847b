#include "dd/Dot.hpp"
#include "sim/Experiments.hpp"
#include "sim/Models.hpp"
#include "sim/Oracle.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int ExitOk = 0;
constexpr int ExitConfigError = 2;
constexpr int ExitNumericContract = 3;

constexpr double Pi = 3.14159265358979323846;

/// Accepts plain decimals plus "pi" forms: pi, -pi, pi/2, 3pi/4, 0.5pi.
std::optional<double> parseAngle(std::string text) {
  if (text.empty()) {
    return std::nullopt;
  }
  double sign = 1.0;
  std::size_t pos = 0;
  if (text[pos] == '+' || text[pos] == '-') {
    sign = text[pos] == '-' ? -1.0 : 1.0;
    ++pos;
  }
  const auto piAt = text.find("pi", pos);
  if (piAt == std::string::npos) {
    try {
      std::size_t used = 0;
      const double v = std::stod(text.substr(pos), &used);
      if (used != text.size() - pos) {
        return std::nullopt;
      }
      return sign * v;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  double coeff = 1.0;
  if (piAt > pos) {
    try {
      std::size_t used = 0;
      coeff = std::stod(text.substr(pos, piAt - pos), &used);
      if (used != piAt - pos) {
        return std::nullopt;
      }
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  double divisor = 1.0;
  std::size_t rest = piAt + 2;
  if (rest < text.size()) {
    if (text[rest] != '/') {
      return std::nullopt;
    }
    try {
      std::size_t used = 0;
      divisor = std::stod(text.substr(rest + 1), &used);
      if (used != text.size() - rest - 1 || divisor == 0.0) {
        return std::nullopt;
      }
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  return sign * coeff * Pi / divisor;
}

void writeOutput(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) {
    throw std::invalid_argument("cannot open output file: " + path);
  }
  out << text;
}

sim::ModelFamily requireFamily(const std::string& name) {
  const auto family = sim::parseModelFamily(name);
  if (!family) {
    throw std::invalid_argument("unknown model: " + name);
  }
  return *family;
}

std::vector<sim::ObservableSpec> parseObservables(
    const std::vector<std::string>& texts, std::uint32_t sites) {
  std::vector<sim::ObservableSpec> specs;
  if (texts.empty()) {
    // Local magnetization at the center of the chain.
    specs.push_back(sim::ObservableSpec::sz((sites - 1) / 2));
    return specs;
  }
  for (const auto& text : texts) {
    const auto spec = sim::ObservableSpec::parse(text);
    if (!spec) {
      throw std::invalid_argument(
          "bad observable '" + text + "' (expected sz(i) or sxsx(i,j))");
    }
    if (spec->siteA >= sites ||
        (spec->kind == sim::ObservableSpec::Kind::SigmaXSigmaX &&
         (spec->siteB >= sites || spec->siteA == spec->siteB))) {
      throw std::invalid_argument("observable sites out of range: " + text);
    }
    specs.push_back(*spec);
  }
  return specs;
}

int runExportDot(const std::vector<std::string>& args, std::uint32_t sites,
                 const std::string& outPath, double tolerance) {
  if (args.empty()) {
    throw std::invalid_argument("export-dot: missing object spec");
  }
  dd::ContextOptions opts;
  opts.tolerance = {tolerance};
  dd::Context ctx(opts);
  std::ostringstream os;
  const std::string& what = args[0];

  if (what == "basis") {
    if (args.size() != 2) {
      throw std::invalid_argument("export-dot basis: expected a bit string");
    }
    std::vector<std::uint8_t> bits;
    for (const char c : args[1]) {
      if (c != '0' && c != '1') {
        throw std::invalid_argument("export-dot basis: bits must be 0 or 1");
      }
      bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    const auto psi =
        dd::basisState(ctx, static_cast<std::uint32_t>(bits.size()), bits);
    dd::exportDot(psi, os);
  } else if (what == "ghz" || what == "w") {
    if (args.size() != 2) {
      throw std::invalid_argument("export-dot " + what +
                                  ": expected a site count");
    }
    const auto n = static_cast<std::uint32_t>(std::stoul(args[1]));
    const auto psi = what == "ghz" ? dd::ghzState(ctx, n) : dd::wState(ctx, n);
    dd::exportDot(psi, os);
  } else if (what == "rxx" || what == "ryy" || what == "rzz") {
    if (args.size() != 2) {
      throw std::invalid_argument("export-dot " + what +
                                  ": expected an angle");
    }
    const auto angle = parseAngle(args[1]);
    if (!angle) {
      throw std::invalid_argument("export-dot: bad angle '" + args[1] + "'");
    }
    const std::uint32_t n = sites == 0 ? 2 : sites;
    const auto axes = what == "rxx"   ? dd::RotationAxes::XX
                      : what == "ryy" ? dd::RotationAxes::YY
                                      : dd::RotationAxes::ZZ;
    const auto op = dd::twoSiteRotation(ctx, axes, *angle, 0, 1, n);
    dd::exportDot(op, os);
  } else if (what == "rz") {
    if (args.size() != 2) {
      throw std::invalid_argument("export-dot rz: expected an angle");
    }
    const auto angle = parseAngle(args[1]);
    if (!angle) {
      throw std::invalid_argument("export-dot: bad angle '" + args[1] + "'");
    }
    const std::uint32_t n = sites == 0 ? 1 : sites;
    const auto op = dd::singleSiteOperator(ctx, dd::rotationZ(*angle), 0, n);
    dd::exportDot(op, os);
  } else if (what == "x" || what == "y" || what == "z") {
    const std::uint32_t n = sites == 0 ? 1 : sites;
    const auto& u = what == "x"   ? dd::pauli::X
                    : what == "y" ? dd::pauli::Y
                                  : dd::pauli::Z;
    const auto op = dd::singleSiteOperator(ctx, u, 0, n);
    dd::exportDot(op, os);
  } else {
    throw std::invalid_argument("export-dot: unknown object '" + what + "'");
  }
  writeOutput(os.str(), outPath);
  return ExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decision-diagram Hamiltonian simulation"};
  app.require_subcommand(1);

  std::string model = "ising";
  std::uint32_t sites = 0;
  double coupling = 1.0;
  double field = 0.0;
  bool fieldSet = false;
  double dt = 0.1;
  std::uint32_t steps = 100;
  std::uint32_t grid = 101;
  std::vector<double> angleRange{-Pi, Pi};
  std::vector<std::string> observableTexts;
  std::uint64_t seed = 0;
  std::string mode = "stepwise";
  bool denseCheck = false;
  double tolerance = 1e-10;
  std::uint32_t reps = 10;
  std::string outPath;
  std::uint32_t threads = 0;
  std::size_t gcThreshold = std::size_t{1} << 20U;
  std::vector<std::string> dotArgs;

  auto addCommon = [&](CLI::App* cmd, bool withModel = true) {
    if (withModel) {
      cmd->add_option("--model", model,
                      "Hamiltonian family: ising|heisenberg|spinglass");
    }
    cmd->add_option("--tolerance", tolerance, "Weight uniquing tolerance");
    cmd->add_option("--gc-threshold", gcThreshold,
                    "Node count that triggers garbage collection");
    cmd->add_option("--out", outPath, "Output path (default stdout)");
  };

  auto* landscape = app.add_subcommand(
      "landscape", "Node-count heatmap over rotation-angle grids");
  addCommon(landscape);
  landscape->add_option("--sites", sites, "Chain length (default 12)");
  landscape->add_option("--grid", grid, "Grid resolution per axis");
  landscape->add_option("--angle-range", angleRange, "Angle range LO HI")
      ->expected(2);
  landscape->add_option("--threads", threads,
                        "Worker threads (0 = machine parallelism)");

  auto* scaling = app.add_subcommand(
      "scaling", "Node count after each Trotter step for L = 2..sites");
  addCommon(scaling);
  scaling->add_option("--sites", sites, "Largest chain length (default 10)");
  scaling->add_option("--coupling", coupling, "Interaction strength J");
  auto* scalingField =
      scaling->add_option("--field", field, "Transverse/longitudinal field");
  scaling->add_option("--dt", dt, "Trotter timestep");
  scaling->add_option("--steps", steps, "Number of Trotter steps");
  scaling->add_option("--seed", seed, "Seed for spin-glass bonds");
  scaling->add_option("--threads", threads,
                      "Worker threads (0 = machine parallelism)");

  auto* evolve = app.add_subcommand(
      "evolve", "Time evolution with observable sampling");
  addCommon(evolve);
  evolve->add_option("--sites", sites, "Chain length");
  evolve->add_option("--coupling", coupling, "Interaction strength J");
  auto* evolveField =
      evolve->add_option("--field", field, "Transverse/longitudinal field");
  evolve->add_option("--dt", dt, "Trotter timestep");
  evolve->add_option("--steps", steps, "Number of sampled Trotter steps");
  evolve->add_option("--observable", observableTexts,
                     "Observable sz(i) or sxsx(i,j); repeatable");
  evolve->add_option("--seed", seed, "Seed for spin-glass bonds");
  evolve->add_option("--mode", mode, "stepwise|single-step");
  evolve->add_flag("--dense-check", denseCheck,
                   "Also run the dense oracle and report deviations");

  auto* bench = app.add_subcommand(
      "bench", "Wall-time comparison of DD and dense execution");
  addCommon(bench);
  bench->add_option("--sites", sites, "Chain length");
  bench->add_option("--coupling", coupling, "Interaction strength J");
  auto* benchField =
      bench->add_option("--field", field, "Transverse/longitudinal field");
  bench->add_option("--dt", dt, "Trotter timestep");
  bench->add_option("--steps", steps, "Number of Trotter steps");
  bench->add_option("--observable", observableTexts,
                    "Observable sz(i) or sxsx(i,j); repeatable");
  bench->add_option("--seed", seed, "Seed for spin-glass bonds");
  bench->add_option("--mode", mode, "stepwise|single-step");
  bench->add_option("--reps", reps, "Timed repetitions");

  auto* exportDot = app.add_subcommand(
      "export-dot", "Write the DOT graph of a state or gate diagram");
  exportDot->add_option("object", dotArgs,
                        "basis BITS | ghz N | w N | rxx ANGLE | ryy ANGLE | "
                        "rzz ANGLE | rz ANGLE | x | y | z");
  exportDot->add_option("--sites", sites, "Embedding size for gates");
  exportDot->add_option("--tolerance", tolerance, "Weight uniquing tolerance");
  exportDot->add_option("--out", outPath, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ExitConfigError;
  }

  try {
    const auto defaultField = [&](sim::ModelFamily family) {
      if (fieldSet) {
        return field;
      }
      switch (family) {
      case sim::ModelFamily::IsingChain:
        return 0.001;
      case sim::ModelFamily::HeisenbergXXX:
        return 1.0;
      case sim::ModelFamily::SpinGlassChain:
        return 0.0;
      }
      return 0.0;
    };

    if (landscape->parsed()) {
      sim::LandscapeConfig config;
      config.family = requireFamily(model);
      config.sites = sites == 0 ? 12 : sites;
      config.gridPerAxis = grid;
      config.angleLo = angleRange[0];
      config.angleHi = angleRange[1];
      config.threads = threads;
      config.tolerance = {tolerance};
      config.gcThreshold = gcThreshold;
      writeOutput(sim::runLandscape(config).toString(), outPath);
      return ExitOk;
    }

    if (scaling->parsed()) {
      fieldSet = scalingField->count() > 0;
      sim::ScalingConfig config;
      config.family = requireFamily(model);
      config.sitesLo = 2;
      config.sitesHi = sites == 0 ? 10 : sites;
      config.coupling = coupling;
      config.field = defaultField(config.family);
      config.dt = dt;
      config.steps = steps;
      config.seed = seed;
      config.threads = threads;
      config.tolerance = {tolerance};
      config.gcThreshold = gcThreshold;
      writeOutput(sim::runScaling(config).toString(), outPath);
      return ExitOk;
    }

    if (evolve->parsed() || bench->parsed()) {
      const bool isBench = bench->parsed();
      fieldSet = (isBench ? benchField : evolveField)->count() > 0;
      sim::ModelSpec spec;
      spec.family = requireFamily(model);
      spec.sites = sites == 0 ? (isBench ? 4 : 5) : sites;
      spec.coupling = coupling;
      spec.field = defaultField(spec.family);
      spec.seed = seed;

      sim::EvolutionMode evolutionMode;
      if (mode == "stepwise") {
        evolutionMode = sim::EvolutionMode::Stepwise;
      } else if (mode == "single-step") {
        evolutionMode = sim::EvolutionMode::SingleStepPerTime;
      } else {
        throw std::invalid_argument("bad --mode (stepwise|single-step): " +
                                    mode);
      }
      const auto observables = parseObservables(observableTexts, spec.sites);

      if (isBench) {
        sim::BenchConfig config;
        config.model = spec;
        config.dt = dt;
        config.steps = steps;
        config.observables = observables;
        config.mode = evolutionMode;
        config.repetitions = reps;
        config.tolerance = {tolerance};
        config.gcThreshold = gcThreshold;
        writeOutput(sim::runBench(config).toString(), outPath);
      } else {
        sim::EvolveConfig config;
        config.model = spec;
        config.dt = dt;
        config.steps = steps;
        config.observables = observables;
        config.mode = evolutionMode;
        config.denseCheck = denseCheck;
        config.tolerance = {tolerance};
        config.gcThreshold = gcThreshold;
        writeOutput(sim::runEvolve(config).toString(), outPath);
      }
      return ExitOk;
    }

    if (exportDot->parsed()) {
      return runExportDot(dotArgs, sites, outPath, tolerance);
    }
  } catch (const dd::ContractViolation& e) {
    std::cerr << "numeric contract violation: " << e.what() << "\n";
    return ExitNumericContract;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return ExitConfigError;
  } catch (const std::domain_error& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return ExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return ExitConfigError;
}
