#include "dps/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dps/array_model.hpp"
#include "dps/beamformers.hpp"
#include "dps/dps_quantize.hpp"
#include "dps/errors.hpp"
#include "dps/experiments.hpp"

namespace dps::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::size_t antennas = 16;
  double spacing = 0.5;
  std::vector<double> targets;
  double desired = 0.0;
  double gamma = 0.1;
  std::string bits;
  std::size_t candidates = 3;
  double norm = 2.0;
  std::vector<double> norms{1.0, 1.5, 2.0};
  double grid_step = kDefaultGridStepDeg;
  std::size_t trials = 200;
  std::uint64_t seed = 0;
  std::string out = ".";
  double floor_db = kDefaultFloorDb;
  std::string beamformer = "steering";
  std::size_t samples = 1000;
  int workers = 0;

  bool has_desired = false;
  bool has_gamma = false;
};

// %.9g in the C locale: dot decimal separator, stable across runs.
std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::vector<int> parse_bits(const std::string& text) {
  std::vector<int> out;
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw UsageError("bad --bits value: '" + text + "'");
    return v;
  };
  if (const auto colon = text.find(':'); colon != std::string::npos) {
    const int lo = to_int(text.substr(0, colon));
    const int hi = to_int(text.substr(colon + 1));
    if (hi < lo) throw UsageError("empty --bits range: '" + text + "'");
    for (int b = lo; b <= hi; ++b) out.push_back(b);
    return out;
  }
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(to_int(item));
  if (out.empty()) throw UsageError("empty --bits list");
  return out;
}

int single_bits(const Options& o, int fallback) {
  if (o.bits.empty()) return fallback;
  const auto list = parse_bits(o.bits);
  if (list.size() != 1) throw UsageError("this command takes a single --bits value");
  return list.front();
}

ArrayConfig array_config(const Options& o) {
  ArrayConfig c{o.antennas, o.spacing};
  validate(c);
  return c;
}

// Targets from --targets/--desired. --desired must name one of the targets
// when both are given; alone it defines a single target.
TargetScenario scenario_from(const Options& o) {
  TargetScenario s;
  for (double t : o.targets) s.targets.push_back(Angle::degrees(t));
  if (s.targets.empty()) {
    if (o.has_desired) s.targets.push_back(Angle::degrees(o.desired));
    return s;
  }
  if (o.has_desired) {
    bool found = false;
    for (std::size_t i = 0; i < o.targets.size(); ++i) {
      if (std::abs(o.targets[i] - o.desired) < 1e-9) {
        s.desired_index = i;
        found = true;
        break;
      }
    }
    if (!found) throw UsageError("--desired must be one of --targets");
  }
  return s;
}

// Everything but --bits, which sweep reads as a list.
ScenarioSpec base_spec(const Options& o) {
  ScenarioSpec spec;
  spec.config = array_config(o);
  spec.scenario = scenario_from(o);
  if (o.has_gamma) spec.gamma = o.gamma;
  spec.candidates = o.candidates;
  spec.norm_target = o.norm;
  spec.grid_step_deg = o.grid_step;
  spec.floor_db = o.floor_db;
  spec.seed = o.seed;
  return spec;
}

ScenarioSpec spec_from(const Options& o, int default_bits) {
  ScenarioSpec spec = base_spec(o);
  spec.bits = single_bits(o, default_bits);
  return spec;
}

std::filesystem::path out_dir(const Options& o) {
  std::error_code ec;
  std::filesystem::create_directories(o.out, ec);
  if (ec) throw IoError("cannot create output directory '" + o.out + "': " + ec.message());
  return o.out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  f << content;
  f.flush();
  if (!f) throw IoError("failed writing '" + path.string() + "'");
}

std::string trace_csv(const BeampatternTrace& t) {
  std::string s = "angle_deg,power_linear,power_db\n";
  for (std::size_t i = 0; i < t.angles.size(); ++i)
    s += num(t.angles[i].deg()) + "," + num(t.power_linear[i]) + "," + num(t.power_db[i]) + "\n";
  return s;
}

void write_trial(const std::filesystem::path& dir, const TrialResult& r, std::string summary) {
  write_file(dir / "reference.csv", trace_csv(r.reference));
  write_file(dir / "dps.csv", trace_csv(r.dps));
  write_file(dir / "pesa.csv", trace_csv(r.pesa));
  summary += "rms_dps_db=" + num(r.rms_dps_db) + "\n";
  summary += "rms_pesa_db=" + num(r.rms_pesa_db) + "\n";
  for (std::size_t i = 0; i < r.levels.size(); ++i) {
    const auto& l = r.levels[i];
    const std::string key = "target" + std::to_string(i);
    summary += key + "_deg=" + num(l.angle.deg()) + "\n";
    summary += key + "_reference_db=" + num(l.reference_db) + "\n";
    summary += key + "_dps_db=" + num(l.dps_db) + "\n";
    summary += key + "_pesa_db=" + num(l.pesa_db) + "\n";
  }
  write_file(dir / "summary.txt", summary);
}

std::string summary_header(const std::string& command, const ScenarioSpec& s) {
  std::string h = "command=" + command + "\n";
  h += "antennas=" + std::to_string(s.config.n_antennas) + "\n";
  h += "spacing=" + num(s.config.spacing_wavelengths) + "\n";
  h += "bits=" + std::to_string(s.bits) + "\n";
  h += "candidates=" + std::to_string(s.candidates) + "\n";
  h += "norm=" + num(s.norm_target) + "\n";
  if (s.gamma) h += "gamma=" + num(*s.gamma) + "\n";
  h += "seed=" + std::to_string(s.seed) + "\n";
  h += "desired_deg=" + num(s.scenario.desired().deg()) + "\n";
  return h;
}

int cmd_pattern(const Options& o, std::ostream& out) {
  const ArrayConfig config = array_config(o);
  TargetScenario scenario = scenario_from(o);
  if (scenario.targets.empty()) scenario.targets.push_back(Angle::degrees(0.0));
  validate(scenario);
  const PhaseGrid phases(single_bits(o, 4));
  const ComplexWeights steer = steering_beamformer(config, scenario.desired());
  auto mvdr = [&] { return mvdr_beamformer(config, scenario, {o.gamma}); };

  ComplexWeights w;
  if (o.beamformer == "steering") {
    w = steer;
  } else if (o.beamformer == "mvdr") {
    w = mvdr();
  } else if (o.beamformer == "dps") {
    const bool use_mvdr = o.has_gamma || scenario.targets.size() > 1;
    w = approximate(use_mvdr ? mvdr() : steer, phases, o.candidates, o.norm).realized;
  } else if (o.beamformer == "pesa") {
    w = quantize_pesa(steer, phases);
  } else {
    throw UsageError("unknown --beamformer '" + o.beamformer + "'");
  }

  const auto trace = beampattern_trace(config, w, default_grid(o.grid_step), o.floor_db);
  const auto path = out_dir(o) / "pattern.csv";
  write_file(path, trace_csv(trace));
  out << "wrote " << path.string() << " (" << trace.angles.size() << " rows)\n";
  return kOk;
}

int cmd_single(const Options& o, std::ostream& out) {
  ScenarioSpec spec = spec_from(o, 4);
  if (spec.scenario.targets.empty()) spec.scenario = draw_scenario(o.seed, 0, 1);
  if (spec.scenario.targets.size() != 1) throw UsageError("single takes exactly one target");
  spec.gamma.reset();
  const TrialResult r = run_single_target(spec);
  write_trial(out_dir(o), r, summary_header("single", spec));
  out << "target " << num(spec.scenario.desired().deg()) << " deg: rms_dps_db=" << num(r.rms_dps_db)
      << " rms_pesa_db=" << num(r.rms_pesa_db) << "\n";
  return kOk;
}

int cmd_clutter(const Options& o, std::ostream& out, std::ostream& err) {
  ScenarioSpec spec = spec_from(o, 4);
  if (spec.scenario.targets.size() < 2) throw UsageError("clutter needs at least two --targets");
  if (!spec.gamma) spec.gamma = 0.1;
  if (exceeds_degrees_of_freedom(spec.config, spec.scenario))
    err << "warning: more targets than antennas; not every clutter direction can be nulled\n";
  const TrialResult r = run_mvdr_clutter(spec);
  write_trial(out_dir(o), r, summary_header("clutter", spec));
  for (const auto& l : r.levels)
    out << num(l.angle.deg()) << " deg: reference " << num(l.reference_db) << " dB, dps "
        << num(l.dps_db) << " dB, pesa " << num(l.pesa_db) << " dB\n";
  return kOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  ScenarioSpec base = base_spec(o);
  base.gamma = o.gamma;
  MonteCarloPlan plan;
  plan.bits_sweep = o.bits.empty() ? parse_bits("2:12") : parse_bits(o.bits);
  plan.norm_sweep = o.norms;
  plan.trials = o.trials;
  if (plan.trials == 0) throw UsageError("--trials must be positive");
  const SweepResult result = run_monte_carlo(base, plan, Execution{o.workers});

  std::string csv = "bits,norm_target,mean_rms_dps_db,mean_rms_pesa_db,trials\n";
  for (const auto& row : result.rows)
    csv += std::to_string(row.bits) + "," + num(row.norm_target) + "," + num(row.mean_rms_dps_db) +
           "," + num(row.mean_rms_pesa_db) + "," + std::to_string(row.trials) + "\n";
  const auto path = out_dir(o) / "sweep.csv";
  write_file(path, csv);
  out << "wrote " << path.string() << " (" << result.rows.size() << " rows)\n";
  return kOk;
}

int cmd_oracle_check(const Options& o, std::ostream& out, std::ostream& err) {
  const int bits = single_bits(o, 2);
  if (bits > 4) throw RefusalError("oracle-check is limited to --bits <= 4");
  const PhaseGrid grid(bits);
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < o.samples; ++i) {
    const cplx w = std::polar(2.0 * std::sqrt(unit(rng)), 2.0 * std::numbers::pi * unit(rng));
    const PhasePair fast = approximate_element(w, grid, grid.size());
    const PhasePair brute = exhaustive_oracle(w, grid);
    const double fast_err = std::abs(realize(grid, fast) - w);
    const double brute_err = std::abs(realize(grid, brute) - w);
    if (fast_err != brute_err || fast != brute) {
      ++mismatches;
      err << "mismatch at sample " << i << ": w=(" << num(w.real()) << "," << num(w.imag())
          << ") algorithm (" << fast.index_a << "," << fast.index_b << ") err " << num(fast_err)
          << " vs oracle (" << brute.index_a << "," << brute.index_b << ") err "
          << num(brute_err) << "\n";
    }
  }
  out << "oracle-check bits=" << bits << " samples=" << o.samples << " mismatches=" << mismatches
      << "\n";
  return mismatches == 0 ? kOk : kValidationFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Double-phase-shifter PESA beamforming experiments", "dps_cli"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Key=value scenario file; command-line flags take precedence");

  Options o;
  app.add_option("--antennas", o.antennas, "Number of array elements")->capture_default_str();
  app.add_option("--spacing", o.spacing, "Element spacing in wavelengths")->capture_default_str();
  app.add_option("--targets", o.targets, "Target angles in degrees")->delimiter(',');
  auto* desired = app.add_option("--desired", o.desired, "Desired target angle in degrees");
  auto* gamma = app.add_option("--gamma", o.gamma, "MVDR null-depth regularizer (> 0)");
  app.add_option("--bits", o.bits, "Phase shifter bits; sweep accepts lo:hi or a list");
  app.add_option("-L,--candidates", o.candidates, "Nearest grid phases tried per half")
      ->capture_default_str();
  app.add_option("--norm", o.norm, "Maximum weight magnitude after normalization")
      ->capture_default_str();
  app.add_option("--norms", o.norms, "Normalization targets for sweep")->delimiter(',');
  app.add_option("--grid-step", o.grid_step, "Angle grid step in degrees")->capture_default_str();
  app.add_option("--trials", o.trials, "Monte-Carlo trials per sweep point")->capture_default_str();
  app.add_option("--seed", o.seed, "Random seed")->envname("DPS_SEED")->capture_default_str();
  app.add_option("--out", o.out, "Output directory")->capture_default_str();
  app.add_option("--floor-db", o.floor_db, "dB clamp for normalized patterns")
      ->capture_default_str();
  app.add_option("--beamformer", o.beamformer, "pattern: steering | mvdr | dps | pesa")
      ->capture_default_str();
  app.add_option("--samples", o.samples, "oracle-check: random weights to test")
      ->capture_default_str();
  app.add_option("--workers", o.workers, "Worker threads (0 = OpenMP default)");

  auto* pattern = app.add_subcommand("pattern", "Write one beampattern as CSV");
  auto* single = app.add_subcommand("single", "Single-target tracking experiment");
  auto* clutter = app.add_subcommand("clutter", "MVDR clutter-reduction experiment");
  auto* sweep = app.add_subcommand("sweep", "Monte-Carlo sweep over bits and normalization");
  auto* oracle = app.add_subcommand("oracle-check", "Compare the design algorithm to brute force");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  o.has_desired = desired->count() > 0;
  o.has_gamma = gamma->count() > 0;

  try {
    if (*pattern) return cmd_pattern(o, out);
    if (*single) return cmd_single(o, out);
    if (*clutter) return cmd_clutter(o, out, err);
    if (*sweep) return cmd_sweep(o, out);
    if (*oracle) return cmd_oracle_check(o, out, err);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace dps::cli
