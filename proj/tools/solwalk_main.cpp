#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "solwalk/format.hpp"
#include "solwalk/harmonic.hpp"
#include "solwalk/measure.hpp"
#include "solwalk/rng.hpp"
#include "solwalk/solenoid.hpp"
#include "solwalk/verify.hpp"
#include "solwalk/version.hpp"
#include "solwalk/walk.hpp"

namespace {

using namespace solwalk;
using ordered_json = nlohmann::ordered_json;

// Built-in measure used when --config is absent: the worked-example mu* on
// BS(1,2).
constexpr const char* kDefaultMeasure =
    "p=2\n"
    "atom b=0 m=1 w=1/3\n"
    "atom b=1 m=1 w=1/3\n"
    "atom b=0 m=-1 w=1/6\n"
    "atom b=1 m=-1 w=1/6\n";

ParsedConfig resolve_config(const std::string& path) {
  if (path.empty()) return parse_measure_config(kDefaultMeasure);
  return load_measure_config(path);
}

const StepMeasure& require_bs_measure(const ParsedConfig& cfg) {
  if (!cfg.bs_measure) throw ConfigError("this operation needs a config with atom lines");
  return *cfg.bs_measure;
}

ordered_json drift_json(const DriftValue& d) {
  ordered_json j;
  j["coeff"] = d.coeff.get_str();
  j["log_base"] = d.log_base.get_str();
  j["value"] = d.value();
  return j;
}

// Everything that determines the artifact's bytes, and nothing else: no
// timing, no machine state, no worker count.
struct Manifest {
  std::string command;
  std::string config_hash;
  ordered_json params = ordered_json::object();
  std::string format;

  std::string to_string() const {
    ordered_json j;
    j["tool"] = "solwalk";
    j["version"] = kVersion;
    j["command"] = command;
    j["config_hash"] = config_hash;
    j["params"] = params;
    j["format"] = format;
    return j.dump(2) + "\n";
  }
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open output file '" + path + "'");
  f << content;
  if (!f) throw ConfigError("failed writing output file '" + path + "'");
}

// Artifact to stdout, or to --out with a sibling manifest for replay.
void emit(const std::string& out_path, const std::string& artifact, const Manifest& manifest) {
  if (out_path.empty()) {
    std::cout << artifact;
    return;
  }
  write_file(out_path, artifact);
  write_file(out_path + ".manifest.json", manifest.to_string());
}

std::string csv_bool(bool v) { return v ? "true" : "false"; }

int run_drift(const ParsedConfig& cfg, const std::string& format, const std::string& out) {
  const auto& mu = require_bs_measure(cfg);
  auto report = mu.validate();
  std::string artifact;
  if (format == "json") {
    ordered_json j;
    j["prime"] = mu.prime();
    j["drift_p"] = drift_json(mu.drift_p());
    j["drift_inf"] = drift_json(mu.drift_inf());
    j["regime"] = report.regime;
    artifact = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "quantity,coeff,log_base,value\n";
    for (auto [name, d] : {std::pair<const char*, DriftValue>{"drift_p", mu.drift_p()},
                           {"drift_inf", mu.drift_inf()}}) {
      os << name << ',' << csv_field(d.coeff.get_str()) << ',' << csv_field(d.log_base.get_str())
         << ',' << format_double(d.value()) << '\n';
    }
    artifact = os.str();
  }
  Manifest m{"drift", hex64(fnv1a64(cfg.normalized)), ordered_json::object(), format};
  emit(out, artifact, m);
  return 0;
}

int run_spectrum(const ParsedConfig& cfg, const std::string& format, const std::string& out) {
  RationalStepMeasure measure = cfg.rational_measure
                                    ? *cfg.rational_measure
                                    : to_rational(require_bs_measure(cfg));
  auto spec = boundary_spectrum(measure);
  std::string artifact;
  if (format == "json") {
    ordered_json j;
    j["places"] = ordered_json::array();
    for (const auto& pd : spec.drifts) {
      ordered_json jp;
      jp["place"] = pd.place_name();
      jp["drift"] = drift_json(pd.drift);
      jp["boundary"] = pd.negative;
      j["places"].push_back(jp);
    }
    j["boundary_places"] = ordered_json::array();
    for (long q : spec.boundary_places) {
      j["boundary_places"].push_back(q == kArchimedeanPlace ? std::string("inf")
                                                            : std::to_string(q));
    }
    artifact = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "place,coeff,log_base,value,boundary\n";
    for (const auto& pd : spec.drifts) {
      os << pd.place_name() << ',' << csv_field(pd.drift.coeff.get_str()) << ','
         << csv_field(pd.drift.log_base.get_str()) << ',' << format_double(pd.drift.value())
         << ',' << csv_bool(pd.negative) << '\n';
    }
    artifact = os.str();
  }
  Manifest m{"spectrum", hex64(fnv1a64(cfg.normalized)), ordered_json::object(), format};
  emit(out, artifact, m);
  return 0;
}

int run_walk(const ParsedConfig& cfg, std::uint64_t seed, long n, const std::string& format,
             const std::string& out) {
  const auto& mu = require_bs_measure(cfg);
  auto traj = run_walk(mu, n, seed);
  std::string artifact;
  if (format == "json") {
    ordered_json j;
    j["seed"] = seed;
    j["steps"] = n;
    j["partials"] = ordered_json::array();
    for (const auto& r : traj.partials) {
      j["partials"].push_back({r.translation.to_string(), r.exponent});
    }
    artifact = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "step,b,m\n";
    for (std::size_t k = 0; k < traj.partials.size(); ++k) {
      os << k << ',' << csv_field(traj.partials[k].translation.to_string()) << ','
         << traj.partials[k].exponent << '\n';
    }
    artifact = os.str();
  }
  Manifest m{"walk", hex64(fnv1a64(cfg.normalized)), {{"seed", seed}, {"n", n}}, format};
  emit(out, artifact, m);
  return 0;
}

int run_sample_boundary(const ParsedConfig& cfg, std::uint64_t seed, long n, long digits,
                        const std::string& place, const std::string& format,
                        const std::string& out) {
  const auto& mu = require_bs_measure(cfg);
  SamplerOptions opt;
  std::string artifact;
  if (place == "real") {
    double tolerance = std::pow(10.0, static_cast<double>(-digits));
    std::vector<double> values(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
      values[static_cast<std::size_t>(i)] =
          sample_boundary_real(mu, tolerance, opt, derive_seed(seed, static_cast<std::uint64_t>(i)));
    }
    if (format == "json") {
      ordered_json j;
      j["seed"] = seed;
      j["place"] = "real";
      j["samples"] = values;
      artifact = j.dump(2) + "\n";
    } else {
      std::ostringstream os;
      os << "index,value\n";
      for (long i = 0; i < n; ++i) {
        os << i << ',' << format_double(values[static_cast<std::size_t>(i)]) << '\n';
      }
      artifact = os.str();
    }
  } else {
    std::vector<BoundarySample> samples;
    samples.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
      samples.push_back(
          sample_boundary_padic(mu, digits, opt, derive_seed(seed, static_cast<std::uint64_t>(i))));
    }
    if (format == "json") {
      ordered_json j;
      j["seed"] = seed;
      j["place"] = "padic";
      j["samples"] = ordered_json::array();
      for (const auto& s : samples) {
        ordered_json js;
        js["value"] = s.value.to_string();
        js["certified_digits"] = s.certified_digits;
        js["steps_used"] = s.steps_used;
        j["samples"].push_back(js);
      }
      artifact = j.dump(2) + "\n";
    } else {
      std::ostringstream os;
      os << "index,value,certified_digits,steps_used\n";
      for (long i = 0; i < n; ++i) {
        const auto& s = samples[static_cast<std::size_t>(i)];
        os << i << ',' << csv_field(s.value.to_string()) << ',' << s.certified_digits << ','
           << s.steps_used << '\n';
      }
      artifact = os.str();
    }
  }
  Manifest m{"sample-boundary",
             hex64(fnv1a64(cfg.normalized)),
             {{"seed", seed}, {"n", n}, {"digits", digits}, {"place", place}},
             format};
  emit(out, artifact, m);
  return 0;
}

int run_project(double b, long m, const std::string& x_text, const std::string& format,
                const std::string& out) {
  auto x = TruncatedPadic::parse(x_text);
  AffineReal g{x.prime(), b, m};
  auto pr = project(g, x);
  std::string artifact;
  if (format == "json") {
    ordered_json j;
    j["x_inf"] = pr.point.x_inf;
    j["x_p"] = pr.point.x_p.to_string();
    j["gamma"] = {{"b", pr.gamma.translation.to_string()}, {"m", pr.gamma.exponent}};
    artifact = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "x_inf,x_p,gamma_b,gamma_m\n";
    os << format_double(pr.point.x_inf) << ',' << csv_field(pr.point.x_p.to_string()) << ','
       << csv_field(pr.gamma.translation.to_string()) << ',' << pr.gamma.exponent << '\n';
    artifact = os.str();
  }
  Manifest mf{"project",
              hex64(fnv1a64("")),
              {{"b", b}, {"m", m}, {"x", x_text}},
              format};
  emit(out, artifact, mf);
  return 0;
}

int run_nu_tilde(const ParsedConfig& cfg, std::uint64_t seed, long n, long digits,
                 const std::string& format, const std::string& out) {
  const auto& mu = require_bs_measure(cfg);
  SamplerOptions opt;
  std::vector<SolenoidPoint> points;
  points.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    bool drawn = false;
    for (long attempt = 0; attempt < 64 && !drawn; ++attempt) {
      try {
        points.push_back(sample_nu_tilde(
            mu, digits, opt,
            derive_seed(seed, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(attempt))));
        drawn = true;
      } catch (const DegenerateBoundaryError&) {
        // Measure-zero rejection; redraw deterministically.
      }
    }
    if (!drawn) throw DegenerateBoundaryError("sample stayed degenerate after 64 redraws");
  }
  std::string artifact;
  if (format == "json") {
    ordered_json j;
    j["seed"] = seed;
    j["samples"] = ordered_json::array();
    for (const auto& s : points) {
      ordered_json js;
      js["x_inf"] = s.x_inf;
      js["x_p"] = s.x_p.to_string();
      j["samples"].push_back(js);
    }
    artifact = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "index,x_inf,x_p\n";
    for (long i = 0; i < n; ++i) {
      const auto& s = points[static_cast<std::size_t>(i)];
      os << i << ',' << format_double(s.x_inf) << ',' << csv_field(s.x_p.to_string()) << '\n';
    }
    artifact = os.str();
  }
  Manifest m{"nu-tilde",
             hex64(fnv1a64(cfg.normalized)),
             {{"seed", seed}, {"n", n}, {"digits", digits}},
             format};
  emit(out, artifact, m);
  return 0;
}

int run_estimate(const ParsedConfig& cfg, std::uint64_t seed, long n, double b, long m,
                 int workers, const std::string& format, const std::string& out) {
  const auto& mu = require_bs_measure(cfg);
  auto phi = BoundaryObservable::unit_digit_zero();
  auto est = poisson_transform(phi, AffineReal{mu.prime(), b, m}, mu, n, seed, {}, {}, workers);
  std::string artifact;
  if (format == "json") {
    ordered_json j;
    j["b"] = b;
    j["m"] = m;
    j["n"] = est.n_samples;
    j["seed"] = seed;
    j["estimate"] = est.value;
    j["stderr"] = est.stderr_value;
    j["resampled"] = est.resampled;
    artifact = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "b,m,n,seed,estimate,stderr,resampled\n";
    os << format_double(b) << ',' << m << ',' << est.n_samples << ',' << seed << ','
       << format_double(est.value) << ',' << format_double(est.stderr_value) << ','
       << est.resampled << '\n';
    artifact = os.str();
  }
  Manifest mf{"estimate",
              hex64(fnv1a64(cfg.normalized)),
              {{"seed", seed}, {"n", n}, {"b", b}, {"m", m}},
              format};
  emit(out, artifact, mf);
  return 0;
}

int run_verify_harmonic(const ParsedConfig& cfg, std::uint64_t seed, long n, double b, long m,
                        int workers, const std::string& format, const std::string& out) {
  const auto& mu = require_bs_measure(cfg);
  auto phi = BoundaryObservable::unit_digit_zero();
  auto rep = check_harmonicity(phi, AffineReal{mu.prime(), b, m}, mu, n, seed, {}, {}, workers);
  std::string artifact;
  if (format == "json") {
    ordered_json j;
    j["b"] = b;
    j["m"] = m;
    j["n"] = rep.n_samples;
    j["seed"] = seed;
    j["lhs"] = rep.lhs;
    j["rhs"] = rep.rhs;
    j["gap"] = rep.gap;
    j["threshold"] = rep.threshold;
    j["reduction_failures"] = rep.reduction_failures;
    j["resampled"] = rep.resampled;
    j["pass"] = rep.pass;
    artifact = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "b,m,n,seed,lhs,rhs,gap,threshold,reduction_failures,pass\n";
    os << format_double(b) << ',' << m << ',' << rep.n_samples << ',' << seed << ','
       << format_double(rep.lhs) << ',' << format_double(rep.rhs) << ','
       << format_double(rep.gap) << ',' << format_double(rep.threshold) << ','
       << rep.reduction_failures << ',' << csv_bool(rep.pass) << '\n';
    artifact = os.str();
  }
  Manifest mf{"verify-harmonic",
              hex64(fnv1a64(cfg.normalized)),
              {{"seed", seed}, {"n", n}, {"b", b}, {"m", m}},
              format};
  emit(out, artifact, mf);
  return rep.pass ? 0 : 1;
}

int run_example_table(const ParsedConfig& cfg, std::uint64_t seed, long n, int workers,
                      const std::string& format, const std::string& out) {
  const auto& mu = require_bs_measure(cfg);
  std::vector<double> b_grid{0.25, 0.5, 0.75, 1.5};
  std::vector<long> m_values{1, 2, 3, 4, 5, 6, 7, 8};
  auto table = worked_example_table(mu, b_grid, m_values, n, seed, {}, {}, workers);
  std::string artifact;
  if (format == "json") {
    ordered_json j;
    j["n"] = table.n_samples;
    j["seed"] = seed;
    j["rows"] = ordered_json::array();
    for (const auto& r : table.rows) {
      ordered_json jr;
      jr["b"] = r.b;
      jr["m"] = r.m;
      jr["estimate"] = r.estimate;
      jr["stderr"] = r.stderr_value;
      jr["nu_hat"] = r.nu_hat;
      jr["nu_stderr"] = r.nu_stderr;
      jr["lower_bound"] = r.lower_bound;
      jr["upper_bound"] = r.upper_bound;
      jr["inside"] = r.inside;
      jr["pass"] = r.pass;
      j["rows"].push_back(jr);
    }
    j["beta_checks"] = table.beta_checks;
    j["beta_mismatches"] = table.beta_mismatches;
    j["all_pass"] = table.all_pass;
    artifact = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "b,m,estimate,stderr,lower_bound,upper_bound,pass\n";
    for (const auto& r : table.rows) {
      os << format_double(r.b) << ',' << r.m << ',' << format_double(r.estimate) << ','
         << format_double(r.stderr_value) << ',' << format_double(r.lower_bound) << ','
         << format_double(r.upper_bound) << ',' << csv_bool(r.pass) << '\n';
    }
    artifact = os.str();
  }
  Manifest mf{"example-table", hex64(fnv1a64(cfg.normalized)), {{"seed", seed}, {"n", n}},
              format};
  emit(out, artifact, mf);
  return table.all_pass ? 0 : 1;
}

int run_verify_all(const ParsedConfig& cfg, std::uint64_t seed, int workers, double scale,
                   const std::string& format, const std::string& out) {
  const auto& mu = require_bs_measure(cfg);
  auto summary = run_all_suites(mu, seed, workers, scale);
  std::string artifact;
  if (format == "csv") {
    std::ostringstream os;
    os << "suite,pass,checks,failures,detail\n";
    for (const auto& s : summary.suites) {
      os << csv_field(s.name) << ',' << csv_bool(s.pass) << ',' << s.checks << ',' << s.failures
         << ',' << csv_field(s.detail) << '\n';
    }
    artifact = os.str();
  } else {
    artifact = summary.to_json();
  }
  Manifest mf{"verify-all", hex64(fnv1a64(cfg.normalized)), {{"seed", seed}, {"scale", scale}},
              format};
  emit(out, artifact, mf);
  return summary.all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"samplers and verification for measurable boundaries of BS(1,p) random walks"};
  app.require_subcommand(1);

  std::string config_path;
  std::uint64_t seed = 0;
  long n = 0;
  long digits = 8;
  std::string out;
  std::string format;
  int workers = 1;
  double b = 0.3;
  long m = 0;
  std::string x_text;
  std::string place = "padic";
  double scale = 1.0;

  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "measure config file (defaults to mu* on BS(1,2))");
  };
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "master seed (required; no wall-clock default)")->required();
  };
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", out, "output file (stdout when absent; writes <out>.manifest.json)");
    sub->add_option("--format", format, "artifact format (default csv for tables, json for reports)")
        ->check(CLI::IsMember({"csv", "json"}));
  };
  auto format_or = [&](const char* fallback) { return format.empty() ? fallback : format; };
  auto add_workers = [&](CLI::App* sub) {
    sub->add_option("--workers", workers, "worker threads; never affects output values")
        ->check(CLI::PositiveNumber);
  };

  auto* drift_cmd = app.add_subcommand("drift", "exact drift functionals of a step measure");
  add_config(drift_cmd);
  add_out(drift_cmd);

  auto* spectrum_cmd =
      app.add_subcommand("spectrum", "per-place drifts and predicted boundary components");
  add_config(spectrum_cmd);
  add_out(spectrum_cmd);

  auto* walk_cmd = app.add_subcommand("walk", "sample one trajectory of the walk");
  add_config(walk_cmd);
  add_seed(walk_cmd);
  walk_cmd->add_option("--n", n, "number of steps")->default_val(100)->check(CLI::PositiveNumber);
  add_out(walk_cmd);

  auto* sample_cmd =
      app.add_subcommand("sample-boundary", "draw boundary limits with certified digits");
  add_config(sample_cmd);
  add_seed(sample_cmd);
  sample_cmd->add_option("--n", n, "number of samples")
      ->default_val(10)
      ->check(CLI::PositiveNumber);
  sample_cmd->add_option("--digits", digits, "certified digits (padic) or 10^-digits tolerance (real)")
      ->default_val(8)
      ->check(CLI::PositiveNumber);
  sample_cmd->add_option("--place", place, "boundary component")
      ->check(CLI::IsMember({"padic", "real"}));
  add_out(sample_cmd);

  auto* project_cmd =
      app.add_subcommand("project", "project a pair (g, x) to the solenoid fundamental domain");
  project_cmd->add_option("--b", b, "real translation part of g")->required();
  project_cmd->add_option("--m", m, "exponent of g")->required();
  project_cmd->add_option("--x", x_text, "boundary point, e.g. 'p=2 v=0 digits=1,0,1'")
      ->required();
  add_out(project_cmd);

  auto* nu_cmd = app.add_subcommand("nu-tilde", "sample the projected stationary measure");
  add_config(nu_cmd);
  add_seed(nu_cmd);
  nu_cmd->add_option("--n", n, "number of samples")->default_val(10)->check(CLI::PositiveNumber);
  nu_cmd->add_option("--digits", digits, "certified digits of each p-adic part")
      ->default_val(8)
      ->check(CLI::PositiveNumber);
  add_out(nu_cmd);

  auto* estimate_cmd =
      app.add_subcommand("estimate", "Monte Carlo Poisson transform of the unit-digit observable");
  add_config(estimate_cmd);
  add_seed(estimate_cmd);
  estimate_cmd->add_option("--n", n, "sample count")
      ->default_val(100000)
      ->check(CLI::PositiveNumber);
  estimate_cmd->add_option("--b", b, "real translation part of g")->default_val(0.3);
  estimate_cmd->add_option("--m", m, "exponent of g")->default_val(0);
  add_workers(estimate_cmd);
  add_out(estimate_cmd);

  auto* harmonic_cmd = app.add_subcommand(
      "verify-harmonic", "mean-value identity at g with common random numbers");
  add_config(harmonic_cmd);
  add_seed(harmonic_cmd);
  harmonic_cmd->add_option("--n", n, "sample count")
      ->default_val(100000)
      ->check(CLI::PositiveNumber);
  harmonic_cmd->add_option("--b", b, "real translation part of g")->default_val(0.3);
  harmonic_cmd->add_option("--m", m, "exponent of g")->default_val(0);
  add_workers(harmonic_cmd);
  add_out(harmonic_cmd);

  auto* table_cmd = app.add_subcommand(
      "example-table", "estimates with two-sided bounds on the worked-example grid");
  add_config(table_cmd);
  add_seed(table_cmd);
  table_cmd->add_option("--n", n, "sample count")
      ->default_val(100000)
      ->check(CLI::PositiveNumber);
  add_workers(table_cmd);
  add_out(table_cmd);

  auto* all_cmd = app.add_subcommand("verify-all", "every verification suite, one report");
  add_config(all_cmd);
  add_seed(all_cmd);
  all_cmd->add_option("--scale", scale, "shrink factor for the statistical suites, in (0,1]")
      ->default_val(1.0);
  add_workers(all_cmd);
  add_out(all_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(drift_cmd)) return run_drift(resolve_config(config_path), format_or("json"), out);
    if (app.got_subcommand(spectrum_cmd)) {
      return run_spectrum(resolve_config(config_path), format_or("csv"), out);
    }
    if (app.got_subcommand(walk_cmd)) {
      return run_walk(resolve_config(config_path), seed, n, format_or("csv"), out);
    }
    if (app.got_subcommand(sample_cmd)) {
      return run_sample_boundary(resolve_config(config_path), seed, n, digits, place,
                                 format_or("csv"), out);
    }
    if (app.got_subcommand(project_cmd)) return run_project(b, m, x_text, format_or("json"), out);
    if (app.got_subcommand(nu_cmd)) {
      return run_nu_tilde(resolve_config(config_path), seed, n, digits, format_or("csv"), out);
    }
    if (app.got_subcommand(estimate_cmd)) {
      return run_estimate(resolve_config(config_path), seed, n, b, m, workers,
                          format_or("json"), out);
    }
    if (app.got_subcommand(harmonic_cmd)) {
      return run_verify_harmonic(resolve_config(config_path), seed, n, b, m, workers,
                                 format_or("json"), out);
    }
    if (app.got_subcommand(table_cmd)) {
      return run_example_table(resolve_config(config_path), seed, n, workers,
                               format_or("csv"), out);
    }
    if (app.got_subcommand(all_cmd)) {
      return run_verify_all(resolve_config(config_path), seed, workers, scale,
                            format_or("json"), out);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
