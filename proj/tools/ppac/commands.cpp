#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "config_json.hpp"
#include "ppac/analysis.hpp"
#include "ppac/error.hpp"
#include "ppac/figures.hpp"
#include "ppac/norms.hpp"
#include "ppac/sampling.hpp"
#include "ppac/simulation.hpp"
#include "ppac/trace_csv.hpp"

namespace ppac::cli {

namespace fs = std::filesystem;

namespace {

constexpr double kKeyEquationTolerance = 1e-10;
constexpr std::size_t kPlateauSettle = 50;
constexpr std::size_t kSynthesisSamples = 1000;

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

int report(const std::vector<Check>& checks, std::ostream& out) {
  bool ok = true;
  for (const auto& c : checks) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    ok = ok && c.pass;
  }
  return ok ? kOk : kInvariantFailure;
}

int exit_code_for(ErrorCode code) {
  return (code == ErrorCode::ConfigInvalid || code == ErrorCode::DimensionMismatch) ? kConfigError
                                                                                     : kInvariantFailure;
}

// Maps every failure a command can raise onto the documented exit codes.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "ppac: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const nlohmann::json::exception& e) {
    err << "ppac: ConfigInvalid: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "ppac: " << e.what() << '\n';
    return kConfigError;
  }
}

double max_abs_y(const Trace& trace) {
  double m = 0.0;
  for (const auto& row : trace.rows) m = std::max(m, std::abs(row.y));
  return m;
}

bool unforced(const SimConfig& cfg) {
  return cfg.disturbance.is_zero() && cfg.reference.is_zero() && !cfg.unmodelled &&
         (!cfg.input_disturbance || cfg.input_disturbance->is_zero());
}

std::string trace_csv(const Trace& trace) {
  std::ostringstream s;
  write_trace_csv(s, trace);
  return s.str();
}

std::string analysis_csv(const AnalysisRows& rows) {
  std::ostringstream s;
  write_analysis_csv(s, rows);
  return s.str();
}

// Summary metrics for one run; violated invariants are appended to failures.
AnalysisRows analyse(const SimConfig& cfg, const Trace& trace, std::vector<std::string>& failures) {
  const GainReport gain = gain_estimate(trace);
  const TraceRow& last = trace.rows.back();
  AnalysisRows rows{{"steps", static_cast<double>(trace.rows.size())},
                    {"max_abs_y", max_abs_y(trace)},
                    {"sup_phi", gain.sup_phi},
                    {"sup_d", gain.sup_d},
                    {"sup_r", gain.sup_r},
                    {"gain_ratio", gain.ratio},
                    {"final_phi_norm", last.phi_norm},
                    {"final_V", last.V}};

  if (trace.mode == ControlMode::Standard) {
    const double dev = keyeq_max_deviation(trace);
    rows.emplace_back("keyeq_max_deviation", dev);
    if (!(dev <= kKeyEquationTolerance)) failures.push_back("closed-loop recursion deviation " + fmt(dev));
  }
  if (std::holds_alternative<IdealVariant>(cfg.estimator) && cfg.schedule.is_constant()) {
    const Prop1Report p = check_prop1(trace);
    rows.emplace_back("prop1_steps", static_cast<double>(p.steps_checked));
    rows.emplace_back("prop1_violations", static_cast<double>(p.drift_violations + p.energy_violations));
    if (!p.passed()) failures.push_back("estimator drift/descent bound violated");
  }
  if (unforced(cfg) && trace.rows.front().phi_norm > 0.0) {
    const EnvelopeFit fit = fit_envelope(trace, default_lambda_grid());
    rows.emplace_back("envelope_lambda", fit.best_lambda);
    rows.emplace_back("envelope_c", fit.best_c);
    rows.emplace_back("envelope_fastest_lambda", fit.fastest_lambda);
    rows.emplace_back("envelope_fastest_c", fit.fastest_c);
  }
  if (!cfg.reference.is_zero()) {
    rows.emplace_back("plateau_tracking_error", plateau_tracking_error(trace, kPlateauSettle));
  }
  if (!cfg.schedule.is_constant()) {
    const VariationFit v = variation_budget(cfg.schedule, cfg.t0, cfg.t0 + cfg.horizon);
    rows.emplace_back("variation_c0", v.c0);
    rows.emplace_back("variation_eps", v.eps);
  }
  return rows;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ConfigInvalid, "cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<Check> synthesis_checks() {
  const Poly deadbeat{1, 0, 0, 0, 0};
  const Poly quartic{1, -2, 1.5, -0.5, 0.0625};
  const ThetaBox box = example_box();
  double residual = 0.0;
  double charpoly = 0.0;
  double nilpotent = 0.0;
  for (const auto& theta : halton_box_samples(box.lo(), box.hi(), kSynthesisSamples)) {
    const auto c = synthesize(theta, deadbeat, ControlMode::Standard);
    residual = std::max(residual, diophantine_residual(a_poly(theta), b_poly(theta), deadbeat, c));
    const Eigen::MatrixXd a = closed_loop_matrix(theta, c).entries;
    const Poly cp = characteristic_polynomial(a);
    for (std::size_t k = 0; k < cp.size(); ++k) charpoly = std::max(charpoly, std::abs(cp[k] - deadbeat[k]));
    nilpotent = std::max(nilpotent, spectral_norm(a * a * a * a));
  }
  double step_residual = 0.0;
  const ThetaBox sub = tracking_box();
  for (const auto& theta : halton_box_samples(sub.lo(), sub.hi(), kSynthesisSamples)) {
    const auto c = synthesize(theta, quartic, ControlMode::StepTracking);
    step_residual = std::max(step_residual, diophantine_residual(a_poly(theta), b_poly(theta), quartic, c));
  }
  return {{"residual", residual <= 1e-10 && step_residual <= 1e-10,
           "standard " + fmt(residual) + ", step-tracking " + fmt(step_residual) + " (tol 1e-10)"},
          {"charpoly", charpoly <= 1e-9, "max coefficient deviation " + fmt(charpoly) + " (tol 1e-9)"},
          {"nilpotency", nilpotent <= 1e-9, "max ||A^4|| " + fmt(nilpotent) + " (tol 1e-9)"}};
}

std::vector<Check> prop1_checks() {
  std::vector<Check> checks;
  for (const char* name : {"1a/ideal", "1b/ideal", "deadbeat_exact"}) {
    const Trace trace = simulate(preset(name));
    const Prop1Report p = check_prop1(trace);
    const double dev = keyeq_max_deviation(trace);
    checks.push_back({std::string("prop1 ") + name, p.passed() && dev <= kKeyEquationTolerance,
                      std::to_string(p.steps_checked) + " steps, " +
                          std::to_string(p.drift_violations + p.energy_violations) + " violations, recursion " +
                          fmt(dev)});
  }
  return checks;
}

std::vector<Check> envelope_checks() {
  const Trace trace = simulate(preset("1a/ideal"));
  const EnvelopeFit fit = fit_envelope(trace, default_lambda_grid());
  long settled = -1;
  for (const auto& row : trace.rows) {
    if (std::abs(row.y) >= 1e-6) {
      settled = -1;
    } else if (settled < 0) {
      settled = row.t;
    }
  }
  return {{"envelope", fit.certified() && fit.best_lambda <= 0.99 && settled >= 0,
           "lambda " + fmt(fit.best_lambda) + " c " + fmt(fit.best_c) + ", |y| < 1e-6 from t=" +
               std::to_string(settled)}};
}

std::vector<Check> remark2_checks() {
  const std::vector<double> eps{1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  const auto points = remark2_experiment(eps);
  bool increasing = true;
  double lo = points.front().ideal_c;
  double hi = lo;
  for (std::size_t i = 1; i < points.size(); ++i) {
    increasing = increasing && points[i].classical_ratio > points[i - 1].classical_ratio;
    lo = std::min(lo, points[i].ideal_c);
    hi = std::max(hi, points[i].ideal_c);
  }
  return {{"remark2", increasing && hi < 2.0 * lo,
           "classical ratio " + fmt(points.front().classical_ratio) + " -> " + fmt(points.back().classical_ratio) +
               ", ideal c spread " + fmt(hi / lo) + "x"}};
}

}  // namespace

void commit_artifacts(const fs::path& dir, const Artifacts& artifacts) {
  fs::create_directories(dir);
  std::vector<fs::path> staged;
  try {
    for (const auto& [name, body] : artifacts) {
      fs::path tmp = dir / ("." + name + ".partial");
      std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
      staged.push_back(tmp);
      f << body;
      f.close();
      if (!f) throw std::runtime_error("cannot write " + tmp.string());
    }
    for (std::size_t i = 0; i < artifacts.size(); ++i) fs::rename(staged[i], dir / artifacts[i].first);
  } catch (...) {
    std::error_code ec;
    for (const auto& p : staged) fs::remove(p, ec);
    throw;
  }
}

fs::path default_out_dir() {
  const char* env = std::getenv("PPAC_OUT_DIR");
  return (env && *env) ? fs::path(env) : fs::path("ppac_out");
}

int run_config(const fs::path& config, const fs::path& out_dir, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SimConfig cfg = config_from_json(nlohmann::json::parse(read_file(config)));
    const Trace trace = simulate(cfg);
    std::vector<std::string> failures;
    const AnalysisRows rows = analyse(cfg, trace, failures);
    commit_artifacts(out_dir, {{"trace.csv", trace_csv(trace)}, {"analysis.csv", analysis_csv(rows)}});
    out << "wrote " << (out_dir / "trace.csv").string() << " and analysis.csv (" << trace.rows.size()
        << " steps)\n";
    for (const auto& f : failures) err << "ppac: invariant failure: " << f << '\n';
    return failures.empty() ? kOk : kInvariantFailure;
  });
}

int run_figure(std::string_view id, const fs::path& out_dir, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Artifacts artifacts;
    std::vector<std::string> failures;
    for (const auto& series : figure_series(id)) {
      const Trace trace = simulate(series.config);
      const std::string stem = "fig" + std::string(id) + "_" + series.name;
      artifacts.emplace_back(stem + ".csv", trace_csv(trace));
      artifacts.emplace_back(stem + "_analysis.csv", analysis_csv(analyse(series.config, trace, failures)));
    }
    commit_artifacts(out_dir, artifacts);
    for (const auto& [name, body] : artifacts) out << "wrote " << (out_dir / name).string() << '\n';
    for (const auto& f : failures) err << "ppac: invariant failure: " << f << '\n';
    return failures.empty() ? kOk : kInvariantFailure;
  });
}

int run_verify(std::string_view suite, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::vector<Check> checks;
    const auto add = [&](std::vector<Check> more) { checks.insert(checks.end(), more.begin(), more.end()); };
    const bool all = suite == "all";
    if (all || suite == "charpoly") add(synthesis_checks());
    if (all || suite == "prop1") add(prop1_checks());
    if (all || suite == "envelope") add(envelope_checks());
    if (all || suite == "remark2") add(remark2_checks());
    if (checks.empty()) throw Error(ErrorCode::ConfigInvalid, "unknown verify suite \"" + std::string(suite) + "\"");
    return report(checks, out);
  });
}

int run_remark2(std::span<const double> eps, const fs::path* out_dir, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    for (double e : eps) {
      if (!(e > 0.0 && e < 1.0)) throw Error(ErrorCode::ConfigInvalid, "eps values must lie in (0, 1)");
    }
    std::ostringstream table;
    table << "eps,steps,classical_ratio,ideal_c,ideal_lambda\n";
    for (const auto& p : remark2_experiment(eps)) {
      table << format_double(p.eps) << ',' << p.steps << ',' << format_double(p.classical_ratio) << ','
            << format_double(p.ideal_c) << ',' << format_double(p.ideal_lambda) << '\n';
    }
    if (out_dir) commit_artifacts(*out_dir, {{"remark2.csv", table.str()}});
    out << table.str();
    return kOk;
  });
}

int print_preset(std::string_view name, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    nlohmann::json doc = config_to_json(preset(name));
    out << doc.dump(2) << '\n';
    return kOk;
  });
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Adaptive pole-placement simulator and diagnostics", "ppac"};
  app.require_subcommand(1);

  fs::path config;
  std::string out_arg;
  std::string figure_id;
  std::string suite;
  std::string preset_name;
  std::vector<double> eps{1e-2, 1e-3, 1e-4, 1e-5, 1e-6};

  auto* run = app.add_subcommand("run", "Simulate a JSON experiment; writes trace.csv and analysis.csv");
  run->add_option("--config", config, "Experiment description (JSON)")->required();
  run->add_option("--out", out_arg, "Output directory (default $PPAC_OUT_DIR or ./ppac_out)");

  auto* figure = app.add_subcommand("figure", "Regenerate the traces of a built-in figure");
  figure->add_option("id", figure_id, "Figure id")->required()->check(CLI::IsMember({"1a", "1b", "2", "3"}));
  figure->add_option("--out", out_arg, "Output directory (default $PPAC_OUT_DIR or ./ppac_out)");

  auto* verify = app.add_subcommand("verify", "Run an invariant suite and print PASS/FAIL lines");
  verify->add_option("suite", suite, "Suite name")
      ->required()
      ->check(CLI::IsMember({"prop1", "charpoly", "envelope", "remark2", "all"}));

  auto* remark2 = app.add_subcommand("remark2", "Classical vs ideal estimator on the first-order counterexample");
  remark2->add_option("--eps", eps, "Initial amplitudes")->delimiter(',');
  remark2->add_option("--out", out_arg, "Also write remark2.csv into this directory");

  auto* show = app.add_subcommand("preset", "Print a built-in experiment as JSON");
  show->add_option("name", preset_name, "Preset name")->required()->check(CLI::IsMember(preset_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  const fs::path out_dir = out_arg.empty() ? default_out_dir() : fs::path(out_arg);
  if (*run) return run_config(config, out_dir, std::cout, std::cerr);
  if (*figure) return run_figure(figure_id, out_dir, std::cout, std::cerr);
  if (*verify) return run_verify(suite, std::cout, std::cerr);
  if (*remark2) return run_remark2(eps, out_arg.empty() ? nullptr : &out_dir, std::cout, std::cerr);
  return print_preset(preset_name, std::cout, std::cerr);
}

}  // namespace ppac::cli
