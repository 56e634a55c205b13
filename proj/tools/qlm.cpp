// qlm: command-line front end for the quasi-local energy library.
//
// Exit status: 0 success / suites pass, 1 invalid input or data, 2 suite
// failure (or a minimization that did not converge).

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qlm.hpp"
#include "qlm/report.hpp"

namespace {

using namespace qlm;

constexpr int kExitValidation = 1;
constexpr int kExitSuiteFailure = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int grid_n = 32;
  std::uint64_t seed = 20240601;
  std::string schwarzschild;
  std::string minkowski;
  std::string metric;
  std::string data;
  std::string tau = "zero";
  std::string out;
  std::string columns;
};

/// "k1=v1,k2=v2" -> map; every key in `required` must be present and no others.
std::map<std::string, double> parse_params(const std::string& option, const std::string& text,
                                           const std::vector<std::string>& keys) {
  std::map<std::string, double> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError(option + ": expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw UsageError(option + ": unknown key '" + key + "'");
    }
    try {
      std::size_t used = 0;
      const std::string val = item.substr(eq + 1);
      out[key] = std::stod(val, &used);
      if (used != val.size()) throw std::invalid_argument(val);
    } catch (const std::exception&) {
      throw UsageError(option + ": value of '" + key + "' is not a number");
    }
  }
  for (const auto& k : keys) {
    if (!out.count(k)) throw UsageError(option + ": missing '" + k + "'");
  }
  return out;
}

AxisymMetric make_metric(const std::string& text, const GridPtr& grid) {
  if (text.empty() || text == "unit-sphere") return round_sphere(grid, 1.0);
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (kind == "sphere") return round_sphere(grid, parse_params("--metric", rest, {"r"}).at("r"));
  if (kind == "oblate") return oblate_metric(grid, parse_params("--metric", rest, {"eps"}).at("eps"));
  if (kind == "spheroid") return spheroid_metric(grid, parse_params("--metric", rest, {"c"}).at("c"));
  throw UsageError("--metric: unknown metric '" + text + "' (unit-sphere, sphere:r=R, oblate:eps=E, spheroid:c=C)");
}

struct Source {
  PhysicalData data;
  std::string description;
};

std::optional<Source> load_source(const RunConfig& cfg, const GridPtr& grid) {
  const int chosen = !cfg.schwarzschild.empty() + !cfg.minkowski.empty() + !cfg.data.empty();
  if (chosen > 1) throw UsageError("choose one of --schwarzschild, --minkowski, --data");
  if (!cfg.schwarzschild.empty()) {
    const auto p = parse_params("--schwarzschild", cfg.schwarzschild, {"m", "r"});
    return Source{schwarzschild_sphere(grid, p.at("m"), p.at("r")), "schwarzschild " + cfg.schwarzschild};
  }
  if (!cfg.minkowski.empty()) {
    if (cfg.minkowski.rfind("tau0=", 0) != 0) throw UsageError("--minkowski: expected tau0=SPEC");
    const AxisymMetric m = make_metric(cfg.metric, grid);
    const Field tau0 = parse_tau_spec(cfg.minkowski.substr(5)).field(*grid);
    return Source{minkowski_surface_data(m, tau0),
                  "minkowski " + cfg.minkowski + " on " + (cfg.metric.empty() ? "unit-sphere" : cfg.metric)};
  }
  if (!cfg.data.empty()) {
    PhysicalData d = load_physical_data(cfg.data);
    if (d.grid().size() != grid->size()) {
      throw NodeMismatch("--data: file declares n=" + std::to_string(d.grid().size()) + " but --n is " +
                         std::to_string(grid->size()));
    }
    return Source{std::move(d), "file " + cfg.data};
  }
  return std::nullopt;
}

Source require_source(const RunConfig& cfg, const GridPtr& grid) {
  auto s = load_source(cfg, grid);
  if (!s) throw UsageError("a data source is required (--schwarzschild, --minkowski or --data)");
  return std::move(*s);
}

void emit(const RunConfig& cfg, const Json& j) {
  const std::string text = j.dump(2) + "\n";
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw ValidationError("--out: cannot write '" + cfg.out + "'");
  f << text;
}

void write_columns(const std::string& path, const Grid& g, const std::vector<std::pair<std::string, Field>>& cols) {
  std::ofstream f(path);
  if (!f) throw ValidationError("--columns: cannot write '" + path + "'");
  f << "theta";
  for (const auto& c : cols) f << ' ' << c.first;
  f << '\n' << std::setprecision(17);
  for (int j = 0; j < g.size(); ++j) {
    f << g.theta()(j);
    for (const auto& c : cols) f << ' ' << c.second(j);
    f << '\n';
  }
}

Json base_report(const std::string& command, const RunConfig& cfg) {
  return report_header(command, cfg.grid_n, cfg.seed);
}

// --- commands ----------------------------------------------------------------

int cmd_energy(const RunConfig& cfg, bool normalized) {
  const GridPtr grid = make_grid(cfg.grid_n);
  const Source src = require_source(cfg, grid);
  const Field tau = parse_tau_spec(cfg.tau).field(*grid);
  const EnergyBreakdown b = qle(src.data, tau);
  Json j = base_report("energy", cfg);
  j["data"] = src.description;
  j["tau"] = cfg.tau;
  j["energy"] = to_json(b);
  j["literal_form_total"] = qle_literal(src.data, tau);
  j["convexity_guard_margin"] = convexity_guard(src.data.metric, tau);
  if (normalized) j["total_over_8pi"] = b.total / (8.0 * std::numbers::pi);
  emit(cfg, j);
  if (!cfg.columns.empty()) write_columns(cfg.columns, *grid, {{"tau", tau}, {"physical_density", physical_density(src.data, tau)}});
  return 0;
}

int cmd_residual(const RunConfig& cfg) {
  const GridPtr grid = make_grid(cfg.grid_n);
  const Source src = require_source(cfg, grid);
  const Field tau = parse_tau_spec(cfg.tau).field(*grid);
  const Field r = residual(src.data, tau);
  Json j = base_report("residual", cfg);
  j["data"] = src.description;
  j["tau"] = cfg.tau;
  j["residual_l2_norm"] = std::sqrt(integrate_surface(src.data.metric, r * r));
  j["residual_max_abs"] = r.abs().maxCoeff();
  j["residual_integral"] = integrate_surface(src.data.metric, r);
  j["gradient_sign"] = kResidualGradientSign;
  emit(cfg, j);
  if (!cfg.columns.empty()) write_columns(cfg.columns, *grid, {{"tau", tau}, {"residual", r}});
  return 0;
}

int cmd_minimize(const RunConfig& cfg, const std::string& init, int modes, double init_scale,
                 const MinimizeOptions& opts) {
  const GridPtr grid = make_grid(cfg.grid_n);
  const Source src = require_source(cfg, grid);
  if (modes < 1 || modes > cfg.grid_n / 2) throw UsageError("--modes must be in [1, n/2]");
  TauCoefficients start;
  std::string init_desc;
  if (init.empty()) {
    start = random_tau_coefficients(1, modes, init_scale, cfg.seed).front();
    init_desc = "random";
  } else {
    start = parse_tau_spec(init).coefficients(modes);
    init_desc = init;
  }
  Json j = base_report("minimize", cfg);
  j["data"] = src.description;
  j["init"] = init_desc;
  j["init_coefficients"] = to_json(start);
  j["options"] = Json{{"tol", opts.tol}, {"max_iter", opts.max_iter}, {"modes", modes}, {"init_scale", init_scale}};
  try {
    const MinimizeReport rep = minimize_energy(src.data, start, opts);
    j["result"] = to_json(rep);
    emit(cfg, j);
    if (!cfg.columns.empty()) {
      const Field tau = rep.tau_star.field(*grid);
      write_columns(cfg.columns, *grid, {{"tau_star", tau}, {"residual", residual(src.data, tau)}});
    }
    return rep.converged ? 0 : kExitSuiteFailure;
  } catch (const GuardViolation& e) {
    std::cerr << "error: " << e.what() << " (guard margin " << e.margin() << ")\n";
    return kExitValidation;
  } catch (const LineSearchFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSuiteFailure;
  }
}

int cmd_verify(const RunConfig& cfg, const std::string& suite, int samples, const std::string& tau_given) {
  static const std::vector<std::string> kSuites{"identities", "lemma41", "theorem1", "theorem3"};
  std::vector<std::string> run;
  if (suite == "all") {
    run = kSuites;
  } else if (std::find(kSuites.begin(), kSuites.end(), suite) != kSuites.end()) {
    run = {suite};
  } else {
    throw UsageError("--suite: unknown suite '" + suite + "'");
  }
  if (samples < 0) throw UsageError("--samples must be non-negative");

  const GridPtr grid = make_grid(cfg.grid_n);
  const std::optional<Source> src = load_source(cfg, grid);
  const AxisymMetric metric = src ? src->data.metric : make_metric(cfg.metric, grid);
  const Field tau = parse_tau_spec(tau_given.empty() ? "zero" : tau_given).field(*grid);
  const VerifyTolerances tol;

  Json j = base_report("verify", cfg);
  j["data"] = src ? src->description : "metric " + (cfg.metric.empty() ? std::string("unit-sphere") : cfg.metric);
  j["tau"] = tau_given.empty() ? "zero" : tau_given;
  j["tolerances"] = to_json(tol);
  Json reports = Json::array();
  bool pass = true;
  for (const std::string& name : run) {
    TheoremReport r;
    if (name == "identities") {
      r = check_identities(metric, tau, tol.identity, tol.isometry);
    } else if (name == "lemma41") {
      r = check_lemma41(metric, tau, {grid->legendre(1), grid->legendre(2), grid->legendre(3)}, 1e-4, tol);
    } else {
      if (!src) throw UsageError("suite " + name + " needs physical data (--schwarzschild, --minkowski or --data)");
      if (name == "theorem1") {
        std::vector<Field> fields;
        for (const auto& c : coefficient_box({0.05, 0.2, 0.5})) fields.push_back(tau + c.field(*grid));
        for (const auto& c : random_tau_coefficients(samples, 4, 0.1, cfg.seed)) fields.push_back(tau + c.field(*grid));
        r = check_theorem1(src->data, tau, fields, tol);
      } else {
        std::vector<Field> fields{0.3 * grid->legendre(1)};
        for (const auto& c : random_tau_coefficients(samples, 4, 0.1, cfg.seed)) fields.push_back(c.field(*grid));
        Theorem3Options o;
        o.tol = tol;
        r = check_theorem3(src->data, fields, o);
      }
    }
    pass = pass && r.pass;
    reports.push_back(to_json(r));
    std::cerr << name << ": " << (r.pass ? "pass" : "FAIL") << " (worst " << r.worst_check << " margin "
              << r.worst_margin << ", tolerance " << r.tolerance << ")\n";
  }
  j["reports"] = std::move(reports);
  j["pass"] = pass;
  emit(cfg, j);
  return pass ? 0 : kExitSuiteFailure;
}

int cmd_gen_data(const RunConfig& cfg) {
  const GridPtr grid = make_grid(cfg.grid_n);
  const Source src = require_source(cfg, grid);
  if (cfg.out.empty()) {
    store_physical_data(src.data, std::cout);
  } else {
    store_physical_data(src.data, cfg.out);
  }
  return 0;
}

void add_common(CLI::App* sub, RunConfig& cfg, bool with_tau) {
  sub->add_option("--n", cfg.grid_n, "Grid size (Gauss-Legendre nodes)")->check(CLI::Range(4, 4096));
  sub->add_option("--seed", cfg.seed, "Seed for sampled inputs");
  sub->add_option("--schwarzschild", cfg.schwarzschild, "Schwarzschild sphere data, m=M,r=R");
  sub->add_option("--minkowski", cfg.minkowski, "Minkowski data of Sigma_tau0, tau0=SPEC (metric from --metric)");
  sub->add_option("--metric", cfg.metric, "unit-sphere | sphere:r=R | oblate:eps=E | spheroid:c=C");
  sub->add_option("--data", cfg.data, "Physical data table (theta P Q normH alpha_theta)");
  sub->add_option("--out", cfg.out, "Write the report here instead of stdout");
  if (with_tau) {
    sub->add_option("--tau", cfg.tau, "Time function: zero | c*Pl terms, e.g. 0.3*P1+0.1*P2 | file:PATH");
    sub->add_option("--columns", cfg.columns, "Write theta-indexed columns for plotting");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasi-local energy of axisymmetric surfaces"};
  app.require_subcommand(1);
  app.footer(
      "Time-function grammar: 'zero', 'file:PATH' (one value per node, optionally 'theta value'),\n"
      "or a sum of terms c*Pl, Pl, c (P_l Legendre polynomial in cos(theta)), e.g. '0.3*P1-0.05*P3'.\n"
      "Exit status: 0 ok, 1 invalid input, 2 suite failure.");

  RunConfig cfg;
  bool normalized = false;
  auto* energy = app.add_subcommand("energy", "Evaluate E(Sigma, tau)");
  add_common(energy, cfg, true);
  energy->add_flag("--normalized", normalized, "Also report the total divided by 8 pi");

  auto* res = app.add_subcommand("residual", "Evaluate the optimal embedding equation residual");
  add_common(res, cfg, true);

  std::string init;
  int modes = 8;
  double init_scale = 0.05;
  MinimizeOptions mopts;
  auto* mini = app.add_subcommand("minimize", "Minimize E over tau = sum c_l P_l");
  add_common(mini, cfg, false);
  mini->add_option("--columns", cfg.columns, "Write tau* and its residual as columns");
  mini->add_option("--init", init, "Initial tau (c*Pl terms); default is random with --init-scale");
  mini->add_option("--modes", modes, "Number of Legendre modes l = 1..L");
  mini->add_option("--init-scale", init_scale, "Scale of the random initial coefficients")->check(CLI::PositiveNumber);
  mini->add_option("--tol", mopts.tol, "Gradient-norm tolerance")->check(CLI::PositiveNumber);
  mini->add_option("--max-iter", mopts.max_iter, "Iteration cap")->check(CLI::NonNegativeNumber);

  std::string suite = "all";
  int samples = 8;
  std::string verify_tau;
  auto* ver = app.add_subcommand("verify", "Run verification suites");
  add_common(ver, cfg, false);
  ver->add_option("--suite", suite, "identities | lemma41 | theorem1 | theorem3 | all");
  ver->add_option("--tau", verify_tau, "tau for identities/lemma41, tau0 for theorem1");
  ver->add_option("--samples", samples, "Additional seeded random samples");

  auto* gen = app.add_subcommand("gen-data", "Write a physical data table");
  add_common(gen, cfg, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*energy) return cmd_energy(cfg, normalized);
    if (*res) return cmd_residual(cfg);
    if (*mini) return cmd_minimize(cfg, init, modes, init_scale, mopts);
    if (*ver) return cmd_verify(cfg, suite, samples, verify_tau);
    if (*gen) return cmd_gen_data(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const qlm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}
