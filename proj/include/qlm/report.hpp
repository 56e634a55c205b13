#pragma once

// JSON serialization of results. Keys keep insertion order and nothing
// time- or host-dependent is written, so equal inputs give equal bytes.

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <string>

#include "qlm/verify.hpp"
#include "qlm/version.hpp"

namespace qlm {

using Json = nlohmann::ordered_json;

namespace detail {
/// JSON has no infinities or NaN; those are written as strings.
inline Json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}
}  // namespace detail

inline Json report_header(const std::string& command, int grid_n, std::uint64_t seed) {
  Json j;
  j["artifact"] = "qlm";
  j["version"] = kVersion;
  j["command"] = command;
  j["grid_n"] = grid_n;
  j["seed"] = seed;
  return j;
}

inline Json to_json(const EnergyBreakdown& b) {
  return Json{{"reference_term", b.reference_term}, {"physical_term", b.physical_term}, {"total", b.total}};
}

inline Json to_json(const TauCoefficients& c) {
  Json a = Json::array();
  for (double v : c.coeffs) a.push_back(v);
  return a;
}

inline Json to_json(const MinimizeReport& r) {
  Json j;
  j["tau_star"] = to_json(r.tau_star);
  j["energy_star"] = r.energy_star;
  j["residual_norm"] = r.residual_norm;
  j["gradient_norm"] = r.gradient_norm;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["guard_active"] = r.guard_active;
  j["guard_rejections"] = r.guard_rejections;
  j["fd_calibration_relative_error"] = r.fd_calibration_error;
  j["admissibility_beyond_convexity"] = "unknown";
  Json trace = Json::array();
  for (const IterateRecord& it : r.trace) {
    trace.push_back(Json{{"iteration", it.iteration},
                         {"energy", it.energy},
                         {"gradient_norm", it.gradient_norm},
                         {"guard_margin", it.guard_margin},
                         {"step", it.step}});
  }
  j["trace"] = std::move(trace);
  return j;
}

inline Json to_json(const TheoremReport& r) {
  Json j;
  j["name"] = r.name;
  j["pass"] = r.pass;
  j["samples"] = r.samples;
  j["skipped_by_guard"] = r.skipped;
  j["worst_margin"] = detail::number(r.worst_margin);
  j["tolerance"] = r.tolerance;
  j["worst_check"] = r.worst_check;
  Json checks = Json::array();
  for (const Check& c : r.checks) {
    checks.push_back(Json{{"name", c.name}, {"margin", detail::number(c.margin)}, {"tolerance", c.tolerance}, {"pass", c.pass()}});
  }
  j["checks"] = std::move(checks);
  Json eq = Json::array();
  for (const EqualityCase& e : r.equality_cases) eq.push_back(Json{{"case", e.label}, {"gap", e.gap}});
  j["equality_cases"] = std::move(eq);
  Json values = Json::object();
  for (const auto& [k, v] : r.values) values[k] = detail::number(v);
  j["values"] = std::move(values);
  j["notes"] = r.notes;
  return j;
}

inline Json to_json(const VerifyTolerances& t) {
  return Json{{"critical_residual", t.critical_residual},
              {"gap", t.gap},
              {"equality", t.equality},
              {"closed_form", t.closed_form},
              {"strict", t.strict},
              {"f_zero", t.f_zero},
              {"f_prime_zero", t.f_prime_zero},
              {"ode", t.ode},
              {"g_prime", t.g_prime},
              {"alpha_zero", t.alpha_zero},
              {"flux", t.flux},
              {"variation", t.variation},
              {"identity", t.identity},
              {"isometry", t.isometry}};
}

}  // namespace qlm
