#include "run_config.hpp"

#include <cmath>
#include <fstream>

#include "nkdv/errors.hpp"
#include "nkdv/report.hpp"

namespace nkdv::cli {

using nlohmann::json;

ObjectReader::ObjectReader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
  if (!j_.is_object()) throw InvalidInput(where_ + ": expected a JSON object");
}

bool ObjectReader::has(const std::string& key) const { return j_.contains(key) && !j_.at(key).is_null(); }

const json& ObjectReader::get(const std::string& key) {
  seen_.insert(key);
  if (!j_.contains(key)) throw InvalidInput(where_ + ": missing field '" + key + "'");
  return j_.at(key);
}

double ObjectReader::number(const std::string& key) {
  const json& v = get(key);
  if (!v.is_number()) throw InvalidInput(where_ + ": field '" + key + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw InvalidInput(where_ + ": field '" + key + "' must be finite");
  return x;
}

std::optional<double> ObjectReader::optional_number(const std::string& key) {
  seen_.insert(key);
  if (!has(key)) return std::nullopt;
  return number(key);
}

std::size_t ObjectReader::count(const std::string& key) {
  const json& v = get(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw InvalidInput(where_ + ": field '" + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::optional<std::size_t> ObjectReader::optional_count(const std::string& key) {
  seen_.insert(key);
  if (!has(key)) return std::nullopt;
  return count(key);
}

std::string ObjectReader::text(const std::string& key) {
  const json& v = get(key);
  if (!v.is_string()) throw InvalidInput(where_ + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

std::optional<std::string> ObjectReader::optional_text(const std::string& key) {
  seen_.insert(key);
  if (!has(key)) return std::nullopt;
  return text(key);
}

const json& ObjectReader::child(const std::string& key) { return get(key); }

void ObjectReader::done() const {
  for (const auto& item : j_.items()) {
    if (!seen_.count(item.key())) throw InvalidInput(where_ + ": unknown field '" + item.key() + "'");
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput("config file '" + path + "' is not valid JSON: " + e.what());
  }
}

AuditConfig parse_audit_config(const json& j) {
  ObjectReader r(j, "audit config");
  const json& list = r.child("regimes");
  r.done();
  if (!list.is_array() || list.empty()) throw InvalidInput("audit config: 'regimes' must be a non-empty array");
  AuditConfig cfg;
  for (std::size_t i = 0; i < list.size(); ++i) {
    ObjectReader p(list[i], "audit config regimes[" + std::to_string(i) + "]");
    const double c = p.number("c");
    const double g = p.number("g");
    p.done();
    cfg.regimes.push_back(TravelingWaveParams::make(c, g));
  }
  return cfg;
}

OdeConfig parse_ode_config(const json& j) {
  ObjectReader r(j, "ode config");
  OdeConfig cfg;
  const double c = r.number("c");
  const double g = r.number("g");
  cfg.params = TravelingWaveParams::make(c, g);
  cfg.initial.U = r.number("U0");
  cfg.initial.y = r.number("y0");
  cfg.dxi = r.optional_number("dxi").value_or(cfg.dxi);
  cfg.steps = r.optional_count("steps").value_or(cfg.steps);
  if (auto m = r.optional_text("integrator")) cfg.method = parse_integrator(*m);
  cfg.options.stride = r.optional_count("stride").value_or(cfg.options.stride);
  cfg.options.overflow_guard = r.optional_number("overflow_guard").value_or(cfg.options.overflow_guard);
  r.done();
  return cfg;
}

SimulateConfig parse_simulate_config(const json& j) {
  ObjectReader r(j, "simulate config");
  SimulateConfig out;
  SimulationConfig& cfg = out.sim;
  cfg.case_id = parse_case(r.text("case"));
  cfg.params = TravelingWaveParams::make(r.number("c"), r.number("g"));
  cfg.h = r.optional_number("h");
  cfg.closure = parse_closure(r.text("closure"));
  if (auto gauge = r.optional_text("gauge")) cfg.gauge = parse_gauge(*gauge);
  cfg.dt = r.number("dt");
  cfg.output_every = r.optional_count("output_every").value_or(0);
  cfg.u_min = r.optional_number("u_min");
  out.slices = r.optional_text("slices");

  // The profile fixes the period used by "periods" and "t_periods".
  SimulationConfig probe = cfg;
  probe.grid = Grid::make(0.0, 1.0, 8, cfg.closure == Closure::periodic ? Boundary::periodic : Boundary::decaying);
  const WaveProfile profile = simulation_profile(probe);

  ObjectReader gr(r.child("grid"), "simulate config grid");
  const double x0 = gr.optional_number("x0").value_or(0.0);
  const std::size_t n = gr.count("n");
  const Boundary boundary = cfg.closure == Closure::periodic ? Boundary::periodic : Boundary::decaying;
  if (gr.has("periods")) {
    if (gr.has("dx")) throw InvalidInput("simulate config grid: give either 'dx' or 'periods', not both");
    if (boundary != Boundary::periodic || !profile.period()) {
      throw InvalidInput("simulate config grid: 'periods' needs a periodic profile and closure");
    }
    const double periods = gr.number("periods");
    if (!(periods > 0.0)) throw InvalidInput("simulate config grid: 'periods' must be positive");
    cfg.grid = Grid::make(x0, periods * *profile.period() / static_cast<double>(n), n, boundary);
  } else {
    cfg.grid = Grid::make(x0, gr.number("dx"), n, boundary);
  }
  gr.done();

  const bool by_period = r.has("t_periods");
  if (by_period == r.has("t_end")) throw InvalidInput("simulate config: give exactly one of 't_end' and 't_periods'");
  if (by_period) {
    if (!profile.period()) throw InvalidInput("simulate config: 't_periods' needs a periodic profile");
    cfg.t_end = r.number("t_periods") * *profile.period() / std::abs(cfg.params.c);
  } else {
    cfg.t_end = r.number("t_end");
  }
  r.optional_number("t_end");
  r.optional_number("t_periods");
  r.done();
  return out;
}

}  // namespace nkdv::cli
