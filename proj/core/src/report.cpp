#include "nkdv/report.hpp"

#include <array>
#include <cstdio>
#include <string>

#include "nkdv/errors.hpp"

namespace nkdv {

using nlohmann::json;

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json interval_json(const LevelInterval& r) {
  // Infinite ends are written as null.
  auto end = [](double x) { return std::isfinite(x) ? json(x) : json(nullptr); };
  return {{"lo", end(r.lo)}, {"hi", end(r.hi)}, {"lo_closed", r.lo_closed}, {"hi_closed", r.hi_closed}};
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

[[noreturn]] void unknown(std::string_view what, std::string_view name) {
  throw InvalidInput("unknown " + std::string(what) + " '" + std::string(name) + "'");
}

}  // namespace

json to_json(const OrbitFamily& f) {
  json j = {{"kind", to_string(f.kind)}, {"h_range", interval_json(f.h_range)}, {"case", to_string(f.solution_case)}};
  if (f.roots) j["roots_sq"] = {f.roots->first_sq, f.roots->second_sq};
  return j;
}

json to_json(const PhasePortrait& p) {
  json eq = json::array();
  for (const auto& e : p.equilibria) {
    eq.push_back({{"U", e.U}, {"y", e.y}, {"kind", to_string(e.kind)}, {"nilpotent", e.nilpotent}});
  }
  json fam = json::array();
  for (const auto& f : p.families) fam.push_back(to_json(f));
  return {{"schema", schema::portrait},
          {"c", p.params.c},
          {"g", p.params.g},
          {"h0", p.h0},
          {"h1", optional_number(p.h1)},
          {"panel", to_string(p.panel)},
          {"equilibria", eq},
          {"families", fam}};
}

json to_json(const AuditEntry& e) {
  return {{"equation", e.equation}, {"c", e.c},       {"g", e.g},
          {"h", optional_number(e.h)}, {"variant", e.variant}, {"residual", e.residual},
          {"verdict", to_string(e.verdict)}, {"note", e.note}};
}

json to_json(const AuditReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) entries.push_back(to_json(e));
  return {{"schema", schema::audit}, {"entries", entries}, {"flagged", r.flagged}, {"notes", r.notes}};
}

json to_json(const HierarchyAudit& a) {
  json j = {{"residual_half", a.residual_half},   {"residual_quarter", a.residual_quarter},
            {"fitted_a", a.fitted_a},             {"fitted_b", a.fitted_b},
            {"k_of_two_vs_vx", a.k_of_two_vs_vx}, {"g1_vs_v", a.g1_vs_v},
            {"g1_vs_u", optional_number(a.g1_vs_u)}, {"verdict", a.verdict},
            {"notes", a.notes}};
  return j;
}

json to_json(const LaxResult& r) {
  return {{"residual", r.residual},
          {"removed_fraction", r.removed_fraction},
          {"projection_warning", r.projection_warning},
          {"traveling_wave_mismatch", r.traveling_wave_mismatch},
          {"max_removed_mean", r.max_removed_mean}};
}

json to_json(const KernelSeedResiduals& s) {
  return {{"k_of_u_squared", s.k_of_u_squared},
          {"k_of_u_squared_factored", s.k_of_u_squared_factored},
          {"j_of_constant", s.j_of_constant},
          {"seed2_partial", s.seed2},
          {"seed3_partial", s.seed3}};
}

json to_json(const SimulationSummary& s) {
  return {{"schema", schema::simulation_summary},
          {"final_error_vs_translate", s.final_error_vs_translate},
          {"l2_drift", s.l2_drift},
          {"min_u", s.min_u},
          {"t_final", s.t_final},
          {"steps", s.steps}};
}

namespace {
constexpr std::array<std::string_view, 7> kCliCaseNames = {"breaking23", "exp24",  "soliton25", "dn26",
                                                           "cn27",       "kink28", "sn29"};
}

std::string_view cli_name(CaseId id) noexcept { return kCliCaseNames[static_cast<std::size_t>(id)]; }

CaseId parse_case(std::string_view name) {
  const std::string n = lower(name);
  for (std::size_t i = 0; i < kCliCaseNames.size(); ++i) {
    const auto id = static_cast<CaseId>(i);
    if (n == kCliCaseNames[i] || n == lower(to_string(id))) return id;
  }
  unknown("case", name);
}

Integrator parse_integrator(std::string_view name) {
  if (name == "leapfrog") return Integrator::leapfrog;
  if (name == "rk4") return Integrator::rk4;
  unknown("integrator", name);
}

Closure parse_closure(std::string_view name) {
  if (name == "periodic") return Closure::periodic;
  if (name == "decaying") return Closure::decaying;
  unknown("closure", name);
}

Gauge parse_gauge(std::string_view name) {
  if (name == "conserve_L2") return Gauge::conserve_L2;
  if (name == "anchored") return Gauge::anchored;
  unknown("gauge", name);
}

WidthVariant parse_variant(std::string_view name) {
  if (name == "paper") return WidthVariant::paper;
  if (name == "derived") return WidthVariant::derived;
  unknown("width variant", name);
}

Branch parse_branch(std::string_view name) {
  if (name == "plus" || name == "+") return Branch::plus;
  if (name == "minus" || name == "-") return Branch::minus;
  unknown("branch", name);
}

std::string format_number(double v) {
  std::array<char, 32> buf{};
  if (v == 0.0) v = 0.0;  // no "-0" in output
  std::snprintf(buf.data(), buf.size(), "%.15g", v);
  return buf.data();
}

void write_profile_csv(std::ostream& os, const WaveProfile& profile, double xi_lo, double xi_hi, std::size_t n) {
  if (n < 2 || !(xi_hi > xi_lo)) throw InvalidInput("profile sampling needs n >= 2 and an increasing range");
  const double dx = (xi_hi - xi_lo) / static_cast<double>(n - 1);
  os << "# schema: " << schema::profile_csv << '\n' << "xi,U,dU,ddU\n";
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = xi_lo + (xi_hi - xi_lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    try {
      const ProfileValue v = profile.evaluate(xi, 0.5 * dx);
      os << format_number(xi) << ',' << format_number(v.U) << ',' << format_number(v.dU) << ','
         << format_number(v.ddU) << '\n';
    } catch (const SingularityError&) {
      os << format_number(xi) << ",,,\n";
    }
  }
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << "# schema: " << schema::trajectory_csv << '\n' << "xi,U,y,H\n";
  for (const OdeState& s : traj.states) {
    os << format_number(s.xi) << ',' << format_number(s.U) << ',' << format_number(s.y) << ','
       << format_number(hamiltonian(traj.params, s.U, s.y)) << '\n';
  }
}

void write_slice_csv_header(std::ostream& os) {
  os << "# schema: " << schema::slices_csv << '\n' << "t,x,u,m\n";
}

void write_slice_csv(std::ostream& os, const SimState& state) {
  const Diagnostics d = diagnostics(state);
  const Grid& g = state.u.grid();
  for (std::size_t i = 0; i < g.n; ++i) {
    os << format_number(state.t) << ',' << format_number(g.x(i)) << ',' << format_number(state.u[i]) << ','
       << format_number(d.m_field[i]) << '\n';
  }
}

}  // namespace nkdv
