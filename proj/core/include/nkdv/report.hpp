#pragma once

// Stable JSON and CSV shapes. Every JSON document carries a "schema" field and
// every CSV starts with a "# schema: ..." comment line followed by the header.

#include <nlohmann/json.hpp>
#include <ostream>
#include <span>
#include <string_view>

#include "nkdv/closed_form.hpp"
#include "nkdv/hamiltonian_ode.hpp"
#include "nkdv/operator_lab.hpp"
#include "nkdv/pde_sim.hpp"
#include "nkdv/phase_plane.hpp"

namespace nkdv {

namespace schema {
inline constexpr std::string_view portrait = "nkdv.portrait/1";
inline constexpr std::string_view audit = "nkdv.audit/1";
inline constexpr std::string_view operators = "nkdv.operators/1";
inline constexpr std::string_view simulation_summary = "nkdv.simulation-summary/1";
inline constexpr std::string_view profile_csv = "nkdv.profile/1";
inline constexpr std::string_view trajectory_csv = "nkdv.trajectory/1";
inline constexpr std::string_view slices_csv = "nkdv.slices/1";
inline constexpr std::string_view orbits_csv = "nkdv.orbits/1";
}  // namespace schema

// {"schema","c","g","h0","h1","panel","equilibria","families"}; h1 is null
// when c*g >= 0.
nlohmann::json to_json(const PhasePortrait& portrait);
nlohmann::json to_json(const OrbitFamily& family);

// {"schema","entries":[{equation,c,g,h,variant,residual,verdict,note}],"flagged","notes"}
nlohmann::json to_json(const AuditReport& report);
nlohmann::json to_json(const AuditEntry& entry);

nlohmann::json to_json(const HierarchyAudit& audit);
nlohmann::json to_json(const LaxResult& result);
nlohmann::json to_json(const KernelSeedResiduals& seeds);
nlohmann::json to_json(const SimulationSummary& summary);

// Name lookups used by the CLI and the JSON readers; throw InvalidInput.
CaseId parse_case(std::string_view name);        // "breaking23", ..., "sn29" or "SOLITON_25" style
std::string_view cli_name(CaseId id) noexcept;   // "breaking23", ...
Integrator parse_integrator(std::string_view name);
Closure parse_closure(std::string_view name);
Gauge parse_gauge(std::string_view name);
WidthVariant parse_variant(std::string_view name);
Branch parse_branch(std::string_view name);

// Writes xi,U,dU,ddU rows; rows at singular points keep xi and leave the
// remaining fields empty.
void write_profile_csv(std::ostream& os, const WaveProfile& profile, double xi_lo, double xi_hi, std::size_t n);
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
void write_slice_csv_header(std::ostream& os);
void write_slice_csv(std::ostream& os, const SimState& state);

// Formats a double with 15 significant digits, the CSV number format.
std::string format_number(double v);

}  // namespace nkdv
