#pragma once

// JSON run configurations for the CLI. Every reader rejects unknown fields and
// wrong types with nkdv::InvalidInput.

#include <nlohmann/json.hpp>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nkdv/hamiltonian_ode.hpp"
#include "nkdv/pde_sim.hpp"
#include "nkdv/phase_plane.hpp"

namespace nkdv::cli {

// Typed access to one JSON object; done() throws for keys never read.
class ObjectReader {
 public:
  ObjectReader(const nlohmann::json& j, std::string where);

  bool has(const std::string& key) const;
  double number(const std::string& key);
  std::optional<double> optional_number(const std::string& key);
  std::size_t count(const std::string& key);
  std::optional<std::size_t> optional_count(const std::string& key);
  std::string text(const std::string& key);
  std::optional<std::string> optional_text(const std::string& key);
  const nlohmann::json& child(const std::string& key);
  void done() const;

 private:
  const nlohmann::json& get(const std::string& key);

  const nlohmann::json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

nlohmann::json read_json_file(const std::string& path);

struct AuditConfig {
  std::vector<TravelingWaveParams> regimes;
};
// {"regimes": [{"c": .., "g": ..}, ...]}
AuditConfig parse_audit_config(const nlohmann::json& j);

struct OdeConfig {
  TravelingWaveParams params;
  OdeState initial;
  double dxi = 1e-3;
  std::size_t steps = 1000;
  Integrator method = Integrator::leapfrog;
  IntegrateOptions options;
};
// {"c","g","U0","y0","dxi","steps","integrator","stride","overflow_guard"}
OdeConfig parse_ode_config(const nlohmann::json& j);

struct SimulateConfig {
  SimulationConfig sim;
  std::optional<std::string> slices;  // output file name for the slice CSV
};
// {"case","c","g","h","grid":{"x0","dx" or "periods","n"},"closure","gauge",
//  "dt","t_end" or "t_periods","output_every","u_min","slices"}
SimulateConfig parse_simulate_config(const nlohmann::json& j);

}  // namespace nkdv::cli
