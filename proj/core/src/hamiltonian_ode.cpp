#include "nkdv/hamiltonian_ode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nkdv {

namespace {

double force(const TravelingWaveParams& p, double U) { return p.g * U + U * U * U / p.c; }

void leapfrog_step(const TravelingWaveParams& p, double h, double& U, double& y) {
  y += 0.5 * h * force(p, U);
  U += h * y;
  y += 0.5 * h * force(p, U);
}

void rk4_step(const TravelingWaveParams& p, double h, double& U, double& y) {
  const double k1u = y;
  const double k1y = force(p, U);
  const double k2u = y + 0.5 * h * k1y;
  const double k2y = force(p, U + 0.5 * h * k1u);
  const double k3u = y + 0.5 * h * k2y;
  const double k3y = force(p, U + 0.5 * h * k2u);
  const double k4u = y + h * k3y;
  const double k4y = force(p, U + h * k3u);
  U += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
  y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
}

struct Crossing {
  double xi;
  double energy;
};

std::vector<Crossing> section_crossings(const Trajectory& traj) {
  std::vector<Crossing> out;
  const auto& s = traj.states;
  if (s.size() < 3) return out;
  const auto [lo, hi] = std::minmax_element(s.begin(), s.end(), [](const OdeState& a, const OdeState& b) {
    return a.U < b.U;
  });
  if (hi->U - lo->U <= 0.0) return out;
  const double anchor = 0.5 * (lo->U + hi->U);
  for (std::size_t i = 1; i < s.size(); ++i) {
    const OdeState& a = s[i - 1];
    const OdeState& b = s[i];
    if (!(a.y > 0.0 && b.y <= 0.0)) continue;
    const double w = a.y / (a.y - b.y);
    const double u = a.U + w * (b.U - a.U);
    if (u <= anchor) continue;
    const double ha = hamiltonian(traj.params, a.U, a.y);
    const double hb = hamiltonian(traj.params, b.U, b.y);
    out.push_back({a.xi + w * (b.xi - a.xi), ha + w * (hb - ha)});
  }
  return out;
}

}  // namespace

std::string_view to_string(Integrator m) noexcept { return m == Integrator::leapfrog ? "leapfrog" : "rk4"; }

Trajectory integrate(const TravelingWaveParams& params, const OdeState& initial, double dxi,
                     std::size_t steps, Integrator method, const IntegrateOptions& options) {
  const auto p = TravelingWaveParams::make(params.c, params.g);
  if (!(dxi > 0.0) || !std::isfinite(dxi)) throw InvalidInput("step dxi must be positive");
  if (steps < 1) throw InvalidInput("at least one step is required");
  if (options.stride < 1) throw InvalidInput("stride must be at least 1");
  if (!std::isfinite(initial.U) || !std::isfinite(initial.y)) throw InvalidInput("initial state must be finite");

  Trajectory traj;
  traj.params = p;
  traj.dxi = dxi;
  traj.stride = options.stride;
  traj.method = method;
  traj.states.reserve(steps / options.stride + 2);
  traj.states.push_back(initial);

  const double h0 = hamiltonian(p, initial.U, initial.y);
  double U = initial.U;
  double y = initial.y;
  for (std::size_t i = 1; i <= steps; ++i) {
    const double prev_u = U;
    const double prev_y = y;
    if (method == Integrator::leapfrog) {
      leapfrog_step(p, dxi, U, y);
    } else {
      rk4_step(p, dxi, U, y);
    }
    const double xi = initial.xi + static_cast<double>(i) * dxi;
    if (!std::isfinite(U) || !std::isfinite(y) || std::abs(U) > options.overflow_guard) {
      if (traj.states.back().xi != xi - dxi) traj.states.push_back({prev_u, prev_y, xi - dxi});
      std::ostringstream os;
      os << "|U| exceeded the overflow guard " << options.overflow_guard << " at xi = " << xi;
      throw DivergenceError(os.str(), std::make_shared<const Trajectory>(std::move(traj)));
    }
    traj.max_energy_error = std::max(traj.max_energy_error, std::abs(hamiltonian(p, U, y) - h0));
    if (i % options.stride == 0) traj.states.push_back({U, y, xi});
  }
  return traj;
}

std::optional<double> measure_period(const Trajectory& traj) {
  const auto crossings = section_crossings(traj);
  if (crossings.size() < 2) return std::nullopt;
  return (crossings.back().xi - crossings.front().xi) / static_cast<double>(crossings.size() - 1);
}

std::optional<double> secular_energy_drift(const Trajectory& traj) {
  const auto crossings = section_crossings(traj);
  if (crossings.size() < 2) return std::nullopt;
  double drift = 0.0;
  for (const Crossing& c : crossings) drift = std::max(drift, std::abs(c.energy - crossings.front().energy));
  return drift;
}

}  // namespace nkdv
