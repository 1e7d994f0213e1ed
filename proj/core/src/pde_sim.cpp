#include "nkdv/pde_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace nkdv {

namespace {

void check_positive(const SimState& s) {
  const double m = s.u.min();
  if (!(m >= s.u_min) || !(m > 0.0)) {
    std::ostringstream os;
    os << "positivity lost at t = " << s.t << ": min(u) = " << m << " < " << s.u_min;
    throw PositivityLoss(os.str(), s);
  }
}

SimState with_u(const SimState& s, GridFunction u, double t) {
  SimState out = s;
  out.u = std::move(u);
  out.t = t;
  return out;
}

// Value at the vertex of the parabola through u at i-1, i, i+1, of the
// parabola through f at the same points. Falls back to f[i] at the ends of a
// decaying grid or on a flat top.
double at_peak(const GridFunction& u, const GridFunction& f, std::size_t i) {
  const std::size_t n = u.size();
  const bool periodic = u.grid().boundary == Boundary::periodic;
  if (!periodic && (i == 0 || i + 1 == n)) return f[i];
  const std::size_t l = (i + n - 1) % n, r = (i + 1) % n;
  const double curv = u[l] - 2.0 * u[i] + u[r];
  if (!(curv < 0.0)) return f[i];
  const double s = std::clamp(0.5 * (u[l] - u[r]) / curv, -0.5, 0.5);  // offset in cells
  return f[i] + 0.5 * s * (f[r] - f[l]) + 0.5 * s * s * (f[l] - 2.0 * f[i] + f[r]);
}

}  // namespace

std::string_view to_string(Closure c) noexcept { return c == Closure::periodic ? "periodic" : "decaying"; }
std::string_view to_string(Gauge g) noexcept { return g == Gauge::conserve_L2 ? "conserve_L2" : "anchored"; }

SimState SimState::make(GridFunction u, Closure closure, Gauge gauge, double u_min, double t) {
  const bool periodic_grid = u.grid().boundary == Boundary::periodic;
  if (periodic_grid != (closure == Closure::periodic)) {
    throw InvalidInput("closure must match the grid boundary mode");
  }
  if (!(u_min > 0.0)) throw InvalidInput("u_min must be positive");
  SimState s{std::move(u), t, closure, gauge, u_min};
  return s;
}

GridFunction time_derivative(const SimState& state) {
  check_positive(state);
  const GridFunction& u = state.u;
  const GridFunction u2 = u * u;
  const GridFunction inv_u2 = GridFunction::constant(u.grid(), 1.0) / u2;

  double kappa = 0.0;
  if (state.closure == Closure::periodic) kappa = 0.5 * integrate(u2) / integrate(inv_u2);

  const GridFunction slope = kappa * inv_u2 - 0.5 * u2;
  const std::size_t peak = u.argmax();
  const GridFunction phi = antiderivative_from(slope, peak);

  // anchored: w/u vanishes at the interpolated maximum of u, not the grid node.
  double c0 = -at_peak(u, phi, peak);
  if (state.gauge == Gauge::conserve_L2) c0 = -integrate(u2 * phi) / integrate(u2);
  return u * (phi + c0);
}

SimState step(const SimState& state, double dt, double dt_max) {
  const double bound = dt_max > 0.0 ? dt_max : state.u.grid().dx;
  if (!(dt > 0.0) || dt > bound * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "time step " << dt << " outside (0, " << bound << "]";
    throw InvalidInput(os.str());
  }
  const GridFunction& u = state.u;
  try {
    const GridFunction k1 = time_derivative(state);
    const GridFunction k2 = time_derivative(with_u(state, u + (0.5 * dt) * k1, state.t + 0.5 * dt));
    const GridFunction k3 = time_derivative(with_u(state, u + (0.5 * dt) * k2, state.t + 0.5 * dt));
    const GridFunction k4 = time_derivative(with_u(state, u + dt * k3, state.t + dt));
    SimState next = with_u(state, u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4), state.t + dt);
    check_positive(next);
    return next;
  } catch (const PositivityLoss& e) {
    throw PositivityLoss(e.what(), state);
  }
}

Diagnostics diagnostics(const SimState& state) {
  const GridFunction& u = state.u;
  return {integrate(u * u), u.min(), -(derivative(u, 2) / u)};
}

double residual_check(std::span<const GridFunction> series, double dt, double skip_fraction) {
  if (series.size() < 3) throw InvalidInput("residual_check needs at least three time slices");
  if (!(dt > 0.0)) throw InvalidInput("residual_check needs dt > 0");
  const Grid& g = series.front().grid();
  for (const auto& s : series) {
    if (!(s.grid() == g)) throw InvalidInput("time slices live on different grids");
  }

  auto m_field = [](const GridFunction& u) {
    const GridFunction d2 = derivative(u, 2);
    std::vector<double> m(u.size(), 0.0);
    for (std::size_t i = 0; i < u.size(); ++i) m[i] = u[i] != 0.0 ? -d2[i] / u[i] : 0.0;
    return m;
  };

  const std::size_t edge = g.boundary == Boundary::decaying ? 2 : 0;
  double worst = 0.0;
  for (std::size_t j = 1; j + 1 < series.size(); ++j) {
    const GridFunction& prev = series[j - 1];
    const GridFunction& here = series[j];
    const GridFunction& next = series[j + 1];
    const auto m_prev = m_field(prev);
    const auto m_next = m_field(next);
    const GridFunction ux = derivative(here, 1);
    const double floor = skip_fraction * std::max({prev.max_abs(), here.max_abs(), next.max_abs()});
    for (std::size_t i = edge; i + edge < g.n; ++i) {
      if (std::abs(prev[i]) < floor || std::abs(here[i]) < floor || std::abs(next[i]) < floor) continue;
      const double mt = (m_next[i] - m_prev[i]) / (2.0 * dt);
      worst = std::max(worst, std::abs(mt - 2.0 * here[i] * ux[i]));
    }
  }
  return worst;
}

WaveProfile simulation_profile(const SimulationConfig& config) {
  ProfileConstants k;
  k.h = config.h;
  switch (config.case_id) {
    case CaseId::SOLITON_25:
      if (config.closure != Closure::decaying) throw InvalidInput("the soliton is simulated with decaying closure");
      return WaveProfile::make(config.params, CaseId::SOLITON_25, Branch::plus, k);
    case CaseId::DN_26:
      if (config.closure != Closure::periodic) throw InvalidInput("the dn wave is simulated with periodic closure");
      return WaveProfile::make(config.params, CaseId::DN_26, Branch::plus, k);
    default:
      throw InvalidInput("only the positive families SOLITON_25 and DN_26 can be simulated");
  }
}

SimulationSummary run_simulation(const SimulationConfig& config,
                                 const std::function<void(const SimState&)>& on_slice) {
  if (!(config.dt > 0.0) || !(config.t_end > 0.0)) throw InvalidInput("dt and t_end must be positive");
  const WaveProfile profile = simulation_profile(config);
  const double u_min = config.u_min.value_or(config.closure == Closure::periodic
                                                 ? 1e-6
                                                 : std::numeric_limits<double>::min());
  SimState state = SimState::make(GridFunction::sample(config.grid, [&](double x) { return profile.eval(x); }),
                                  config.closure, config.gauge, u_min);

  const auto steps = static_cast<std::size_t>(std::ceil(config.t_end / config.dt - 1e-9));
  const double dt = config.t_end / static_cast<double>(steps);

  SimulationSummary summary;
  const double l2_0 = integrate(state.u * state.u);
  summary.min_u = state.u.min();
  if (on_slice) on_slice(state);
  for (std::size_t i = 1; i <= steps; ++i) {
    state = step(state, dt);
    state.t = dt * static_cast<double>(i);
    summary.min_u = std::min(summary.min_u, state.u.min());
    summary.l2_drift = std::max(summary.l2_drift, std::abs(integrate(state.u * state.u) - l2_0) / l2_0);
    const bool last = i == steps;
    if (on_slice && (last || (config.output_every > 0 && i % config.output_every == 0))) on_slice(state);
  }

  const double shift = config.params.c * state.t;
  const GridFunction exact = GridFunction::sample(config.grid, [&](double x) { return profile.eval(x - shift); });
  summary.final_error_vs_translate = (state.u - exact).max_abs();
  summary.t_final = state.t;
  summary.steps = steps;
  return summary;
}

}  // namespace nkdv
