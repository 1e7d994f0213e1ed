#pragma once

// Method-of-lines evolution of (-u_xx/u)_t = 2 u u_x.
//
// With w = u_t the equation reads u w'' - u'' w = -2 u^3 u', and since
// u w'' - u'' w = (u w' - w u')' = (u^2 (w/u)')' it integrates twice:
//
//   (w/u)' = kappa / u^2 - u^2 / 2,      w = u (c0 + int_{x0}^{x} (kappa/u^2 - u^2/2)).
//
// kappa is fixed by the closure (0 for decaying data, periodicity of w/u for
// periodic data) and c0 by the gauge. No spatial derivative of u is taken.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "nkdv/closed_form.hpp"
#include "nkdv/errors.hpp"
#include "nkdv/grid.hpp"

namespace nkdv {

enum class Closure { periodic, decaying };
// conserve_L2: c0 makes int u w = 0. anchored: w/u = 0 at the maximum of u,
// located by a parabola through the largest sample and its neighbours.
enum class Gauge { conserve_L2, anchored };

std::string_view to_string(Closure c) noexcept;
std::string_view to_string(Gauge g) noexcept;

struct SimState {
  GridFunction u;
  double t = 0.0;
  Closure closure = Closure::periodic;
  Gauge gauge = Gauge::conserve_L2;
  double u_min = 1e-6;

  // Throws InvalidInput if the closure does not match the grid boundary.
  static SimState make(GridFunction u, Closure closure, Gauge gauge, double u_min = 1e-6, double t = 0.0);
};

class PositivityLoss : public NumericFailure {
 public:
  PositivityLoss(const std::string& what, SimState state) : NumericFailure(what), state_(std::move(state)) {}
  const SimState& state() const noexcept { return state_; }

 private:
  SimState state_;
};

// u_t for the current state. Throws PositivityLoss if min(u) < u_min.
GridFunction time_derivative(const SimState& state);

// Classical RK4 in t. dt_max <= 0 selects the default bound dt <= dx.
SimState step(const SimState& state, double dt, double dt_max = -1.0);

struct Diagnostics {
  double l2;            // integral of u^2
  double min_u;
  GridFunction m_field;  // -u_xx / u
};
Diagnostics diagnostics(const SimState& state);

// max |(-u_xx/u)_t - 2 u u_x| from centred differences in t (uniform dt) and
// x over interior slices and points. Points where any of the three slices has
// |u| < skip_fraction * max|u| are skipped, as are the two outermost points
// of decaying grids.
double residual_check(std::span<const GridFunction> series, double dt, double skip_fraction = 1e-2);

struct SimulationConfig {
  CaseId case_id = CaseId::SOLITON_25;  // SOLITON_25 (decaying) or DN_26 (periodic)
  TravelingWaveParams params;
  std::optional<double> h;
  Grid grid;
  Closure closure = Closure::decaying;
  Gauge gauge = Gauge::anchored;
  double dt = 0.005;
  double t_end = 1.0;
  std::size_t output_every = 0;  // 0: no intermediate slices
  std::optional<double> u_min;   // default 1e-6 periodic, smallest normal double decaying
};

struct SimulationSummary {
  double final_error_vs_translate = 0.0;  // max |u(x, t_end) - U(x - c t_end)|
  double l2_drift = 0.0;                  // max_t |l2(t) - l2(0)| / l2(0)
  double min_u = 0.0;                     // over all recorded steps
  double t_final = 0.0;
  std::size_t steps = 0;
};

// The exact traveling wave used as initial data and translate oracle.
WaveProfile simulation_profile(const SimulationConfig& config);

// Runs from t = 0 to t_end with steps = ceil(t_end / dt) of equal size.
// on_slice is called with the initial state, every output_every steps and
// with the final state.
SimulationSummary run_simulation(const SimulationConfig& config,
                                 const std::function<void(const SimState&)>& on_slice = {});

}  // namespace nkdv
