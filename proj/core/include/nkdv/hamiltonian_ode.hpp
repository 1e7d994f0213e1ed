#pragma once

// Direct integration of U' = y, y' = gU + U^3/c.

#include <cstddef>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "nkdv/errors.hpp"
#include "nkdv/phase_plane.hpp"

namespace nkdv {

struct OdeState {
  double U = 0.0;
  double y = 0.0;
  double xi = 0.0;
};

enum class Integrator { leapfrog, rk4 };
std::string_view to_string(Integrator m) noexcept;

struct Trajectory {
  TravelingWaveParams params;
  std::vector<OdeState> states;  // every `stride`-th step, starting with the initial state
  double dxi = 0.0;
  std::size_t stride = 1;
  Integrator method = Integrator::leapfrog;
  // max |H(U, y) - H(initial)| over every step, recorded or not.
  double max_energy_error = 0.0;
};

// Thrown when |U| exceeds the overflow guard; holds the trajectory up to the
// last finite state below the guard.
class DivergenceError : public NumericFailure {
 public:
  DivergenceError(const std::string& what, std::shared_ptr<const Trajectory> partial)
      : NumericFailure(what), partial_(std::move(partial)) {}
  const Trajectory& partial() const noexcept { return *partial_; }
  const OdeState& last_valid() const noexcept { return partial_->states.back(); }

 private:
  std::shared_ptr<const Trajectory> partial_;
};

struct IntegrateOptions {
  double overflow_guard = 1e8;
  std::size_t stride = 1;
};

// Leapfrog is the velocity-Verlet splitting of the separable Hamiltonian
// (kick y by dxi/2, drift U by dxi, kick y by dxi/2); rk4 is classical
// Runge-Kutta. Throws InvalidInput for dxi <= 0 or steps < 1.
Trajectory integrate(const TravelingWaveParams& params, const OdeState& initial, double dxi,
                     std::size_t steps, Integrator method, const IntegrateOptions& options = {});

// Period from successive crossings of the section y = 0 (y going from
// positive to non-positive) with U above the midpoint of the sampled U range,
// located by linear interpolation. nullopt with fewer than two crossings.
std::optional<double> measure_period(const Trajectory& traj);

// Secular energy drift: max |H(c_i) - H(c_0)| over the section crossings c_i
// used by measure_period, H linearly interpolated to each crossing. Sampling at
// a fixed phase removes the bounded O(dxi^2) oscillation of the leapfrog
// energy error. nullopt with fewer than two crossings.
std::optional<double> secular_energy_drift(const Trajectory& traj);

}  // namespace nkdv
