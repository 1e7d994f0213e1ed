#pragma once

// Traveling waves u(x, t) = U(x - c t) reduce the equation to the planar
// cubic Hamiltonian system
//
//   U' = y,   y' = g U + U^3 / c,   H(U, y) = y^2/2 - g U^2/2 - U^4/(4c),
//
// whose phase portrait depends only on the signs of c and g. This module
// classifies equilibria, energy levels and the orbit families that carry the
// explicit solution formulas.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nkdv {

struct TravelingWaveParams {
  double c = 1.0;  // wave speed, non-zero
  double g = 0.0;  // first-integral constant

  // Throws InvalidInput for c == 0 or non-finite values.
  static TravelingWaveParams make(double c, double g);
};

// Explicit solution families, one per printed formula.
enum class CaseId { BREAKING_23, EXP_24, SOLITON_25, DN_26, CN_27, KINK_28, SN_29 };

enum class EquilibriumKind { saddle, center, degenerate };

enum class Panel { F1_1, F1_2, F1_3, F1_4, F1_5, F1_6 };

enum class OrbitKind {
  unbounded_breaking,
  saddle_level_exponential,
  homoclinic_soliton,
  periodic_dn,
  periodic_cn_outer,
  heteroclinic_kink,
  periodic_sn_inner,
};

struct Equilibrium {
  double U = 0.0;
  double y = 0.0;
  EquilibriumKind kind = EquilibriumKind::degenerate;
  // Zero linearization; kind then comes from the shape of nearby level sets.
  bool nilpotent = false;
};

// Interval of energy levels; lo == hi with both ends closed is a single level.
struct LevelInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = true;
  bool hi_closed = true;

  static LevelInterval point(double h) { return {h, h, true, true}; }
  static LevelInterval open(double lo, double hi) { return {lo, hi, false, false}; }
  bool contains(double h) const noexcept;
};

// Signed squares of the quartic roots that factor the level curve:
// y^2 = (first^2 - U^2)(U^2 - second^2) / (2|c|)   (c < 0, r-roots), or
// y^2 = (first^2 - U^2)(second^2 - U^2) / (2c)     (c > 0, g < 0, z-roots).
// `second` may be negative (outer cn orbits); no square root is taken here.
struct QuarticRoots {
  double first_sq = 0.0;
  double second_sq = 0.0;
};

struct OrbitFamily {
  OrbitKind kind = OrbitKind::unbounded_breaking;
  LevelInterval h_range;
  CaseId solution_case = CaseId::BREAKING_23;
  std::optional<QuarticRoots> roots;  // attached by orbit_for_level when applicable
};

struct PhasePortrait {
  TravelingWaveParams params;
  std::vector<Equilibrium> equilibria;
  double h0 = 0.0;
  std::optional<double> h1;  // present iff c*g < 0
  Panel panel = Panel::F1_1;
  std::vector<OrbitFamily> families;
};

double hamiltonian(const TravelingWaveParams& p, double U, double y) noexcept;

struct PlaneVector {
  double dU;
  double dy;
};
PlaneVector vector_field(const TravelingWaveParams& p, double U, double y) noexcept;

Panel panel_for(const TravelingWaveParams& p) noexcept;
PhasePortrait classify(const TravelingWaveParams& p);

// The family whose level set contains h, or nullopt when the level is empty,
// consists of equilibria only, or holds orbits without an explicit formula.
std::optional<OrbitFamily> orbit_for_level(const TravelingWaveParams& p, double h);

// r_{1,2}^2 = g|c| +- sqrt(g^2 c^2 + 4|c| h) for c < 0; nullopt when the
// discriminant is negative.
std::optional<QuarticRoots> r_roots(const TravelingWaveParams& p, double h);
// z_{1,2}^2 = |g| c +- sqrt(g^2 c^2 - 4 c h) for c > 0, g < 0.
std::optional<QuarticRoots> z_roots(const TravelingWaveParams& p, double h);

std::string_view to_string(CaseId id) noexcept;
std::string_view to_string(EquilibriumKind kind) noexcept;
std::string_view to_string(Panel panel) noexcept;
std::string_view to_string(OrbitKind kind) noexcept;

}  // namespace nkdv
