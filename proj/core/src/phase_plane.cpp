#include "nkdv/phase_plane.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "nkdv/errors.hpp"

namespace nkdv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Levels closer than this (relative to the natural energy scale c g^2 / 4)
// are treated as the same level set.
bool same_level(double h, double target, const TravelingWaveParams& p) {
  const double scale = 1.0 + std::abs(0.25 * p.c * p.g * p.g);
  return std::abs(h - target) <= 1e-12 * scale;
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

// Kind of a nilpotent equilibrium read off the level sets of H on a small
// circle: a strict extremum is a center, a sign change of H - H(eq) a saddle.
EquilibriumKind kind_from_level_sets(const TravelingWaveParams& p, double U, double y) {
  const double rho = 1e-2 * (1.0 + std::abs(U));
  const double h_eq = hamiltonian(p, U, y);
  bool positive = false;
  bool negative = false;
  constexpr int kSamples = 64;
  for (int i = 0; i < kSamples; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / kSamples;
    const double dh = hamiltonian(p, U + rho * std::cos(theta), y + rho * std::sin(theta)) - h_eq;
    positive |= dh > 0.0;
    negative |= dh < 0.0;
  }
  if (positive && negative) return EquilibriumKind::saddle;
  if (positive || negative) return EquilibriumKind::center;
  return EquilibriumKind::degenerate;
}

Equilibrium make_equilibrium(const TravelingWaveParams& p, double U) {
  // Jacobian [[0, 1], [g + 3U^2/c, 0]]: eigenvalues +-sqrt(q).
  const double q = p.g + 3.0 * U * U / p.c;
  const double scale = std::abs(p.g) + 3.0 * U * U / std::abs(p.c);
  Equilibrium e{U, 0.0, EquilibriumKind::degenerate, false};
  if (std::abs(q) <= 8.0 * kEps * scale) {
    e.nilpotent = true;
    e.kind = kind_from_level_sets(p, U, 0.0);
  } else {
    e.kind = q > 0.0 ? EquilibriumKind::saddle : EquilibriumKind::center;
  }
  return e;
}

}  // namespace

TravelingWaveParams TravelingWaveParams::make(double c, double g) {
  if (!std::isfinite(c) || !std::isfinite(g)) throw InvalidInput("c and g must be finite");
  if (c == 0.0) throw InvalidInput("wave speed c must be non-zero");
  return {c, g};
}

bool LevelInterval::contains(double h) const noexcept {
  const bool above = lo_closed ? h >= lo : h > lo;
  const bool below = hi_closed ? h <= hi : h < hi;
  return above && below;
}

double hamiltonian(const TravelingWaveParams& p, double U, double y) noexcept {
  const double u2 = U * U;
  return 0.5 * y * y - 0.5 * p.g * u2 - u2 * u2 / (4.0 * p.c);
}

PlaneVector vector_field(const TravelingWaveParams& p, double U, double y) noexcept {
  return {y, p.g * U + U * U * U / p.c};
}

Panel panel_for(const TravelingWaveParams& p) noexcept {
  const int sc = sign(p.c);
  switch (sign(p.g)) {
    case 0:
      return sc > 0 ? Panel::F1_1 : Panel::F1_4;
    case 1:
      return sc > 0 ? Panel::F1_2 : Panel::F1_3;
    default:
      return sc > 0 ? Panel::F1_6 : Panel::F1_5;
  }
}

PhasePortrait classify(const TravelingWaveParams& params) {
  const auto p = TravelingWaveParams::make(params.c, params.g);
  PhasePortrait portrait;
  portrait.params = p;
  portrait.h0 = 0.0;
  portrait.panel = panel_for(p);

  if (p.c * p.g < 0.0) {
    const double e = std::sqrt(std::abs(p.c * p.g));
    portrait.equilibria = {make_equilibrium(p, -e), make_equilibrium(p, 0.0), make_equilibrium(p, e)};
    portrait.h1 = 0.25 * p.c * p.g * p.g;
  } else {
    portrait.equilibria = {make_equilibrium(p, 0.0)};
  }

  auto& fam = portrait.families;
  switch (portrait.panel) {
    case Panel::F1_1:
      fam.push_back({OrbitKind::unbounded_breaking, LevelInterval::point(0.0), CaseId::BREAKING_23, {}});
      break;
    case Panel::F1_2:
      fam.push_back({OrbitKind::saddle_level_exponential, LevelInterval::point(0.0), CaseId::EXP_24, {}});
      break;
    case Panel::F1_3:
      fam.push_back({OrbitKind::homoclinic_soliton, LevelInterval::point(0.0), CaseId::SOLITON_25, {}});
      fam.push_back({OrbitKind::periodic_dn, LevelInterval::open(*portrait.h1, 0.0), CaseId::DN_26, {}});
      fam.push_back({OrbitKind::periodic_cn_outer, LevelInterval::open(0.0, kInf), CaseId::CN_27, {}});
      break;
    case Panel::F1_4:
    case Panel::F1_5:
      fam.push_back({OrbitKind::periodic_cn_outer, LevelInterval::open(0.0, kInf), CaseId::CN_27, {}});
      break;
    case Panel::F1_6:
      fam.push_back({OrbitKind::heteroclinic_kink, LevelInterval::point(*portrait.h1), CaseId::KINK_28, {}});
      fam.push_back({OrbitKind::periodic_sn_inner, LevelInterval::open(0.0, *portrait.h1), CaseId::SN_29, {}});
      break;
  }
  return portrait;
}

std::optional<QuarticRoots> r_roots(const TravelingWaveParams& p, double h) {
  if (!(p.c < 0.0)) return std::nullopt;
  const double a = std::abs(p.c);
  const double disc = p.g * p.g * a * a + 4.0 * a * h;
  if (disc < 0.0) return std::nullopt;
  const double first = p.g * a + std::sqrt(disc);
  // Product relation r1^2 r2^2 = -4|c|h avoids cancellation as h -> 0.
  const double second = first != 0.0 ? -4.0 * a * h / first : p.g * a - std::sqrt(disc);
  return QuarticRoots{first, second};
}

std::optional<QuarticRoots> z_roots(const TravelingWaveParams& p, double h) {
  if (!(p.c > 0.0 && p.g < 0.0)) return std::nullopt;
  const double b = std::abs(p.g);
  const double disc = p.g * p.g * p.c * p.c - 4.0 * p.c * h;
  if (disc < 0.0) return std::nullopt;
  const double first = b * p.c + std::sqrt(disc);
  const double second = 4.0 * p.c * h / first;
  return QuarticRoots{first, second};
}

std::optional<OrbitFamily> orbit_for_level(const TravelingWaveParams& params, double h) {
  const PhasePortrait portrait = classify(params);
  const auto& p = portrait.params;
  for (const OrbitFamily& family : portrait.families) {
    const LevelInterval& r = family.h_range;
    const bool is_point = r.lo == r.hi;
    const bool hit = is_point ? same_level(h, r.lo, p)
                              : r.contains(h) && !same_level(h, r.lo, p) && !same_level(h, r.hi, p);
    if (!hit) continue;
    OrbitFamily out = family;
    switch (family.kind) {
      case OrbitKind::periodic_dn:
      case OrbitKind::periodic_cn_outer:
        out.roots = r_roots(p, h);
        if (!out.roots) return std::nullopt;
        break;
      case OrbitKind::periodic_sn_inner:
        out.roots = z_roots(p, h);
        if (!out.roots) return std::nullopt;
        break;
      default:
        break;
    }
    return out;
  }
  return std::nullopt;
}

std::string_view to_string(CaseId id) noexcept {
  constexpr std::array<std::string_view, 7> names = {"BREAKING_23", "EXP_24", "SOLITON_25", "DN_26",
                                                     "CN_27",       "KINK_28", "SN_29"};
  return names[static_cast<std::size_t>(id)];
}

std::string_view to_string(EquilibriumKind kind) noexcept {
  constexpr std::array<std::string_view, 3> names = {"saddle", "center", "degenerate"};
  return names[static_cast<std::size_t>(kind)];
}

std::string_view to_string(Panel panel) noexcept {
  constexpr std::array<std::string_view, 6> names = {"F1_1", "F1_2", "F1_3", "F1_4", "F1_5", "F1_6"};
  return names[static_cast<std::size_t>(panel)];
}

std::string_view to_string(OrbitKind kind) noexcept {
  constexpr std::array<std::string_view, 7> names = {
      "unbounded_breaking", "saddle_level_exponential", "homoclinic_soliton", "periodic_dn",
      "periodic_cn_outer",  "heteroclinic_kink",        "periodic_sn_inner"};
  return names[static_cast<std::size_t>(kind)];
}

}  // namespace nkdv
