#pragma once

// Explicit traveling-wave profiles U(xi) for every orbit family of the cubic
// Hamiltonian system, with analytic first and second derivatives, and a
// residual audit that substitutes each printed formula back into the
// traveling-wave ODE.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nkdv/phase_plane.hpp"

namespace nkdv {

enum class Branch { plus, minus };

// SOLITON_25 and KINK_28 exist in two widths: the argument as printed and the
// argument required by the level-set identity.
enum class WidthVariant { paper, derived };

struct ProfileConstants {
  double xi0 = 0.0;                  // shift: profiles are functions of xi + xi0
  std::optional<double> A;           // EXP_24 integration constant, A != 0
  std::optional<double> h;           // energy level for DN_26, CN_27, SN_29
  WidthVariant width = WidthVariant::derived;
};

struct ProfileValue {
  double U;
  double dU;
  double ddU;
};

class WaveProfile {
 public:
  // Throws InvalidInput naming the violated regime inequality.
  static WaveProfile make(const TravelingWaveParams& params, CaseId id, Branch branch,
                          const ProfileConstants& constants = {});

  // Throws SingularityError when |xi - s| <= guard for a singular point s.
  // A negative guard selects the default 10 * eps * max(1, |s|).
  ProfileValue evaluate(double xi, double guard = -1.0) const;
  double eval(double xi) const { return evaluate(xi).U; }
  double eval_d1(double xi) const { return evaluate(xi).dU; }
  double eval_d2(double xi) const { return evaluate(xi).ddU; }

  const TravelingWaveParams& params() const noexcept { return params_; }
  CaseId case_id() const noexcept { return id_; }
  Branch branch() const noexcept { return branch_; }
  const ProfileConstants& constants() const noexcept { return constants_; }
  const std::vector<double>& singularities() const noexcept { return singularities_; }

  // Energy H(U, U') carried by the profile when the formula is exact.
  double level() const noexcept { return level_; }
  // Spatial period for DN_26, CN_27, SN_29.
  std::optional<double> period() const;
  // Elliptic modulus for DN_26, CN_27, SN_29.
  std::optional<double> modulus() const;
  double amplitude() const noexcept { return amplitude_; }
  // Argument scale: U depends on rate * (xi + xi0).
  double rate() const noexcept { return rate_; }

 private:
  WaveProfile() = default;

  TravelingWaveParams params_;
  CaseId id_ = CaseId::SOLITON_25;
  Branch branch_ = Branch::plus;
  ProfileConstants constants_;
  std::vector<double> singularities_;
  double level_ = 0.0;
  double amplitude_ = 0.0;
  double rate_ = 0.0;
  double modulus_ = 0.0;
  double complementary_ = 1.0;
  // EXP_24: U = numer / (P e^{b t} - Q e^{-b t}).
  double numer_ = 0.0;
  double exp_p_ = 0.0;
  double exp_q_ = 0.0;
};

struct OdeResidual {
  // max |y^2 - 2h - gU^2 - U^4/(2c)| / (1 + |y^2| + |2h| + |gU^2| + |U^4/(2c)|)
  double level_set = 0.0;
  // max |U'' - gU - U^3/c| / (1 + |U''| + |gU| + |U^3/c|)
  double second_order = 0.0;
  // max |c (U''/U)' - 2 U U'|, outer derivative by central differences,
  // scaled by 1 + |c (U''/U)'| + |2 U U'|.
  double pde = 0.0;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;  // samples next to singularities or zeros of U
};

OdeResidual ode_residual(const WaveProfile& profile, std::span<const double> xi);

// Sample points covering one period (periodic families) or the window where
// the profile differs from its asymptotes (the rest), avoiding poles.
std::vector<double> audit_samples(const WaveProfile& profile, std::size_t count);

enum class Verdict { pass, fail, inconclusive };
std::string_view to_string(Verdict v) noexcept;

inline constexpr double kAuditPassTolerance = 1e-10;
inline constexpr double kAuditFailThreshold = 1e-6;

Verdict verdict_for(double residual) noexcept;

struct AuditEntry {
  std::string equation;  // "23" ... "29", or a labelled sub-check such as "26-roots"
  double c = 0.0;
  double g = 0.0;
  std::optional<double> h;
  std::string variant;  // "paper" or "derived"
  double residual = 0.0;
  Verdict verdict = Verdict::inconclusive;
  std::string note;
};

struct AuditReport {
  std::vector<AuditEntry> entries;
  // Printed formulas that fail at a point where the derived variant passes.
  std::vector<std::string> flagged;
  std::vector<std::string> notes;
};

// Deterministic regime points: five per sign pattern plus the fixed points
// (c, g) = (-1, 1), (-2, 1), (1, -1), (1, -4) that separate width variants.
std::vector<TravelingWaveParams> default_audit_regimes();

AuditReport audit_all(std::span<const TravelingWaveParams> regimes);

}  // namespace nkdv
