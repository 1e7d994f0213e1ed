#include "nkdv/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

#include "nkdv/elliptic.hpp"
#include "nkdv/errors.hpp"

namespace nkdv {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

[[noreturn]] void regime_violation(CaseId id, const std::string& inequality) {
  std::ostringstream os;
  os << to_string(id) << " requires " << inequality;
  throw InvalidInput(os.str());
}

double sech(double x) { return 1.0 / std::cosh(x); }

double require_h(CaseId id, const ProfileConstants& k) {
  if (!k.h || !std::isfinite(*k.h)) regime_violation(id, "an energy level h");
  return *k.h;
}

// SplitMix64: portable, so audit regimes are identical on every platform.
class SplitMix {
 public:
  explicit SplitMix(std::uint64_t seed) : state_(seed) {}
  double uniform(double lo, double hi) {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z ^= z >> 31;
    return lo + (hi - lo) * static_cast<double>(z >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

}  // namespace

WaveProfile WaveProfile::make(const TravelingWaveParams& params, CaseId id, Branch branch,
                              const ProfileConstants& constants) {
  const auto p = TravelingWaveParams::make(params.c, params.g);
  if (!std::isfinite(constants.xi0)) throw InvalidInput("xi0 must be finite");

  WaveProfile w;
  w.params_ = p;
  w.id_ = id;
  w.branch_ = branch;
  w.constants_ = constants;
  const double c = p.c;
  const double g = p.g;
  const double abs_c = std::abs(c);
  const double abs_g = std::abs(g);

  switch (id) {
    case CaseId::BREAKING_23:
      if (!(c > 0.0)) regime_violation(id, "c > 0");
      if (g != 0.0) regime_violation(id, "g == 0");
      w.amplitude_ = std::sqrt(2.0 * c);
      w.rate_ = 1.0;
      w.level_ = 0.0;
      w.singularities_ = {-constants.xi0};
      break;

    case CaseId::EXP_24: {
      if (!(c > 0.0)) regime_violation(id, "c > 0");
      if (!(g > 0.0)) regime_violation(id, "g > 0");
      if (!constants.A || !std::isfinite(*constants.A) || *constants.A == 0.0) {
        regime_violation(id, "a finite integration constant A != 0");
      }
      const double a = *constants.A;
      w.rate_ = std::sqrt(g);
      w.exp_p_ = a * a;
      w.exp_q_ = 8.0 * c * g;
      w.numer_ = 8.0 * a * c * g;
      w.amplitude_ = std::abs(w.numer_);
      w.level_ = 0.0;
      // A^2 e^{b t} = 8cg e^{-b t}  <=>  t = ln(8cg / A^2) / (2b); real since A^2 * 8cg > 0.
      w.singularities_ = {std::log(w.exp_q_ / w.exp_p_) / (2.0 * w.rate_) - constants.xi0};
      break;
    }

    case CaseId::SOLITON_25:
      if (!(c < 0.0)) regime_violation(id, "c < 0");
      if (!(g > 0.0)) regime_violation(id, "g > 0");
      w.amplitude_ = std::sqrt(2.0 * abs_c * g);
      w.rate_ = constants.width == WidthVariant::derived ? std::sqrt(g) : std::sqrt(abs_c * g / 2.0);
      w.level_ = 0.0;
      break;

    case CaseId::DN_26: {
      if (!(c < 0.0)) regime_violation(id, "c < 0");
      if (!(g > 0.0)) regime_violation(id, "g > 0");
      const double h = require_h(id, constants);
      const double h1 = 0.25 * c * g * g;
      if (!(h > h1 && h < 0.0)) regime_violation(id, "c*g^2/4 < h < 0");
      const auto r = r_roots(p, h);
      if (!r || !(r->second_sq > 0.0)) regime_violation(id, "c*g^2/4 < h < 0");
      const double r1 = std::sqrt(r->first_sq);
      const double r2 = std::sqrt(r->second_sq);
      w.amplitude_ = r1;
      w.rate_ = r1 / std::sqrt(2.0 * abs_c);
      w.modulus_ = std::sqrt(r->first_sq - r->second_sq) / r1;
      w.complementary_ = r2 / r1;
      w.level_ = h;
      break;
    }

    case CaseId::CN_27: {
      if (!(c < 0.0)) regime_violation(id, "c < 0");
      const double h = require_h(id, constants);
      if (!(h > 0.0)) regime_violation(id, "h > 0");
      const auto r = r_roots(p, h);
      const double spread = r->first_sq - r->second_sq;
      w.amplitude_ = std::sqrt(r->first_sq);
      w.rate_ = std::sqrt(spread / (2.0 * abs_c));
      w.modulus_ = w.amplitude_ / std::sqrt(spread);
      w.complementary_ = std::sqrt(-r->second_sq / spread);
      w.level_ = h;
      break;
    }

    case CaseId::KINK_28:
      if (!(c > 0.0)) regime_violation(id, "c > 0");
      if (!(g < 0.0)) regime_violation(id, "g < 0");
      w.amplitude_ = std::sqrt(c * abs_g);
      w.rate_ = constants.width == WidthVariant::derived ? std::sqrt(abs_g / 2.0)
                                                         : 1.0 / std::sqrt(2.0 * abs_g);
      w.level_ = 0.25 * c * g * g;
      break;

    case CaseId::SN_29: {
      if (!(c > 0.0)) regime_violation(id, "c > 0");
      if (!(g < 0.0)) regime_violation(id, "g < 0");
      const double h = require_h(id, constants);
      const double h1 = 0.25 * c * g * g;
      if (!(h > 0.0 && h < h1)) regime_violation(id, "0 < h < c*g^2/4");
      const auto z = z_roots(p, h);
      const double z1 = std::sqrt(z->first_sq);
      const double z2 = std::sqrt(z->second_sq);
      w.amplitude_ = z2;
      w.rate_ = z1 / std::sqrt(2.0 * c);
      w.modulus_ = z2 / z1;
      w.complementary_ = std::sqrt(z->first_sq - z->second_sq) / z1;
      w.level_ = h;
      break;
    }
  }
  return w;
}

ProfileValue WaveProfile::evaluate(double xi, double guard) const {
  if (!std::isfinite(xi)) throw InvalidInput("profile argument must be finite");
  for (double s : singularities_) {
    const double radius = guard >= 0.0 ? guard : 10.0 * kEps * std::max(1.0, std::abs(s));
    if (std::abs(xi - s) <= radius) {
      std::ostringstream os;
      os << to_string(id_) << " is singular at xi = " << s;
      throw SingularityError(os.str(), s);
    }
  }

  const double sigma = branch_ == Branch::plus ? 1.0 : -1.0;
  const double t = xi + constants_.xi0;
  const double b = rate_;

  switch (id_) {
    case CaseId::BREAKING_23: {
      // U = -+ sqrt(2c) / t
      const double s = -sigma * amplitude_;
      return {s / t, -s / (t * t), 2.0 * s / (t * t * t)};
    }
    case CaseId::EXP_24: {
      // Scaled by e^{-b|t|} to stay finite for large |t|:
      // D'/D = b (P e^{bt} + Q e^{-bt}) / (P e^{bt} - Q e^{-bt}).
      const double r = std::exp(-b * std::abs(t));
      double u = 0.0;
      double ratio = 0.0;
      if (t >= 0.0) {
        const double d = exp_p_ - exp_q_ * r * r;
        u = sigma * numer_ * r / d;
        ratio = b * (exp_p_ + exp_q_ * r * r) / d;
      } else {
        const double d = exp_p_ * r * r - exp_q_;
        u = sigma * numer_ * r / d;
        ratio = b * (exp_p_ * r * r + exp_q_) / d;
      }
      return {u, -u * ratio, u * (2.0 * ratio * ratio - b * b)};
    }
    case CaseId::SOLITON_25: {
      const double s = sech(b * t);
      const double th = std::tanh(b * t);
      const double a = sigma * amplitude_;
      return {a * s, -a * b * s * th, a * b * b * s * (1.0 - 2.0 * s * s)};
    }
    case CaseId::DN_26: {
      const auto j = elliptic::jacobi(b * t, elliptic::Modulus::with_complement(modulus_, complementary_));
      const double a = sigma * amplitude_;
      const double k2 = modulus_ * modulus_;
      return {a * j.dn, -a * b * k2 * j.sn * j.cn, -a * b * b * k2 * j.dn * (j.cn * j.cn - j.sn * j.sn)};
    }
    case CaseId::CN_27: {
      const auto j = elliptic::jacobi(b * t, elliptic::Modulus::with_complement(modulus_, complementary_));
      const double a = sigma * amplitude_;
      const double k2 = modulus_ * modulus_;
      return {a * j.cn, -a * b * j.sn * j.dn, -a * b * b * j.cn * (j.dn * j.dn - k2 * j.sn * j.sn)};
    }
    case CaseId::KINK_28: {
      const double th = std::tanh(b * t);
      const double s2 = sech(b * t) * sech(b * t);
      const double a = sigma * amplitude_;
      return {a * th, a * b * s2, -2.0 * a * b * b * s2 * th};
    }
    case CaseId::SN_29: {
      const auto j = elliptic::jacobi(b * t, elliptic::Modulus::with_complement(modulus_, complementary_));
      const double a = sigma * amplitude_;
      const double k2 = modulus_ * modulus_;
      return {a * j.sn, a * b * j.cn * j.dn, -a * b * b * j.sn * (j.dn * j.dn + k2 * j.cn * j.cn)};
    }
  }
  throw InvalidInput("unknown case id");
}

std::optional<double> WaveProfile::period() const {
  const elliptic::Modulus m = elliptic::Modulus::with_complement(modulus_, complementary_);
  switch (id_) {
    case CaseId::DN_26:
      return 2.0 * elliptic::complete_K(m) / rate_;
    case CaseId::CN_27:
    case CaseId::SN_29:
      return 4.0 * elliptic::complete_K(m) / rate_;
    default:
      return std::nullopt;
  }
}

std::optional<double> WaveProfile::modulus() const {
  switch (id_) {
    case CaseId::DN_26:
    case CaseId::CN_27:
    case CaseId::SN_29:
      return modulus_;
    default:
      return std::nullopt;
  }
}

OdeResidual ode_residual(const WaveProfile& profile, std::span<const double> xi) {
  const auto& p = profile.params();
  const double h = profile.level();
  const double delta = 1e-4 / profile.rate();
  // Poles are skipped within this distance; the outer difference needs room.
  const double pole_clearance = std::max(1e-3 / profile.rate(), 4.0 * delta);
  OdeResidual out;

  auto near_pole = [&](double x) {
    return std::any_of(profile.singularities().begin(), profile.singularities().end(),
                       [&](double s) { return std::abs(x - s) < pole_clearance; });
  };

  for (double x : xi) {
    if (near_pole(x)) {
      ++out.skipped;
      continue;
    }
    const ProfileValue v = profile.evaluate(x);
    const double y2 = v.dU * v.dU;
    const double gu2 = p.g * v.U * v.U;
    const double quartic = v.U * v.U * v.U * v.U / (2.0 * p.c);
    const double level_scale = 1.0 + y2 + std::abs(2.0 * h) + std::abs(gu2) + std::abs(quartic);
    out.level_set = std::max(out.level_set, std::abs(y2 - 2.0 * h - gu2 - quartic) / level_scale);

    const double cubic = v.U * v.U * v.U / p.c;
    const double force_scale = 1.0 + std::abs(v.ddU) + std::abs(p.g * v.U) + std::abs(cubic);
    out.second_order = std::max(out.second_order, std::abs(v.ddU - p.g * v.U - cubic) / force_scale);

    const ProfileValue lo = profile.evaluate(x - delta);
    const ProfileValue hi = profile.evaluate(x + delta);
    const double floor = 1e-6 * profile.amplitude();
    if (std::abs(lo.U) > floor && std::abs(hi.U) > floor) {
      const double dq = (hi.ddU / hi.U - lo.ddU / lo.U) / (2.0 * delta);
      const double lhs = p.c * dq;
      const double rhs = 2.0 * v.U * v.dU;
      out.pde = std::max(out.pde, std::abs(lhs - rhs) / (1.0 + std::abs(lhs) + std::abs(rhs)));
    }
    ++out.evaluated;
  }
  return out;
}

std::vector<double> audit_samples(const WaveProfile& profile, std::size_t count) {
  std::vector<double> xi;
  xi.reserve(count);
  const double shift = profile.constants().xi0;
  const double n = static_cast<double>(count);
  if (auto period = profile.period()) {
    for (std::size_t i = 0; i < count; ++i) xi.push_back(-shift + *period * (static_cast<double>(i) + 0.5) / n);
    return xi;
  }
  // Window of +-12 widths around the feature (pole or centre).
  double centre = -shift;
  if (!profile.singularities().empty()) centre = profile.singularities().front();
  const double half = 12.0 / profile.rate();
  for (std::size_t i = 0; i < count; ++i) {
    xi.push_back(centre - half + 2.0 * half * (static_cast<double>(i) + 0.5) / n);
  }
  return xi;
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    default:
      return "inconclusive";
  }
}

Verdict verdict_for(double residual) noexcept {
  if (residual <= kAuditPassTolerance) return Verdict::pass;
  if (residual <= kAuditFailThreshold) return Verdict::inconclusive;
  return Verdict::fail;  // includes NaN
}

std::vector<TravelingWaveParams> default_audit_regimes() {
  SplitMix rng(20100830);
  std::vector<TravelingWaveParams> out;
  auto add = [&](double c, double g) { out.push_back(TravelingWaveParams::make(c, g)); };
  for (int i = 0; i < 5; ++i) add(rng.uniform(0.2, 5.0), 0.0);                         // F1_1
  for (int i = 0; i < 5; ++i) add(rng.uniform(0.2, 5.0), rng.uniform(0.2, 5.0));       // F1_2
  for (int i = 0; i < 5; ++i) add(-rng.uniform(0.2, 5.0), rng.uniform(0.2, 5.0));      // F1_3
  add(-rng.uniform(0.2, 5.0), 0.0);                                                     // F1_4
  for (int i = 0; i < 4; ++i) add(-rng.uniform(0.2, 5.0), -rng.uniform(0.2, 5.0));     // F1_5
  for (int i = 0; i < 5; ++i) add(rng.uniform(0.2, 5.0), -rng.uniform(0.2, 5.0));      // F1_6
  add(-1.0, 1.0);
  add(-2.0, 1.0);
  add(1.0, -1.0);
  add(1.0, -4.0);
  return out;
}

namespace {

constexpr std::size_t kAuditSamples = 200;

AuditEntry audit_profile(const WaveProfile& w, const std::string& equation, const std::string& variant,
                         std::string note = {}) {
  const auto samples = audit_samples(w, kAuditSamples);
  const OdeResidual r = ode_residual(w, samples);
  AuditEntry e;
  e.equation = equation;
  e.c = w.params().c;
  e.g = w.params().g;
  if (w.case_id() == CaseId::DN_26 || w.case_id() == CaseId::CN_27 || w.case_id() == CaseId::SN_29) {
    e.h = w.level();
  }
  e.variant = variant;
  e.residual = r.level_set;
  e.verdict = verdict_for(r.level_set);
  e.note = std::move(note);
  return e;
}

// Relative mismatch of a printed root pair against the level-curve
// factorization: (sum - expected_sum, product - expected_product).
double root_mismatch(double first, double second, double sum, double product) {
  const double scale = 1.0 + std::abs(sum) + std::abs(product);
  return std::max(std::abs(first + second - sum), std::abs(first * second - product)) / scale;
}

}  // namespace

AuditReport audit_all(std::span<const TravelingWaveParams> regimes) {
  AuditReport report;
  auto flag_if = [&](CaseId id, const AuditEntry& paper, const AuditEntry& derived) {
    if (paper.verdict == Verdict::fail && derived.verdict == Verdict::pass) {
      std::ostringstream os;
      os << to_string(id) << " printed width fails at c=" << paper.c << ", g=" << paper.g
         << " (residual " << paper.residual << ") while the derived width passes";
      report.flagged.push_back(os.str());
    }
  };

  for (const TravelingWaveParams& raw : regimes) {
    const auto p = TravelingWaveParams::make(raw.c, raw.g);
    const double h1 = 0.25 * p.c * p.g * p.g;
    switch (panel_for(p)) {
      case Panel::F1_1:
        report.entries.push_back(audit_profile(WaveProfile::make(p, CaseId::BREAKING_23, Branch::plus), "23", "paper"));
        break;
      case Panel::F1_2: {
        const double a_pos = 1.3 * std::sqrt(8.0 * p.c * p.g);
        for (double a : {a_pos, -0.7}) {
          ProfileConstants k;
          k.A = a;
          std::ostringstream note;
          note << "A=" << a;
          report.entries.push_back(
              audit_profile(WaveProfile::make(p, CaseId::EXP_24, Branch::plus, k), "24", "paper", note.str()));
        }
        break;
      }
      case Panel::F1_3: {
        ProfileConstants printed;
        printed.width = WidthVariant::paper;
        const auto paper = audit_profile(WaveProfile::make(p, CaseId::SOLITON_25, Branch::plus, printed), "25", "paper");
        const auto derived = audit_profile(WaveProfile::make(p, CaseId::SOLITON_25, Branch::plus), "25", "derived");
        report.entries.push_back(paper);
        report.entries.push_back(derived);
        flag_if(CaseId::SOLITON_25, paper, derived);

        ProfileConstants dn;
        dn.h = 0.5 * h1;
        report.entries.push_back(audit_profile(WaveProfile::make(p, CaseId::DN_26, Branch::plus, dn), "26", "paper"));

        // Root formulas: printed discriminant g^2c^2 - 4|c|h versus g^2c^2 + 4|c|h.
        const double a = std::abs(p.c);
        const double h = *dn.h;
        const double sum = 2.0 * p.g * a;
        const double product = -4.0 * a * h;
        for (const bool printed_sign : {true, false}) {
          const double disc = p.g * p.g * a * a + (printed_sign ? -4.0 : 4.0) * a * h;
          AuditEntry e;
          e.equation = "26-roots";
          e.c = p.c;
          e.g = p.g;
          e.h = h;
          e.variant = printed_sign ? "paper" : "derived";
          e.residual = root_mismatch(p.g * a + std::sqrt(disc), p.g * a - std::sqrt(disc), sum, product);
          e.verdict = verdict_for(e.residual);
          e.note = "r1^2 + r2^2 = 2g|c| and r1^2 r2^2 = -4|c|h";
          report.entries.push_back(e);
        }
        if (report.entries.end()[-2].verdict == Verdict::fail && report.entries.back().verdict == Verdict::pass) {
          std::ostringstream os;
          os << "DN_26 roots with discriminant g^2c^2 - 4|c|h fail at c=" << p.c << ", g=" << p.g
             << "; the factorization requires g^2c^2 + 4|c|h";
          report.flagged.push_back(os.str());
        }
        [[fallthrough]];
      }
      case Panel::F1_4:
      case Panel::F1_5: {
        ProfileConstants cn;
        cn.h = 0.5 + std::abs(h1);
        report.entries.push_back(audit_profile(WaveProfile::make(p, CaseId::CN_27, Branch::plus, cn), "27", "paper"));
        break;
      }
      case Panel::F1_6: {
        ProfileConstants printed;
        printed.width = WidthVariant::paper;
        const auto paper = audit_profile(WaveProfile::make(p, CaseId::KINK_28, Branch::plus, printed), "28", "paper");
        const auto derived = audit_profile(WaveProfile::make(p, CaseId::KINK_28, Branch::plus), "28", "derived");
        report.entries.push_back(paper);
        report.entries.push_back(derived);
        flag_if(CaseId::KINK_28, paper, derived);

        ProfileConstants sn;
        sn.h = 0.5 * h1;
        report.entries.push_back(audit_profile(WaveProfile::make(p, CaseId::SN_29, Branch::plus, sn), "29", "paper"));

        const double h = *sn.h;
        const double disc = p.g * p.g * p.c * p.c - 4.0 * p.c * h;
        const double b = std::abs(p.g);
        AuditEntry e;
        e.equation = "29-roots";
        e.c = p.c;
        e.g = p.g;
        e.h = h;
        e.variant = "paper";
        e.residual = root_mismatch(b * p.c + std::sqrt(disc), b * p.c - std::sqrt(disc), 2.0 * p.c * b, 4.0 * p.c * h);
        e.verdict = verdict_for(e.residual);
        e.note = "z1^2 + z2^2 = 2c|g| and z1^2 z2^2 = 4ch";
        report.entries.push_back(e);
        break;
      }
    }
  }

  report.notes = {
      "CN_27 is printed in terms of u(xi); read as U(xi). SN_29 is printed with Z_2; read as z_2.",
      "The c > 0, g < 0 level relation y^2 = (4ch + 2cgU^2 + U^4)/(2c) is printed with an unbalanced parenthesis; "
      "with g < 0 the term 2cgU^2 equals -2c|g|U^2, so the relation agrees with the Hamiltonian.",
      "EXP_24 is checked for both signs of A; the residual does not depend on the sign.",
      "Residuals are the scaled level-set residual |y^2 - 2h - gU^2 - U^4/(2c)| / (1 + sum of term magnitudes).",
  };
  return report;
}

}  // namespace nkdv
