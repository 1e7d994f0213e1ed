#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "nkdv/closed_form.hpp"
#include "nkdv/errors.hpp"

using namespace nkdv;

namespace {

TravelingWaveParams P(double c, double g) { return TravelingWaveParams::make(c, g); }

ProfileConstants with_h(double h) {
  ProfileConstants k;
  k.h = h;
  return k;
}

ProfileConstants with_width(WidthVariant w) {
  ProfileConstants k;
  k.width = w;
  return k;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return xs;
}

// One representative profile per family.
std::vector<WaveProfile> representatives() {
  ProfileConstants exp_k;
  exp_k.A = 1.5;
  return {
      WaveProfile::make(P(2, 0), CaseId::BREAKING_23, Branch::plus),
      WaveProfile::make(P(1, 1), CaseId::EXP_24, Branch::plus, exp_k),
      WaveProfile::make(P(-1, 1), CaseId::SOLITON_25, Branch::plus),
      WaveProfile::make(P(-1, 1), CaseId::DN_26, Branch::plus, with_h(-0.125)),
      WaveProfile::make(P(-1, 1), CaseId::CN_27, Branch::plus, with_h(0.3)),
      WaveProfile::make(P(1, -4), CaseId::KINK_28, Branch::plus),
      WaveProfile::make(P(1, -1), CaseId::SN_29, Branch::plus, with_h(0.125)),
  };
}

}  // namespace

TEST_CASE("soliton peak and slope") {
  const auto s = WaveProfile::make(P(-1, 1), CaseId::SOLITON_25, Branch::plus);
  CHECK(s.eval(0.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(s.eval_d1(0.0) == 0.0);
  for (double c : {-0.5, -3.0}) {
    for (double g : {0.2, 2.0}) {
      CHECK(WaveProfile::make(P(c, g), CaseId::SOLITON_25, Branch::plus).eval_d1(0.0) == 0.0);
    }
  }
}

TEST_CASE("kink limits and slope at the origin") {
  const auto k = WaveProfile::make(P(1, -1), CaseId::KINK_28, Branch::plus);
  CHECK(k.eval(0.0) == 0.0);
  CHECK(k.eval(60.0) == doctest::Approx(1.0));
  CHECK(k.eval(-60.0) == doctest::Approx(-1.0));
  CHECK(k.eval_d1(0.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  // Finite-difference cross-check of the same slope.
  const double d = 1e-4;
  CHECK((k.eval(d) - k.eval(-d)) / (2 * d) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-8));
}

TEST_CASE("breaking wave with shift -1 is 2/(xi - 1)") {
  ProfileConstants k;
  k.xi0 = -1.0;
  const auto b = WaveProfile::make(P(2, 0), CaseId::BREAKING_23, Branch::minus, k);
  REQUIRE(b.singularities().size() == 1);
  CHECK(b.singularities()[0] == 1.0);
  for (double xi : {-3.0, 0.0, 0.5, 1.5, 4.0}) CHECK(b.eval(xi) == doctest::Approx(2.0 / (xi - 1.0)).epsilon(1e-14));
  try {
    (void)b.eval(1.0);
    FAIL("expected SingularityError");
  } catch (const SingularityError& e) {
    CHECK(e.nearest_singularity() == 1.0);
  }
  CHECK_THROWS_AS(b.evaluate(1.004, 0.005), SingularityError);
  CHECK_NOTHROW(b.evaluate(1.006, 0.005));
}

TEST_CASE("dn amplitude and modulus at h = -1/8") {
  const auto dn = WaveProfile::make(P(-1, 1), CaseId::DN_26, Branch::plus, with_h(-0.125));
  const double r1sq = 1.0 + std::sqrt(0.5), r2sq = 1.0 - std::sqrt(0.5);
  CHECK(dn.amplitude() == doctest::Approx(std::sqrt(r1sq)).epsilon(1e-14));
  CHECK(dn.amplitude() == doctest::Approx(1.3066).epsilon(1e-4));
  REQUIRE(dn.modulus().has_value());
  CHECK(*dn.modulus() == doctest::Approx(std::sqrt(r1sq - r2sq) / std::sqrt(r1sq)).epsilon(1e-14));
  CHECK(*dn.modulus() == doctest::Approx(0.9102).epsilon(1e-4));
  CHECK(dn.eval(0.0) == doctest::Approx(dn.amplitude()));
}

TEST_CASE("sn profile starts at zero") {
  const auto sn = WaveProfile::make(P(1, -1), CaseId::SN_29, Branch::plus, with_h(0.125));
  CHECK(sn.eval(0.0) == 0.0);
  CHECK(sn.period().has_value());
}

TEST_CASE("regime guards name the violated inequality") {
  auto message = [](auto fn) -> std::string {
    try {
      fn();
    } catch (const InvalidInput& e) {
      return e.what();
    }
    return "";
  };
  CHECK(message([] { WaveProfile::make(P(1, 1), CaseId::SOLITON_25, Branch::plus); }).find("c < 0") != std::string::npos);
  CHECK(message([] { WaveProfile::make(P(1, 1), CaseId::KINK_28, Branch::plus); }).find("g < 0") != std::string::npos);
  CHECK(message([] { WaveProfile::make(P(1, 1), CaseId::BREAKING_23, Branch::plus); }).find("g == 0") != std::string::npos);
  CHECK(message([] { WaveProfile::make(P(-1, 1), CaseId::DN_26, Branch::plus, with_h(0.1)); }).find("h < 0") != std::string::npos);
  CHECK(message([] { WaveProfile::make(P(-1, 1), CaseId::DN_26, Branch::plus, with_h(-0.3)); }).find("c*g^2/4 < h") != std::string::npos);
  CHECK(message([] { WaveProfile::make(P(-1, 1), CaseId::CN_27, Branch::plus, with_h(-0.1)); }).find("h > 0") != std::string::npos);
  CHECK(message([] { WaveProfile::make(P(1, -1), CaseId::SN_29, Branch::plus, with_h(0.3)); }).find("h < c*g^2/4") != std::string::npos);
  CHECK_THROWS_AS(WaveProfile::make(P(1, 1), CaseId::EXP_24, Branch::plus), InvalidInput);
  CHECK_THROWS_AS(WaveProfile::make(P(-1, 1), CaseId::DN_26, Branch::plus), InvalidInput);
}

TEST_CASE("analytic derivatives agree with central differences at second order") {
  for (const auto& w : representatives()) {
    CAPTURE(to_string(w.case_id()));
    for (double xi : {-1.3, 0.37, 2.2}) {
      bool near_pole = false;
      for (double s : w.singularities()) near_pole |= std::abs(xi - s) < 0.2;
      if (near_pole) continue;
      double prev1 = 0.0, prev2 = 0.0;
      for (double d : {1e-2, 5e-3}) {
        const double e1 = std::abs((w.eval(xi + d) - w.eval(xi - d)) / (2 * d) - w.eval_d1(xi));
        const double e2 = std::abs((w.eval_d1(xi + d) - w.eval_d1(xi - d)) / (2 * d) - w.eval_d2(xi));
        const double scale = 1.0 + std::abs(w.eval(xi)) + std::abs(w.eval_d2(xi));
        CHECK(e1 < 1e-2 * scale);
        CHECK(e2 < 1e-2 * scale);
        if (prev1 > 1e-11) CHECK(prev1 / e1 == doctest::Approx(4.0).epsilon(0.15));
        if (prev2 > 1e-11) CHECK(prev2 / e2 == doctest::Approx(4.0).epsilon(0.15));
        prev1 = e1;
        prev2 = e2;
      }
    }
  }
}

TEST_CASE("ode residual examples") {
  const auto dn = WaveProfile::make(P(-1, 1), CaseId::DN_26, Branch::plus, with_h(-0.125));
  const auto period = *dn.period();
  std::vector<double> xs = linspace(0.0, period, 200);
  const auto r_dn = ode_residual(dn, xs);
  CHECK(r_dn.level_set <= 1e-11);
  CHECK(r_dn.evaluated == 200);

  const auto derived = WaveProfile::make(P(-1, 1), CaseId::SOLITON_25, Branch::plus, with_width(WidthVariant::derived));
  const auto r_der = ode_residual(derived, linspace(-8.0, 8.0, 200));
  CHECK(r_der.level_set <= 1e-11);
  CHECK(r_der.second_order <= 1e-11);

  const auto paper = WaveProfile::make(P(-1, 1), CaseId::SOLITON_25, Branch::plus, with_width(WidthVariant::paper));
  const auto r_pap = ode_residual(paper, linspace(-8.0, 8.0, 200));
  CHECK(r_pap.level_set > 1e-2);
  CHECK(verdict_for(r_pap.level_set) == Verdict::fail);

  // At |c| = 2 the printed soliton width coincides with the derived one.
  const auto coincide = WaveProfile::make(P(-2, 1), CaseId::SOLITON_25, Branch::plus, with_width(WidthVariant::paper));
  CHECK(ode_residual(coincide, linspace(-8.0, 8.0, 200)).level_set <= 1e-11);
}

TEST_CASE("kink widths: coincide at |g| = 1, separate at |g| = 4") {
  for (WidthVariant v : {WidthVariant::paper, WidthVariant::derived}) {
    const auto k = WaveProfile::make(P(1, -1), CaseId::KINK_28, Branch::plus, with_width(v));
    CHECK(ode_residual(k, audit_samples(k, 200)).level_set <= 1e-11);
  }
  const auto paper = WaveProfile::make(P(1, -4), CaseId::KINK_28, Branch::plus, with_width(WidthVariant::paper));
  const auto derived = WaveProfile::make(P(1, -4), CaseId::KINK_28, Branch::plus, with_width(WidthVariant::derived));
  CHECK(ode_residual(paper, audit_samples(paper, 200)).level_set > 1e-6);
  CHECK(ode_residual(derived, audit_samples(derived, 200)).level_set <= 1e-11);
}

TEST_CASE("audit flags both printed widths and passes the rest") {
  const std::vector<TravelingWaveParams> regimes = {P(-1, 1), P(1, -1), P(1, -4), P(2, 0), P(1, 1)};
  const auto report = audit_all(regimes);
  auto find = [&](const std::string& eq, double c, double g, const std::string& variant) -> const AuditEntry* {
    for (const auto& e : report.entries)
      if (e.equation == eq && e.c == c && e.g == g && e.variant == variant) return &e;
    return nullptr;
  };
  REQUIRE(find("25", -1, 1, "paper"));
  CHECK(find("25", -1, 1, "paper")->verdict == Verdict::fail);
  CHECK(find("25", -1, 1, "derived")->verdict == Verdict::pass);
  CHECK(find("28", 1, -1, "paper")->verdict == Verdict::pass);
  CHECK(find("28", 1, -4, "paper")->verdict == Verdict::fail);
  CHECK(find("28", 1, -4, "derived")->verdict == Verdict::pass);
  REQUIRE(find("23", 2, 0, "paper"));
  CHECK(find("23", 2, 0, "paper")->verdict == Verdict::pass);
  CHECK(report.flagged.size() >= 2);
  CHECK_FALSE(report.notes.empty());
}

TEST_CASE("default audit regimes are deterministic and include the separating points") {
  const auto a = default_audit_regimes();
  const auto b = default_audit_regimes();
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].c == b[i].c);
    CHECK(a[i].g == b[i].g);
  }
  auto has = [&](double c, double g) {
    return std::any_of(a.begin(), a.end(), [&](const auto& p) { return p.c == c && p.g == g; });
  };
  CHECK(has(-1, 1));
  CHECK(has(-2, 1));
  CHECK(has(1, -1));
  CHECK(has(1, -4));
}

TEST_CASE("verdict thresholds") {
  CHECK(verdict_for(0.0) == Verdict::pass);
  CHECK(verdict_for(kAuditPassTolerance) == Verdict::pass);
  CHECK(verdict_for(1e-8) == Verdict::inconclusive);
  CHECK(verdict_for(1e-3) == Verdict::fail);
  CHECK(verdict_for(NAN) == Verdict::fail);
}

TEST_CASE("property: level-set identity at random in-domain points") {
  std::mt19937_64 rng(17);
  for (const auto& w : representatives()) {
    CAPTURE(to_string(w.case_id()));
    const double h = w.level();
    const auto& p = w.params();
    std::uniform_real_distribution<double> xs(-6.0, 6.0);
    for (int i = 0; i < 1000; ++i) {
      const double xi = xs(rng);
      bool near_pole = false;
      for (double s : w.singularities()) near_pole |= std::abs(xi - s) < 0.05;
      if (near_pole) continue;
      const auto v = w.evaluate(xi);
      const double y2 = v.dU * v.dU;
      const double rhs = 2.0 * h + p.g * v.U * v.U + v.U * v.U * v.U * v.U / (2.0 * p.c);
      const double scale = 1.0 + std::abs(y2) + std::abs(2.0 * h) + std::abs(p.g * v.U * v.U) +
                           std::abs(v.U * v.U * v.U * v.U / (2.0 * p.c));
      CHECK(std::abs(y2 - rhs) / scale <= 1e-10);
    }
  }
}

TEST_CASE("property: the minus branch is the negated plus branch") {
  ProfileConstants exp_k;
  exp_k.A = 0.7;
  struct Pair {
    TravelingWaveParams p;
    CaseId id;
    ProfileConstants k;
  };
  const std::vector<Pair> cases = {
      {P(2, 0), CaseId::BREAKING_23, {}},         {P(1, 2), CaseId::EXP_24, exp_k},
      {P(-1, 1), CaseId::SOLITON_25, {}},         {P(-1, 1), CaseId::DN_26, with_h(-0.1)},
      {P(1, -2), CaseId::KINK_28, {}},            {P(1, -1), CaseId::SN_29, with_h(0.2)},
  };
  for (const auto& c : cases) {
    CAPTURE(to_string(c.id));
    const auto plus = WaveProfile::make(c.p, c.id, Branch::plus, c.k);
    const auto minus = WaveProfile::make(c.p, c.id, Branch::minus, c.k);
    for (double xi : {-2.7, -0.3, 0.9, 3.1}) CHECK(minus.eval(xi) == -plus.eval(xi));
  }
}

TEST_CASE("property: dn tends to the soliton as h rises to zero") {
  const auto dn = WaveProfile::make(P(-1, 1), CaseId::DN_26, Branch::plus, with_h(-1e-6));
  const auto sol = WaveProfile::make(P(-1, 1), CaseId::SOLITON_25, Branch::plus);
  for (double xi : linspace(-3.0, 3.0, 61)) CHECK(std::abs(dn.eval(xi) - sol.eval(xi)) <= 1e-3);
}

TEST_CASE("property: translation covariance") {
  for (const auto& base : representatives()) {
    ProfileConstants k = base.constants();
    k.xi0 += 0.75;
    const auto shifted = WaveProfile::make(base.params(), base.case_id(), base.branch(), k);
    for (double xi : {-2.0, 0.4, 1.9}) {
      bool near_pole = false;
      for (double s : shifted.singularities()) near_pole |= std::abs(xi - s) < 0.1;
      if (near_pole) continue;
      CHECK(shifted.eval(xi) == base.eval(xi + 0.75));
    }
  }
}

TEST_CASE("exp profile: pole at the balanced exponentials") {
  // A^2 = 8cg puts the pole at xi = -xi0.
  ProfileConstants k;
  k.A = std::sqrt(8.0);
  k.xi0 = 0.5;
  const auto e = WaveProfile::make(P(1, 1), CaseId::EXP_24, Branch::plus, k);
  REQUIRE(e.singularities().size() == 1);
  CHECK(e.singularities()[0] == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK_THROWS_AS(e.eval(-0.5), SingularityError);
  // Negative A gives the opposite-sign numerator.
  ProfileConstants kn = k;
  kn.A = -*k.A;
  const auto en = WaveProfile::make(P(1, 1), CaseId::EXP_24, Branch::plus, kn);
  CHECK(en.eval(1.0) == doctest::Approx(-e.eval(1.0)));
}
