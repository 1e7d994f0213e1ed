#include "nkdv/operator_lab.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "nkdv/errors.hpp"

namespace nkdv {

namespace {

void require_positive(const PotentialData& p) {
  if (p.u.min() < p.u_floor) {
    std::ostringstream os;
    os << "operator checks need u >= " << p.u_floor << "; min(u) = " << p.u.min();
    throw InvalidInput(os.str());
  }
}

double sup_ratio(const GridFunction& num, const GridFunction& den) {
  const double d = den.max_abs();
  return d > 0.0 ? num.max_abs() / d : num.max_abs();
}

double dot(const GridFunction& a, const GridFunction& b) { return integrate(a * b); }

// Zero-mean d^-1 after removing the (truncation-level) mean of q.
GridFunction inverse_derivative(const GridFunction& q, double& removed_mean) {
  const double m = mean(q);
  removed_mean = std::max(removed_mean, std::abs(m));
  return antiderivative(q + (-m), Antiderivative::zero_mean, 1.0);
}

Grid with_boundary(const Grid& g, Boundary b) { return Grid{g.x0, g.dx, g.n, b}; }

GridFunction rebase(const GridFunction& f, const Grid& g) {
  return GridFunction(g, std::vector<double>(f.values().begin(), f.values().end()));
}

}  // namespace

PotentialData PotentialData::from_u(const GridFunction& u, double u_floor, Accuracy accuracy) {
  if (u.min() < u_floor) {
    std::ostringstream os;
    os << "potential construction needs u >= " << u_floor << "; min(u) = " << u.min();
    throw InvalidInput(os.str());
  }
  GridFunction v = -(derivative(u, 2, accuracy) / u);
  return PotentialData{u, std::move(v), u_floor};
}

GridFunction apply_L(const PotentialData& p, const GridFunction& f, OperatorForm form, Accuracy accuracy) {
  require_positive(p);
  if (form == OperatorForm::sum) return derivative(f, 2, accuracy) + p.v * f;
  const GridFunction& u = p.u;
  return derivative(u * u * derivative(f / u, 1, accuracy), 1, accuracy) / u;
}

GridFunction apply_K(const GridFunction& v, const GridFunction& f, Accuracy accuracy) {
  return 0.25 * derivative(f, 3, accuracy) + 0.5 * (v * derivative(f, 1, accuracy) + derivative(v * f, 1, accuracy));
}

GridFunction apply_K(const PotentialData& p, const GridFunction& f, OperatorForm form, Accuracy accuracy) {
  require_positive(p);
  if (form == OperatorForm::sum) return apply_K(p.v, f, accuracy);
  const GridFunction u2 = p.u * p.u;
  const GridFunction inner = derivative(f / u2, 1, accuracy);
  const GridFunction middle = derivative(u2 * inner, 1, accuracy);
  return 0.25 * derivative(u2 * middle, 1, accuracy) / u2;
}

std::vector<EigenPair> eigen_smallest(const PotentialData& p, std::size_t count) {
  require_positive(p);
  const Grid& g = p.v.grid();
  if (g.boundary != Boundary::periodic) throw InvalidInput("eigen_smallest needs a periodic grid");
  if (g.n > 1024) throw InvalidInput("eigen_smallest supports at most 1024 grid points");
  if (count < 1 || count > 8) throw InvalidInput("eigen_smallest returns between 1 and 8 pairs");

  const auto n = static_cast<Eigen::Index>(g.n);
  const double inv = 1.0 / (g.dx * g.dx);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, i) = -2.0 * inv + p.v[static_cast<std::size_t>(i)];
    a(i, (i + 1) % n) += inv;
    a(i, (i + n - 1) % n) += inv;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  if (solver.info() != Eigen::Success) throw NumericFailure("dense symmetric eigensolver did not converge");

  const Eigen::VectorXd& lambda = solver.eigenvalues();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    const double ax = std::abs(lambda(x));
    const double ay = std::abs(lambda(y));
    if (ax != ay) return ax < ay;
    return lambda(x) > lambda(y);
  });

  std::vector<EigenPair> out;
  for (std::size_t k = 0; k < count && k < order.size(); ++k) {
    const Eigen::Index j = order[k];
    Eigen::VectorXd psi = solver.eigenvectors().col(j);
    psi /= std::sqrt(psi.squaredNorm() * g.dx);
    Eigen::Index peak = 0;
    psi.cwiseAbs().maxCoeff(&peak);
    if (psi(peak) < 0.0) psi = -psi;
    const double residual = (a * psi - lambda(j) * psi).cwiseAbs().maxCoeff();
    out.push_back({lambda(j), GridFunction(g, std::vector<double>(psi.data(), psi.data() + n)), residual});
  }
  return out;
}

double verify_lenard(const PotentialData& p, const EigenPair& pair, Accuracy accuracy) {
  const GridFunction grad = pair.psi * pair.psi;
  const GridFunction lhs = apply_K(p, grad, OperatorForm::sum, accuracy);
  const GridFunction rhs = pair.lambda * derivative(grad, 1, accuracy);
  return sup_ratio(lhs - rhs, grad);
}

KernelSeedResiduals kernel_seed_residuals(const PotentialData& p, Accuracy accuracy) {
  require_positive(p);
  KernelSeedResiduals r;
  const GridFunction u2 = p.u * p.u;
  r.k_of_u_squared = sup_ratio(apply_K(p, u2, OperatorForm::sum, accuracy), u2);
  r.k_of_u_squared_factored = sup_ratio(apply_K(p, u2, OperatorForm::factored, accuracy), u2);
  r.j_of_constant = derivative(GridFunction::constant(p.u.grid(), 1.0), 1, accuracy).max_abs();

  const Grid open = with_boundary(p.u.grid(), Boundary::decaying);
  const PotentialData q = PotentialData::from_u(rebase(p.u, open), p.u_floor, accuracy);
  const GridFunction w = rebase(u2, open);
  const GridFunction inv_w = GridFunction::constant(open, 1.0) / w;
  const GridFunction once = antiderivative(inv_w, Antiderivative::anchored_left);
  const GridFunction seed2 = w * once;
  const GridFunction seed3 = w * antiderivative(inv_w * once, Antiderivative::anchored_left);
  r.seed2 = sup_ratio(apply_K(q, seed2, OperatorForm::sum, accuracy), seed2);
  r.seed3 = sup_ratio(apply_K(q, seed3, OperatorForm::sum, accuracy), seed3);
  return r;
}

HierarchyAudit hierarchy_coefficient_audit(const GridFunction& v, Accuracy accuracy) {
  HierarchyAudit audit;
  const Grid& g = v.grid();
  const GridFunction two = GridFunction::constant(g, 2.0);
  const GridFunction k_two = apply_K(v, two, accuracy);
  const GridFunction vx = derivative(v, 1, accuracy);
  const GridFunction vxxx = derivative(v, 3, accuracy);
  audit.k_of_two_vs_vx = sup_ratio(k_two - vx, vx);

  double removed = 0.0;
  const GridFunction g1 = inverse_derivative(k_two, removed);
  const GridFunction v_centered = v + (-mean(v));
  audit.g1_vs_v = sup_ratio(g1 - v_centered, v_centered);

  const GridFunction kg1 = apply_K(v, g1, accuracy);
  const GridFunction nonlinear = v * vx;
  audit.residual_half = sup_ratio(kg1 - (0.5 * vxxx + 1.5 * nonlinear), kg1);
  audit.residual_quarter = sup_ratio(kg1 - (0.25 * vxxx + 1.5 * nonlinear), kg1);

  // Normal equations for kg1 ~ a vxxx + b v vx.
  const double s11 = dot(vxxx, vxxx);
  const double s12 = dot(vxxx, nonlinear);
  const double s22 = dot(nonlinear, nonlinear);
  const double t1 = dot(vxxx, kg1);
  const double t2 = dot(nonlinear, kg1);
  const double det = s11 * s22 - s12 * s12;

  const double scale = v.max_abs();
  if (scale <= 1e-14 || kg1.max_abs() <= 1e-14 * std::max(1.0, scale) || std::abs(det) <= 1e-14 * s11 * s22) {
    audit.verdict = "indeterminate";
    audit.notes.push_back("K G1 vanishes for this potential; both coefficient sets fit");
    return audit;
  }
  audit.fitted_a = (t1 * s22 - t2 * s12) / det;
  audit.fitted_b = (s11 * t2 - s12 * t1) / det;
  audit.verdict = audit.residual_quarter < audit.residual_half ? "quarter" : "half";
  audit.notes.push_back(
      "Lenard recursion with K = d^3/4 + (v d + d v)/2, G0 = 2 gives v_t = v_xxx/4 + 3/2 v v_x; "
      "the KdV equation is printed with v_xxx/2");
  audit.notes.push_back("G1 = d^-1 K G0 reproduces v up to its mean; the printed 'G1 = u' holds only as G1 = v");
  return audit;
}

HierarchyAudit hierarchy_coefficient_audit(const PotentialData& p, Accuracy accuracy) {
  HierarchyAudit audit = hierarchy_coefficient_audit(p.v, accuracy);
  if (audit.verdict == "indeterminate") return audit;
  double removed = 0.0;
  const GridFunction g1 = inverse_derivative(apply_K(p.v, GridFunction::constant(p.v.grid(), 2.0), accuracy), removed);
  const GridFunction u_centered = p.u + (-mean(p.u));
  audit.g1_vs_u = sup_ratio(g1 - u_centered, u_centered);
  return audit;
}

LaxResult lax_residual(const PotentialData& p, const TravelingWaveParams& params, const GridFunction& f,
                       Accuracy accuracy) {
  require_positive(p);
  if (p.u.grid().boundary != Boundary::periodic) throw InvalidInput("lax_residual needs a periodic grid");
  const auto tw = TravelingWaveParams::make(params.c, params.g);
  const GridFunction& u = p.u;
  const GridFunction ux = derivative(u, 1, accuracy);

  // Gram-Schmidt against {u, u_x}.
  const GridFunction e1 = (1.0 / std::sqrt(dot(u, u))) * u;
  GridFunction e2 = ux - dot(ux, e1) * e1;
  const double e2_norm = std::sqrt(dot(e2, e2));
  GridFunction fp = f - dot(f, e1) * e1;
  if (e2_norm > 1e-12 * std::sqrt(dot(ux, ux) + dot(u, u))) {
    e2 = (1.0 / e2_norm) * e2;
    fp = fp - dot(fp, e2) * e2;
  }

  LaxResult r;
  const double f_norm = std::sqrt(dot(f, f));
  r.removed_fraction = f_norm > 0.0 ? std::sqrt(dot(f - fp, f - fp)) / f_norm : 0.0;
  r.projection_warning = r.removed_fraction > 0.1;

  auto apply_v = [&](const GridFunction& g) { return -0.5 * (u * inverse_derivative(u * g, r.max_removed_mean)); };
  const GridFunction lf = apply_L(p, fp, OperatorForm::sum, accuracy);
  const GridFunction commutator = apply_v(lf) - apply_L(p, apply_v(fp), OperatorForm::sum, accuracy);
  const GridFunction vt = 2.0 * (u * ux);
  r.residual = sup_ratio(vt * fp - commutator, fp);
  r.traveling_wave_mismatch = sup_ratio(vt + tw.c * derivative(p.v, 1, accuracy), vt);
  return r;
}

}  // namespace nkdv
