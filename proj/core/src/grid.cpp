#include "nkdv/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nkdv/errors.hpp"

namespace nkdv {

namespace {

void require_same_grid(const GridFunction& a, const GridFunction& b) {
  if (!(a.grid() == b.grid())) {
    throw InvalidInput("grid functions live on different grids");
  }
}

template <class Op>
std::vector<double> zip(const GridFunction& a, const GridFunction& b, Op op) {
  require_same_grid(a, b);
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(a[i], b[i]);
  return out;
}

// Half-width of the central stencil for a derivative of the given order.
int central_half_width(int order, int accuracy) { return (order + 1) / 2 + accuracy / 2 - 1; }

}  // namespace

Grid Grid::make(double x0, double dx, std::size_t n, Boundary boundary) {
  if (!std::isfinite(x0)) throw InvalidInput("grid origin must be finite");
  if (!(dx > 0.0) || !std::isfinite(dx)) throw InvalidInput("grid spacing must be positive");
  if (n < 8) throw InvalidInput("grid needs at least 8 points");
  return Grid{x0, dx, n, boundary};
}

Grid Grid::periodic_over(double a, double b, std::size_t n) {
  if (n < 8) throw InvalidInput("grid needs at least 8 points");
  return make(a, (b - a) / static_cast<double>(n), n, Boundary::periodic);
}

Grid Grid::decaying_over(double a, double b, std::size_t n) {
  if (n < 8) throw InvalidInput("grid needs at least 8 points");
  return make(a, (b - a) / static_cast<double>(n - 1), n, Boundary::decaying);
}

double Grid::length() const noexcept {
  return boundary == Boundary::periodic ? static_cast<double>(n) * dx
                                        : static_cast<double>(n - 1) * dx;
}

Grid Grid::refined() const {
  if (boundary == Boundary::periodic) return Grid{x0, dx / 2.0, 2 * n, boundary};
  return Grid{x0, dx / 2.0, 2 * n - 1, boundary};
}

GridFunction::GridFunction(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.n) {
    std::ostringstream os;
    os << "grid function has " << values_.size() << " values for a grid of " << grid_.n;
    throw InvalidInput(os.str());
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw InvalidInput("grid function values must be finite");
  }
}

GridFunction::GridFunction(Unchecked, Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {}

GridFunction GridFunction::checked_result(Grid grid, std::vector<double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) throw NumericFailure("grid operation produced a non-finite value");
  }
  return GridFunction(Unchecked{}, grid, std::move(values));
}

GridFunction GridFunction::sample(const Grid& grid, const std::function<double(double)>& f) {
  std::vector<double> v(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) v[i] = f(grid.x(i));
  return GridFunction(grid, std::move(v));
}

GridFunction GridFunction::constant(const Grid& grid, double value) {
  return GridFunction(grid, std::vector<double>(grid.n, value));
}

double GridFunction::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double GridFunction::min() const noexcept { return *std::min_element(values_.begin(), values_.end()); }
double GridFunction::max() const noexcept { return *std::max_element(values_.begin(), values_.end()); }

std::size_t GridFunction::argmax() const noexcept {
  return static_cast<std::size_t>(std::max_element(values_.begin(), values_.end()) - values_.begin());
}

GridFunction GridFunction::map(const std::function<double(double)>& op) const {
  std::vector<double> out(values_.size());
  std::transform(values_.begin(), values_.end(), out.begin(), op);
  return checked_result(grid_, std::move(out));
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  return GridFunction::checked_result(a.grid(), zip(a, b, [](double x, double y) { return x + y; }));
}
GridFunction operator-(const GridFunction& a, const GridFunction& b) {
  return GridFunction::checked_result(a.grid(), zip(a, b, [](double x, double y) { return x - y; }));
}
GridFunction operator*(const GridFunction& a, const GridFunction& b) {
  return GridFunction::checked_result(a.grid(), zip(a, b, [](double x, double y) { return x * y; }));
}
GridFunction operator/(const GridFunction& a, const GridFunction& b) {
  return GridFunction::checked_result(a.grid(), zip(a, b, [](double x, double y) { return x / y; }));
}
GridFunction operator*(double s, const GridFunction& a) {
  return a.map([s](double x) { return s * x; });
}
GridFunction operator+(const GridFunction& a, double s) {
  return a.map([s](double x) { return x + s; });
}

std::vector<double> fd_weights(double z, std::span<const double> nodes, int order) {
  // Fornberg, "Generation of finite difference formulas on arbitrarily spaced
  // grids", Math. Comp. 51 (1988).
  const std::size_t n = nodes.size();
  const auto m = static_cast<std::size_t>(order);
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - z;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - z;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k) {
          c[i][k] = c1 * (static_cast<double>(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        }
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k) {
        c[j][k] = (c4 * c[j][k] - static_cast<double>(k) * c[j][k - 1]) / c3;
      }
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = c[i][m];
  return w;
}

GridFunction derivative(const GridFunction& f, int order, Accuracy accuracy) {
  if (order < 1 || order > 3) throw InvalidInput("derivative order must be 1, 2 or 3");
  const int acc = static_cast<int>(accuracy);
  if (acc != 2 && acc != 4) throw InvalidInput("derivative accuracy must be second or fourth");

  const Grid& g = f.grid();
  const auto n = static_cast<long>(g.n);
  const int m = central_half_width(order, acc);
  const double scale = std::pow(g.dx, -order);

  std::vector<double> offsets;
  for (int k = -m; k <= m; ++k) offsets.push_back(k);
  const std::vector<double> central = fd_weights(0.0, offsets, order);

  std::vector<double> out(g.n, 0.0);
  const auto vals = f.values();

  if (g.boundary == Boundary::periodic) {
    for (long i = 0; i < n; ++i) {
      double s = 0.0;
      for (int k = -m; k <= m; ++k) {
        const long j = ((i + k) % n + n) % n;
        s += central[static_cast<std::size_t>(k + m)] * vals[static_cast<std::size_t>(j)];
      }
      out[static_cast<std::size_t>(i)] = s * scale;
    }
    return GridFunction(g, std::move(out));
  }

  const long width = order + acc;
  for (long i = 0; i < n; ++i) {
    if (i >= m && i < n - m) {
      double s = 0.0;
      for (int k = -m; k <= m; ++k) {
        s += central[static_cast<std::size_t>(k + m)] * vals[static_cast<std::size_t>(i + k)];
      }
      out[static_cast<std::size_t>(i)] = s * scale;
      continue;
    }
    const long start = i < m ? 0 : n - width;
    std::vector<double> nodes(static_cast<std::size_t>(width));
    for (long k = 0; k < width; ++k) nodes[static_cast<std::size_t>(k)] = static_cast<double>(start + k - i);
    const std::vector<double> w = fd_weights(0.0, nodes, order);
    double s = 0.0;
    for (long k = 0; k < width; ++k) {
      s += w[static_cast<std::size_t>(k)] * vals[static_cast<std::size_t>(start + k)];
    }
    out[static_cast<std::size_t>(i)] = s * scale;
  }
  return GridFunction(g, std::move(out));
}

double integrate(const GridFunction& f) {
  const auto v = f.values();
  double s = 0.0;
  for (double x : v) s += x;
  if (f.grid().boundary == Boundary::decaying) s -= 0.5 * (v.front() + v.back());
  return s * f.grid().dx;
}

double mean(const GridFunction& f) { return integrate(f) / f.grid().length(); }

GridFunction antiderivative(const GridFunction& f, Antiderivative convention, double mean_tolerance) {
  const Grid& g = f.grid();
  if (convention == Antiderivative::zero_mean && g.boundary == Boundary::periodic) {
    const double m = mean(f);
    if (std::abs(m) > mean_tolerance * f.max_abs()) {
      std::ostringstream os;
      os << "periodic zero-mean antiderivative needs zero-mean data; residual mean " << m;
      throw InconsistentInput(os.str(), m);
    }
  }
  GridFunction big_f = antiderivative_from(f, 0);
  if (convention == Antiderivative::anchored_left) return big_f;
  return big_f + (-mean(big_f));
}

GridFunction antiderivative_from(const GridFunction& f, std::size_t anchor) {
  const Grid& g = f.grid();
  if (anchor >= g.n) throw InvalidInput("antiderivative anchor outside the grid");
  const auto v = f.values();
  const double h = 0.5 * g.dx;
  std::vector<double> out(g.n, 0.0);
  if (g.boundary == Boundary::periodic) {
    double acc = 0.0;
    for (std::size_t step = 1; step < g.n; ++step) {
      const std::size_t j = (anchor + step) % g.n;
      const std::size_t prev = (anchor + step - 1) % g.n;
      acc += h * (v[prev] + v[j]);
      out[j] = acc;
    }
  } else {
    for (std::size_t j = anchor + 1; j < g.n; ++j) out[j] = out[j - 1] + h * (v[j - 1] + v[j]);
    for (std::size_t j = anchor; j-- > 0;) out[j] = out[j + 1] - h * (v[j] + v[j + 1]);
  }
  return GridFunction(g, std::move(out));
}

}  // namespace nkdv
