#pragma once

// Discrete calculus on uniform one-dimensional grids.
//
// A Grid is either periodic (n points covering [x0, x0 + n*dx), the right
// endpoint identified with x0) or decaying (n points covering
// [x0, x0 + (n-1)*dx], closed with one-sided stencils at both ends).
// GridFunction holds finite samples on a Grid and is immutable.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace nkdv {

enum class Boundary { periodic, decaying };

enum class Accuracy { second = 2, fourth = 4 };

enum class Antiderivative { anchored_left, zero_mean };

struct Grid {
  double x0 = 0.0;
  double dx = 1.0;
  std::size_t n = 8;
  Boundary boundary = Boundary::periodic;

  // Validating constructor; throws InvalidInput for dx <= 0, n < 8 or
  // non-finite x0.
  static Grid make(double x0, double dx, std::size_t n, Boundary boundary);

  // n points spanning one period [a, b): dx = (b - a) / n.
  static Grid periodic_over(double a, double b, std::size_t n);
  // n points spanning [a, b] inclusive: dx = (b - a) / (n - 1).
  static Grid decaying_over(double a, double b, std::size_t n);

  double x(std::size_t i) const noexcept { return x0 + static_cast<double>(i) * dx; }
  // Interval length: n*dx for periodic grids, (n-1)*dx for decaying ones.
  double length() const noexcept;
  Grid refined() const;  // dx halved over the same interval

  bool operator==(const Grid&) const = default;
};

class GridFunction {
 public:
  // Throws InvalidInput if the length differs from grid.n or a value is not
  // finite.
  GridFunction(Grid grid, std::vector<double> values);

  static GridFunction sample(const Grid& grid, const std::function<double(double)>& f);
  static GridFunction constant(const Grid& grid, double value);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  double max_abs() const noexcept;
  double min() const noexcept;
  double max() const noexcept;
  std::size_t argmax() const noexcept;

  // Pointwise map; the result is checked for finiteness.
  GridFunction map(const std::function<double(double)>& op) const;

  friend GridFunction operator+(const GridFunction& a, const GridFunction& b);
  friend GridFunction operator-(const GridFunction& a, const GridFunction& b);
  friend GridFunction operator*(const GridFunction& a, const GridFunction& b);
  friend GridFunction operator/(const GridFunction& a, const GridFunction& b);
  friend GridFunction operator*(double s, const GridFunction& a);
  friend GridFunction operator*(const GridFunction& a, double s) { return s * a; }
  friend GridFunction operator+(const GridFunction& a, double s);
  friend GridFunction operator-(const GridFunction& a) { return -1.0 * a; }

 private:
  struct Unchecked {};
  GridFunction(Unchecked, Grid grid, std::vector<double> values);
  static GridFunction checked_result(Grid grid, std::vector<double> values);

  Grid grid_;
  std::vector<double> values_;
};

// Finite-difference weights for the derivative of the given order at z using
// the supplied nodes (Fornberg's recursion). Nodes are in grid units.
std::vector<double> fd_weights(double z, std::span<const double> nodes, int order);

// Central finite-difference derivative of order 1, 2 or 3. Periodic grids wrap
// around; decaying grids switch to one-sided stencils of the same accuracy
// near the ends.
GridFunction derivative(const GridFunction& f, int order, Accuracy accuracy = Accuracy::second);

// Cumulative trapezoid antiderivative with F(x0) = 0. With zero_mean the mean
// of F is subtracted; on periodic grids zero_mean additionally requires
// |mean(f)| <= mean_tolerance * max|f| and throws InconsistentInput otherwise.
GridFunction antiderivative(const GridFunction& f, Antiderivative convention,
                            double mean_tolerance = 1e-10);

// Cumulative trapezoid antiderivative with F(x_anchor) = 0. Periodic grids are
// walked forward around the circle from the anchor; decaying grids are walked
// outwards in both directions.
GridFunction antiderivative_from(const GridFunction& f, std::size_t anchor);

// Rectangle sum on periodic grids, trapezoid rule on decaying grids.
double integrate(const GridFunction& f);

double mean(const GridFunction& f);

}  // namespace nkdv
