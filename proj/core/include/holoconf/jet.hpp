#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "holoconf/multiindex.hpp"

namespace holoconf {

using Point = std::array<double, kMaxDim>;

// Dense truncated multivariate Taylor expansion of a scalar about a base
// point: coefficient c_alpha of prod_i (x_i - p_i)^alpha_i for all |alpha|
// <= order, graded-lex layout. Jets are immutable values; every operation
// returns a fresh jet. Operands must share dim and base point; mixed orders
// truncate to the smaller one.
class Jet {
public:
  Jet() : dim_(1), order_(0), base_{}, c_(1, 0.0) {}
  Jet(int dim, int order, const Point& base);

  static Jet constant(int dim, int order, const Point& base, double v);
  // x_axis as a jet: value base[axis], unit linear coefficient.
  static Jet variable(int dim, int order, const Point& base, int axis);

  int dim() const { return dim_; }
  int order() const { return order_; }
  const Point& base() const { return base_; }
  int size() const { return static_cast<int>(c_.size()); }

  double value() const { return c_[0]; }
  double coeff(int pos) const { return c_[pos]; }
  double& coeff(int pos) { return c_[pos]; }
  double coeff(const Exponents& e) const;

  // Partial derivative of the represented function, as claimed at the base
  // point: coefficient times the multinomial factorial. Throws OrderError
  // when |e| exceeds the truncation order.
  double derivative_value(const Exponents& e) const;

  Jet truncated(int order) const;
  Jet with_base(const Point& p) const; // reinterpret same coefficients at new base

  // d/dx_axis, order drops by one.
  Jet derivative(int axis) const;

  Jet operator-() const;
  friend Jet operator+(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a, const Jet& b);
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator+(const Jet& a, double s);
  friend Jet operator+(double s, const Jet& a);
  friend Jet operator-(const Jet& a, double s);
  friend Jet operator-(double s, const Jet& a);
  friend Jet operator*(const Jet& a, double s);
  friend Jet operator*(double s, const Jet& a);
  friend Jet operator/(const Jet& a, double s);
  friend Jet operator/(double s, const Jet& a);

  Jet reciprocal() const;
  Jet pow_int(int k) const;
  Jet sqrt() const;
  Jet exp() const;
  Jet log() const;
  Jet sin() const;
  Jet cos() const;
  Jet tan() const;

  // Coefficients grouped by the power of one axis: result[j] holds the jet
  // (axis-exponent zero) multiplying (x_axis - p_axis)^j.
  std::vector<Jet> axis_decompose(int axis) const;
  // Inverse of axis_decompose for parts[j] with zero axis-exponent.
  static Jet axis_recompose(const std::vector<Jet>& parts, int axis);

  // Substitute (x_axis - p_axis) := rho, where rho has zero constant term and
  // may depend on all variables (including the axis slot, reinterpreted).
  Jet subst_axis(int axis, const Jet& rho) const;

  // Drop every coefficient whose multi-index touches one of the given axes;
  // this is the "constant along those coordinates" extension of the
  // restriction to the coordinate slice through the base point.
  Jet zero_axes(const std::vector<int>& axes) const;

  // Divide by (x_axis - p_axis)^k; reports the largest dropped coefficient
  // (the part not divisible by the axis power) through *residual if non-null.
  Jet axis_shift_down(int axis, int k, double* residual = nullptr) const;

  // Largest |coefficient| with axis-exponent == j.
  double max_abs_axis_coeff(int axis, int j) const;
  double max_abs() const;

  const MultiIndexTable& table() const { return MultiIndexTable::get(dim_, order_); }

private:
  void check_compatible(const Jet& other) const;
  // Apply an analytic function given its Taylor coefficients about value().
  Jet compose_series(const std::vector<double>& series) const;

  int dim_;
  int order_;
  Point base_;
  std::vector<double> c_;
};

} // namespace holoconf
