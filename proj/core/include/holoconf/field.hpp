#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "holoconf/expr.hpp"
#include "holoconf/jet.hpp"

namespace holoconf {

// A lazy scalar field: a pure function from (point, jet order) to the jet of
// the field there. `debt` is the extra order the evaluation requests from its
// leaves (one per derivative layer); callers budget K + debt against the
// global order cap before evaluating.
struct ScalarField {
  int debt = 0;
  std::function<Jet(const Point&, int)> fn;

  Jet operator()(const Point& p, int order) const { return fn(p, order); }
  double value(const Point& p) const { return fn(p, 0).value(); }
  bool valid() const { return static_cast<bool>(fn); }
};

ScalarField constant_field(int dim, double v);
ScalarField coordinate_field(int dim, int axis);
ScalarField expr_field(const ExprPtr& e, const std::vector<std::string>& coord_names,
                       const std::map<std::string, double>& parameters);
// Wrap a fixed jet-producing closure (e.g. solver output).
ScalarField make_field(int debt, std::function<Jet(const Point&, int)> fn);

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(const ScalarField& a, const ScalarField& b);
ScalarField operator/(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a);
ScalarField operator+(const ScalarField& a, double s);
ScalarField operator-(const ScalarField& a, double s);
ScalarField operator-(double s, const ScalarField& a);
ScalarField operator*(const ScalarField& a, double s);
ScalarField operator*(double s, const ScalarField& a);
ScalarField operator/(double s, const ScalarField& a);
ScalarField operator/(const ScalarField& a, double s);

ScalarField field_pow_int(const ScalarField& a, int k);
ScalarField field_sqrt(const ScalarField& a);
ScalarField field_exp(const ScalarField& a);
ScalarField field_log(const ScalarField& a);

// Coordinate partial derivative; debt grows by one.
ScalarField partial(const ScalarField& a, int axis);

// The "constant along the given coordinates" extension of a jet's restriction
// to the coordinate slice through its base point: every coefficient touching
// a normal axis is dropped.
Jet tangential_extension(const Jet& j, const std::vector<int>& normal_axes);

// Tensor-valued field with explicit index positions; components stored in
// row-major order over all indices. Symmetry is the constructor's business.
struct TensorField {
  int dim = 0;
  std::vector<bool> contravariant; // one flag per slot
  std::vector<ScalarField> comp;

  int rank() const { return static_cast<int>(contravariant.size()); }
  ScalarField& at(std::initializer_list<int> idx) { return comp[flatten(idx)]; }
  const ScalarField& at(std::initializer_list<int> idx) const { return comp[flatten(idx)]; }

  static TensorField zeros(int dim, std::vector<bool> positions);

private:
  int flatten(std::initializer_list<int> idx) const;
};

} // namespace holoconf
