#include "holoconf/field.hpp"

#include <algorithm>

#include "holoconf/errors.hpp"

namespace holoconf {

ScalarField constant_field(int dim, double v) {
  return {0, [dim, v](const Point& p, int k) { return Jet::constant(dim, k, p, v); }};
}

ScalarField coordinate_field(int dim, int axis) {
  return {0, [dim, axis](const Point& p, int k) { return Jet::variable(dim, k, p, axis); }};
}

ScalarField expr_field(const ExprPtr& e, const std::vector<std::string>& coord_names,
                       const std::map<std::string, double>& parameters) {
  return {0, [e, coord_names, parameters](const Point& p, int k) {
            return eval_expression_jet(e, coord_names, k, p, parameters);
          }};
}

ScalarField make_field(int debt, std::function<Jet(const Point&, int)> fn) {
  return {debt, std::move(fn)};
}

namespace {
int max_debt(const ScalarField& a, const ScalarField& b) { return std::max(a.debt, b.debt); }
} // namespace

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  return {max_debt(a, b), [a, b](const Point& p, int k) { return a.fn(p, k) + b.fn(p, k); }};
}
ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  return {max_debt(a, b), [a, b](const Point& p, int k) { return a.fn(p, k) - b.fn(p, k); }};
}
ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  return {max_debt(a, b), [a, b](const Point& p, int k) { return a.fn(p, k) * b.fn(p, k); }};
}
ScalarField operator/(const ScalarField& a, const ScalarField& b) {
  return {max_debt(a, b), [a, b](const Point& p, int k) { return a.fn(p, k) / b.fn(p, k); }};
}
ScalarField operator-(const ScalarField& a) {
  return {a.debt, [a](const Point& p, int k) { return -a.fn(p, k); }};
}
ScalarField operator+(const ScalarField& a, double s) {
  return {a.debt, [a, s](const Point& p, int k) { return a.fn(p, k) + s; }};
}
ScalarField operator-(const ScalarField& a, double s) {
  return {a.debt, [a, s](const Point& p, int k) { return a.fn(p, k) - s; }};
}
ScalarField operator-(double s, const ScalarField& a) {
  return {a.debt, [a, s](const Point& p, int k) { return s - a.fn(p, k); }};
}
ScalarField operator*(const ScalarField& a, double s) {
  return {a.debt, [a, s](const Point& p, int k) { return a.fn(p, k) * s; }};
}
ScalarField operator*(double s, const ScalarField& a) { return a * s; }
ScalarField operator/(double s, const ScalarField& a) {
  return {a.debt, [a, s](const Point& p, int k) { return s / a.fn(p, k); }};
}
ScalarField operator/(const ScalarField& a, double s) {
  return {a.debt, [a, s](const Point& p, int k) { return a.fn(p, k) / s; }};
}

ScalarField field_pow_int(const ScalarField& a, int kk) {
  return {a.debt, [a, kk](const Point& p, int k) { return a.fn(p, k).pow_int(kk); }};
}
ScalarField field_sqrt(const ScalarField& a) {
  return {a.debt, [a](const Point& p, int k) { return a.fn(p, k).sqrt(); }};
}
ScalarField field_exp(const ScalarField& a) {
  return {a.debt, [a](const Point& p, int k) { return a.fn(p, k).exp(); }};
}
ScalarField field_log(const ScalarField& a) {
  return {a.debt, [a](const Point& p, int k) { return a.fn(p, k).log(); }};
}

ScalarField partial(const ScalarField& a, int axis) {
  return {a.debt + 1, [a, axis](const Point& p, int k) { return a.fn(p, k + 1).derivative(axis); }};
}

Jet tangential_extension(const Jet& j, const std::vector<int>& normal_axes) {
  return j.zero_axes(normal_axes);
}

TensorField TensorField::zeros(int dim, std::vector<bool> positions) {
  TensorField t;
  t.dim = dim;
  t.contravariant = std::move(positions);
  std::size_t n = 1;
  for (int r = 0; r < t.rank(); ++r) n *= static_cast<std::size_t>(dim);
  t.comp.assign(n, constant_field(dim, 0.0));
  return t;
}

int TensorField::flatten(std::initializer_list<int> idx) const {
  if (static_cast<int>(idx.size()) != rank()) {
    throw IncompatibleError("tensor component index rank mismatch");
  }
  int f = 0;
  for (int i : idx) f = f * dim + i;
  return f;
}

} // namespace holoconf
