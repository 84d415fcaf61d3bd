#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "holoconf/expr.hpp"

namespace holoconf {

// One parametrized chart of Sigma-tilde, Lambda, Xi or the region D, with its
// tensor Gauss-Legendre rule sizes and optional topology metadata.
struct PatchSpec {
  enum class Role { SigmaTilde, Lambda, Xi, Region };

  struct Param {
    std::string name;
    double lo = 0.0;
    double hi = 1.0;
    int nodes = 16;
  };

  Role role = Role::SigmaTilde;
  std::vector<Param> params;
  std::map<std::string, ExprPtr> embed; // coordinate name -> expression in params
  std::optional<int> euler;
  bool outward = true;
};

struct GeometrySpec {
  int dimension = 3;
  std::vector<std::string> coordinates;
  std::map<std::string, double> parameters;
  // lower-triangle metric components keyed by (i, j) with j <= i
  std::map<std::pair<int, int>, ExprPtr> metric;
  ExprPtr sigma;
  ExprPtr mu;  // may be null when the geometry has no Xi/Lambda
  ExprPtr tau; // defaults to the constant 1
  std::string normal_coordinate;
  std::string lambda_coordinate; // empty when mu is absent
  std::vector<PatchSpec> patches;
  std::map<std::string, double> options;

  int coordinate_index(const std::string& name) const;
  int normal_axis() const { return coordinate_index(normal_coordinate); }
  int lambda_axis() const { return coordinate_index(lambda_coordinate); }
  const PatchSpec* find_patch(PatchSpec::Role role) const;

  double option_or(const std::string& key, double fallback) const {
    auto it = options.find(key);
    return it == options.end() ? fallback : it->second;
  }
};

// Parse the flat key/value + tables document; throws SpecError / SyntaxError
// naming the offending key. Structural checks only; geometric invariants are
// verified by validate_geometry_spec.
GeometrySpec parse_geometry_spec(const std::string& text);
GeometrySpec load_geometry_spec_file(const std::string& path);

// Checks at patch quadrature nodes: positive-definite metric, seeds vanishing
// with non-degenerate gradient on their loci, the adapted-coordinate
// contract, and region sign conventions. Throws SpecError on violation.
void validate_geometry_spec(const GeometrySpec& spec);

} // namespace holoconf
