#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "holoconf/jet.hpp"

namespace holoconf {

// AST for the small metric/seed expression language. Trees are immutable and
// shared freely; validation resolves identifiers against declared coordinate
// and parameter names.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Constant, Identifier, Parameter, Coordinate, Unary, Binary, Call };

  Kind kind = Kind::Constant;
  double constant = 0.0;   // Kind::Constant
  std::string name;        // identifier / parameter / coordinate / function name
  char op = 0;             // '+', '-', '*', '/', '^' (Binary) or '-' (Unary)
  std::vector<ExprPtr> args;
  std::size_t span_begin = 0;
  std::size_t span_end = 0;
  // '^' with a non-integer exponent: lowered to exp(e*log(b)), which demands
  // a positive base at evaluation time.
  bool needs_positive_base = false;
};

ExprPtr parse_expression(const std::string& text);

// Resolve identifiers; throws SpecError naming any unknown identifier.
ExprPtr validate_expression(const ExprPtr& e, const std::vector<std::string>& coordinates,
                            const std::vector<std::string>& parameters);

std::string print_expression(const ExprPtr& e);

double eval_expression(const ExprPtr& e, const std::vector<std::string>& coord_names,
                       const std::vector<double>& coord_values,
                       const std::map<std::string, double>& parameters);

// Lift through jet arithmetic: coordinates become variable jets at the base
// point, parameters constants.
Jet eval_expression_jet(const ExprPtr& e, const std::vector<std::string>& coord_names,
                        int order, const Point& base,
                        const std::map<std::string, double>& parameters);

// Structural equality (used by the parse/print round-trip property).
bool expr_equal(const ExprPtr& a, const ExprPtr& b);

} // namespace holoconf
