#pragma once

#include <stdexcept>
#include <string>

namespace holoconf {

// Errors carry a short machine-readable kind plus human context.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

private:
  std::string kind_;
};

struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error("domain-error", what) {}
};

struct OrderError : Error {
  explicit OrderError(const std::string& what) : Error("insufficient-order", what) {}
};

struct IncompatibleError : Error {
  explicit IncompatibleError(const std::string& what) : Error("incompatible-operands", what) {}
};

struct WeightError : Error {
  explicit WeightError(const std::string& what) : Error("weight-mismatch", what) {}
};

struct SyntaxError : Error {
  SyntaxError(const std::string& what, std::size_t offset)
      : Error("syntax-error", what + " at offset " + std::to_string(offset)), offset(offset) {}
  std::size_t offset;
};

struct SpecError : Error {
  explicit SpecError(const std::string& what) : Error("spec-error", what) {}
};

struct SolverError : Error {
  explicit SolverError(const std::string& what) : Error("solver-error", what) {}
};

struct QuadratureError : Error {
  explicit QuadratureError(const std::string& what) : Error("quadrature-error", what) {}
};

} // namespace holoconf
