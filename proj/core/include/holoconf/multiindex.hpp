#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace holoconf {

inline constexpr int kMaxDim = 4;

using Exponents = std::array<std::uint8_t, kMaxDim>;

// Layout tables for dense truncated multivariate polynomials in graded
// lexicographic order: all total degrees 0..order, lexicographic within a
// degree. Tables are built once per (dim, order) and shared.
class MultiIndexTable {
public:
  MultiIndexTable(int dim, int order);

  int dim() const { return dim_; }
  int order() const { return order_; }
  int size() const { return static_cast<int>(exps_.size()); }

  const Exponents& exponents(int pos) const { return exps_[pos]; }
  int degree(int pos) const { return deg_[pos]; }

  // First position of the given total degree block.
  int degree_begin(int deg) const { return deg_begin_[deg]; }
  int degree_end(int deg) const { return deg_begin_[deg + 1]; }

  // Position of an exponent tuple; -1 when the total degree exceeds order.
  int position(const Exponents& e) const;

  // position(a + b), assuming both within range; -1 if sum degree > order.
  int position_sum(int pa, int pb) const;

  static const MultiIndexTable& get(int dim, int order);

private:
  int flat(const Exponents& e) const;

  int dim_;
  int order_;
  std::vector<Exponents> exps_;
  std::vector<int> deg_;
  std::vector<int> deg_begin_;
  std::vector<int> lookup_; // dense (order+1)^dim table of positions
};

std::int64_t binomial(int n, int k);

// Number of coefficients of a dim-variate jet truncated at total degree order.
inline std::int64_t jet_coeff_count(int dim, int order) {
  return binomial(dim + order, dim);
}

} // namespace holoconf
