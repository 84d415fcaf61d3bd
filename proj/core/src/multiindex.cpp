#include "holoconf/multiindex.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace holoconf {

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

namespace {

// All tuples of length dim with total degree deg, first slot descending.
void enumerate(int dim, int deg, int slot, Exponents& e, std::vector<Exponents>& out) {
  if (slot == dim - 1) {
    e[slot] = static_cast<std::uint8_t>(deg);
    out.push_back(e);
    return;
  }
  for (int v = deg; v >= 0; --v) {
    e[slot] = static_cast<std::uint8_t>(v);
    enumerate(dim, deg - v, slot + 1, e, out);
  }
}

} // namespace

MultiIndexTable::MultiIndexTable(int dim, int order) : dim_(dim), order_(order) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("MultiIndexTable: dim out of range");
  if (order < 0) throw std::invalid_argument("MultiIndexTable: negative order");

  deg_begin_.assign(order + 2, 0);
  for (int deg = 0; deg <= order; ++deg) {
    deg_begin_[deg] = static_cast<int>(exps_.size());
    Exponents e{};
    enumerate(dim, deg, 0, e, exps_);
    while (deg_.size() < exps_.size()) deg_.push_back(deg);
  }
  deg_begin_[order + 1] = static_cast<int>(exps_.size());

  std::size_t n = 1;
  for (int i = 0; i < dim; ++i) n *= static_cast<std::size_t>(order + 1);
  lookup_.assign(n, -1);
  for (int pos = 0; pos < size(); ++pos) lookup_[flat(exps_[pos])] = pos;
}

int MultiIndexTable::flat(const Exponents& e) const {
  int f = 0;
  for (int i = 0; i < dim_; ++i) f = f * (order_ + 1) + e[i];
  return f;
}

int MultiIndexTable::position(const Exponents& e) const {
  int deg = 0;
  for (int i = 0; i < dim_; ++i) deg += e[i];
  if (deg > order_) return -1;
  return lookup_[flat(e)];
}

int MultiIndexTable::position_sum(int pa, int pb) const {
  if (deg_[pa] + deg_[pb] > order_) return -1;
  Exponents s{};
  const Exponents& a = exps_[pa];
  const Exponents& b = exps_[pb];
  for (int i = 0; i < dim_; ++i) s[i] = static_cast<std::uint8_t>(a[i] + b[i]);
  return lookup_[flat(s)];
}

const MultiIndexTable& MultiIndexTable::get(int dim, int order) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<MultiIndexTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(dim, order);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, std::make_unique<MultiIndexTable>(dim, order)).first;
  }
  return *it->second;
}

} // namespace holoconf
