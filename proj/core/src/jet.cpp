#include "holoconf/jet.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "holoconf/errors.hpp"

namespace holoconf {

Jet::Jet(int dim, int order, const Point& base)
    : dim_(dim), order_(order), base_(base),
      c_(MultiIndexTable::get(dim, order).size(), 0.0) {}

Jet Jet::constant(int dim, int order, const Point& base, double v) {
  Jet j(dim, order, base);
  j.c_[0] = v;
  return j;
}

Jet Jet::variable(int dim, int order, const Point& base, int axis) {
  Jet j(dim, order, base);
  j.c_[0] = base[axis];
  if (order >= 1) {
    Exponents e{};
    e[axis] = 1;
    j.c_[j.table().position(e)] = 1.0;
  }
  return j;
}

double Jet::coeff(const Exponents& e) const {
  const int pos = table().position(e);
  if (pos < 0) throw OrderError("jet coefficient index exceeds truncation order");
  return c_[pos];
}

double Jet::derivative_value(const Exponents& e) const {
  int deg = 0;
  for (int i = 0; i < dim_; ++i) deg += e[i];
  if (deg > order_) throw OrderError("requested derivative order exceeds jet order");
  double fact = 1.0;
  for (int i = 0; i < dim_; ++i) {
    for (int k = 2; k <= e[i]; ++k) fact *= k;
  }
  return coeff(e) * fact;
}

Jet Jet::truncated(int order) const {
  if (order >= order_) return *this;
  Jet r(dim_, order, base_);
  std::memcpy(r.c_.data(), c_.data(), r.c_.size() * sizeof(double));
  return r;
}

Jet Jet::with_base(const Point& p) const {
  Jet r = *this;
  r.base_ = p;
  return r;
}

Jet Jet::derivative(int axis) const {
  if (order_ == 0) throw OrderError("cannot differentiate an order-0 jet");
  Jet r(dim_, order_ - 1, base_);
  const auto& st = table();
  const auto& rt = r.table();
  for (int pos = 0; pos < st.size(); ++pos) {
    const Exponents& e = st.exponents(pos);
    if (e[axis] == 0) continue;
    Exponents f = e;
    f[axis] = static_cast<std::uint8_t>(f[axis] - 1);
    const int rp = rt.position(f);
    if (rp >= 0) r.c_[rp] += e[axis] * c_[pos];
  }
  return r;
}

void Jet::check_compatible(const Jet& other) const {
  if (dim_ != other.dim_) throw IncompatibleError("jet dimensions differ");
  for (int i = 0; i < dim_; ++i) {
    if (base_[i] != other.base_[i]) throw IncompatibleError("jet base points differ");
  }
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (double& v : r.c_) v = -v;
  return r;
}

Jet operator+(const Jet& a, const Jet& b) {
  a.check_compatible(b);
  const int k = std::min(a.order_, b.order_);
  Jet r = a.truncated(k);
  const Jet bb = b.truncated(k);
  for (int i = 0; i < r.size(); ++i) r.c_[i] += bb.c_[i];
  return r;
}

Jet operator-(const Jet& a, const Jet& b) {
  a.check_compatible(b);
  const int k = std::min(a.order_, b.order_);
  Jet r = a.truncated(k);
  const Jet bb = b.truncated(k);
  for (int i = 0; i < r.size(); ++i) r.c_[i] -= bb.c_[i];
  return r;
}

Jet operator*(const Jet& a, const Jet& b) {
  a.check_compatible(b);
  const int k = std::min(a.order_, b.order_);
  const Jet aa = a.truncated(k);
  const Jet bb = b.truncated(k);
  Jet r(a.dim_, k, a.base_);
  const auto& t = r.table();
  for (int i = 0; i < aa.size(); ++i) {
    const double ai = aa.c_[i];
    if (ai == 0.0) continue;
    const int remaining = k - t.degree(i);
    const int jend = t.degree_end(remaining);
    for (int j = 0; j < jend; ++j) {
      const double bj = bb.c_[j];
      if (bj == 0.0) continue;
      r.c_[t.position_sum(i, j)] += ai * bj;
    }
  }
  return r;
}

Jet operator/(const Jet& a, const Jet& b) { return a * b.reciprocal().truncated(a.order_); }

Jet operator+(const Jet& a, double s) { Jet r = a; r.c_[0] += s; return r; }
Jet operator+(double s, const Jet& a) { return a + s; }
Jet operator-(const Jet& a, double s) { Jet r = a; r.c_[0] -= s; return r; }
Jet operator-(double s, const Jet& a) { Jet r = -a; r.c_[0] += s; return r; }
Jet operator*(const Jet& a, double s) {
  Jet r = a;
  for (double& v : r.c_) v *= s;
  return r;
}
Jet operator*(double s, const Jet& a) { return a * s; }
Jet operator/(const Jet& a, double s) {
  if (s == 0.0) throw DomainError("jet division by zero scalar");
  return a * (1.0 / s);
}
Jet operator/(double s, const Jet& a) { return a.reciprocal() * s; }

Jet Jet::compose_series(const std::vector<double>& series) const {
  // f(c0 + h) = sum_n series[n] h^n with h nilpotent to order_.
  Jet h = *this;
  h.c_[0] = 0.0;
  Jet acc = Jet::constant(dim_, order_, base_, series[0]);
  Jet hp = Jet::constant(dim_, order_, base_, 1.0);
  const int n = std::min<int>(order_, static_cast<int>(series.size()) - 1);
  for (int k = 1; k <= n; ++k) {
    hp = hp * h;
    acc = acc + hp * series[k];
  }
  return acc;
}

Jet Jet::reciprocal() const {
  const double c0 = c_[0];
  if (c0 == 0.0) throw DomainError("jet reciprocal: zero constant term");
  std::vector<double> s(order_ + 1);
  double p = 1.0 / c0;
  for (int n = 0; n <= order_; ++n) {
    s[n] = p;          // (-1)^n / c0^{n+1}
    p = -p / c0;
  }
  return compose_series(s);
}

Jet Jet::pow_int(int k) const {
  if (k == 0) return Jet::constant(dim_, order_, base_, 1.0);
  Jet b = k > 0 ? *this : reciprocal();
  int n = k > 0 ? k : -k;
  Jet acc = Jet::constant(dim_, order_, base_, 1.0);
  while (n > 0) {
    if (n & 1) acc = acc * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return acc;
}

Jet Jet::sqrt() const {
  const double c0 = c_[0];
  if (c0 <= 0.0) throw DomainError("jet sqrt: non-positive constant term");
  std::vector<double> s(order_ + 1);
  // binomial series sqrt(c0)*C(1/2,n)/c0^n
  double coef = std::sqrt(c0);
  s[0] = coef;
  double num = 0.5;
  for (int n = 1; n <= order_; ++n) {
    coef *= num / (n * c0);
    s[n] = coef;
    num -= 1.0;
  }
  return compose_series(s);
}

Jet Jet::exp() const {
  std::vector<double> s(order_ + 1);
  double coef = std::exp(c_[0]);
  for (int n = 0; n <= order_; ++n) {
    s[n] = coef;
    coef /= (n + 1);
  }
  return compose_series(s);
}

Jet Jet::log() const {
  const double c0 = c_[0];
  if (c0 <= 0.0) throw DomainError("jet log: non-positive constant term");
  std::vector<double> s(order_ + 1);
  s[0] = std::log(c0);
  double p = 1.0 / c0;
  for (int n = 1; n <= order_; ++n) {
    s[n] = (n % 2 ? p : -p) / n;
    p /= c0;
  }
  return compose_series(s);
}

Jet Jet::sin() const {
  std::vector<double> s(order_ + 1);
  const double sv = std::sin(c_[0]);
  const double cv = std::cos(c_[0]);
  double fact = 1.0;
  for (int n = 0; n <= order_; ++n) {
    if (n > 0) fact *= n;
    switch (n % 4) {
      case 0: s[n] = sv / fact; break;
      case 1: s[n] = cv / fact; break;
      case 2: s[n] = -sv / fact; break;
      case 3: s[n] = -cv / fact; break;
    }
  }
  return compose_series(s);
}

Jet Jet::cos() const {
  std::vector<double> s(order_ + 1);
  const double sv = std::sin(c_[0]);
  const double cv = std::cos(c_[0]);
  double fact = 1.0;
  for (int n = 0; n <= order_; ++n) {
    if (n > 0) fact *= n;
    switch (n % 4) {
      case 0: s[n] = cv / fact; break;
      case 1: s[n] = -sv / fact; break;
      case 2: s[n] = -cv / fact; break;
      case 3: s[n] = sv / fact; break;
    }
  }
  return compose_series(s);
}

Jet Jet::tan() const { return sin() / cos(); }

std::vector<Jet> Jet::axis_decompose(int axis) const {
  std::vector<Jet> parts;
  parts.reserve(order_ + 1);
  for (int j = 0; j <= order_; ++j) parts.emplace_back(dim_, order_, base_);
  const auto& t = table();
  for (int pos = 0; pos < t.size(); ++pos) {
    const double v = c_[pos];
    if (v == 0.0) continue;
    Exponents e = t.exponents(pos);
    const int j = e[axis];
    e[axis] = 0;
    parts[j].c_[t.position(e)] = v;
  }
  return parts;
}

Jet Jet::axis_recompose(const std::vector<Jet>& parts, int axis) {
  Jet r = parts[0];
  const auto& t = r.table();
  for (int j = 1; j < static_cast<int>(parts.size()); ++j) {
    const Jet& pj = parts[j];
    for (int pos = 0; pos < t.size(); ++pos) {
      const double v = pj.c_[pos];
      if (v == 0.0) continue;
      Exponents e = t.exponents(pos);
      e[axis] = static_cast<std::uint8_t>(e[axis] + j);
      const int rp = t.position(e);
      if (rp >= 0) r.c_[rp] += v;
    }
  }
  return r;
}

Jet Jet::subst_axis(int axis, const Jet& rho) const {
  check_compatible(rho);
  if (std::abs(rho.value()) > 1e-300) {
    throw IncompatibleError("subst_axis: substitution jet must have zero constant term");
  }
  std::vector<Jet> parts = axis_decompose(axis);
  // Horner in rho.
  Jet acc = parts[order_];
  for (int j = order_ - 1; j >= 0; --j) acc = acc * rho + parts[j];
  return acc;
}

Jet Jet::zero_axes(const std::vector<int>& axes) const {
  Jet r = *this;
  const auto& t = table();
  for (int pos = 0; pos < t.size(); ++pos) {
    const Exponents& e = t.exponents(pos);
    for (int a : axes) {
      if (e[a] != 0) { r.c_[pos] = 0.0; break; }
    }
  }
  return r;
}

Jet Jet::axis_shift_down(int axis, int k, double* residual) const {
  Jet r(dim_, order_, base_);
  const auto& t = table();
  double res = 0.0;
  for (int pos = 0; pos < t.size(); ++pos) {
    const double v = c_[pos];
    if (v == 0.0) continue;
    Exponents e = t.exponents(pos);
    if (e[axis] < k) {
      res = std::max(res, std::abs(v));
      continue;
    }
    e[axis] = static_cast<std::uint8_t>(e[axis] - k);
    r.c_[t.position(e)] = v;
  }
  if (residual) *residual = res;
  return r;
}

double Jet::max_abs_axis_coeff(int axis, int j) const {
  const auto& t = table();
  double m = 0.0;
  for (int pos = 0; pos < t.size(); ++pos) {
    if (t.exponents(pos)[axis] == j) m = std::max(m, std::abs(c_[pos]));
  }
  return m;
}

double Jet::max_abs() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

} // namespace holoconf
