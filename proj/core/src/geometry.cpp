#include "holoconf/geometry.hpp"

#include <cstring>

#include "holoconf/errors.hpp"

namespace holoconf {

namespace {
constexpr int kCacheCapacity = 96;
} // namespace

bool Geometry::CacheKey::operator<(const CacheKey& o) const {
  if (order != o.order) return order < o.order;
  return std::memcmp(p.data(), o.p.data(), sizeof(Point)) < 0;
}

Geometry::Geometry(std::vector<std::string> coord_names,
                   std::vector<std::vector<ScalarField>> metric, int order_cap)
    : dim_(static_cast<int>(coord_names.size())), order_cap_(order_cap),
      coord_names_(std::move(coord_names)), metric_(std::move(metric)) {}

GeometryPtr Geometry::create(std::vector<std::string> coord_names,
                             std::vector<std::vector<ScalarField>> metric, int order_cap) {
  return GeometryPtr(new Geometry(std::move(coord_names), std::move(metric), order_cap));
}

GeometryPtr Geometry::from_spec(const GeometrySpec& spec) {
  const int d = spec.dimension;
  std::vector<std::vector<ScalarField>> g(d, std::vector<ScalarField>(d, constant_field(d, 0.0)));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j <= i; ++j) {
      auto it = spec.metric.find({i, j});
      if (it != spec.metric.end()) {
        g[i][j] = expr_field(it->second, spec.coordinates, spec.parameters);
        g[j][i] = g[i][j];
      }
    }
  }
  const int cap = static_cast<int>(spec.option_or("order_cap", 24));
  return create(spec.coordinates, std::move(g), cap);
}

void Geometry::check_order(int order, int debt, const char* what) const {
  if (order + debt > order_cap_) {
    throw OrderError(std::string(what) + ": requested order " + std::to_string(order) +
                     " with debt " + std::to_string(debt) + " exceeds cap " +
                     std::to_string(order_cap_));
  }
}

namespace {

// Determinant and inverse of a small jet-valued symmetric matrix by cofactor
// expansion; dim <= 4.
Jet minor_det(const std::array<std::array<Jet, kMaxDim>, kMaxDim>& m,
              const std::vector<int>& rows, const std::vector<int>& cols) {
  const int n = static_cast<int>(rows.size());
  if (n == 1) return m[rows[0]][cols[0]];
  Jet acc;
  bool first = true;
  double sign = 1.0;
  for (int k = 0; k < n; ++k) {
    std::vector<int> r2(rows.begin() + 1, rows.end());
    std::vector<int> c2;
    for (int j = 0; j < n; ++j) {
      if (j != k) c2.push_back(cols[j]);
    }
    Jet term = m[rows[0]][cols[k]] * minor_det(m, r2, c2) * sign;
    if (first) {
      acc = term;
      first = false;
    } else {
      acc = acc + term;
    }
    sign = -sign;
  }
  return acc;
}

} // namespace

std::shared_ptr<const Geometry::MetricJets> Geometry::metric_at(const Point& p, int order) const {
  check_order(order, 0, "metric_at");
  const CacheKey key{p, order};
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = metric_cache_.find(key);
    if (it != metric_cache_.end()) return it->second;
  }

  auto m = std::make_shared<MetricJets>();
  m->order = order;
  const int d = dim_;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j <= i; ++j) {
      m->g[i][j] = metric_[i][j](p, order);
      m->g[j][i] = m->g[i][j];
    }
  }

  std::vector<int> all(d);
  for (int i = 0; i < d; ++i) all[i] = i;
  m->det = minor_det(m->g, all, all);
  if (m->det.value() <= 0.0) throw DomainError("metric not positive definite (det <= 0)");
  m->sqrt_det = m->det.sqrt();
  const Jet inv_det = m->det.reciprocal();
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j <= i; ++j) {
      std::vector<int> rows, cols;
      for (int k = 0; k < d; ++k) {
        if (k != i) rows.push_back(k);
      }
      for (int k = 0; k < d; ++k) {
        if (k != j) cols.push_back(k);
      }
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      Jet cof = (d == 1) ? Jet::constant(d, order, p, 1.0) : minor_det(m->g, rows, cols);
      m->ginv[j][i] = cof * inv_det * sign;
      m->ginv[i][j] = m->ginv[j][i];
    }
  }

  if (order >= 1) {
    for (int c = 0; c < d; ++c) {
      for (int a = 0; a < d; ++a) {
        for (int b = 0; b <= a; ++b) {
          Jet sum;
          bool first = true;
          for (int e = 0; e < d; ++e) {
            Jet t = m->g[e][b].derivative(a) + m->g[e][a].derivative(b) -
                    m->g[a][b].derivative(e);
            Jet term = m->ginv[c][e].truncated(order - 1) * t;
            if (first) {
              sum = term;
              first = false;
            } else {
              sum = sum + term;
            }
          }
          m->gamma[c][a][b] = sum * 0.5;
          m->gamma[c][b][a] = m->gamma[c][a][b];
        }
      }
    }
  }

  std::lock_guard<std::mutex> lock(mu_);
  metric_cache_[key] = m;
  metric_lru_.push_back(key);
  if (metric_lru_.size() > kCacheCapacity) {
    metric_cache_.erase(metric_lru_.front());
    metric_lru_.pop_front();
  }
  return m;
}

std::shared_ptr<const Geometry::CurvatureJets> Geometry::curvature_at(const Point& p,
                                                                      int order) const {
  check_order(order, 2, "curvature_at");
  const CacheKey key{p, order};
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = curv_cache_.find(key);
    if (it != curv_cache_.end()) return it->second;
  }

  const auto m = metric_at(p, order + 2);
  auto cj = std::make_shared<CurvatureJets>();
  cj->order = order;
  const int d = dim_;
  const Jet zero = Jet::constant(d, order, p, 0.0);

  // R_ab{}^c{}_d = d_a G^c_bd - d_b G^c_ad + G^c_ae G^e_bd - G^c_be G^e_ad
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      for (int c = 0; c < d; ++c) {
        for (int dd = 0; dd < d; ++dd) {
          if (a == b) {
            cj->riem[a][b][c][dd] = zero;
            continue;
          }
          Jet t = m->gamma[c][b][dd].derivative(a) - m->gamma[c][a][dd].derivative(b);
          for (int e = 0; e < d; ++e) {
            t = t + m->gamma[c][a][e].truncated(order) * m->gamma[e][b][dd] -
                m->gamma[c][b][e].truncated(order) * m->gamma[e][a][dd];
          }
          cj->riem[a][b][c][dd] = t.truncated(order);
        }
      }
    }
  }
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      for (int c = 0; c < d; ++c) {
        for (int dd = 0; dd < d; ++dd) {
          Jet t = zero;
          for (int e = 0; e < d; ++e) {
            t = t + cj->riem[a][b][e][dd] * m->g[e][c].truncated(order);
          }
          cj->riem_low[a][b][c][dd] = t;
        }
      }
    }
  }
  for (int b = 0; b < d; ++b) {
    for (int dd = 0; dd < d; ++dd) {
      Jet t = zero;
      for (int a = 0; a < d; ++a) t = t + cj->riem[a][b][a][dd];
      cj->ricci[b][dd] = t;
    }
  }
  cj->sc = zero;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      cj->sc = cj->sc + m->ginv[i][j].truncated(order) * cj->ricci[i][j];
    }
  }
  cj->jcurv = (d >= 2) ? cj->sc / (2.0 * (d - 1)) : zero;
  if (d >= 3) {
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        cj->schouten[a][b] =
            (cj->ricci[a][b] - m->g[a][b].truncated(order) * cj->jcurv) / double(d - 2);
      }
    }
  }
  if (d >= 4) {
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        for (int c = 0; c < d; ++c) {
          for (int e = 0; e < d; ++e) {
            auto gg = [&](int i, int j) { return m->g[i][j].truncated(order); };
            cj->weyl[a][b][c][e] = cj->riem_low[a][b][c][e] -
                                   cj->schouten[a][c] * gg(b, e) + cj->schouten[b][c] * gg(a, e) -
                                   cj->schouten[b][e] * gg(a, c) + cj->schouten[a][e] * gg(b, c);
          }
        }
      }
    }
  }

  std::lock_guard<std::mutex> lock(mu_);
  curv_cache_[key] = cj;
  curv_lru_.push_back(key);
  if (curv_lru_.size() > kCacheCapacity) {
    curv_cache_.erase(curv_lru_.front());
    curv_lru_.pop_front();
  }
  return cj;
}

ScalarField j_field(const GeometryPtr& g) {
  return make_field(2, [g](const Point& p, int k) { return g->curvature_at(p, k)->jcurv; });
}

ScalarField laplacian(const GeometryPtr& g, const ScalarField& f) {
  const int debt = f.debt + 2;
  auto fn = [g, f](const Point& p, int k) {
    const auto m = g->metric_at(p, k + 1);
    const Jet fj = f(p, k + 2);
    const int d = g->dim();
    Jet acc = Jet::constant(d, k, p, 0.0);
    for (int a = 0; a < d; ++a) {
      const Jet da = fj.derivative(a);
      for (int b = 0; b < d; ++b) {
        Jet t = da.derivative(b);
        for (int c = 0; c < d; ++c) {
          t = t - m->gamma[c][a][b].truncated(k) * fj.derivative(c).truncated(k);
        }
        acc = acc + m->ginv[a][b].truncated(k) * t;
      }
    }
    return acc;
  };
  return make_field(debt, std::move(fn));
}

ScalarField yamabe_box(const GeometryPtr& g, const ScalarField& f) {
  const double w = 1.0 - g->dim() / 2.0;
  return laplacian(g, f) + w * (j_field(g) * f);
}

ScalarField grad_pair(const GeometryPtr& g, const ScalarField& a, const ScalarField& b) {
  const int debt = std::max(a.debt, b.debt) + 1;
  auto fn = [g, a, b](const Point& p, int k) {
    const auto m = g->metric_at(p, k);
    const Jet aj = a(p, k + 1);
    const Jet bj = b(p, k + 1);
    const int d = g->dim();
    Jet acc = Jet::constant(d, k, p, 0.0);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        acc = acc + m->ginv[i][j] * (aj.derivative(i).truncated(k) * bj.derivative(j).truncated(k));
      }
    }
    return acc;
  };
  return make_field(debt, std::move(fn));
}

std::vector<std::vector<ScalarField>> covariant_derivative_cov(
    const GeometryPtr& g, const std::vector<ScalarField>& v_cov) {
  const int d = g->dim();
  std::vector<std::vector<ScalarField>> out(d, std::vector<ScalarField>(d));
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      int debt = v_cov[b].debt + 1;
      for (int c = 0; c < d; ++c) debt = std::max(debt, v_cov[c].debt);
      auto vcopy = v_cov;
      out[a][b] = make_field(debt, [g, vcopy, a, b](const Point& p, int k) {
        const auto m = g->metric_at(p, k + 1);
        Jet t = vcopy[b](p, k + 1).derivative(a);
        for (int c = 0; c < g->dim(); ++c) {
          t = t - m->gamma[c][a][b].truncated(k) * vcopy[c](p, k);
        }
        return t;
      });
    }
  }
  return out;
}

ScalarField divergence_cov(const GeometryPtr& g, const std::vector<ScalarField>& v_cov) {
  const int d = g->dim();
  int debt = 1;
  for (const auto& v : v_cov) debt = std::max(debt, v.debt + 1);
  auto vcopy = v_cov;
  return make_field(debt, [g, vcopy, d](const Point& p, int k) {
    const auto m = g->metric_at(p, k + 1);
    Jet acc = Jet::constant(d, k, p, 0.0);
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        Jet t = vcopy[b](p, k + 1).derivative(a);
        for (int c = 0; c < d; ++c) {
          t = t - m->gamma[c][a][b].truncated(k) * vcopy[c](p, k);
        }
        acc = acc + m->ginv[a][b].truncated(k) * t;
      }
    }
    return acc;
  });
}

HypersurfaceFields hypersurface_fields(const GeometryPtr& g, const ScalarField& nu) {
  const int d = g->dim();
  HypersurfaceFields hs;
  hs.geom = g;
  hs.nu = nu;
  hs.dnu_norm = field_sqrt(grad_pair(g, nu, nu));

  hs.nhat_cov.resize(d);
  hs.nhat_con.resize(d);
  for (int a = 0; a < d; ++a) {
    hs.nhat_cov[a] = partial(nu, a) / hs.dnu_norm;
    ScalarField norm = hs.dnu_norm;
    ScalarField nucopy = nu;
    hs.nhat_con[a] = make_field(std::max(nu.debt + 1, norm.debt),
                                [g, nucopy, norm, a, d](const Point& p, int k) {
                                  const auto m = g->metric_at(p, k);
                                  const Jet nj = nucopy(p, k + 1);
                                  Jet acc = Jet::constant(d, k, p, 0.0);
                                  for (int b = 0; b < d; ++b) {
                                    acc = acc + m->ginv[a][b] * nj.derivative(b).truncated(k);
                                  }
                                  return acc / norm(p, k);
                                });
  }

  hs.first_fund.assign(d, std::vector<ScalarField>(d));
  hs.projector.assign(d, std::vector<ScalarField>(d));
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      hs.first_fund[a][b] =
          make_field(std::max(1 + nu.debt, 0),
                     [g, hs_n = hs.nhat_cov, a, b](const Point& p, int k) {
                       const auto m = g->metric_at(p, k);
                       return m->g[a][b] - hs_n[a](p, k) * hs_n[b](p, k);
                     });
      ScalarField delta = constant_field(d, a == b ? 1.0 : 0.0);
      hs.projector[a][b] = delta - hs.nhat_con[a] * hs.nhat_cov[b];
    }
  }

  // nabla_a nhat_b, then project both slots.
  auto dnhat = covariant_derivative_cov(g, hs.nhat_cov);
  hs.second_fund.assign(d, std::vector<ScalarField>(d));
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      ScalarField acc = constant_field(d, 0.0);
      for (int c = 0; c < d; ++c) {
        for (int e = 0; e < d; ++e) {
          acc = acc + hs.projector[c][a] * hs.projector[e][b] * dnhat[c][e];
        }
      }
      hs.second_fund[a][b] = acc;
    }
  }

  // H = g^{ab} II_ab / (d-1) (average convention).
  {
    ScalarField tr = constant_field(d, 0.0);
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        auto sf = hs.second_fund[a][b];
        tr = tr + make_field(sf.debt, [g, sf, a, b](const Point& p, int k) {
               const auto m = g->metric_at(p, k);
               return m->ginv[a][b] * sf(p, k);
             });
      }
    }
    hs.mean_curvature = tr / double(d - 1);
  }

  hs.second_fund_tf.assign(d, std::vector<ScalarField>(d));
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      hs.second_fund_tf[a][b] = hs.second_fund[a][b] - hs.first_fund[a][b] * hs.mean_curvature;
    }
  }

  {
    ScalarField acc = constant_field(d, 0.0);
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        for (int c = 0; c < d; ++c) {
          for (int e = 0; e < d; ++e) {
            auto t1 = hs.second_fund_tf[a][b];
            auto t2 = hs.second_fund_tf[c][e];
            acc = acc + make_field(std::max(t1.debt, t2.debt),
                                   [g, t1, t2, a, b, c, e](const Point& p, int k) {
                                     const auto m = g->metric_at(p, k);
                                     return m->ginv[a][c] * m->ginv[b][e] * t1(p, k) * t2(p, k);
                                   });
          }
        }
      }
    }
    hs.rigidity = acc;
  }

  if (d >= 4) {
    hs.fialkow.assign(d, std::vector<ScalarField>(d));
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        // IIo_ac g_Sigma^{cd} IIo_bd ; on the surface g_Sigma^{cd} agrees with
        // g^{cd} up to normal components killed by IIo's projections.
        ScalarField sq = constant_field(d, 0.0);
        for (int c = 0; c < d; ++c) {
          for (int e = 0; e < d; ++e) {
            auto t1 = hs.second_fund_tf[a][c];
            auto t2 = hs.second_fund_tf[b][e];
            sq = sq + make_field(std::max(t1.debt, t2.debt),
                                 [g, t1, t2, c, e](const Point& p, int k) {
                                   const auto m = g->metric_at(p, k);
                                   return m->ginv[c][e] * t1(p, k) * t2(p, k);
                                 });
          }
        }
        // W_{nhat a nhat b} = nhat^c nhat^e W_{c a e b}
        ScalarField wnn = constant_field(d, 0.0);
        {
          auto ncon = hs.nhat_con;
          wnn = make_field(nu.debt + 3, [g, ncon, a, b, d](const Point& p, int k) {
            const auto cj = g->curvature_at(p, k);
            Jet acc = Jet::constant(d, k, p, 0.0);
            for (int c = 0; c < d; ++c) {
              for (int e = 0; e < d; ++e) {
                acc = acc + ncon[c](p, k) * ncon[e](p, k) * cj->weyl[c][a][e][b];
              }
            }
            return acc;
          });
        }
        hs.fialkow[a][b] = (sq - hs.first_fund[a][b] * hs.rigidity / (2.0 * (d - 2)) + wnn) /
                           double(d - 3);
      }
    }
  }

  return hs;
}

ScalarField tangential_divergence(const HypersurfaceFields& hs,
                                  const std::vector<ScalarField>& v_cov) {
  const GeometryPtr g = hs.geom;
  const int d = g->dim();
  auto dv = covariant_derivative_cov(g, v_cov);
  ScalarField acc = constant_field(d, 0.0);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      auto t = dv[a][b];
      auto na = hs.nhat_con[a];
      auto nb = hs.nhat_con[b];
      acc = acc + make_field(std::max({t.debt, na.debt, nb.debt}),
                             [g, t, na, nb, a, b](const Point& p, int k) {
                               const auto m = g->metric_at(p, k);
                               return (m->ginv[a][b] - na(p, k) * nb(p, k)) * t(p, k);
                             });
    }
  }
  return acc;
}

} // namespace holoconf
