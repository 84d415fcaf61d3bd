#pragma once

#include <array>
#include <list>
#include <map>
#include <memory>
#include <mutex>

#include "holoconf/field.hpp"
#include "holoconf/specfile.hpp"

namespace holoconf {

class Geometry;
using GeometryPtr = std::shared_ptr<const Geometry>;

// A Riemannian chart: coordinate names plus metric component fields. All
// metric-derived jets at a point are computed here and memoized (small LRU;
// evaluation is pure so recomputation is always safe).
class Geometry {
public:
  struct MetricJets {
    int order = 0; // order of the g entries; gamma holds order-1
    std::array<std::array<Jet, kMaxDim>, kMaxDim> g;
    std::array<std::array<Jet, kMaxDim>, kMaxDim> ginv;
    Jet det, sqrt_det;
    std::array<std::array<std::array<Jet, kMaxDim>, kMaxDim>, kMaxDim> gamma; // [c][a][b]
  };

  struct CurvatureJets {
    int order = 0;
    Jet riem[kMaxDim][kMaxDim][kMaxDim][kMaxDim];     // R_ab{}^c{}_d
    Jet riem_low[kMaxDim][kMaxDim][kMaxDim][kMaxDim]; // R_abcd
    Jet ricci[kMaxDim][kMaxDim];
    Jet sc;
    Jet jcurv;                                 // J = Sc / (2(d-1)), d >= 2
    Jet schouten[kMaxDim][kMaxDim];            // d >= 3
    Jet weyl[kMaxDim][kMaxDim][kMaxDim][kMaxDim]; // d >= 4
  };

  static GeometryPtr create(std::vector<std::string> coord_names,
                            std::vector<std::vector<ScalarField>> metric, int order_cap = 24);
  static GeometryPtr from_spec(const GeometrySpec& spec);

  int dim() const { return dim_; }
  int order_cap() const { return order_cap_; }
  const std::vector<std::string>& coordinates() const { return coord_names_; }
  const ScalarField& metric_component(int i, int j) const { return metric_[i][j]; }

  std::shared_ptr<const MetricJets> metric_at(const Point& p, int order) const;
  // Curvature entries at the given jet order (metric evaluated at order + 2).
  std::shared_ptr<const CurvatureJets> curvature_at(const Point& p, int order) const;

  void check_order(int order, int debt, const char* what) const;

private:
  Geometry(std::vector<std::string> coord_names, std::vector<std::vector<ScalarField>> metric,
           int order_cap);

  int dim_;
  int order_cap_;
  std::vector<std::string> coord_names_;
  std::vector<std::vector<ScalarField>> metric_;

  struct CacheKey {
    Point p;
    int order;
    bool operator<(const CacheKey& o) const;
  };
  mutable std::mutex mu_;
  mutable std::map<CacheKey, std::shared_ptr<const MetricJets>> metric_cache_;
  mutable std::list<CacheKey> metric_lru_;
  mutable std::map<CacheKey, std::shared_ptr<const CurvatureJets>> curv_cache_;
  mutable std::list<CacheKey> curv_lru_;
};

// Scalar curvature multiple J as a field.
ScalarField j_field(const GeometryPtr& g);

// Plain Laplacian g^{ab} nabla_a nabla_b f.
ScalarField laplacian(const GeometryPtr& g, const ScalarField& f);

// Yamabe operator at weight 1 - d/2: Delta f + (1 - d/2) J f.
ScalarField yamabe_box(const GeometryPtr& g, const ScalarField& f);

// Metric pairing of differentials: g^{ab} (partial_a a)(partial_b b).
ScalarField grad_pair(const GeometryPtr& g, const ScalarField& a, const ScalarField& b);

// nabla_{d nu} f with the conormal of nu, i.e. g^{ab} (partial_a nu)(partial_b f).
inline ScalarField directional(const GeometryPtr& g, const ScalarField& nu,
                               const ScalarField& f) {
  return grad_pair(g, nu, f);
}

// Covariant derivative of a covariant vector field: (nabla v)_{ab} = partial_a
// v_b - Gamma^c_ab v_c.
std::vector<std::vector<ScalarField>> covariant_derivative_cov(
    const GeometryPtr& g, const std::vector<ScalarField>& v_cov);

// Divergence nabla_a v^a of a vector given by covariant components.
ScalarField divergence_cov(const GeometryPtr& g, const std::vector<ScalarField>& v_cov);

// All extrinsic data of the zero locus of nu, as bulk fields (meaningful on
// the locus; defined near it).
struct HypersurfaceFields {
  GeometryPtr geom;
  ScalarField nu;
  ScalarField dnu_norm;                                  // |d nu|_g
  std::vector<ScalarField> nhat_cov, nhat_con;           // unit conormal
  std::vector<std::vector<ScalarField>> first_fund;      // g_ab - nhat_a nhat_b
  std::vector<std::vector<ScalarField>> projector;       // I^a_b
  std::vector<std::vector<ScalarField>> second_fund;     // II_ab
  std::vector<std::vector<ScalarField>> second_fund_tf;  // trace-free part
  ScalarField mean_curvature;                            // H (average convention)
  ScalarField rigidity;                                  // K = IIo . IIo
  std::vector<std::vector<ScalarField>> fialkow;         // d >= 4
};

HypersurfaceFields hypersurface_fields(const GeometryPtr& g, const ScalarField& nu);

// Projected (induced) divergence along the zero locus of hs.nu of a covariant
// vector that is tangent there: (g^{ab} - n^a n^b) nabla_a v_b.
ScalarField tangential_divergence(const HypersurfaceFields& hs,
                                  const std::vector<ScalarField>& v_cov);

} // namespace holoconf
