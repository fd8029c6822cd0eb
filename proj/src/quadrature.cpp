#include "curvlab/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "curvlab/errors.hpp"

namespace curvlab {

namespace {

constexpr double kPi = std::numbers::pi;

struct Rule1d {
  std::vector<double> nodes;
  std::vector<double> weights;
};

Rule1d axis_rule(const AxisRule& axis, int n) {
  if (axis.kind == AxisRule::Kind::Legendre) {
    GaussRule g = gauss_legendre(n, axis.lower, axis.upper);
    return {std::move(g.nodes), std::move(g.weights)};
  }
  Rule1d r;
  const double h = (axis.upper - axis.lower) / n;
  for (int k = 0; k < n; ++k) {
    r.nodes.push_back(axis.lower + k * h);
    r.weights.push_back(h);
  }
  return r;
}

Rule1d periodic_rule(int n) { return axis_rule({AxisRule::Kind::Periodic, 0.0, 2.0 * kPi}, n); }

double volume_density(const ChartMetric& chart, const Vec4& x) {
  return std::sqrt(value_of(chart.metric, x).determinant());
}

}  // namespace

std::string to_string(QuadratureKind kind) {
  switch (kind) {
    case QuadratureKind::PeriodicTrapezoid: return "periodic_trapezoid";
    case QuadratureKind::GaussLegendreProduct: return "gauss_legendre_product";
    case QuadratureKind::RadialCompactified: return "radial_compactified";
    case QuadratureKind::HomogeneousShortcut: return "homogeneous_shortcut";
  }
  return "unknown";
}

void NeumaierSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

double QuadratureScheme::total_weight() const {
  NeumaierSum s;
  for (const auto& node : nodes) s.add(node.weight);
  return s.value();
}

GaussRule gauss_legendre(int n, double lower, double upper) {
  if (n < 1) throw ConfigError("gauss_legendre: need at least one node");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mid = 0.5 * (upper + lower);
  const double half = 0.5 * (upper - lower);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged root for the weight.
    double p0 = 1.0, p1 = 0.0;
    for (int k = 1; k <= n; ++k) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
    }
    dp = n * (x * p0 - p1) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = mid - half * x;
    rule.nodes[n - 1 - i] = mid + half * x;
    rule.weights[i] = half * w;
    rule.weights[n - 1 - i] = half * w;
  }
  return rule;
}

QuadratureScheme make_scheme(const MetricDescription& desc, int resolution) {
  if (resolution < 2) throw ConfigError(desc.name + ": quadrature resolution must be at least 2");
  const auto* chart = std::get_if<ChartMetric>(&desc.form);
  if (chart == nullptr) {
    throw ConfigError(desc.name + ": frame descriptions are integrated with the homogeneous shortcut");
  }
  QuadratureScheme scheme;
  scheme.resolution = resolution;
  const int n = resolution;

  if (const auto* box = std::get_if<BoxDomain>(&chart->domain)) {
    bool any_legendre = false;
    std::array<Rule1d, 4> rules;
    for (int a = 0; a < 4; ++a) {
      rules[a] = axis_rule(box->axes[a], n);
      any_legendre = any_legendre || box->axes[a].kind == AxisRule::Kind::Legendre;
    }
    scheme.kind = any_legendre ? QuadratureKind::GaussLegendreProduct : QuadratureKind::PeriodicTrapezoid;
    scheme.nodes.reserve(static_cast<std::size_t>(n) * n * n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            const Vec4 x(rules[0].nodes[i], rules[1].nodes[j], rules[2].nodes[k], rules[3].nodes[l]);
            const double w = rules[0].weights[i] * rules[1].weights[j] * rules[2].weights[k] *
                             rules[3].weights[l];
            scheme.nodes.push_back({x, w * volume_density(*chart, x)});
          }
    return scheme;
  }

  if (std::holds_alternative<RadialDomain>(chart->domain)) {
    // x = tan(t) (cos(eta) cos(a), cos(eta) sin(a), sin(eta) cos(b), sin(eta) sin(b));
    // d^4x = r^3 sec^2(t) sin(eta) cos(eta) dt deta da db.
    scheme.kind = QuadratureKind::RadialCompactified;
    const GaussRule radial = gauss_legendre(n, 0.0, kPi / 2.0);
    const GaussRule latitude = gauss_legendre(n, 0.0, kPi / 2.0);
    const Rule1d phase = periodic_rule(n);
    scheme.nodes.reserve(static_cast<std::size_t>(n) * n * n * n);
    for (int i = 0; i < n; ++i) {
      const double t = radial.nodes[i];
      const double r = std::tan(t);
      const double jac_r = r * r * r / (std::cos(t) * std::cos(t));
      for (int j = 0; j < n; ++j) {
        const double eta = latitude.nodes[j];
        const double jac_eta = std::sin(eta) * std::cos(eta);
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            const double a = phase.nodes[k], b = phase.nodes[l];
            const Vec4 x(r * std::cos(eta) * std::cos(a), r * std::cos(eta) * std::sin(a),
                         r * std::sin(eta) * std::cos(b), r * std::sin(eta) * std::sin(b));
            const double w = radial.weights[i] * latitude.weights[j] * phase.weights[k] *
                             phase.weights[l] * jac_r * jac_eta;
            scheme.nodes.push_back({x, w * volume_density(*chart, x)});
          }
      }
    }
    return scheme;
  }

  throw ConfigError(desc.name + ": ball domains are pointwise-only and cannot be integrated");
}

QuadratureScheme homogeneous_scheme(const Vec4& point, double volume) {
  QuadratureScheme scheme;
  scheme.kind = QuadratureKind::HomogeneousShortcut;
  scheme.resolution = 1;
  scheme.nodes.push_back({point, volume});
  return scheme;
}

}  // namespace curvlab
