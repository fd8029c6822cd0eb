#pragma once

#include <string>
#include <vector>

#include "curvlab/metric.hpp"

namespace curvlab {

enum class QuadratureKind { PeriodicTrapezoid, GaussLegendreProduct, RadialCompactified, HomogeneousShortcut };

std::string to_string(QuadratureKind kind);

struct QuadratureNode {
  Vec4 point = Vec4::Zero();
  double weight = 0.0;  // includes the Riemannian volume density
};

struct QuadratureScheme {
  QuadratureKind kind = QuadratureKind::HomogeneousShortcut;
  int resolution = 1;
  std::vector<QuadratureNode> nodes;

  /// Neumaier-compensated sum of the weights, i.e. the volume estimate.
  double total_weight() const;
};

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [lower, upper]; all nodes are interior.
GaussRule gauss_legendre(int n, double lower, double upper);

/// Product rule over the chart domain with `resolution` nodes per axis
/// (resolution^4 nodes). Throws ConfigError for frame descriptions, ball
/// domains and resolution < 2.
QuadratureScheme make_scheme(const MetricDescription& desc, int resolution);

/// Single node at `point` carrying the whole volume.
QuadratureScheme homogeneous_scheme(const Vec4& point, double volume);

/// Compensated accumulator; results do not depend on how terms are grouped
/// beyond the last couple of bits.
class NeumaierSum {
 public:
  void add(double x);
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace curvlab
