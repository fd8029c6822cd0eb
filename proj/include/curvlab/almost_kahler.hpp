#pragma once

// Almost-Kaehler layer: the fundamental form omega(X, Y) = g(JX, Y), its
// covariant derivative, the star-scalar curvature and the curvature of the
// Hermitian connection nabla - 1/2 J (nabla J) on the anti-canonical bundle.

#include "curvlab/geometry.hpp"
#include "curvlab/metric.hpp"
#include "curvlab/sd_algebra.hpp"

namespace curvlab {

struct StarScalar {
  double s_star = 0.0;                // 2 R(omega, omega)
  double nabla_omega_norm2 = 0.0;     // |nabla omega|^2
  double scalar = 0.0;                // s
  /// |2 R(omega, omega) - (s + |nabla omega|^2)|
  double consistency_residual() const { return std::abs(s_star - (scalar + nabla_omega_norm2)); }
};

struct BlairCurvature {
  SelfDualVector f_plus;       // self-dual part of iF
  AntiSelfDualVector f_minus;  // anti-self-dual part of iF, reported raw
  /// |F+ - W+(omega)^perp - (s + s*)/8 omega|
  double residual = 0.0;
};

/// Every pointwise almost-Kaehler quantity at one point, computed once.
struct AlmostKahlerSample {
  PointGeometry geometry;
  CurvatureBlocks blocks;
  TwoForm omega;               // orthonormal frame components
  SelfDualVector omega_plus;   // self-dual coordinates of omega
  double nabla_omega_norm2 = 0.0;
  double s_star = 0.0;         // 2 R(omega, omega)
  double w_omega_omega = 0.0;  // W+(omega, omega)
  double w_perp2 = 0.0;        // |W+(omega)^perp|^2
  BlairCurvature blair;

  StarScalar star() const { return {s_star, nabla_omega_norm2, geometry.scalar}; }
};

struct StructureOptions {
  bool with_blair = true;
  double compatibility_tolerance = 1e-12;
};

/// Throws IncompatibleStructure when J^2 != -1, J is not orthogonal, or
/// omega is not self-dual for the description's orientation.
AlmostKahlerSample evaluate_structure(const MetricDescription& desc, const CompatibleJ& j,
                                      const Vec4& point, const StructureOptions& options = {});

TwoForm omega_field(const MetricDescription& desc, const CompatibleJ& j, const Vec4& point);

double nabla_omega_norm2(const MetricDescription& desc, const CompatibleJ& j, const Vec4& point);

/// Computes s* = 2R(omega, omega) and cross-checks it against s + |nabla omega|^2.
/// Throws ConventionMismatch when they differ by more than
/// tolerance * max(1, |s|).
StarScalar s_star(const MetricDescription& desc, const CompatibleJ& j, const Vec4& point,
                  double tolerance = 1e-8);

/// |W+(omega, omega) - (s*/2 - s/6)|.
double w_quadratic_identity_residual(const MetricDescription& desc, const CompatibleJ& j,
                                     const Vec4& point);

BlairCurvature blair_curvature(const MetricDescription& desc, const CompatibleJ& j,
                               const Vec4& point);

}  // namespace curvlab
