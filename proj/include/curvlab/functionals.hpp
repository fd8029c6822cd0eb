#pragma once

// Curvature integrals over catalog manifolds.
//
// Node evaluation is the expensive part and comes in two flavours: a plain
// serial loop (the reference) and an OpenMP loop. Both write samples into a
// vector indexed by node, and the reduction always runs serially in node
// order with compensated summation, so the two paths give identical bits.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "curvlab/catalog.hpp"
#include "curvlab/metric.hpp"
#include "curvlab/quadrature.hpp"

namespace curvlab {

enum class Execution { Serial, Parallel };

std::string to_string(Execution execution);

/// Pointwise integrand data at one quadrature node. Structure terms stay
/// zero when no J is supplied.
struct NodeSample {
  double weight = 0.0;
  double scalar = 0.0;
  double wplus2 = 0.0;
  double wminus2 = 0.0;
  double ric0_2 = 0.0;
  double s_star = 0.0;
  double w_omega_omega = 0.0;
  double w_perp2 = 0.0;
  double f_plus2 = 0.0;
  double f_minus2 = 0.0;
};

NodeSample evaluate_node(const MetricDescription& desc, const CompatibleJ* j, const QuadratureNode& node);

std::vector<NodeSample> evaluate_nodes_serial(const MetricDescription& desc, const CompatibleJ* j,
                                              const QuadratureScheme& scheme);
std::vector<NodeSample> evaluate_nodes_parallel(const MetricDescription& desc, const CompatibleJ* j,
                                                const QuadratureScheme& scheme);
std::vector<NodeSample> evaluate_nodes(const MetricDescription& desc, const CompatibleJ* j,
                                       const QuadratureScheme& scheme, Execution execution);

/// Weighted integrals of every integrand the reports need.
struct Integrals {
  double volume = 0.0;
  double s = 0.0;
  double s2 = 0.0;
  double wplus2 = 0.0;
  double wminus2 = 0.0;
  double ric0_2 = 0.0;
  bool has_structure = false;
  double s_plus_s_star_half = 0.0;  // (s + s*)/2
  double s_w = 0.0;                 // s W+(omega, omega)
  double wplus2_minus_half_perp = 0.0;
  double w_w_minus_s3 = 0.0;        // W+(omega,omega)(W+(omega,omega) - s/3)
  double s_s_star_8_minus_s2_24 = 0.0;
  double two_wplus2_minus_perp = 0.0;
  double f_plus2 = 0.0;
  double f_minus2 = 0.0;
  /// sum of weight * (largest integrand magnitude), used as a rounding scale
  double magnitude = 0.0;
};

Integrals accumulate(const std::vector<NodeSample>& samples);

Integrals integrate(const MetricDescription& desc, const CompatibleJ* j, const QuadratureScheme& scheme,
                    Execution execution = Execution::Parallel);

double euler_characteristic(const MetricDescription& desc, const QuadratureScheme& scheme);
double signature(const MetricDescription& desc, const QuadratureScheme& scheme);
double c1_dot_omega(const MetricDescription& desc, const CompatibleJ& j, const QuadratureScheme& scheme);

/// (2 chi + 3 tau, Blair-curvature integral).
std::pair<double, double> c1_squared(const MetricDescription& desc, const CompatibleJ& j,
                                     const QuadratureScheme& scheme);

/// (int s W+(omega,omega), 8 int (|W+|^2 - |W+(omega)^perp|^2 / 2)).
std::pair<double, double> prop1_residual(const MetricDescription& desc, const CompatibleJ& j,
                                         const QuadratureScheme& scheme);

/// int W+(omega,omega)(W+(omega,omega) - s/3).
double prop2_value(const MetricDescription& desc, const CompatibleJ& j, const QuadratureScheme& scheme);

/// int s^2/24 - int |W+|^2.
double thm3_gap(const MetricDescription& desc, const QuadratureScheme& scheme);

/// (int s s*/8 - s^2/24, int 2|W+|^2 - |W+(omega)^perp|^2). Refuses with
/// HypothesisViolation when int |ric0|^2 exceeds
/// einstein_tolerance * max(1, int s^2).
std::pair<double, double> cor3_residual(const MetricDescription& desc, const CompatibleJ& j,
                                        const QuadratureScheme& scheme, double einstein_tolerance = 1e-10);

/// (int |W+|^2, (4 pi^2 / 3)(2 chi + 3 tau)) with the topological side taken
/// from the reference data.
std::pair<double, double> lebrun_inequality_check(const MetricDescription& desc, const QuadratureScheme& scheme,
                                                  const ReferenceTopology& topology);

/// (int s^2, 32 pi^2 (2 chi + 3 tau)).
std::pair<double, double> corollary6_hypothesis(const MetricDescription& desc, const QuadratureScheme& scheme,
                                                const ReferenceTopology& topology);

/// (1/8 pi^2) int (s^2/24 - |W+|^2 + 3|W-|^2 - |ric0|^2/2), which should equal chi - 3 tau.
double chi_minus_three_tau(const MetricDescription& desc, const QuadratureScheme& scheme);

// ---------------------------------------------------------------------------
// Reports

/// A published number: the value at `resolution`, the same quantity at a
/// coarser resolution, and |difference| plus a rounding floor as the error.
struct Estimate {
  double value = 0.0;
  double error = 0.0;
  int resolution = 0;
  std::optional<double> coarse_value;
  int coarse_resolution = 0;
  std::string provenance;  // "quadrature", "homogeneous_shortcut" or "oracle"
};

struct IntegralReport {
  std::string entry;
  QuadratureKind kind = QuadratureKind::HomogeneousShortcut;
  int resolution = 0;
  int coarse_resolution = 0;
  Estimate volume;
  /// Named fields in a fixed order; structure-dependent ones are missing
  /// when the entry has no J.
  std::vector<std::pair<std::string, Estimate>> fields;
  /// Sections that were not computed because a hypothesis failed.
  std::vector<std::pair<std::string, std::string>> refusals;

  const Estimate* find(const std::string& name) const;
  const Estimate& at(const std::string& name) const;
};

struct ReportOptions {
  Execution execution = Execution::Parallel;
  /// Use value x volume on homogeneous entries instead of node quadrature.
  bool use_shortcut = true;
  double einstein_tolerance = 1e-10;
};

/// Integral report for a compact entry at `resolution` (the coarse companion
/// is resolution / 2, at least 2). Throws ConfigError for pointwise-only
/// entries and for frame entries without a shortcut.
IntegralReport integral_report(const CatalogEntry& entry, int resolution, const ReportOptions& options = {});

}  // namespace curvlab
