#pragma once

// Discrete check of the Weitzenboeck formula on self-dual 2-forms,
//   Delta alpha = nabla^* nabla alpha - 2 W+(alpha) + (s/3) alpha.
//
// Delta = d delta + delta d is built from centred differences and pointwise
// Hodge stars (delta = -*d*), independently of the connection. The rough
// Laplacian uses the exact Christoffel symbols with finite-difference
// derivatives of alpha. Both sides are second order in the grid spacing.

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "curvlab/catalog.hpp"
#include "curvlab/functionals.hpp"
#include "curvlab/metric.hpp"

namespace curvlab {

/// Coordinate components alpha_ij (antisymmetric) of a 2-form field.
using FormField = std::function<Mat4(const Vec4&)>;

struct GridAxis {
  int nodes = 8;
  double lower = 0.0;
  double upper = 1.0;
  bool periodic = false;

  double spacing() const { return periodic ? (upper - lower) / nodes : (upper - lower) / (nodes - 1); }
};

struct GridSpec {
  std::array<GridAxis, 4> axes;
  std::size_t size() const;
};

/// Grid with n nodes per axis over the chart: full periods on periodic axes,
/// the middle half of Legendre axes (keeps away from polar singularities),
/// [-1/2, 1/2] for the radial chart and the middle half of a ball.
GridSpec default_grid(const MetricDescription& desc, int n);

struct WeitzenboeckResult {
  double residual = 0.0;            // max frame norm of the residual
  double h = 0.0;                   // largest grid spacing
  std::size_t evaluated_nodes = 0;
  double max_curvature_term = 0.0;  // max |-2 W+(alpha) + (s/3) alpha|
  double max_alpha = 0.0;           // max |alpha| at evaluation nodes
};

/// Throws ConfigError for grids with fewer than 8 nodes on an axis or frame
/// descriptions, DegenerateInput when alpha is not self-dual.
WeitzenboeckResult weitzenboeck_analysis(const MetricDescription& desc, const FormField& alpha, const GridSpec& grid,
                                         Execution execution = Execution::Parallel);

double weitzenboeck_residual(const MetricDescription& desc, const FormField& alpha, const GridSpec& grid);

/// Test fields: "bump" = sin(x1) cos(x2) P+(dx1^dx2 + dx3^dx4), "constant" =
/// P+(dx1^dx2 + dx3^dx4), "omega" = the entry's fundamental form.
FormField named_field(const CatalogEntry& entry, const std::string& name);

struct ConvergenceLevel {
  int n = 0;
  WeitzenboeckResult result;
};

struct ConvergenceTable {
  std::string field;
  std::vector<ConvergenceLevel> levels;
  /// Least-squares slope of log(residual) against log(h); empty when every
  /// residual is at the rounding floor.
  std::optional<double> order;
  bool exact = false;
  double floor = 0.0;
};

/// Needs at least three levels (ConfigError otherwise).
ConvergenceTable weitzenboeck_convergence(const CatalogEntry& entry, const std::string& field,
                                          const std::vector<int>& resolutions,
                                          Execution execution = Execution::Parallel);

/// Least-squares slope of log(y) against log(x).
double fitted_order(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace curvlab
