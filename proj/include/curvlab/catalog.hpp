#pragma once

// Built-in manifolds with analytically certified structural flags and
// reference data. These entries are the test corpus for the engine.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "curvlab/metric.hpp"

namespace curvlab {

struct StructureFlags {
  bool almost_kahler = false;
  bool kahler = false;
  bool einstein = false;
  bool constant_s = false;
  bool delta_wplus_zero = false;  // certified analytically, never measured
  bool self_dual = false;
  std::string delta_wplus_justification;
};

struct ReferenceTopology {
  double chi = 0.0;
  double tau = 0.0;
  double c1_squared() const { return 2.0 * chi + 3.0 * tau; }
};

/// coefficient * pi^power, kept separate so saturation checks compare exact
/// multiples of pi^2.
struct PiMultiple {
  double coefficient = 0.0;
  int power = 0;
  double value() const;
};

struct CatalogEntry {
  std::string id;
  std::map<std::string, double> params;
  MetricDescription desc;
  std::optional<CompatibleJ> j;
  StructureFlags flags;
  /// Noncompact models: no integral reports.
  bool pointwise_only = false;
  std::optional<ReferenceTopology> topology;
  std::optional<PiMultiple> volume;
  /// Curvature is constant along the manifold, so integrals are value x volume.
  bool homogeneous = false;
  /// Point used by the homogeneous shortcut.
  Vec4 base_point = Vec4::Zero();
  std::optional<double> known_scalar;
  std::optional<double> known_s_star;

  bool compact() const { return !pointwise_only; }
};

/// Ids accepted by load().
const std::vector<std::string>& catalog_ids();

/// Default parameters of an entry (radii, description mode).
std::map<std::string, double> default_params(const std::string& id);

/// Builds an entry. Unknown ids or parameters throw ConfigError. Parameters:
///   s4_round: r            s2xs2: a, b
///   t4_flat, kodaira_thurston: mode (0 = chart, 1 = left-invariant frame)
CatalogEntry load(const std::string& id, const std::map<std::string, double>& params = {});

/// Checks the flag implications (Einstein almost-Kaehler => delta W+ = 0,
/// Kaehler with constant s => delta W+ = 0, Kaehler => almost-Kaehler).
/// Returns a list of violated implications; empty when consistent.
std::vector<std::string> flag_inconsistencies(const CatalogEntry& entry);

}  // namespace curvlab
