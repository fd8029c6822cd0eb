#pragma once

// Per-entry verification: pointwise identities at sampled points and the
// integral identities whose hypotheses the entry certifies. Checks whose
// hypotheses fail are listed as refused; quantities with no asserted value
// are observational. Only Pass/Fail statuses count towards the exit code.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "curvlab/catalog.hpp"
#include "curvlab/functionals.hpp"
#include "curvlab/weitzenboeck.hpp"

namespace curvlab {

enum class CheckStatus { Pass, Fail, Refused, Observational };

std::string to_string(CheckStatus status);

struct Check {
  std::string name;
  std::string section;  // "pointwise" or "integral"
  CheckStatus status = CheckStatus::Observational;
  double value = 0.0;     // measured deviation or quantity
  double tolerance = 0.0;  // 0 for observational / refused
  std::string detail;
};

/// Tolerances by name; unknown names and non-positive values are rejected.
class Tolerances {
 public:
  Tolerances();
  void set(const std::string& name, double value);
  double get(const std::string& name) const;
  const std::map<std::string, double>& all() const { return values_; }

 private:
  std::map<std::string, double> values_;
};

struct VerifyOptions {
  int samples = 100;
  std::uint64_t seed = 1;
  int resolution = 16;
  bool pointwise = true;
  bool integral = true;
  bool weitzenboeck = false;
  std::vector<int> weitzenboeck_resolutions{8, 12, 16};
  ReportOptions report;
  Tolerances tolerances;
};

struct VerifyReport {
  std::string entry;
  std::vector<Check> checks;
  std::optional<IntegralReport> integrals;
  std::vector<ConvergenceTable> convergence;
  /// Why the integral section was skipped, if it was.
  std::string integral_note;

  bool passed() const;
  int count(CheckStatus status) const;
};

/// Reproducible sample points inside the description's domain, away from
/// coordinate singularities.
std::vector<Vec4> sample_points(const MetricDescription& desc, int count, std::uint64_t seed);

/// Random rotation with determinant +1 (or -1 when `reflect`).
Mat4 random_orthogonal(std::uint64_t seed, bool reflect);

/// Weitzenboeck convergence checks for the fields that make sense on the
/// entry: bump and constant forms on the flat torus, the fundamental form on
/// chart entries with a structure, the bump form elsewhere (observational).
void weitzenboeck_checks(const CatalogEntry& entry, const std::vector<int>& resolutions, Execution execution,
                         const Tolerances& tolerances, std::vector<Check>& checks,
                         std::vector<ConvergenceTable>& tables);

VerifyReport verify_entry(const CatalogEntry& entry, const VerifyOptions& options);

/// One row of the block table printed by `decompose`.
struct BlockRow {
  Vec4 point = Vec4::Zero();
  Vec3 wplus_eigenvalues = Vec3::Zero();  // ascending
  double scalar = 0.0;
  double ric0_2 = 0.0;
  double wplus2 = 0.0;
  double wminus2 = 0.0;
};

std::vector<BlockRow> block_table(const CatalogEntry& entry, int samples, std::uint64_t seed);

}  // namespace curvlab
