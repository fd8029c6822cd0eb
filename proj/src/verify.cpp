#include "curvlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "curvlab/almost_kahler.hpp"
#include "curvlab/errors.hpp"
#include "curvlab/geometry.hpp"

namespace curvlab {

namespace {

constexpr double kPi = std::numbers::pi;

double scale(double x) { return std::max(1.0, std::abs(x)); }

Check pass_fail(std::string name, std::string section, double value, double tolerance, std::string detail = {}) {
  return {std::move(name), std::move(section), value <= tolerance ? CheckStatus::Pass : CheckStatus::Fail, value,
          tolerance, std::move(detail)};
}

std::string format_order(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

Check observe(std::string name, std::string section, double value, std::string detail) {
  return {std::move(name), std::move(section), CheckStatus::Observational, value, 0.0, std::move(detail)};
}

}  // namespace

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Refused: return "refused";
    case CheckStatus::Observational: return "observational";
  }
  return "unknown";
}

Tolerances::Tolerances()
    : values_{{"pointwise", 1e-8},          {"symmetry", 1e-9},   {"topology_shortcut", 1e-10},
              {"topology_quadrature", 1e-4}, {"identity", 1e-6},   {"c1_squared", 1e-3},
              {"einstein", 1e-10},           {"order_min", 1.8},   {"order_max", 2.2},
              {"weitzenboeck_exact", 1e-10}} {}

void Tolerances::set(const std::string& name, double value) {
  auto it = values_.find(name);
  if (it == values_.end()) throw ConfigError("unknown tolerance '" + name + "'");
  if (!(value > 0.0) || !std::isfinite(value)) throw ConfigError("tolerance '" + name + "' must be positive");
  it->second = value;
}

double Tolerances::get(const std::string& name) const {
  auto it = values_.find(name);
  if (it == values_.end()) throw ConfigError("unknown tolerance '" + name + "'");
  return it->second;
}

bool VerifyReport::passed() const { return count(CheckStatus::Fail) == 0; }

int VerifyReport::count(CheckStatus status) const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(), [&](const Check& c) { return c.status == status; }));
}

std::vector<Vec4> sample_points(const MetricDescription& desc, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Vec4> out;
  out.reserve(count);
  const auto* chart = std::get_if<ChartMetric>(&desc.form);
  for (int n = 0; n < count; ++n) {
    Vec4 x;
    for (int a = 0; a < 4; ++a) x[a] = unit(rng);
    if (chart == nullptr) {
      out.push_back(x);
      continue;
    }
    if (const auto* box = std::get_if<BoxDomain>(&chart->domain)) {
      for (int a = 0; a < 4; ++a) {
        const AxisRule& r = box->axes[a];
        const double margin = r.kind == AxisRule::Kind::Legendre ? 0.05 * (r.upper - r.lower) : 0.0;
        x[a] = r.lower + margin + x[a] * (r.upper - r.lower - 2.0 * margin);
      }
    } else if (std::holds_alternative<RadialDomain>(chart->domain)) {
      x = 4.0 * x - Vec4::Constant(2.0);
    } else {
      const double r = std::get<BallDomain>(chart->domain).radius;
      x = 0.8 * r * (x - Vec4::Constant(0.5));  // |x| <= 0.8 r
    }
    out.push_back(x);
  }
  return out;
}

Mat4 random_orthogonal(std::uint64_t seed, bool reflect) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Mat4 a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = normal(rng);
  Eigen::HouseholderQR<Mat4> qr(a);
  Mat4 q = qr.householderQ();
  if ((q.determinant() < 0.0) != reflect) q.col(0) *= -1.0;
  return q;
}

namespace {

void pointwise_checks(const CatalogEntry& entry, const VerifyOptions& options, std::vector<Check>& out) {
  const Tolerances& tol = options.tolerances;
  const auto points = sample_points(entry.desc, options.samples, options.seed);
  const char* section = "pointwise";
  double symmetry = 0.0, reassembly = 0.0, rotation = 0.0, reflection = 0.0, scalar = 0.0;
  double star = 0.0, quadratic = 0.0, kahler_nabla = 0.0, kahler_perp = 0.0, kahler_w = 0.0, kahler_norm = 0.0;
  double blair_ke = 0.0, blair_residual = 0.0, star_known = 0.0;
  double min_nabla = std::numeric_limits<double>::infinity();
  const bool kahler_einstein = entry.flags.kahler && entry.flags.einstein;

  for (std::size_t n = 0; n < points.size(); ++n) {
    const Vec4& x = points[n];
    const PointGeometry pg = riemann(entry.desc, x);
    const double s = pg.scalar;
    symmetry = std::max(symmetry, riemann_symmetry_residual(pg) / scale(s));
    const Mat6 op = curvature_operator(pg);
    reassembly = std::max(reassembly, (assemble_operator(split_operator(op)) - op).cwiseAbs().maxCoeff() / scale(s));

    const ScalarInvariants base = invariants(pg);
    const ScalarInvariants rot = invariants(rotate_frame(pg, random_orthogonal(options.seed * 7919 + n, false)));
    const ScalarInvariants ref = invariants(rotate_frame(pg, random_orthogonal(options.seed * 7919 + n, true)));
    const double sc = scale(base.scalar * base.scalar);
    rotation = std::max({rotation, std::abs(rot.scalar - base.scalar) / scale(base.scalar),
                         std::abs(rot.wplus2 - base.wplus2) / sc, std::abs(rot.wminus2 - base.wminus2) / sc,
                         std::abs(rot.ric0_2 - base.ric0_2) / sc});
    reflection = std::max({reflection, std::abs(ref.wplus2 - base.wminus2) / sc,
                           std::abs(ref.wminus2 - base.wplus2) / sc});
    if (entry.known_scalar) scalar = std::max(scalar, std::abs(s - *entry.known_scalar) / scale(s));

    if (!entry.j) continue;
    const AlmostKahlerSample ak = evaluate_structure(entry.desc, *entry.j, x);
    star = std::max(star, ak.star().consistency_residual() / scale(s));
    quadratic = std::max(quadratic, std::abs(ak.w_omega_omega - (ak.s_star / 2.0 - s / 6.0)) / scale(s));
    min_nabla = std::min(min_nabla, ak.nabla_omega_norm2);
    if (entry.known_s_star) star_known = std::max(star_known, std::abs(ak.s_star - *entry.known_s_star) / scale(s));
    if (entry.flags.kahler) {
      kahler_nabla = std::max(kahler_nabla, ak.nabla_omega_norm2 / scale(s));
      kahler_perp = std::max(kahler_perp, ak.w_perp2 / scale(s * s));
      kahler_w = std::max(kahler_w, std::abs(ak.w_omega_omega - s / 3.0) / scale(s));
      kahler_norm = std::max(kahler_norm, std::abs(ak.blocks.wplus.norm2() - s * s / 24.0) / scale(s * s));
    }
    if (kahler_einstein) {
      const double plus = (ak.blair.f_plus.v - (s / 4.0) * ak.omega_plus.v).norm();
      blair_ke = std::max({blair_ke, plus / scale(s), ak.blair.f_minus.v.norm() / scale(s)});
    }
    blair_residual = std::max(blair_residual, ak.blair.residual);
  }

  out.push_back(pass_fail("riemann_symmetries", section, symmetry, tol.get("symmetry")));
  out.push_back(pass_fail("block_reassembly", section, reassembly, tol.get("symmetry")));
  out.push_back(pass_fail("frame_rotation_invariance", section, rotation, tol.get("pointwise")));
  out.push_back(pass_fail("orientation_reversal_swap", section, reflection, tol.get("pointwise")));
  if (entry.known_scalar) out.push_back(pass_fail("known_scalar", section, scalar, tol.get("pointwise")));
  if (!entry.j) return;
  out.push_back(pass_fail("s_star_consistency", section, star, tol.get("pointwise")));
  out.push_back(pass_fail("w_quadratic_identity", section, quadratic, tol.get("pointwise")));
  if (entry.known_s_star) out.push_back(pass_fail("known_s_star", section, star_known, tol.get("pointwise")));
  if (entry.flags.kahler) {
    out.push_back(pass_fail("kahler_parallel_omega", section, kahler_nabla, tol.get("pointwise")));
    out.push_back(pass_fail("kahler_wplus_perp", section, kahler_perp, tol.get("pointwise")));
    out.push_back(pass_fail("kahler_w_omega_omega", section, kahler_w, tol.get("pointwise")));
    out.push_back(pass_fail("kahler_wplus_norm", section, kahler_norm, tol.get("pointwise")));
  } else {
    out.push_back(observe("min_nabla_omega_norm2", section, min_nabla, "s* - s at the sampled points"));
  }
  if (kahler_einstein) {
    out.push_back(pass_fail("blair_kahler_einstein", section, blair_ke, tol.get("pointwise"),
                            "|F+ - (s/4) omega| and |F-|"));
  } else {
    out.push_back(observe("blair_decomposition_residual", section, blair_residual,
                          "asserted only for Kaehler-Einstein entries"));
  }
}

void integral_checks(const CatalogEntry& entry, const IntegralReport& r, const VerifyOptions& options,
                     std::vector<Check>& out) {
  const Tolerances& tol = options.tolerances;
  const char* section = "integral";
  const bool shortcut = r.kind == QuadratureKind::HomogeneousShortcut;
  const double topo_tol = tol.get(shortcut ? "topology_shortcut" : "topology_quadrature");
  const double id_tol = tol.get("identity");
  const StructureFlags& f = entry.flags;
  const bool kahler_csc = f.kahler && f.constant_s;
  const bool kahler_einstein = f.kahler && f.einstein;

  if (entry.topology) {
    out.push_back(pass_fail("chi", section, std::abs(r.at("chi").value - entry.topology->chi), topo_tol));
    out.push_back(pass_fail("tau", section, std::abs(r.at("tau").value - entry.topology->tau), topo_tol));
  }
  const double chi3tau = r.at("chi").value - 3.0 * r.at("tau").value;
  out.push_back(pass_fail("chi_minus_3tau_integrand", section,
                          std::abs(r.at("chi_minus_3tau_integral").value - chi3tau), id_tol));

  const Estimate& gap = r.at("thm3_gap");
  const double gap_scale = scale(r.at("int_s2").value / 24.0);
  if (kahler_csc) {
    out.push_back(pass_fail("thm3_equality", section, std::abs(gap.value) / gap_scale, id_tol));
  } else if (f.delta_wplus_zero && f.almost_kahler) {
    out.push_back(pass_fail("thm3_inequality", section, std::max(0.0, -gap.value - gap.error), 0.0));
  } else {
    out.push_back(observe("thm3_gap", section, gap.value,
                          f.almost_kahler ? "delta W+ = 0 not certified" : "outside the almost-Kaehler hypotheses"));
  }

  if (!r.find("prop1_lhs")) return;
  const double lhs = r.at("prop1_lhs").value, rhs = r.at("prop1_rhs").value;
  if (f.delta_wplus_zero) {
    out.push_back(pass_fail("prop1_identity", section, std::abs(lhs - rhs) / scale(lhs), id_tol));
  } else {
    out.push_back(observe("prop1_difference", section, lhs - rhs, "delta W+ = 0 not certified"));
  }

  const Estimate& p2 = r.at("prop2_value");
  if (kahler_csc) {
    out.push_back(pass_fail("prop2_equality", section, std::abs(p2.value) / scale(lhs), id_tol));
  } else if (f.delta_wplus_zero) {
    out.push_back(pass_fail("prop2_inequality", section, std::max(0.0, p2.value - p2.error), 0.0));
  } else {
    out.push_back(observe("prop2_value", section, p2.value, "no sign asserted: delta W+ = 0 not certified"));
  }

  bool refused = false;
  for (const auto& [name, why] : r.refusals) {
    if (name == "cor3") {
      out.push_back({"cor3_identity", section, CheckStatus::Refused, 0.0, 0.0, why});
      refused = true;
    }
  }
  if (!refused) {
    const double l = r.at("cor3_lhs").value, rr = r.at("cor3_rhs").value;
    out.push_back(pass_fail("cor3_identity", section, std::abs(l - rr) / scale(l), id_tol));
  }

  if (f.kahler) {
    const double c1w = r.at("c1_dot_omega").value;
    const double from_s = r.at("int_s").value / (4.0 * kPi);
    out.push_back(pass_fail("c1_dot_omega_kahler", section, std::abs(c1w - from_s) / scale(c1w), id_tol));
  } else {
    out.push_back(observe("c1_dot_omega", section, r.at("c1_dot_omega").value, "(1/4 pi) int (s + s*)/2"));
  }

  if (!entry.topology) return;
  const double blair = r.at("c1_squared_blair").value;
  const double topo = r.at("c1_squared_topological").value;
  if (kahler_einstein) {
    out.push_back(pass_fail("c1_squared_blair", section, std::abs(blair - topo), tol.get("c1_squared")));
    const double lw = r.at("int_wplus2").value, lt = r.at("wplus_topological_bound").value;
    out.push_back(pass_fail("wplus_bound_saturation", section, std::abs(lw - lt) / scale(lt), id_tol));
    const double s2 = r.at("int_s2").value, ct = r.at("s2_topological_value").value;
    out.push_back(pass_fail("s2_topological_equality", section, std::abs(s2 - ct) / scale(ct), id_tol));
  } else {
    out.push_back(observe("c1_squared_blair_difference", section, blair - topo,
                          "Blair integral asserted only for Kaehler-Einstein entries"));
    out.push_back(observe("wplus_bound_difference", section, r.at("int_wplus2").value - r.at("wplus_topological_bound").value,
                          "int |W+|^2 - (4 pi^2/3)(2 chi + 3 tau)"));
    out.push_back(observe("s2_topological_difference", section, r.at("int_s2").value - r.at("s2_topological_value").value,
                          "int s^2 - 32 pi^2 (2 chi + 3 tau)"));
  }
}

}  // namespace

void weitzenboeck_checks(const CatalogEntry& entry, const std::vector<int>& resolutions, Execution execution,
                         const Tolerances& tol, std::vector<Check>& out, std::vector<ConvergenceTable>& tables) {
  const char* section = "weitzenboeck";
  if (!entry.desc.is_chart()) {
    out.push_back({"weitzenboeck", section, CheckStatus::Refused, 0.0, 0.0,
                   "frame description: the discrete Hodge Laplacian needs a chart"});
    return;
  }
  const bool flat = entry.flags.kahler && entry.known_scalar && *entry.known_scalar == 0.0 &&
                    entry.topology && entry.topology->chi == 0.0 && entry.flags.einstein;
  const double lo = tol.get("order_min"), hi = tol.get("order_max");
  auto order_of = [](const ConvergenceTable& t) { return t.order ? *t.order : 0.0; };

  if (flat) {
    tables.push_back(weitzenboeck_convergence(entry, "bump", resolutions, execution));
    const double order = order_of(tables.back());
    out.push_back({"weitzenboeck_bump_order", section,
                   order >= lo && order <= hi ? CheckStatus::Pass : CheckStatus::Fail, order, 0.0,
                   "fitted order must lie in [" + format_order(lo) + ", " + format_order(hi) + "]"});
    tables.push_back(weitzenboeck_convergence(entry, "constant", resolutions, execution));
    double worst = 0.0;
    for (const auto& l : tables.back().levels) worst = std::max(worst, l.result.residual);
    out.push_back(pass_fail("weitzenboeck_constant_exact", section, worst, tol.get("weitzenboeck_exact")));
    return;
  }
  if (entry.j) {
    tables.push_back(weitzenboeck_convergence(entry, "omega", resolutions, execution));
    const ConvergenceTable& t = tables.back();
    double curvature = 0.0;
    for (const auto& l : t.levels) curvature = std::max(curvature, l.result.max_curvature_term);
    if (entry.flags.kahler) {
      out.push_back(pass_fail("weitzenboeck_kahler_curvature_term", section, curvature,
                              tol.get("weitzenboeck_exact"), "|-2 W+(omega) + (s/3) omega|"));
      const double order = order_of(t);
      out.push_back({"weitzenboeck_kahler_discretization_floor", section,
                     t.exact || order >= lo ? CheckStatus::Pass : CheckStatus::Fail, order, 0.0,
                     "residual is pure discretization error: fitted order at least " + format_order(lo)});
    } else {
      out.push_back(observe("weitzenboeck_omega_order", section, order_of(t), "closed self-dual omega, not parallel"));
    }
    return;
  }
  tables.push_back(weitzenboeck_convergence(entry, "bump", resolutions, execution));
  out.push_back(observe("weitzenboeck_bump_order", section, order_of(tables.back()), "curved metric, bump form"));
}

VerifyReport verify_entry(const CatalogEntry& entry, const VerifyOptions& options) {
  if (options.samples < 1) throw ConfigError("need at least one sample point");
  VerifyReport report;
  report.entry = entry.id;
  for (const std::string& issue : flag_inconsistencies(entry)) {
    report.checks.push_back({"flag_consistency", "catalog", CheckStatus::Fail, 1.0, 0.0, issue});
  }
  if (options.pointwise) pointwise_checks(entry, options, report.checks);
  if (options.weitzenboeck) {
    weitzenboeck_checks(entry, options.weitzenboeck_resolutions, options.report.execution, options.tolerances,
                        report.checks, report.convergence);
  }
  if (options.integral) {
    if (entry.pointwise_only) {
      report.integral_note = "pointwise-only entry: excluded from integral reports";
    } else {
      ReportOptions ro = options.report;
      ro.einstein_tolerance = options.tolerances.get("einstein");
      report.integrals = integral_report(entry, options.resolution, ro);
      integral_checks(entry, *report.integrals, options, report.checks);
    }
  }
  return report;
}

std::vector<BlockRow> block_table(const CatalogEntry& entry, int samples, std::uint64_t seed) {
  std::vector<BlockRow> rows;
  for (const Vec4& x : sample_points(entry.desc, samples, seed)) {
    const PointGeometry pg = riemann(entry.desc, x);
    const CurvatureBlocks b = decompose(pg);
    BlockRow row;
    row.point = x;
    row.wplus_eigenvalues = Eigen::SelfAdjointEigenSolver<Mat3>(b.wplus.m, Eigen::EigenvaluesOnly).eigenvalues();
    row.scalar = pg.scalar;
    row.ric0_2 = ric0_norm2(pg);
    row.wplus2 = b.wplus.norm2();
    row.wminus2 = b.wminus.squaredNorm();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace curvlab
