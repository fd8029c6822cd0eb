#include "curvlab/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <numbers>

#include "curvlab/almost_kahler.hpp"
#include "curvlab/errors.hpp"
#include "curvlab/geometry.hpp"

#ifdef CURVLAB_HAVE_OPENMP
#include <omp.h>
#endif

namespace curvlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;

// Relative rounding floor attached to every estimate.
constexpr double kRoundingFloor = 64.0 * std::numeric_limits<double>::epsilon();

}  // namespace

std::string to_string(Execution execution) {
  return execution == Execution::Serial ? "serial" : "parallel";
}

NodeSample evaluate_node(const MetricDescription& desc, const CompatibleJ* j, const QuadratureNode& node) {
  NodeSample out;
  out.weight = node.weight;
  if (j != nullptr) {
    const AlmostKahlerSample ak = evaluate_structure(desc, *j, node.point);
    out.scalar = ak.geometry.scalar;
    out.wplus2 = ak.blocks.wplus.norm2();
    out.wminus2 = ak.blocks.wminus.squaredNorm();
    out.ric0_2 = ric0_norm2(ak.geometry);
    out.s_star = ak.s_star;
    out.w_omega_omega = ak.w_omega_omega;
    out.w_perp2 = ak.w_perp2;
    out.f_plus2 = ak.blair.f_plus.v.squaredNorm();
    out.f_minus2 = ak.blair.f_minus.v.squaredNorm();
    return out;
  }
  const PointGeometry pg = riemann(desc, node.point);
  const ScalarInvariants inv = invariants(pg);
  out.scalar = inv.scalar;
  out.wplus2 = inv.wplus2;
  out.wminus2 = inv.wminus2;
  out.ric0_2 = inv.ric0_2;
  return out;
}

std::vector<NodeSample> evaluate_nodes_serial(const MetricDescription& desc, const CompatibleJ* j,
                                              const QuadratureScheme& scheme) {
  std::vector<NodeSample> out(scheme.nodes.size());
  for (std::size_t i = 0; i < scheme.nodes.size(); ++i) out[i] = evaluate_node(desc, j, scheme.nodes[i]);
  return out;
}

std::vector<NodeSample> evaluate_nodes_parallel(const MetricDescription& desc, const CompatibleJ* j,
                                                const QuadratureScheme& scheme) {
#ifdef CURVLAB_HAVE_OPENMP
  const long n = static_cast<long>(scheme.nodes.size());
  std::vector<NodeSample> out(scheme.nodes.size());
  // Exceptions cannot cross the parallel region; keep the one from the
  // lowest node index so the reported error matches the serial path.
  long failed_at = n;
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = evaluate_node(desc, j, scheme.nodes[i]);
    } catch (...) {
#pragma omp critical(curvlab_node_failure)
      {
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
#else
  return evaluate_nodes_serial(desc, j, scheme);
#endif
}

std::vector<NodeSample> evaluate_nodes(const MetricDescription& desc, const CompatibleJ* j,
                                       const QuadratureScheme& scheme, Execution execution) {
  return execution == Execution::Serial ? evaluate_nodes_serial(desc, j, scheme)
                                        : evaluate_nodes_parallel(desc, j, scheme);
}

Integrals accumulate(const std::vector<NodeSample>& samples) {
  NeumaierSum volume, s, s2, wp, wm, r0, ssh, sw, wph, ww, cor3l, cor3r, fp, fm, mag;
  Integrals out;
  for (const NodeSample& n : samples) {
    const double w = n.weight;
    volume.add(w);
    s.add(w * n.scalar);
    s2.add(w * n.scalar * n.scalar);
    wp.add(w * n.wplus2);
    wm.add(w * n.wminus2);
    r0.add(w * n.ric0_2);
    ssh.add(w * 0.5 * (n.scalar + n.s_star));
    sw.add(w * n.scalar * n.w_omega_omega);
    wph.add(w * (n.wplus2 - 0.5 * n.w_perp2));
    ww.add(w * n.w_omega_omega * (n.w_omega_omega - n.scalar / 3.0));
    cor3l.add(w * (n.scalar * n.s_star / 8.0 - n.scalar * n.scalar / 24.0));
    cor3r.add(w * (2.0 * n.wplus2 - n.w_perp2));
    fp.add(w * n.f_plus2);
    fm.add(w * n.f_minus2);
    mag.add(std::abs(w) * std::max({1.0, n.scalar * n.scalar, std::abs(n.scalar * n.s_star), n.wplus2,
                                    n.wminus2, n.ric0_2, n.f_plus2, n.f_minus2}));
  }
  out.volume = volume.value();
  out.s = s.value();
  out.s2 = s2.value();
  out.wplus2 = wp.value();
  out.wminus2 = wm.value();
  out.ric0_2 = r0.value();
  out.s_plus_s_star_half = ssh.value();
  out.s_w = sw.value();
  out.wplus2_minus_half_perp = wph.value();
  out.w_w_minus_s3 = ww.value();
  out.s_s_star_8_minus_s2_24 = cor3l.value();
  out.two_wplus2_minus_perp = cor3r.value();
  out.f_plus2 = fp.value();
  out.f_minus2 = fm.value();
  out.magnitude = mag.value();
  return out;
}

Integrals integrate(const MetricDescription& desc, const CompatibleJ* j, const QuadratureScheme& scheme,
                    Execution execution) {
  Integrals out = accumulate(evaluate_nodes(desc, j, scheme, execution));
  out.has_structure = j != nullptr;
  return out;
}

namespace {

double chi_of(const Integrals& i) {
  return (i.s2 / 24.0 + i.wplus2 + i.wminus2 - 0.5 * i.ric0_2) / (8.0 * kPi2);
}
double tau_of(const Integrals& i) { return (i.wplus2 - i.wminus2) / (12.0 * kPi2); }
double chi_minus_three_tau_of(const Integrals& i) {
  return (i.s2 / 24.0 - i.wplus2 + 3.0 * i.wminus2 - 0.5 * i.ric0_2) / (8.0 * kPi2);
}
double blair_c1_squared_of(const Integrals& i) { return (i.f_plus2 - i.f_minus2) / (4.0 * kPi2); }

// Integrated rather than nodewise: far radial nodes carry rounding noise in
// ric0 that the quadrature weights suppress.
void require_einstein(const std::string& name, const Integrals& i, double tolerance) {
  if (i.ric0_2 > tolerance * std::max(1.0, std::abs(i.s2))) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", i.ric0_2);
    throw HypothesisViolation(name + ": metric is not Einstein (int |ric0|^2 = " + buf +
                              "); the identity is only claimed for Einstein almost-Kaehler metrics");
  }
}

}  // namespace

double euler_characteristic(const MetricDescription& desc, const QuadratureScheme& scheme) {
  return chi_of(integrate(desc, nullptr, scheme));
}

double signature(const MetricDescription& desc, const QuadratureScheme& scheme) {
  return tau_of(integrate(desc, nullptr, scheme));
}

double c1_dot_omega(const MetricDescription& desc, const CompatibleJ& j, const QuadratureScheme& scheme) {
  return integrate(desc, &j, scheme).s_plus_s_star_half / (4.0 * kPi);
}

std::pair<double, double> c1_squared(const MetricDescription& desc, const CompatibleJ& j,
                                     const QuadratureScheme& scheme) {
  const Integrals i = integrate(desc, &j, scheme);
  return {2.0 * chi_of(i) + 3.0 * tau_of(i), blair_c1_squared_of(i)};
}

std::pair<double, double> prop1_residual(const MetricDescription& desc, const CompatibleJ& j,
                                         const QuadratureScheme& scheme) {
  const Integrals i = integrate(desc, &j, scheme);
  return {i.s_w, 8.0 * i.wplus2_minus_half_perp};
}

double prop2_value(const MetricDescription& desc, const CompatibleJ& j, const QuadratureScheme& scheme) {
  return integrate(desc, &j, scheme).w_w_minus_s3;
}

double thm3_gap(const MetricDescription& desc, const QuadratureScheme& scheme) {
  const Integrals i = integrate(desc, nullptr, scheme);
  return i.s2 / 24.0 - i.wplus2;
}

std::pair<double, double> cor3_residual(const MetricDescription& desc, const CompatibleJ& j,
                                        const QuadratureScheme& scheme, double einstein_tolerance) {
  const Integrals i = integrate(desc, &j, scheme);
  require_einstein(desc.name, i, einstein_tolerance);
  return {i.s_s_star_8_minus_s2_24, i.two_wplus2_minus_perp};
}

std::pair<double, double> lebrun_inequality_check(const MetricDescription& desc, const QuadratureScheme& scheme,
                                                  const ReferenceTopology& topology) {
  const Integrals i = integrate(desc, nullptr, scheme);
  return {i.wplus2, 4.0 * kPi2 / 3.0 * topology.c1_squared()};
}

std::pair<double, double> corollary6_hypothesis(const MetricDescription& desc, const QuadratureScheme& scheme,
                                                const ReferenceTopology& topology) {
  const Integrals i = integrate(desc, nullptr, scheme);
  return {i.s2, 32.0 * kPi2 * topology.c1_squared()};
}

double chi_minus_three_tau(const MetricDescription& desc, const QuadratureScheme& scheme) {
  return chi_minus_three_tau_of(integrate(desc, nullptr, scheme));
}

// ---------------------------------------------------------------------------

const Estimate* IntegralReport::find(const std::string& name) const {
  for (const auto& [key, value] : fields)
    if (key == name) return &value;
  return nullptr;
}

const Estimate& IntegralReport::at(const std::string& name) const {
  const Estimate* e = find(name);
  if (e == nullptr) throw ConfigError("report has no field '" + name + "'");
  return *e;
}

namespace {

struct FieldValues {
  std::vector<std::pair<std::string, double>> computed;
  std::vector<std::pair<std::string, double>> oracle;
  std::vector<std::pair<std::string, std::string>> refusals;
};

FieldValues field_values(const CatalogEntry& entry, const Integrals& i, double einstein_tolerance) {
  FieldValues f;
  auto& c = f.computed;
  c.emplace_back("chi", chi_of(i));
  c.emplace_back("tau", tau_of(i));
  c.emplace_back("chi_minus_3tau_integral", chi_minus_three_tau_of(i));
  c.emplace_back("int_s", i.s);
  c.emplace_back("int_s2", i.s2);
  c.emplace_back("int_wplus2", i.wplus2);
  c.emplace_back("int_wminus2", i.wminus2);
  c.emplace_back("thm3_gap", i.s2 / 24.0 - i.wplus2);
  if (entry.topology) {
    f.oracle.emplace_back("c1_squared_topological", entry.topology->c1_squared());
    f.oracle.emplace_back("wplus_topological_bound", 4.0 * kPi2 / 3.0 * entry.topology->c1_squared());
    f.oracle.emplace_back("s2_topological_value", 32.0 * kPi2 * entry.topology->c1_squared());
  }
  if (i.has_structure) {
    c.emplace_back("c1_dot_omega", i.s_plus_s_star_half / (4.0 * kPi));
    c.emplace_back("c1_squared_blair", blair_c1_squared_of(i));
    c.emplace_back("prop1_lhs", i.s_w);
    c.emplace_back("prop1_rhs", 8.0 * i.wplus2_minus_half_perp);
    c.emplace_back("prop2_value", i.w_w_minus_s3);
    try {
      require_einstein(entry.id, i, einstein_tolerance);
      c.emplace_back("cor3_lhs", i.s_s_star_8_minus_s2_24);
      c.emplace_back("cor3_rhs", i.two_wplus2_minus_perp);
    } catch (const HypothesisViolation& e) {
      f.refusals.emplace_back("cor3", e.what());
    }
  }
  return f;
}

double rounding_floor(const Integrals& i, double value) {
  // Fields are integrals possibly divided by a constant >= 1; the magnitude
  // bounds the accumulated terms, so this is a conservative floor.
  return kRoundingFloor * std::max(std::abs(value), i.magnitude);
}

}  // namespace

IntegralReport integral_report(const CatalogEntry& entry, int resolution, const ReportOptions& options) {
  if (entry.pointwise_only) {
    throw ConfigError(entry.id + ": pointwise-only entry, no integral report");
  }
  const CompatibleJ* j = entry.j ? &*entry.j : nullptr;
  IntegralReport report;
  report.entry = entry.id;

  const bool shortcut = entry.homogeneous && entry.volume && (options.use_shortcut || entry.desc.is_frame());
  if (shortcut) {
    const QuadratureScheme scheme = homogeneous_scheme(entry.base_point, entry.volume->value());
    Integrals i = integrate(entry.desc, j, scheme, options.execution);
    report.kind = scheme.kind;
    report.resolution = scheme.resolution;
    report.volume = {i.volume, rounding_floor(i, i.volume), 1, std::nullopt, 0, "homogeneous_shortcut"};
    FieldValues f = field_values(entry, i, options.einstein_tolerance);
    for (auto& [name, value] : f.computed) {
      report.fields.push_back({name, {value, rounding_floor(i, value), 1, std::nullopt, 0, "homogeneous_shortcut"}});
    }
    for (auto& [name, value] : f.oracle) report.fields.push_back({name, {value, 0.0, 0, std::nullopt, 0, "oracle"}});
    report.refusals = std::move(f.refusals);
    return report;
  }

  if (entry.desc.is_frame()) {
    throw ConfigError(entry.id + ": frame description needs the homogeneous shortcut");
  }
  const int coarse = std::max(2, resolution / 2);
  const QuadratureScheme fine_scheme = make_scheme(entry.desc, resolution);
  const QuadratureScheme coarse_scheme = make_scheme(entry.desc, coarse);
  const Integrals fi = integrate(entry.desc, j, fine_scheme, options.execution);
  const Integrals ci = integrate(entry.desc, j, coarse_scheme, options.execution);
  report.kind = fine_scheme.kind;
  report.resolution = resolution;
  report.coarse_resolution = coarse;
  report.volume = {fi.volume, std::abs(fi.volume - ci.volume) + rounding_floor(fi, fi.volume), resolution,
                   ci.volume, coarse, "quadrature"};

  const FieldValues ff = field_values(entry, fi, options.einstein_tolerance);
  const FieldValues cf = field_values(entry, ci, options.einstein_tolerance);
  for (const auto& [name, value] : ff.computed) {
    std::optional<double> coarse_value;
    for (const auto& [cname, cvalue] : cf.computed)
      if (cname == name) coarse_value = cvalue;
    const double diff = coarse_value ? std::abs(value - *coarse_value) : 0.0;
    report.fields.push_back(
        {name, {value, diff + rounding_floor(fi, value), resolution, coarse_value, coarse, "quadrature"}});
  }
  for (const auto& [name, value] : ff.oracle) report.fields.push_back({name, {value, 0.0, 0, std::nullopt, 0, "oracle"}});
  report.refusals = ff.refusals;
  return report;
}

}  // namespace curvlab
