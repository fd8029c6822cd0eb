#include "curvlab/catalog.hpp"

#include <cmath>
#include <numbers>

#include "curvlab/errors.hpp"

namespace curvlab {

namespace {

constexpr double kPi = std::numbers::pi;

using HD = HyperDual;

// Real 4x4 metric of the Hermitian form h = re + i im on C^2 with real
// coordinates (Re z1, Im z1, Re z2, Im z2).
Matrix4<HD> hermitian_to_real(const HD (&re)[2][2], const HD (&im)[2][2]) {
  Matrix4<HD> g = zero_matrix<HD>();
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      g[2 * a][2 * b] = re[a][b];
      g[2 * a + 1][2 * b + 1] = re[a][b];
      g[2 * a][2 * b + 1] = im[a][b];
      g[2 * a + 1][2 * b] = -im[a][b];
    }
  }
  return g;
}

// (delta (1 + sign r^2) - sign zbar_a z_b) / (1 + sign r^2)^2: Fubini-Study for
// sign = +1, the Bergman ball metric for sign = -1.
Matrix4<HD> bergman_type_metric(const Point4<HD>& x, double sign) {
  const HD r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
  const HD base = 1.0 + sign * r2;
  const HD inv2 = 1.0 / (base * base);
  HD re[2][2], im[2][2];
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const HD& xa = x[2 * a];
      const HD& ya = x[2 * a + 1];
      const HD& xb = x[2 * b];
      const HD& yb = x[2 * b + 1];
      const HD zz_re = xa * xb + ya * yb;
      const HD zz_im = xa * yb - ya * xb;
      re[a][b] = ((a == b ? base : HD(0.0)) - sign * zz_re) * inv2;
      im[a][b] = (-sign * zz_im) * inv2;
    }
  }
  return hermitian_to_real(re, im);
}

Matrix4<HD> conformally_flat(const Point4<HD>& x, double scale, double sign) {
  const HD r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
  const HD base = 1.0 + sign * r2;
  const HD factor = scale / (base * base);
  Matrix4<HD> g = zero_matrix<HD>();
  for (int a = 0; a < 4; ++a) g[a][a] = factor;
  return g;
}

Mat4 standard_complex_structure() {
  Mat4 j = Mat4::Zero();
  j(1, 0) = 1.0;
  j(0, 1) = -1.0;
  j(3, 2) = 1.0;
  j(2, 3) = -1.0;
  return j;
}

CompatibleJ constant_j(const Mat4& j) {
  return {[j](const Point4<HD>&) { return constant_matrix<HD>(j); }};
}

// Two-form with components Omega(i, j) = 1 = -Omega(j, i) on the given pairs.
Mat4 pair_form(std::initializer_list<std::pair<int, int>> pairs) {
  Mat4 w = Mat4::Zero();
  for (auto [i, j] : pairs) {
    w(i, j) = 1.0;
    w(j, i) = -1.0;
  }
  return w;
}

BoxDomain periodic_box(double lower, double upper) {
  BoxDomain box;
  for (auto& axis : box.axes) axis = {AxisRule::Kind::Periodic, lower, upper};
  return box;
}

double param(const std::map<std::string, double>& p, const std::string& key) {
  return p.at(key);
}

void require_positive(const std::string& id, const std::map<std::string, double>& p,
                      const std::string& key) {
  if (!(param(p, key) > 0.0)) {
    throw ConfigError(id + ": parameter '" + key + "' must be positive");
  }
}

void require_mode(const std::string& id, double mode) {
  if (mode != 0.0 && mode != 1.0) {
    throw ConfigError(id + ": parameter 'mode' must be 0 (chart) or 1 (frame)");
  }
}

CatalogEntry make_t4(const std::map<std::string, double>& p) {
  CatalogEntry e;
  e.id = "t4_flat";
  const Mat4 j = standard_complex_structure();
  if (param(p, "mode") == 1.0) {
    e.desc = {"t4_flat", FrameMetric{Tensor3(), std::pow(2.0 * kPi, 4)}, 1};
    e.j = constant_j(j);
  } else {
    MatrixField metric = [](const Point4<HD>&) { return constant_matrix<HD>(Mat4::Identity()); };
    e.desc = {"t4_flat", ChartMetric{metric, periodic_box(0.0, 2.0 * kPi)}, 1};
    e.j = constant_j(j);
  }
  e.flags = {true, true, true, true, true, true, "flat metric: Einstein and Kaehler with s = 0"};
  e.topology = ReferenceTopology{0.0, 0.0};
  e.volume = PiMultiple{16.0, 4};
  e.homogeneous = true;
  e.base_point = Vec4(1.0, 2.0, 3.0, 4.0);
  e.known_scalar = 0.0;
  e.known_s_star = 0.0;
  return e;
}

CatalogEntry make_s4(const std::map<std::string, double>& p) {
  CatalogEntry e;
  e.id = "s4_round";
  require_positive(e.id, p, "r");
  const double r = param(p, "r");
  MatrixField metric = [r](const Point4<HD>& x) { return conformally_flat(x, 4.0 * r * r, 1.0); };
  e.desc = {"s4_round", ChartMetric{metric, RadialDomain{}}, 1};
  e.flags.einstein = true;
  e.flags.constant_s = true;
  e.flags.delta_wplus_zero = true;
  e.flags.self_dual = true;
  e.flags.delta_wplus_justification = "Einstein (constant curvature); no almost-Kaehler structure";
  e.topology = ReferenceTopology{2.0, 0.0};
  e.volume = PiMultiple{8.0 / 3.0 * std::pow(r, 4), 2};
  e.homogeneous = true;
  e.known_scalar = 12.0 / (r * r);
  return e;
}

CatalogEntry make_s2xs2(const std::map<std::string, double>& p) {
  CatalogEntry e;
  e.id = "s2xs2";
  require_positive(e.id, p, "a");
  require_positive(e.id, p, "b");
  const double a = param(p, "a");
  const double b = param(p, "b");
  const double a2 = a * a, b2 = b * b;
  MatrixField metric = [a2, b2](const Point4<HD>& x) {
    Matrix4<HD> g = zero_matrix<HD>();
    const HD s1 = sin(x[0]);
    const HD s2 = sin(x[2]);
    g[0][0] = HD(a2);
    g[1][1] = a2 * s1 * s1;
    g[2][2] = HD(b2);
    g[3][3] = b2 * s2 * s2;
    return g;
  };
  // Sum of the factor area forms.
  MatrixField area = [a2, b2](const Point4<HD>& x) {
    Matrix4<HD> w = zero_matrix<HD>();
    w[0][1] = a2 * sin(x[0]);
    w[1][0] = -w[0][1];
    w[2][3] = b2 * sin(x[2]);
    w[3][2] = -w[2][3];
    return w;
  };
  BoxDomain box;
  box.axes = {AxisRule{AxisRule::Kind::Legendre, 0.0, kPi}, AxisRule{AxisRule::Kind::Periodic, 0.0, 2.0 * kPi},
              AxisRule{AxisRule::Kind::Legendre, 0.0, kPi}, AxisRule{AxisRule::Kind::Periodic, 0.0, 2.0 * kPi}};
  e.desc = {"s2xs2", ChartMetric{metric, box}, 1};
  e.j = CompatibleJ{structure_from_two_form(metric, area)};
  const bool einstein = a == b;
  e.flags = {true, true, einstein, true, true, false,
             "Kaehler product with constant scalar curvature"};
  e.topology = ReferenceTopology{4.0, 0.0};
  e.volume = PiMultiple{16.0 * a2 * b2, 2};
  e.homogeneous = true;
  e.base_point = Vec4(kPi / 2.0, 0.0, kPi / 2.0, 0.0);
  e.known_scalar = 2.0 / a2 + 2.0 / b2;
  e.known_s_star = *e.known_scalar;
  return e;
}

CatalogEntry make_cp2() {
  CatalogEntry e;
  e.id = "cp2_fs";
  MatrixField metric = [](const Point4<HD>& x) { return bergman_type_metric(x, 1.0); };
  e.desc = {"cp2_fs", ChartMetric{metric, RadialDomain{}}, 1};
  e.j = constant_j(standard_complex_structure());
  e.flags = {true, true, true, true, true, true,
             "Kaehler-Einstein (Fubini-Study, holomorphic sectional curvature 4)"};
  e.topology = ReferenceTopology{3.0, 1.0};
  e.volume = PiMultiple{0.5, 2};
  e.homogeneous = true;
  e.known_scalar = 24.0;
  e.known_s_star = 24.0;
  return e;
}

CatalogEntry make_kodaira_thurston(const std::map<std::string, double>& p) {
  CatalogEntry e;
  e.id = "kodaira_thurston";
  require_positive(e.id, p, "volume");
  const double volume = param(p, "volume");
  if (param(p, "mode") == 1.0) {
    // Frame (e1, e2, e3, e4) with de4 = e1 ^ e2, i.e. [e1, e2] = -e4.
    Tensor3 c{};
    c[3](0, 1) = -1.0;
    c[3](1, 0) = 1.0;
    // omega = e13 + e24 orients the manifold by -e1234.
    e.desc = {"kodaira_thurston", FrameMetric{c, volume}, -1};
    e.j = constant_j(-pair_form({{0, 2}, {1, 3}}));
  } else {
    // Coordinates (x, y, z, t): e1 = dx, e2 = dy, e3 = dt, e4 = dz + x dy.
    MatrixField metric = [](const Point4<HD>& x) {
      Matrix4<HD> g = zero_matrix<HD>();
      g[0][0] = HD(1.0);
      g[1][1] = 1.0 + x[0] * x[0];
      g[1][2] = x[0];
      g[2][1] = x[0];
      g[2][2] = HD(1.0);
      g[3][3] = HD(1.0);
      return g;
    };
    const Mat4 omega = pair_form({{0, 3}, {1, 2}});  // dx ^ dt + dy ^ dz
    MatrixField form = [omega](const Point4<HD>&) { return constant_matrix<HD>(omega); };
    BoxDomain box;
    for (auto& axis : box.axes) axis = {AxisRule::Kind::Legendre, 0.0, 1.0};
    e.desc = {"kodaira_thurston", ChartMetric{metric, box}, 1};
    e.j = CompatibleJ{structure_from_two_form(metric, form)};
    e.base_point = Vec4(0.5, 0.5, 0.5, 0.5);
  }
  e.flags.almost_kahler = true;
  e.flags.constant_s = true;
  e.flags.delta_wplus_justification = "not certified: non-Kaehler, non-Einstein";
  e.topology = ReferenceTopology{0.0, 0.0};
  e.volume = PiMultiple{volume, 0};
  e.homogeneous = true;
  e.known_scalar = -0.5;
  e.known_s_star = 0.5;
  return e;
}

CatalogEntry make_h4() {
  CatalogEntry e;
  e.id = "h4_hyperbolic";
  MatrixField metric = [](const Point4<HD>& x) { return conformally_flat(x, 4.0, -1.0); };
  e.desc = {"h4_hyperbolic", ChartMetric{metric, BallDomain{1.0}}, 1};
  e.flags.einstein = true;
  e.flags.constant_s = true;
  e.flags.delta_wplus_zero = true;
  e.flags.self_dual = true;
  e.flags.delta_wplus_justification = "Einstein (constant curvature -1)";
  e.pointwise_only = true;
  e.homogeneous = true;
  e.known_scalar = -12.0;
  return e;
}

CatalogEntry make_ch2() {
  CatalogEntry e;
  e.id = "ch2_chart";
  MatrixField metric = [](const Point4<HD>& x) { return bergman_type_metric(x, -1.0); };
  e.desc = {"ch2_chart", ChartMetric{metric, BallDomain{1.0}}, 1};
  e.j = constant_j(standard_complex_structure());
  e.flags = {true, true, true, true, true, true,
             "Kaehler-Einstein (Bergman metric, holomorphic sectional curvature -4)"};
  e.pointwise_only = true;
  e.homogeneous = true;
  e.known_scalar = -24.0;
  e.known_s_star = -24.0;
  return e;
}

}  // namespace

double PiMultiple::value() const { return coefficient * std::pow(kPi, power); }

const std::vector<std::string>& catalog_ids() {
  static const std::vector<std::string> ids = {"t4_flat", "s4_round", "s2xs2", "cp2_fs",
                                               "kodaira_thurston", "h4_hyperbolic", "ch2_chart"};
  return ids;
}

std::map<std::string, double> default_params(const std::string& id) {
  if (id == "t4_flat") return {{"mode", 0.0}};
  if (id == "s4_round") return {{"r", 1.0}};
  if (id == "s2xs2") return {{"a", 1.0}, {"b", 1.0}};
  if (id == "kodaira_thurston") return {{"mode", 1.0}, {"volume", 1.0}};
  if (id == "cp2_fs" || id == "h4_hyperbolic" || id == "ch2_chart") return {};
  throw ConfigError("unknown catalog entry '" + id + "'");
}

CatalogEntry load(const std::string& id, const std::map<std::string, double>& overrides) {
  std::map<std::string, double> p = default_params(id);
  for (const auto& [key, value] : overrides) {
    if (!p.contains(key)) throw ConfigError(id + ": unknown parameter '" + key + "'");
    p[key] = value;
  }
  CatalogEntry e;
  if (id == "t4_flat") {
    require_mode(id, p["mode"]);
    e = make_t4(p);
  } else if (id == "s4_round") {
    e = make_s4(p);
  } else if (id == "s2xs2") {
    e = make_s2xs2(p);
  } else if (id == "cp2_fs") {
    e = make_cp2();
  } else if (id == "kodaira_thurston") {
    require_mode(id, p["mode"]);
    e = make_kodaira_thurston(p);
  } else if (id == "h4_hyperbolic") {
    e = make_h4();
  } else {
    e = make_ch2();
  }
  e.params = p;
  return e;
}

std::vector<std::string> flag_inconsistencies(const CatalogEntry& entry) {
  const StructureFlags& f = entry.flags;
  std::vector<std::string> out;
  if (f.kahler && !f.almost_kahler) out.emplace_back("kahler without almost_kahler");
  if (f.almost_kahler != entry.j.has_value()) out.emplace_back("almost_kahler flag disagrees with J");
  if (f.einstein && f.almost_kahler && !f.delta_wplus_zero) {
    out.emplace_back("einstein almost-Kaehler entry must certify delta W+ = 0");
  }
  if (f.kahler && f.constant_s && !f.delta_wplus_zero) {
    out.emplace_back("Kaehler entry with constant s must certify delta W+ = 0");
  }
  if (f.einstein && !f.constant_s) out.emplace_back("Einstein metric must have constant s");
  if (f.delta_wplus_zero && f.delta_wplus_justification.empty()) {
    out.emplace_back("delta W+ = 0 certification lacks a justification");
  }
  return out;
}

}  // namespace curvlab
