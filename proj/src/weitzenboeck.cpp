#include "curvlab/weitzenboeck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "curvlab/errors.hpp"
#include "curvlab/geometry.hpp"
#include "curvlab/sd_algebra.hpp"

namespace curvlab {

namespace {

using Form3 = std::array<double, 64>;

constexpr int idx3(int i, int j, int k) { return (i * 4 + j) * 4 + k; }

// Levi-Civita symbol.
int epsilon(int i, int j, int k, int l) {
  if (i == j || i == k || i == l || j == k || j == l || k == l) return 0;
  int p[4] = {i, j, k, l};
  int sign = 1;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      if (p[a] > p[b]) sign = -sign;
  return sign;
}

struct PointMetric {
  Mat4 inv = Mat4::Identity();
  double volume = 1.0;  // orientation * sqrt(det g)
};

// (*alpha)_kl = 1/2 alpha^ij eps_ijkl
Mat4 star2(const PointMetric& m, const Mat4& alpha) {
  const Mat4 up = m.inv * alpha * m.inv.transpose();
  Mat4 out = Mat4::Zero();
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) {
      if (k == l) continue;
      double v = 0.0;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) v += up(i, j) * epsilon(i, j, k, l);
      out(k, l) = 0.5 * m.volume * v;
    }
  return out;
}

// (*beta)_l = 1/6 beta^ijk eps_ijkl
Vec4 star3(const PointMetric& m, const Form3& beta) {
  Form3 t1{}, t2{}, up{};
  for (int i = 0; i < 4; ++i)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        double v = 0.0;
        for (int a = 0; a < 4; ++a) v += m.inv(i, a) * beta[idx3(a, b, c)];
        t1[idx3(i, b, c)] = v;
      }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int c = 0; c < 4; ++c) {
        double v = 0.0;
        for (int b = 0; b < 4; ++b) v += m.inv(j, b) * t1[idx3(i, b, c)];
        t2[idx3(i, j, c)] = v;
      }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        double v = 0.0;
        for (int c = 0; c < 4; ++c) v += m.inv(k, c) * t2[idx3(i, j, c)];
        up[idx3(i, j, k)] = v;
      }
  Vec4 out = Vec4::Zero();
  for (int l = 0; l < 4; ++l) {
    double v = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
          const int e = epsilon(i, j, k, l);
          if (e != 0) v += e * up[idx3(i, j, k)];
        }
    out[l] = m.volume * v / 6.0;
  }
  return out;
}

class Grid {
 public:
  explicit Grid(const GridSpec& spec) : spec_(spec) {
    for (int a = 0; a < 4; ++a) n_[a] = spec.axes[a].nodes;
  }

  std::size_t size() const { return spec_.size(); }

  std::array<int, 4> unflatten(std::size_t flat) const {
    std::array<int, 4> k{};
    for (int a = 3; a >= 0; --a) {
      k[a] = static_cast<int>(flat % n_[a]);
      flat /= n_[a];
    }
    return k;
  }

  std::size_t flatten(const std::array<int, 4>& k) const {
    std::size_t flat = 0;
    for (int a = 0; a < 4; ++a) flat = flat * n_[a] + k[a];
    return flat;
  }

  Vec4 point(const std::array<int, 4>& k) const {
    Vec4 x;
    for (int a = 0; a < 4; ++a) x[a] = spec_.axes[a].lower + k[a] * spec_.axes[a].spacing();
    return x;
  }

  /// Neighbour index, wrapping on periodic axes; assumes it stays in range
  /// on closed axes.
  std::size_t shifted(std::array<int, 4> k, int axis, int by) const {
    k[axis] += by;
    if (spec_.axes[axis].periodic) k[axis] = ((k[axis] % n_[axis]) + n_[axis]) % n_[axis];
    return flatten(k);
  }

  std::size_t shifted(std::array<int, 4> k, int a1, int by1, int a2, int by2) const {
    k[a1] += by1;
    if (spec_.axes[a1].periodic) k[a1] = ((k[a1] % n_[a1]) + n_[a1]) % n_[a1];
    return shifted(k, a2, by2);
  }

  /// At least `layers` nodes away from every closed boundary.
  bool interior(const std::array<int, 4>& k, int layers) const {
    for (int a = 0; a < 4; ++a)
      if (!spec_.axes[a].periodic && (k[a] < layers || k[a] > n_[a] - 1 - layers)) return false;
    return true;
  }

  /// Inside the fixed evaluation box: on closed axes, the two-layer margin of
  /// the coarsest admissible (8-node) grid, so refinement does not move the
  /// region the maximum is taken over.
  bool evaluated(const std::array<int, 4>& k) const {
    if (!interior(k, 2)) return false;
    for (int a = 0; a < 4; ++a) {
      const GridAxis& axis = spec_.axes[a];
      if (axis.periodic) continue;
      const double margin = 2.0 * (axis.upper - axis.lower) / 7.0;
      const double x = axis.lower + k[a] * axis.spacing();
      const double slack = 1e-12 * (axis.upper - axis.lower);
      if (x < axis.lower + margin - slack || x > axis.upper - margin + slack) return false;
    }
    return true;
  }

  double h(int axis) const { return spec_.axes[axis].spacing(); }

 private:
  GridSpec spec_;
  std::array<int, 4> n_{};
};

template <typename Body>
void for_each_node(std::size_t n, Execution execution, Body body) {
#ifdef CURVLAB_HAVE_OPENMP
  if (execution == Execution::Parallel) {
    const long count = static_cast<long>(n);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
    return;
  }
#else
  (void)execution;
#endif
  for (std::size_t i = 0; i < n; ++i) body(i);
}

template <typename Field>
auto centred(const Grid& g, const std::vector<Field>& f, const std::array<int, 4>& k, int axis) {
  return ((f[g.shifted(k, axis, 1)] - f[g.shifted(k, axis, -1)]) / (2.0 * g.h(axis))).eval();
}

// d of a 1-form field: (d theta)_ij = d_i theta_j - d_j theta_i
Mat4 d1(const Grid& g, const std::vector<Vec4>& theta, const std::array<int, 4>& k) {
  Mat4 grad;  // grad(i, j) = d_i theta_j
  for (int i = 0; i < 4; ++i) grad.row(i) = centred(g, theta, k, i).transpose();
  return grad - grad.transpose();
}

// d of a 2-form field: (d alpha)_ijk = d_i alpha_jk + d_j alpha_ki + d_k alpha_ij
Form3 d2(const Grid& g, const std::vector<Mat4>& alpha, const std::array<int, 4>& k) {
  std::array<Mat4, 4> grad;
  for (int i = 0; i < 4; ++i) grad[i] = centred(g, alpha, k, i);
  Form3 out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int l = 0; l < 4; ++l) out[idx3(i, j, l)] = grad[i](j, l) + grad[j](l, i) + grad[l](i, j);
  return out;
}

TwoForm frame_components(const PointGeometry& pg, const Mat4& coord) {
  return TwoForm::from_matrix(pg.frame.transpose() * coord * pg.frame);
}

Mat4 coordinate_components(const PointGeometry& pg, const TwoForm& frame) {
  return pg.coframe.transpose() * frame.to_matrix() * pg.coframe;
}

// nabla^* nabla alpha = -g^ij (nabla^2 alpha)_ij with exact Christoffel
// symbols and finite-difference derivatives of alpha.
Mat4 rough_laplacian(const Grid& g, const std::vector<Mat4>& alpha, const std::array<int, 4>& k,
                     const BasisConnection& bc) {
  const std::size_t c = g.flatten(k);
  const Mat4& a = alpha[c];
  std::array<Mat4, 4> da, L;
  std::array<std::array<Mat4, 4>, 4> dda, dL;  // dda[i][j] = d_i d_j alpha, dL[i][j] = d_i L_j
  for (int i = 0; i < 4; ++i) {
    da[i] = centred(g, alpha, k, i);
    for (int cc = 0; cc < 4; ++cc)
      for (int aa = 0; aa < 4; ++aa) L[i](cc, aa) = bc.christoffel[cc](i, aa);
  }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      for (int cc = 0; cc < 4; ++cc)
        for (int aa = 0; aa < 4; ++aa) dL[i][j](cc, aa) = bc.christoffel_derivative[i][cc](j, aa);
      if (i == j) {
        const double h = g.h(i);
        dda[i][i] = (alpha[g.shifted(k, i, 1)] - 2.0 * a + alpha[g.shifted(k, i, -1)]) / (h * h);
      } else if (i < j) {
        dda[i][j] = (alpha[g.shifted(k, i, 1, j, 1)] - alpha[g.shifted(k, i, 1, j, -1)] -
                     alpha[g.shifted(k, i, -1, j, 1)] + alpha[g.shifted(k, i, -1, j, -1)]) /
                    (4.0 * g.h(i) * g.h(j));
      }
    }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < i; ++j) dda[i][j] = dda[j][i];

  std::array<Mat4, 4> first;  // nabla_j alpha
  for (int j = 0; j < 4; ++j) first[j] = da[j] - L[j].transpose() * a - a * L[j];

  Mat4 out = Mat4::Zero();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double gij = bc.metric_inv(i, j);
      if (gij == 0.0) continue;
      Mat4 second = dda[i][j] - dL[i][j].transpose() * a - L[j].transpose() * da[i] - da[i] * L[j] - a * dL[i][j];
      for (int m = 0; m < 4; ++m) second -= bc.christoffel[m](i, j) * first[m];
      second -= L[i].transpose() * first[j] + first[j] * L[i];
      out -= gij * second;
    }
  return out;
}

}  // namespace

std::size_t GridSpec::size() const {
  std::size_t n = 1;
  for (const auto& a : axes) n *= static_cast<std::size_t>(a.nodes);
  return n;
}

GridSpec default_grid(const MetricDescription& desc, int n) {
  const auto* chart = std::get_if<ChartMetric>(&desc.form);
  if (chart == nullptr) throw ConfigError(desc.name + ": the Weitzenboeck grid needs a chart description");
  GridSpec spec;
  if (const auto* box = std::get_if<BoxDomain>(&chart->domain)) {
    for (int a = 0; a < 4; ++a) {
      const AxisRule& rule = box->axes[a];
      if (rule.kind == AxisRule::Kind::Periodic) {
        spec.axes[a] = {n, rule.lower, rule.upper, true};
      } else {
        const double quarter = 0.25 * (rule.upper - rule.lower);
        spec.axes[a] = {n, rule.lower + quarter, rule.upper - quarter, false};
      }
    }
  } else if (std::holds_alternative<RadialDomain>(chart->domain)) {
    for (auto& axis : spec.axes) axis = {n, -0.5, 0.5, false};
  } else {
    const double r = 0.25 * std::get<BallDomain>(chart->domain).radius;
    for (auto& axis : spec.axes) axis = {n, -r, r, false};
  }
  return spec;
}

WeitzenboeckResult weitzenboeck_analysis(const MetricDescription& desc, const FormField& alpha_field,
                                         const GridSpec& spec, Execution execution) {
  const auto* chart = std::get_if<ChartMetric>(&desc.form);
  if (chart == nullptr) throw ConfigError(desc.name + ": the Weitzenboeck grid needs a chart description");
  for (const auto& axis : spec.axes) {
    if (axis.nodes < 8) throw ConfigError("Weitzenboeck grid too coarse: fewer than 8 nodes on an axis");
    if (!(axis.upper > axis.lower)) throw ConfigError("Weitzenboeck grid axis has an empty range");
  }
  const Grid grid(spec);
  const std::size_t count = grid.size();

  // Stage 1: alpha and *alpha at every node.
  std::vector<Mat4> alpha(count), star_alpha(count);
  std::vector<PointMetric> metric(count);
  for_each_node(count, execution, [&](std::size_t c) {
    const Vec4 x = grid.point(grid.unflatten(c));
    const Mat4 g = value_of(chart->metric, x);
    metric[c].inv = g.inverse();
    metric[c].volume = desc.orientation * std::sqrt(g.determinant());
    alpha[c] = alpha_field(x);
    star_alpha[c] = star2(metric[c], alpha[c]);
  });

  // Stage 2: delta alpha = -*d*alpha and *d alpha, one layer in.
  std::vector<Vec4> delta_alpha(count, Vec4::Zero()), star_d_alpha(count, Vec4::Zero());
  for_each_node(count, execution, [&](std::size_t c) {
    const auto k = grid.unflatten(c);
    if (!grid.interior(k, 1)) return;
    delta_alpha[c] = -star3(metric[c], d2(grid, star_alpha, k));
    star_d_alpha[c] = star3(metric[c], d2(grid, alpha, k));
  });

  // Stage 3: the residual, two layers in.
  struct NodeResult {
    bool evaluated = false;
    double residual = 0.0, curvature = 0.0, alpha = 0.0;
    bool anti_self_dual = false;
  };
  std::vector<NodeResult> results(count);
  for_each_node(count, execution, [&](std::size_t c) {
    const auto k = grid.unflatten(c);
    if (!grid.evaluated(k)) return;
    const Vec4 x = grid.point(k);
    const PointGeometry pg = riemann(desc, x);
    const CurvatureBlocks blocks = decompose(pg);

    const TwoForm a_frame = frame_components(pg, alpha[c]);
    const SelfDualVector a_plus = project_plus(a_frame);
    const AntiSelfDualVector a_minus = project_minus(a_frame);
    NodeResult& r = results[c];
    r.evaluated = true;
    r.alpha = std::sqrt(a_frame.norm2());
    r.anti_self_dual = a_minus.v.norm() > 1e-9 * std::max(1.0, r.alpha);

    const Mat4 d_delta = d1(grid, delta_alpha, k);
    const Mat4 delta_d = -star2(metric[c], d1(grid, star_d_alpha, k));
    const Mat4 hodge = d_delta + delta_d;

    const TwoForm curvature =
        (-2.0) * to_two_form(w_apply(blocks.wplus, a_plus)) + (blocks.scalar / 3.0) * a_frame;
    r.curvature = std::sqrt(curvature.norm2());
    const Mat4 rough = rough_laplacian(grid, alpha, k, pg.basis);
    const Mat4 rhs = rough + coordinate_components(pg, curvature);
    r.residual = std::sqrt(frame_components(pg, hodge - rhs).norm2());
  });

  WeitzenboeckResult out;
  for (int a = 0; a < 4; ++a) out.h = std::max(out.h, grid.h(a));
  for (const NodeResult& r : results) {
    if (!r.evaluated) continue;
    if (r.anti_self_dual) throw DegenerateInput(desc.name + ": Weitzenboeck test field is not self-dual");
    ++out.evaluated_nodes;
    out.residual = std::max(out.residual, r.residual);
    out.max_curvature_term = std::max(out.max_curvature_term, r.curvature);
    out.max_alpha = std::max(out.max_alpha, r.alpha);
  }
  return out;
}

double weitzenboeck_residual(const MetricDescription& desc, const FormField& alpha, const GridSpec& grid) {
  return weitzenboeck_analysis(desc, alpha, grid).residual;
}

FormField named_field(const CatalogEntry& entry, const std::string& name) {
  const auto* chart = std::get_if<ChartMetric>(&entry.desc.form);
  if (chart == nullptr) throw ConfigError(entry.id + ": the Weitzenboeck grid needs a chart description");
  const MatrixField metric = chart->metric;
  const int orientation = entry.desc.orientation;

  if (name == "omega") {
    if (!entry.j) throw ConfigError(entry.id + ": entry has no almost-complex structure");
    const MatrixField j = entry.j->field;
    return [metric, j](const Vec4& x) -> Mat4 {
      // omega_ij = g(J d_i, d_j)
      return value_of(j, x).transpose() * value_of(metric, x);
    };
  }
  const bool bump = name == "bump";
  if (!bump && name != "constant") throw ConfigError("unknown Weitzenboeck field '" + name + "'");
  return [metric, orientation, bump](const Vec4& x) -> Mat4 {
    Mat4 base = Mat4::Zero();
    base(0, 1) = 1.0;
    base(1, 0) = -1.0;
    base(2, 3) = 1.0;
    base(3, 2) = -1.0;
    const Mat4 g = value_of(metric, x);
    const PointMetric m{g.inverse(), orientation * std::sqrt(g.determinant())};
    const Mat4 plus = 0.5 * (base + star2(m, base));
    return bump ? (std::sin(x[0]) * std::cos(x[1])) * plus : plus;
  };
}

double fitted_order(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

ConvergenceTable weitzenboeck_convergence(const CatalogEntry& entry, const std::string& field,
                                          const std::vector<int>& resolutions, Execution execution) {
  if (resolutions.size() < 3) throw ConfigError("convergence needs at least three resolutions");
  ConvergenceTable table;
  table.field = field;
  const FormField alpha = named_field(entry, field);
  for (int n : resolutions) {
    table.levels.push_back({n, weitzenboeck_analysis(entry.desc, alpha, default_grid(entry.desc, n), execution)});
  }
  // Rounding floor: second differences lose about eps / h^2 relative to |alpha|.
  double floor = 0.0;
  for (const auto& level : table.levels) {
    const double h = level.result.h;
    floor = std::max(floor, 1e3 * std::numeric_limits<double>::epsilon() * std::max(1.0, level.result.max_alpha) /
                                (h * h));
  }
  table.floor = floor;
  bool all_floor = true;
  std::vector<double> hs, rs;
  for (const auto& level : table.levels) {
    all_floor = all_floor && level.result.residual <= floor;
    hs.push_back(level.result.h);
    rs.push_back(std::max(level.result.residual, std::numeric_limits<double>::min()));
  }
  table.exact = all_floor;
  if (!all_floor) table.order = fitted_order(hs, rs);
  return table;
}

}  // namespace curvlab
