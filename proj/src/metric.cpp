#include "curvlab/metric.hpp"

#include <cmath>
#include <utility>

namespace curvlab {

MatrixJet jet_of(const MatrixField& field, const Vec4& point) {
  MatrixJet jet;
  for (int m = 0; m < 4; ++m) {
    for (int n = m; n < 4; ++n) {
      Point4<HyperDual> x;
      for (int a = 0; a < 4; ++a) {
        x[a] = HyperDual(point[a], a == m ? 1.0 : 0.0, a == n ? 1.0 : 0.0, 0.0);
      }
      const Matrix4<HyperDual> v = field(x);
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
          const HyperDual& e = v[i][j];
          if (m == 0 && n == 0) jet.value(i, j) = e.f;
          if (m == n) jet.d[m](i, j) = e.e1;
          jet.dd[m][n](i, j) = e.e12;
          jet.dd[n][m](i, j) = e.e12;
        }
      }
    }
  }
  return jet;
}

Mat4 value_of(const MatrixField& field, const Vec4& point) {
  Point4<HyperDual> x;
  for (int a = 0; a < 4; ++a) x[a] = HyperDual(point[a]);
  const Matrix4<HyperDual> v = field(x);
  Mat4 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = v[i][j].f;
  return out;
}

bool contains(const MetricDescription& desc, const Vec4& point) {
  if (!point.allFinite()) return false;
  const auto* chart = std::get_if<ChartMetric>(&desc.form);
  if (chart == nullptr) return true;
  struct Visitor {
    const Vec4& x;
    bool operator()(const BoxDomain& box) const {
      for (int a = 0; a < 4; ++a) {
        const AxisRule& rule = box.axes[a];
        if (rule.kind == AxisRule::Kind::Legendre && !(x[a] > rule.lower && x[a] < rule.upper)) {
          return false;
        }
      }
      return true;
    }
    bool operator()(const RadialDomain&) const { return true; }
    bool operator()(const BallDomain& ball) const { return x.norm() < ball.radius; }
  };
  return std::visit(Visitor{point}, chart->domain);
}

MatrixField structure_from_two_form(MatrixField metric, MatrixField two_form) {
  return [metric = std::move(metric), two_form = std::move(two_form)](const Point4<HyperDual>& x) {
    const Matrix4<HyperDual> g_inv = inverse(metric(x));
    Matrix4<HyperDual> j = multiply(g_inv, two_form(x));
    for (auto& row : j)
      for (auto& e : row) e = -e;
    return j;
  };
}

}  // namespace curvlab
