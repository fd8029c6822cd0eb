#include "curvlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "curvlab/errors.hpp"

namespace curvlab {

namespace {

std::string describe_point(const Vec4& p) {
  std::ostringstream os;
  os << '(' << p[0] << ", " << p[1] << ", " << p[2] << ", " << p[3] << ')';
  return os.str();
}

BasisConnection chart_connection(const MetricDescription& desc, const ChartMetric& chart,
                                 const Vec4& point) {
  const MatrixJet jet = jet_of(chart.metric, point);
  BasisConnection bc;
  bc.metric = jet.value;
  Eigen::LLT<Mat4> llt(bc.metric);
  if (llt.info() != Eigen::Success || !bc.metric.isApprox(bc.metric.transpose(), 1e-12)) {
    throw DegenerateInput(desc.name + ": metric is not symmetric positive definite at " +
                          describe_point(point));
  }
  bc.metric_inv = llt.solve(Mat4::Identity());
  bc.metric_derivative = jet.d;

  // lowered[l](i, j) = Gamma_{l, ij}
  Tensor3 lowered{};
  ZeroArray<Tensor3, 4> lowered_derivative{};
  for (int l = 0; l < 4; ++l) {
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        lowered[l](i, j) = 0.5 * (jet.d[i](j, l) + jet.d[j](i, l) - jet.d[l](i, j));
        for (int m = 0; m < 4; ++m) {
          lowered_derivative[m][l](i, j) =
              0.5 * (jet.dd[m][i](j, l) + jet.dd[m][j](i, l) - jet.dd[m][l](i, j));
        }
      }
    }
  }
  MatArray4 inv_derivative;
  for (int m = 0; m < 4; ++m) inv_derivative[m] = -bc.metric_inv * jet.d[m] * bc.metric_inv;

  for (int k = 0; k < 4; ++k) {
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        double g = 0.0;
        for (int l = 0; l < 4; ++l) g += bc.metric_inv(k, l) * lowered[l](i, j);
        bc.christoffel[k](i, j) = g;
        for (int m = 0; m < 4; ++m) {
          double dg = 0.0;
          for (int l = 0; l < 4; ++l) {
            dg += inv_derivative[m](k, l) * lowered[l](i, j) +
                  bc.metric_inv(k, l) * lowered_derivative[m][l](i, j);
          }
          bc.christoffel_derivative[m][k](i, j) = dg;
        }
      }
    }
  }
  return bc;
}

BasisConnection frame_connection(const FrameMetric& frame) {
  BasisConnection bc;
  const Tensor3& c = frame.structure_constants;
  bc.bracket = c;
  // Koszul formula for an orthonormal left-invariant frame.
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        bc.christoffel[k](i, j) = 0.5 * (c[k](i, j) - c[i](j, k) + c[j](k, i));
  return bc;
}

BasisConnection basis_connection(const MetricDescription& desc, const Vec4& point) {
  if (!contains(desc, point)) {
    throw DomainError(desc.name + ": point " + describe_point(point) + " is outside the domain");
  }
  if (const auto* chart = std::get_if<ChartMetric>(&desc.form)) {
    return chart_connection(desc, *chart, point);
  }
  return frame_connection(std::get<FrameMetric>(desc.form));
}

// Gram-Schmidt on the basis vectors in index order, then orientation repair.
Mat4 oriented_frame(const Mat4& metric, int orientation, bool& repaired) {
  Mat4 e = Mat4::Identity();
  for (int a = 0; a < 4; ++a) {
    Vec4 v = Vec4::Unit(a);
    for (int b = 0; b < a; ++b) v -= (e.col(b).dot(metric * v)) * e.col(b);
    v /= std::sqrt(v.dot(metric * v));
    e.col(a) = v;
  }
  repaired = false;
  if (e.determinant() * orientation < 0.0) {
    e.col(2).swap(e.col(3));
    repaired = true;
  }
  return e;
}

}  // namespace

CurvatureEndomorphisms connection_curvature(const Tensor3& a, const ZeroArray<Tensor3, 4>& da,
                                            const Tensor3& c) {
  CurvatureEndomorphisms r{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      Mat4& out = r[i][j];
      for (int k = 0; k < 4; ++k) {
        for (int l = 0; l < 4; ++l) {
          double v = da[i][k](j, l) - da[j][k](i, l);
          for (int m = 0; m < 4; ++m) {
            v += a[k](i, m) * a[m](j, l) - a[k](j, m) * a[m](i, l) - c[m](i, j) * a[k](m, l);
          }
          out(k, l) = v;
        }
      }
    }
  }
  return r;
}

Tensor3 christoffel(const MetricDescription& desc, const Vec4& point) {
  return basis_connection(desc, point).christoffel;
}

PointGeometry riemann(const MetricDescription& desc, const Vec4& point) {
  PointGeometry pg;
  pg.point = point;
  pg.basis = basis_connection(desc, point);
  const BasisConnection& bc = pg.basis;

  const CurvatureEndomorphisms endo =
      connection_curvature(bc.christoffel, bc.christoffel_derivative, bc.bracket);

  // Lowered basis components, then pulled back one slot at a time.
  std::array<double, 256> lowered{};
  auto at = [](int i, int j, int k, int l) { return ((i * 4 + j) * 4 + k) * 4 + l; };
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const Mat4 low = bc.metric * endo[i][j];  // (k, l) = g(R(b_i,b_j) b_l, b_k)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) lowered[at(i, j, k, l)] = low(k, l);
    }

  pg.frame = oriented_frame(bc.metric, desc.orientation, pg.frame_repaired);
  pg.coframe = pg.frame.inverse();
  const Mat4& e = pg.frame;

  std::array<double, 256> t1{}, t2{};
  for (int a = 0; a < 4; ++a)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          double v = 0.0;
          for (int i = 0; i < 4; ++i) v += e(i, a) * lowered[at(i, j, k, l)];
          t1[at(a, j, k, l)] = v;
        }
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          double v = 0.0;
          for (int j = 0; j < 4; ++j) v += e(j, b) * t1[at(a, j, k, l)];
          t2[at(a, b, k, l)] = v;
        }
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int l = 0; l < 4; ++l) {
          double v = 0.0;
          for (int k = 0; k < 4; ++k) v += e(k, c) * t2[at(a, b, k, l)];
          t1[at(a, b, c, l)] = v;
        }
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          double v = 0.0;
          for (int l = 0; l < 4; ++l) v += e(l, d) * t1[at(a, b, c, l)];
          pg.riemann(a, b, c, d) = v;
        }

  for (int j = 0; j < 4; ++j)
    for (int l = 0; l < 4; ++l) {
      double v = 0.0;
      for (int i = 0; i < 4; ++i) v += pg.riemann(i, j, i, l);
      pg.ricci(j, l) = v;
    }
  pg.scalar = pg.ricci.trace();
  return pg;
}

Mat6 curvature_operator(const PointGeometry& pg) {
  Mat6 m;
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q < 6; ++q)
      m(p, q) = pg.riemann(kPairs[p][0], kPairs[p][1], kPairs[q][0], kPairs[q][1]);
  return m;
}

CurvatureBlocks decompose(const PointGeometry& pg) {
  const OperatorBlocks blocks = split_operator(curvature_operator(pg));
  const double shift = pg.scalar / 12.0;
  CurvatureBlocks out;
  out.scalar = pg.scalar;
  out.wplus.m = blocks.plus_plus - shift * Mat3::Identity();
  out.wminus = blocks.minus_minus - shift * Mat3::Identity();
  out.ric0block = blocks.plus_minus;
  // The blocks are symmetric up to rounding; make that exact.
  out.wplus.m = 0.5 * (out.wplus.m + out.wplus.m.transpose()).eval();
  out.wminus = 0.5 * (out.wminus + out.wminus.transpose()).eval();
  return out;
}

double ric0_norm2(const PointGeometry& pg) {
  return (pg.ricci - 0.25 * pg.scalar * Mat4::Identity()).squaredNorm();
}

PointGeometry rotate_frame(const PointGeometry& pg, const Mat4& q) {
  PointGeometry out = pg;
  out.frame = pg.frame * q;
  out.coframe = q.transpose() * pg.coframe;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          double v = 0.0;
          for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
              const double qij = q(i, a) * q(j, b);
              if (qij == 0.0) continue;
              for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) v += qij * q(k, c) * q(l, d) * pg.riemann(i, j, k, l);
            }
          out.riemann(a, b, c, d) = v;
        }
  out.ricci = q.transpose() * pg.ricci * q;
  return out;
}

double riemann_symmetry_residual(const PointGeometry& pg) {
  const RiemannTensor& r = pg.riemann;
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          worst = std::max({worst, std::abs(r(i, j, k, l) + r(j, i, k, l)),
                            std::abs(r(i, j, k, l) + r(i, j, l, k)),
                            std::abs(r(i, j, k, l) - r(k, l, i, j)),
                            std::abs(r(i, j, k, l) + r(i, k, l, j) + r(i, l, j, k))});
        }
  return worst;
}

ScalarInvariants invariants(const PointGeometry& pg) {
  const CurvatureBlocks b = decompose(pg);
  return {pg.scalar, b.wplus.norm2(), b.wminus.squaredNorm(), ric0_norm2(pg)};
}

}  // namespace curvlab
