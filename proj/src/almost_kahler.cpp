#include "curvlab/almost_kahler.hpp"

#include <cmath>
#include <string>

#include "curvlab/errors.hpp"

namespace curvlab {

namespace {

// (Gamma_i)(m, p) = Gamma^m_{ip}
Mat4 christoffel_slice(const Tensor3& gamma, int i) {
  Mat4 s;
  for (int m = 0; m < 4; ++m)
    for (int p = 0; p < 4; ++p) s(m, p) = gamma[m](i, p);
  return s;
}

void check_compatibility(const MetricDescription& desc, const Mat4& g, const Mat4& j, double tol) {
  const double scale = std::max(1.0, j.squaredNorm());
  const double square = (j * j + Mat4::Identity()).cwiseAbs().maxCoeff();
  if (square > tol * scale) {
    throw IncompatibleStructure(desc.name + ": J^2 != -Id (residual " + std::to_string(square) +
                                ")");
  }
  const double orth = (j.transpose() * g * j - g).cwiseAbs().maxCoeff();
  if (orth > tol * scale * std::max(1.0, g.cwiseAbs().maxCoeff())) {
    throw IncompatibleStructure(desc.name + ": J is not g-orthogonal (residual " +
                                std::to_string(orth) + ")");
  }
}

BlairCurvature blair_from(const PointGeometry& pg, const MatrixJet& jj, const CurvatureBlocks& blocks,
                          const SelfDualVector& omega_plus, double s_star) {
  const BasisConnection& bc = pg.basis;
  const Mat4& j = jj.value;

  MatArray4 gamma_slice, nabla_j;
  ZeroArray<MatArray4, 4> dgamma_slice{};
  for (int i = 0; i < 4; ++i) {
    gamma_slice[i] = christoffel_slice(bc.christoffel, i);
    for (int m = 0; m < 4; ++m) dgamma_slice[m][i] = christoffel_slice(bc.christoffel_derivative[m], i);
  }
  for (int i = 0; i < 4; ++i) nabla_j[i] = jj.d[i] + gamma_slice[i] * j - j * gamma_slice[i];

  // Coefficients of the Hermitian connection and their basis derivatives.
  Tensor3 coeff{};
  ZeroArray<Tensor3, 4> coeff_derivative{};
  for (int i = 0; i < 4; ++i) {
    const Mat4 correction = 0.5 * j * nabla_j[i];
    for (int k = 0; k < 4; ++k)
      for (int l = 0; l < 4; ++l) coeff[k](i, l) = bc.christoffel[k](i, l) - correction(k, l);
  }
  for (int m = 0; m < 4; ++m) {
    for (int i = 0; i < 4; ++i) {
      const Mat4 d_nabla_j = jj.dd[m][i] + dgamma_slice[m][i] * j + gamma_slice[i] * jj.d[m] -
                             jj.d[m] * gamma_slice[i] - j * dgamma_slice[m][i];
      const Mat4 d_correction = 0.5 * (jj.d[m] * nabla_j[i] + j * d_nabla_j);
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l)
          coeff_derivative[m][k](i, l) = bc.christoffel_derivative[m][k](i, l) - d_correction(k, l);
    }
  }

  const CurvatureEndomorphisms r = connection_curvature(coeff, coeff_derivative, bc.bracket);
  // iF(X, Y) = 1/2 tr(J R(X, Y)) on the anti-canonical bundle.
  Mat4 f_basis;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) f_basis(a, b) = 0.5 * (j * r[a][b]).trace();
  const Mat4 f_frame = pg.frame.transpose() * f_basis * pg.frame;
  const TwoForm f = TwoForm::from_matrix(f_frame);

  BlairCurvature out;
  out.f_plus = project_plus(f);
  out.f_minus = project_minus(f);
  const Vec3 image = blocks.wplus.m * omega_plus.v;
  const Vec3 perp = image - (image.dot(omega_plus.v) / omega_plus.norm2()) * omega_plus.v;
  const double s = pg.scalar;
  out.residual = (out.f_plus.v - perp - ((s + s_star) / 8.0) * omega_plus.v).norm();
  return out;
}

}  // namespace

AlmostKahlerSample evaluate_structure(const MetricDescription& desc, const CompatibleJ& jfield,
                                      const Vec4& point, const StructureOptions& options) {
  AlmostKahlerSample out;
  out.geometry = riemann(desc, point);
  const PointGeometry& pg = out.geometry;
  const BasisConnection& bc = pg.basis;
  out.blocks = decompose(pg);

  const MatrixJet jj = jet_of(jfield.field, point);
  const Mat4& j = jj.value;
  check_compatibility(desc, bc.metric, j, options.compatibility_tolerance);

  // Omega_ab = omega(b_a, b_b) = g(J b_a, b_b)
  const Mat4 omega_basis = j.transpose() * bc.metric;
  out.omega = TwoForm::from_matrix(pg.frame.transpose() * omega_basis * pg.frame);
  const AntiSelfDualVector minus = project_minus(out.omega);
  if (std::sqrt(minus.norm2()) > 1e-9 * std::max(1.0, std::sqrt(out.omega.norm2()))) {
    throw IncompatibleStructure(desc.name +
                                ": omega is not self-dual; J induces the opposite orientation");
  }
  out.omega_plus = project_plus(out.omega);

  // (nabla_m Omega)_ab, then orthonormal frame components.
  double nabla2 = 0.0;
  MatArray4 nabla_frame;
  for (int m = 0; m < 4; ++m) {
    const Mat4 d_omega = jj.d[m].transpose() * bc.metric + j.transpose() * bc.metric_derivative[m];
    const Mat4 slice = christoffel_slice(bc.christoffel, m);
    // sum_k Gamma^k_{ma} Omega_kb + Gamma^k_{mb} Omega_ak
    const Mat4 nabla = d_omega - slice.transpose() * omega_basis - omega_basis * slice;
    nabla_frame[m] = pg.frame.transpose() * nabla * pg.frame;
  }
  for (int p = 0; p < 4; ++p) {
    Mat4 component = Mat4::Zero();
    for (int m = 0; m < 4; ++m) component += pg.frame(m, p) * nabla_frame[m];
    nabla2 += 0.5 * component.squaredNorm();
  }
  out.nabla_omega_norm2 = nabla2;

  const Mat6 op = curvature_operator(pg);
  out.s_star = 2.0 * out.omega.c.dot(op * out.omega.c);
  out.w_omega_omega = w_quadratic(out.blocks.wplus, out.omega_plus);
  out.w_perp2 = w_perp_norm2(out.blocks.wplus, out.omega_plus);
  if (options.with_blair) out.blair = blair_from(pg, jj, out.blocks, out.omega_plus, out.s_star);
  return out;
}

TwoForm omega_field(const MetricDescription& desc, const CompatibleJ& j, const Vec4& point) {
  return evaluate_structure(desc, j, point, {.with_blair = false}).omega;
}

double nabla_omega_norm2(const MetricDescription& desc, const CompatibleJ& j, const Vec4& point) {
  return evaluate_structure(desc, j, point, {.with_blair = false}).nabla_omega_norm2;
}

StarScalar s_star(const MetricDescription& desc, const CompatibleJ& j, const Vec4& point,
                  double tolerance) {
  const StarScalar star = evaluate_structure(desc, j, point, {.with_blair = false}).star();
  if (star.consistency_residual() > tolerance * std::max(1.0, std::abs(star.scalar))) {
    throw ConventionMismatch(desc.name + ": 2R(omega, omega) = " + std::to_string(star.s_star) +
                             " but s + |nabla omega|^2 = " +
                             std::to_string(star.scalar + star.nabla_omega_norm2));
  }
  return star;
}

double w_quadratic_identity_residual(const MetricDescription& desc, const CompatibleJ& j,
                                     const Vec4& point) {
  const AlmostKahlerSample s = evaluate_structure(desc, j, point, {.with_blair = false});
  return std::abs(s.w_omega_omega - (0.5 * s.s_star - s.geometry.scalar / 6.0));
}

BlairCurvature blair_curvature(const MetricDescription& desc, const CompatibleJ& j,
                               const Vec4& point) {
  return evaluate_structure(desc, j, point).blair;
}

}  // namespace curvlab
