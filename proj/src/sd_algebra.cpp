#include "curvlab/sd_algebra.hpp"

#include <cmath>
#include <string>

#include "curvlab/errors.hpp"

namespace curvlab {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Eigen::Matrix<double, 3, 6> make_plus_basis() {
  Eigen::Matrix<double, 3, 6> b;
  b << 1, 0, 0, 0, 0, 1,   //
      0, 1, 0, 0, -1, 0,   //
      0, 0, 1, 1, 0, 0;
  return b * kInvSqrt2;
}

Eigen::Matrix<double, 3, 6> make_minus_basis() {
  Eigen::Matrix<double, 3, 6> b;
  b << 1, 0, 0, 0, 0, -1,  //
      0, 1, 0, 0, 1, 0,    //
      0, 0, 1, -1, 0, 0;
  return b * kInvSqrt2;
}

Mat6 change_of_basis() {
  Mat6 q;
  q.topRows<3>() = plus_basis();
  q.bottomRows<3>() = minus_basis();
  return q;
}

void require_sqrt2_length(const SelfDualVector& omega) {
  if (std::abs(omega.norm2() - 2.0) > 1e-12) {
    throw DegenerateInput("lemma1: omega must satisfy |omega|^2 = 2, got " +
                          std::to_string(omega.norm2()));
  }
}

}  // namespace

TwoForm TwoForm::from_matrix(const Mat4& a) {
  TwoForm out;
  for (int p = 0; p < 6; ++p) out.c[p] = a(kPairs[p][0], kPairs[p][1]);
  return out;
}

Mat4 TwoForm::to_matrix() const {
  Mat4 a = Mat4::Zero();
  for (int p = 0; p < 6; ++p) {
    a(kPairs[p][0], kPairs[p][1]) = c[p];
    a(kPairs[p][1], kPairs[p][0]) = -c[p];
  }
  return a;
}

const Eigen::Matrix<double, 3, 6>& plus_basis() {
  static const Eigen::Matrix<double, 3, 6> basis = make_plus_basis();
  return basis;
}

const Eigen::Matrix<double, 3, 6>& minus_basis() {
  static const Eigen::Matrix<double, 3, 6> basis = make_minus_basis();
  return basis;
}

TwoForm hodge_star(const TwoForm& alpha) {
  const Vec6& a = alpha.c;
  TwoForm out;
  // *e12 = e34, *e13 = -e24, *e14 = e23 and the inverse relations.
  out.c << a[5], -a[4], a[3], a[2], -a[1], a[0];
  return out;
}

SelfDualVector project_plus(const TwoForm& alpha) { return {plus_basis() * alpha.c}; }

AntiSelfDualVector project_minus(const TwoForm& alpha) { return {minus_basis() * alpha.c}; }

TwoForm to_two_form(const SelfDualVector& v) { return {plus_basis().transpose() * v.v}; }

TwoForm to_two_form(const AntiSelfDualVector& v) { return {minus_basis().transpose() * v.v}; }

SelfDualVector standard_kahler_vector() { return {Vec3(std::sqrt(2.0), 0.0, 0.0)}; }

SelfDualVector w_apply(const WeylPlusOperator& w, const SelfDualVector& omega) {
  return {w.m * omega.v};
}

double w_quadratic(const WeylPlusOperator& w, const SelfDualVector& omega) {
  return omega.v.dot(w.m * omega.v);
}

double w_perp_norm2(const WeylPlusOperator& w, const SelfDualVector& omega) {
  const double n2 = omega.norm2();
  if (!(n2 > 0.0)) throw DegenerateInput("w_perp_norm2: omega has zero length");
  const Vec3 image = w.m * omega.v;
  const Vec3 perp = image - (image.dot(omega.v) / n2) * omega.v;
  return perp.squaredNorm();
}

double lemma1_gap(const WeylPlusOperator& w, const SelfDualVector& omega) {
  require_sqrt2_length(omega);
  const double q = w_quadratic(w, omega);
  return w.norm2() - w_perp_norm2(w, omega) - 0.375 * q * q;
}

double lemma1_half_gap(const WeylPlusOperator& w, const SelfDualVector& omega) {
  require_sqrt2_length(omega);
  const double q = w_quadratic(w, omega);
  return w.norm2() - 0.5 * w_perp_norm2(w, omega) - 0.375 * q * q;
}

OperatorBlocks split_operator(const Mat6& op) {
  static const Mat6 q = change_of_basis();
  const Mat6 b = q * op * q.transpose();
  return {b.topLeftCorner<3, 3>(), b.topRightCorner<3, 3>(), b.bottomRightCorner<3, 3>()};
}

Mat6 assemble_operator(const OperatorBlocks& blocks) {
  static const Mat6 q = change_of_basis();
  Mat6 b;
  b.topLeftCorner<3, 3>() = blocks.plus_plus;
  b.topRightCorner<3, 3>() = blocks.plus_minus;
  b.bottomLeftCorner<3, 3>() = blocks.plus_minus.transpose();
  b.bottomRightCorner<3, 3>() = blocks.minus_minus;
  return q.transpose() * b * q;
}

}  // namespace curvlab
