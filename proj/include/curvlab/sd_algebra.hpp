#pragma once

// Pointwise linear algebra of 2-forms on an oriented Euclidean 4-space.
//
// Components are stored in the ordered basis
//   e12, e13, e14, e23, e24, e34
// of an oriented orthonormal coframe. The inner product is
// <a, b> = 1/2 sum_{ij} a_ij b_ij, so the basis above is orthonormal and a
// Kaehler form e12 + e34 has squared length 2.

#include <Eigen/Dense>

namespace curvlab {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

/// Index pairs (i, j), i < j, in component order.
inline constexpr int kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

/// Component slot of the pair (i, j) with i < j.
constexpr int pair_index(int i, int j) {
  for (int p = 0; p < 6; ++p) {
    if (kPairs[p][0] == i && kPairs[p][1] == j) return p;
  }
  return -1;
}

struct TwoForm {
  Vec6 c = Vec6::Zero();

  static TwoForm from_matrix(const Mat4& a);
  Mat4 to_matrix() const;
  double norm2() const { return c.squaredNorm(); }

  friend TwoForm operator+(const TwoForm& a, const TwoForm& b) { return {a.c + b.c}; }
  friend TwoForm operator-(const TwoForm& a, const TwoForm& b) { return {a.c - b.c}; }
  friend TwoForm operator*(double s, const TwoForm& a) { return {s * a.c}; }
};

inline double inner(const TwoForm& a, const TwoForm& b) { return a.c.dot(b.c); }

/// Coordinates in the orthonormal basis w^k / sqrt(2) of the self-dual forms,
/// w1 = e12 + e34, w2 = e13 + e42, w3 = e14 + e23.
struct SelfDualVector {
  Vec3 v = Vec3::Zero();
  double norm2() const { return v.squaredNorm(); }
};

/// Coordinates in the orthonormal basis of anti-self-dual forms,
/// (e12 - e34, e13 + e24, e14 - e23) / sqrt(2).
struct AntiSelfDualVector {
  Vec3 v = Vec3::Zero();
  double norm2() const { return v.squaredNorm(); }
};

/// Self-dual Weyl curvature as a symmetric trace-free operator on the
/// self-dual coordinates. |W+|^2 is the Frobenius norm squared.
struct WeylPlusOperator {
  Mat3 m = Mat3::Zero();
  double norm2() const { return m.squaredNorm(); }
};

/// Rows are the orthonormal self-dual (resp. anti-self-dual) basis forms.
const Eigen::Matrix<double, 3, 6>& plus_basis();
const Eigen::Matrix<double, 3, 6>& minus_basis();

TwoForm hodge_star(const TwoForm& alpha);
SelfDualVector project_plus(const TwoForm& alpha);
AntiSelfDualVector project_minus(const TwoForm& alpha);
TwoForm to_two_form(const SelfDualVector& v);
TwoForm to_two_form(const AntiSelfDualVector& v);

/// The Kaehler-type model form w1 = e12 + e34 in self-dual coordinates.
SelfDualVector standard_kahler_vector();

SelfDualVector w_apply(const WeylPlusOperator& w, const SelfDualVector& omega);

/// <W(omega), omega>.
double w_quadratic(const WeylPlusOperator& w, const SelfDualVector& omega);

/// |W(omega) - (<W(omega), omega> / |omega|^2) omega|^2. Throws DegenerateInput
/// for a zero omega.
double w_perp_norm2(const WeylPlusOperator& w, const SelfDualVector& omega);

/// |W|^2 - |W(omega)^perp|^2 - 3/8 W(omega, omega)^2, which is nonnegative for
/// every trace-free symmetric W. Requires |omega|^2 = 2 to 1e-12.
double lemma1_gap(const WeylPlusOperator& w, const SelfDualVector& omega);

/// Same bound with the perpendicular term weighted by 1/2; this is the form
/// that enters the integral inequality. Requires |omega|^2 = 2 to 1e-12.
double lemma1_half_gap(const WeylPlusOperator& w, const SelfDualVector& omega);

/// Blocks of a symmetric operator on 2-forms relative to the splitting into
/// self-dual and anti-self-dual parts:
///   [ plus_plus   plus_minus  ]
///   [ plus_minus^T minus_minus ]
struct OperatorBlocks {
  Mat3 plus_plus = Mat3::Zero();
  Mat3 plus_minus = Mat3::Zero();
  Mat3 minus_minus = Mat3::Zero();
};

OperatorBlocks split_operator(const Mat6& op);
Mat6 assemble_operator(const OperatorBlocks& blocks);

}  // namespace curvlab
