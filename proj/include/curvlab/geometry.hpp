#pragma once

// Levi-Civita connection, Riemann tensor and the block decomposition of the
// curvature operator on 2-forms.
//
// Sign convention: R(X, Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z
// and R_ijkl = g(R(e_i, e_j) e_l, e_k), so R_1212 is the sectional curvature
// of the (e1, e2) plane and the round sphere has a positive curvature operator.

#include <array>

#include "curvlab/metric.hpp"
#include "curvlab/sd_algebra.hpp"

namespace curvlab {

/// Riemann (0,4) components in an orthonormal frame.
class RiemannTensor {
 public:
  double operator()(int i, int j, int k, int l) const { return data_[index(i, j, k, l)]; }
  double& operator()(int i, int j, int k, int l) { return data_[index(i, j, k, l)]; }

 private:
  static constexpr int index(int i, int j, int k, int l) { return ((i * 4 + j) * 4 + k) * 4 + l; }
  std::array<double, 256> data_{};
};

/// R[i][j](k, l) = R^k_{l i j}: the endomorphism R(b_i, b_j) in basis components.
using CurvatureEndomorphisms = ZeroArray<MatArray4, 4>;

/// Connection data in the description's own basis: coordinate vector fields
/// for a chart, the left-invariant frame otherwise.
struct BasisConnection {
  Mat4 metric = Mat4::Identity();
  Mat4 metric_inv = Mat4::Identity();
  MatArray4 metric_derivative{};  // [m] = b_m(g)
  Tensor3 christoffel{};                    // [k](i, j): nabla_{b_i} b_j = Gamma^k_ij b_k
  ZeroArray<Tensor3, 4> christoffel_derivative{};  // [m] = b_m(Gamma)
  Tensor3 bracket{};                        // [k](i, j): [b_i, b_j] = c^k_ij b_k
};

struct PointGeometry {
  Vec4 point = Vec4::Zero();
  BasisConnection basis;
  /// Columns are the oriented orthonormal frame e_a written in the basis.
  Mat4 frame = Mat4::Identity();
  /// Rows are the dual coframe e^a written in the dual basis (inverse of frame).
  Mat4 coframe = Mat4::Identity();
  /// Set when Gram-Schmidt produced a negatively oriented frame and the last
  /// two legs were swapped.
  bool frame_repaired = false;
  RiemannTensor riemann;  // orthonormal frame components
  Mat4 ricci = Mat4::Zero();  // orthonormal frame components
  double scalar = 0.0;
};

/// The four blocks of the curvature operator:
///   [ W+ + s/12   ric0  ]
///   [ ric0^T   W- + s/12 ]
struct CurvatureBlocks {
  WeylPlusOperator wplus;
  Mat3 wminus = Mat3::Zero();
  Mat3 ric0block = Mat3::Zero();
  double scalar = 0.0;
};

/// Christoffel symbols of the Levi-Civita connection in the description's
/// basis. Throws DomainError outside the chart, DegenerateInput for a
/// metric that is not positive definite.
Tensor3 christoffel(const MetricDescription& desc, const Vec4& point);

/// Full point evaluation: connection, oriented frame, Riemann, Ricci, s.
PointGeometry riemann(const MetricDescription& desc, const Vec4& point);

/// Curvature of a connection with coefficients A (and basis derivatives dA)
/// in a basis with brackets c.
CurvatureEndomorphisms connection_curvature(const Tensor3& coefficients,
                                            const ZeroArray<Tensor3, 4>& coefficient_derivative,
                                            const Tensor3& bracket);

/// 6x6 matrix of the curvature operator in the e_ij basis, entry
/// ((i,j), (k,l)) = R_ijkl.
Mat6 curvature_operator(const PointGeometry& pg);

CurvatureBlocks decompose(const PointGeometry& pg);

/// |ric0|^2 = sum_ij (Ric_ij - s/4 delta_ij)^2.
double ric0_norm2(const PointGeometry& pg);

/// Frame components of the curvature after replacing the frame e by e Q
/// (Q orthogonal). det Q = -1 reverses the orientation.
PointGeometry rotate_frame(const PointGeometry& pg, const Mat4& q);

/// Largest violation of pair symmetry, antisymmetry and first Bianchi.
double riemann_symmetry_residual(const PointGeometry& pg);

/// Scalar invariants used in frame and orientation checks.
struct ScalarInvariants {
  double scalar = 0.0;
  double wplus2 = 0.0;
  double wminus2 = 0.0;
  double ric0_2 = 0.0;
};

ScalarInvariants invariants(const PointGeometry& pg);

}  // namespace curvlab
