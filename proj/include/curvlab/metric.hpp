#pragma once

// Metric descriptions: a single coordinate chart with a quadrature domain, or
// a left-invariant orthonormal frame given by structure constants.

#include <array>
#include <functional>
#include <string>
#include <variant>

#include "curvlab/hyper_dual.hpp"
#include "curvlab/sd_algebra.hpp"

namespace curvlab {

template <class T>
using Point4 = std::array<T, 4>;

template <class T>
using Matrix4 = std::array<std::array<T, 4>, 4>;

/// Field of 4x4 matrices over chart (or frame) coordinates. Evaluated on
/// hyper-dual points so that first and second derivatives come out exactly.
using MatrixField = std::function<Matrix4<HyperDual>(const Point4<HyperDual>&)>;

/// std::array of Eigen matrices (or nested arrays of them) that starts out
/// zero; Eigen leaves fixed-size matrices uninitialized by default.
template <class M, std::size_t N>
struct ZeroArray : std::array<M, N> {
  ZeroArray() {
    if constexpr (requires(M& m) { m.setZero(); }) {
      for (auto& m : *this) m.setZero();
    }
  }
};

using MatArray4 = ZeroArray<Mat4, 4>;

/// Index [k](i, j) of a rank-3 array, e.g. Christoffel symbols Gamma^k_ij.
using Tensor3 = MatArray4;

/// How one chart axis is sampled by quadrature and Weitzenboeck grids.
struct AxisRule {
  enum class Kind { Periodic, Legendre };
  Kind kind = Kind::Periodic;
  double lower = 0.0;
  double upper = 1.0;
};

/// Product of per-axis rules. Periodic axes are sampled with the trapezoid
/// rule, Legendre axes with interior Gauss nodes (never on the endpoints).
struct BoxDomain {
  std::array<AxisRule, 4> axes;
};

/// All of R^4, integrated in polar form x = tan(t) * (unit 3-sphere point)
/// with Gauss nodes in t and the Hopf latitude, trapezoid in the two phases.
struct RadialDomain {};

/// Open ball |x| < radius; pointwise evaluation only (noncompact model).
struct BallDomain {
  double radius = 1.0;
};

using ChartDomain = std::variant<BoxDomain, RadialDomain, BallDomain>;

struct ChartMetric {
  MatrixField metric;
  ChartDomain domain;
};

/// Left-invariant orthonormal frame with [e_i, e_j] = c^k_ij e_k.
struct FrameMetric {
  Tensor3 structure_constants{};  // [k](i, j)
  double volume = 1.0;            // volume of the compact quotient
};

struct MetricDescription {
  std::string name;
  std::variant<ChartMetric, FrameMetric> form;
  /// +1 when the basis order (coordinate or frame) is positively oriented.
  int orientation = 1;

  bool is_chart() const { return std::holds_alternative<ChartMetric>(form); }
  bool is_frame() const { return std::holds_alternative<FrameMetric>(form); }
};

/// Almost-complex structure as a field J^a_b in the description's basis
/// (column b is J applied to the b-th basis vector). For frame descriptions the
/// field is constant.
struct CompatibleJ {
  MatrixField field;
};

/// Value, first and second derivatives of a matrix field at a point.
struct MatrixJet {
  Mat4 value = Mat4::Zero();
  MatArray4 d;                    // d[m] = partial_m
  ZeroArray<MatArray4, 4> dd;     // dd[m][n] = partial_m partial_n
};

/// Evaluates the field on 10 hyper-dual seeds (one per unordered pair of axes).
MatrixJet jet_of(const MatrixField& field, const Vec4& point);

/// Evaluates the field at a plain point.
Mat4 value_of(const MatrixField& field, const Vec4& point);

/// True when the chart point is inside the domain. Frame descriptions accept
/// every point.
bool contains(const MetricDescription& desc, const Vec4& point);

// Small templated helpers used to write catalog fields once for every scalar.
template <class T>
Matrix4<T> zero_matrix() {
  Matrix4<T> m;
  for (auto& row : m) row.fill(T(0.0));
  return m;
}

template <class T>
Matrix4<T> constant_matrix(const Mat4& a) {
  Matrix4<T> m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = T(a(i, j));
  return m;
}

/// Gauss-Jordan inverse with partial pivoting on the plain values.
template <class T>
Matrix4<T> inverse(Matrix4<T> a) {
  Matrix4<T> inv = zero_matrix<T>();
  for (int i = 0; i < 4; ++i) inv[i][i] = T(1.0);
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 4; ++r) {
      if (std::abs(value_of(a[r][col])) > std::abs(value_of(a[pivot][col]))) pivot = r;
    }
    std::swap(a[col], a[pivot]);
    std::swap(inv[col], inv[pivot]);
    const T scale = T(1.0) / a[col][col];
    for (int j = 0; j < 4; ++j) {
      a[col][j] = a[col][j] * scale;
      inv[col][j] = inv[col][j] * scale;
    }
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      const T factor = a[r][col];
      for (int j = 0; j < 4; ++j) {
        a[r][j] = a[r][j] - factor * a[col][j];
        inv[r][j] = inv[r][j] - factor * inv[col][j];
      }
    }
  }
  return inv;
}

template <class T>
Matrix4<T> multiply(const Matrix4<T>& a, const Matrix4<T>& b) {
  Matrix4<T> c = zero_matrix<T>();
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      for (int j = 0; j < 4; ++j) c[i][j] = c[i][j] + a[i][k] * b[k][j];
  return c;
}

/// J = -g^{-1} Omega for a 2-form Omega, so that Omega(X, Y) = g(JX, Y).
MatrixField structure_from_two_form(MatrixField metric, MatrixField two_form);

}  // namespace curvlab
