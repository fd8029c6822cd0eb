#include "oracles.hpp"

#include <cmath>

namespace oracle {

namespace {

// Orthonormal basis of trace-free symmetric matrices.
std::array<Mat3, 5> traceless_basis() {
  std::array<Mat3, 5> b;
  for (auto& m : b) m.setZero();
  b[0](0, 0) = 1.0 / std::sqrt(2.0);
  b[0](1, 1) = -1.0 / std::sqrt(2.0);
  b[1](0, 0) = 1.0 / std::sqrt(6.0);
  b[1](1, 1) = 1.0 / std::sqrt(6.0);
  b[1](2, 2) = -2.0 / std::sqrt(6.0);
  const int off[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (int k = 0; k < 3; ++k) {
    b[2 + k](off[k][0], off[k][1]) = 1.0 / std::sqrt(2.0);
    b[2 + k](off[k][1], off[k][0]) = 1.0 / std::sqrt(2.0);
  }
  return b;
}

Eigen::Matrix<double, 5, 1> coordinates(const Mat3& w) {
  static const auto basis = traceless_basis();
  Eigen::Matrix<double, 5, 1> x;
  for (int k = 0; k < 5; ++k) x[k] = (basis[k].array() * w.array()).sum();
  return x;
}

Mat3 from_coordinates(const Eigen::Matrix<double, 5, 1>& x) {
  static const auto basis = traceless_basis();
  Mat3 w = Mat3::Zero();
  for (int k = 0; k < 5; ++k) w += x[k] * basis[k];
  return w;
}

}  // namespace

Mat3 random_traceless(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::Matrix<double, 5, 1> x;
  for (int k = 0; k < 5; ++k) x[k] = normal(rng);
  return from_coordinates(x);
}

Vec3 random_omega(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vec3 v(normal(rng), normal(rng), normal(rng));
  return std::sqrt(2.0) * v / v.norm();
}

Mat3 random_rotation3(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Mat3 a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = normal(rng);
  Eigen::HouseholderQR<Mat3> qr(a);
  Mat3 q = qr.householderQ();
  if (q.determinant() < 0.0) q.col(0) *= -1.0;
  return q;
}

Minimum minimize_on_unit_sphere(const std::function<double(const Mat3&)>& f, Mat3 start, int max_iterations,
                                double target) {
  using V5 = Eigen::Matrix<double, 5, 1>;
  V5 x = coordinates(start);
  x.normalize();
  auto value = [&](const V5& y) { return f(from_coordinates(y)); };
  double fx = value(x);
  double step = 0.1;
  Minimum out;
  int it = 0;
  for (; it < max_iterations && fx > target; ++it) {
    V5 grad;
    const double h = 1e-6;
    for (int k = 0; k < 5; ++k) {
      V5 p = x, m = x;
      p[k] += h;
      m[k] -= h;
      grad[k] = (value(p) - value(m)) / (2.0 * h);
    }
    grad -= grad.dot(x) * x;  // tangent to the sphere
    if (grad.norm() < 1e-15) break;
    // Backtracking on the sphere.
    while (step > 1e-12) {
      V5 y = (x - step * grad).normalized();
      const double fy = value(y);
      if (fy < fx) {
        x = y;
        fx = fy;
        step *= 1.5;
        break;
      }
      step *= 0.5;
    }
    if (step <= 1e-12) break;
  }
  out.w = from_coordinates(x);
  out.value = fx;
  out.iterations = it;
  return out;
}

std::array<Mat4, 4> christoffel_fd(const std::function<Mat4(const Vec4&)>& metric, const Vec4& x, double h) {
  std::array<Mat4, 4> dg;
  for (int m = 0; m < 4; ++m) {
    Vec4 p = x, q = x;
    p[m] += h;
    q[m] -= h;
    dg[m] = (metric(p) - metric(q)) / (2.0 * h);
  }
  const Mat4 inv = metric(x).inverse();
  std::array<Mat4, 4> gamma;
  for (int k = 0; k < 4; ++k) {
    gamma[k].setZero();
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int l = 0; l < 4; ++l)
          gamma[k](i, j) += 0.5 * inv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
  }
  return gamma;
}

Mat4 kahler_form_from_potential(const std::function<Vec4(const Vec4&)>& grad_phi, const Mat4& j, const Vec4& x,
                                double h) {
  // theta_b = (d phi o J)(d_b) = sum_k d_k phi J(k, b)
  auto theta = [&](const Vec4& y) -> Vec4 { return j.transpose() * grad_phi(y); };
  Mat4 dtheta;  // dtheta(a, b) = d_a theta_b
  for (int a = 0; a < 4; ++a) {
    Vec4 p = x, q = x;
    p[a] += h;
    q[a] -= h;
    dtheta.row(a) = ((theta(p) - theta(q)) / (2.0 * h)).transpose();
  }
  return -0.25 * (dtheta - dtheta.transpose());
}

}  // namespace oracle
