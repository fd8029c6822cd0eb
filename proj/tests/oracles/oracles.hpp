#pragma once

// Independent reference computations used by the unit and acceptance tests.
// Nothing here calls the code path it is used to check.

#include <functional>
#include <random>

#include "curvlab/metric.hpp"
#include "curvlab/sd_algebra.hpp"

namespace oracle {

using curvlab::Mat3;
using curvlab::Mat4;
using curvlab::Vec3;
using curvlab::Vec4;

/// Standard Gaussian on the 5-dimensional space of trace-free symmetric 3x3
/// matrices (orthonormal for the Frobenius inner product).
Mat3 random_traceless(std::mt19937_64& rng);

/// Uniform on the sphere |omega|^2 = 2.
Vec3 random_omega(std::mt19937_64& rng);

/// Uniform random rotation of R^3.
Mat3 random_rotation3(std::mt19937_64& rng);

struct Minimum {
  Mat3 w;
  double value = 0.0;
  int iterations = 0;
};

/// Projected gradient descent of f over trace-free symmetric W with |W| = 1,
/// using central-difference gradients.
Minimum minimize_on_unit_sphere(const std::function<double(const Mat3&)>& f, Mat3 start, int max_iterations = 20000,
                                double target = 1e-13);

/// Christoffel symbols Gamma^k_ij from central differences of the metric
/// values, indexed [k](i, j).
std::array<Mat4, 4> christoffel_fd(const std::function<Mat4(const Vec4&)>& metric, const Vec4& x, double h = 1e-5);

/// Kaehler form of a potential phi for a constant J: omega = -1/4 d(d phi o J),
/// with d phi supplied analytically and the outer d by central differences.
Mat4 kahler_form_from_potential(const std::function<Vec4(const Vec4&)>& grad_phi, const Mat4& j, const Vec4& x,
                                double h = 1e-5);

}  // namespace oracle
