#include <cmath>
#include <random>

#include "doctest.h"

#include "curvlab/errors.hpp"
#include "curvlab/sd_algebra.hpp"
#include "oracles.hpp"

using namespace curvlab;

namespace {

TwoForm basis_form(int i, int j, double value = 1.0) {
  TwoForm a;
  a.c[pair_index(i, j)] = value;
  return a;
}

double max_abs(const Vec6& v) { return v.cwiseAbs().maxCoeff(); }

WeylPlusOperator op(const Mat3& m) { return WeylPlusOperator{m}; }

SelfDualVector sd(double a, double b, double c) { return SelfDualVector{Vec3(a, b, c)}; }

}  // namespace

TEST_CASE("hodge star on basis forms") {
  CHECK(max_abs(hodge_star(basis_form(0, 1)).c - basis_form(2, 3).c) == 0.0);
  CHECK(max_abs(hodge_star(basis_form(0, 2)).c - basis_form(1, 3, -1.0).c) == 0.0);
  CHECK(max_abs(hodge_star(basis_form(0, 3)).c - basis_form(1, 2).c) == 0.0);
  const TwoForm w1 = basis_form(0, 1) + basis_form(2, 3);
  CHECK(max_abs(hodge_star(w1).c - w1.c) == 0.0);
  const TwoForm asd = basis_form(0, 1) - basis_form(2, 3);
  CHECK(max_abs(hodge_star(asd).c + asd.c) == 0.0);
}

TEST_CASE("hodge star is an involution and an isometry") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  for (int t = 0; t < 50; ++t) {
    TwoForm a;
    for (int k = 0; k < 6; ++k) a.c[k] = normal(rng);
    CHECK(max_abs(hodge_star(hodge_star(a)).c - a.c) < 1e-15);
    CHECK(hodge_star(a).norm2() == doctest::Approx(a.norm2()).epsilon(1e-14));
  }
}

TEST_CASE("matrix round trip") {
  TwoForm a;
  a.c << 1, 2, 3, 4, 5, 6;
  const Mat4 m = a.to_matrix();
  CHECK((m + m.transpose()).norm() == 0.0);
  CHECK(m(0, 1) == 1.0);
  CHECK(m(2, 3) == 6.0);
  CHECK(max_abs(TwoForm::from_matrix(m).c - a.c) == 0.0);
}

TEST_CASE("projections split e12 evenly") {
  const TwoForm e12 = basis_form(0, 1);
  const TwoForm plus = to_two_form(project_plus(e12));
  const TwoForm minus = to_two_form(project_minus(e12));
  const TwoForm w1 = basis_form(0, 1) + basis_form(2, 3);
  const TwoForm a1 = basis_form(0, 1) - basis_form(2, 3);
  CHECK(max_abs(plus.c - 0.5 * w1.c) < 1e-15);
  CHECK(max_abs(minus.c - 0.5 * a1.c) < 1e-15);
  CHECK(project_minus(w1).norm2() < 1e-30);
  CHECK(max_abs(to_two_form(project_plus(w1)).c - w1.c) < 1e-15);
}

TEST_CASE("projections reassemble random forms") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal;
  for (int t = 0; t < 100; ++t) {
    TwoForm a;
    for (int k = 0; k < 6; ++k) a.c[k] = normal(rng);
    const TwoForm plus = to_two_form(project_plus(a));
    const TwoForm minus = to_two_form(project_minus(a));
    CHECK(max_abs((plus + minus).c - a.c) < 1e-14);
    CHECK(max_abs(hodge_star(plus).c - plus.c) < 1e-14);
    CHECK(max_abs(hodge_star(minus).c + minus.c) < 1e-14);
  }
}

TEST_CASE("orthonormal bases of the eigenspaces") {
  const auto& p = plus_basis();
  const auto& m = minus_basis();
  CHECK((p * p.transpose() - Mat3::Identity()).norm() < 1e-15);
  CHECK((m * m.transpose() - Mat3::Identity()).norm() < 1e-15);
  CHECK((p * m.transpose()).norm() < 1e-15);
  CHECK(standard_kahler_vector().norm2() == doctest::Approx(2.0));
}

TEST_CASE("w_apply on zero and Kaehler-type operators") {
  const SelfDualVector omega = standard_kahler_vector();
  CHECK(w_apply(op(Mat3::Zero()), omega).norm2() == 0.0);
  const double s = 24.0;
  const WeylPlusOperator w = op(Vec3(s / 6, -s / 12, -s / 12).asDiagonal());
  const SelfDualVector image = w_apply(w, omega);
  CHECK((image.v - std::sqrt(2.0) * Vec3(4, 0, 0)).norm() < 1e-14);
  CHECK(w_quadratic(w, omega) == doctest::Approx(8.0));
  CHECK(w_quadratic(op(Mat3::Zero()), omega) == 0.0);
}

TEST_CASE("w_apply matches a direct multiply") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const Mat3 m = oracle::random_traceless(rng);
    const Vec3 v = oracle::random_omega(rng);
    CHECK((w_apply(op(m), SelfDualVector{v}).v - m * v).norm() < 1e-14);
  }
}

TEST_CASE("w_quadratic uses only the eigenvalues the form sees") {
  const WeylPlusOperator w = op(Vec3(3.0, -1.0, -2.0).asDiagonal());
  // omega orthogonal to the first eigenvector, equal weight on the other two.
  const SelfDualVector omega = sd(0.0, 1.0, 1.0);
  CHECK(w_quadratic(w, omega) == doctest::Approx(-3.0));
}

TEST_CASE("w_perp_norm2 examples") {
  const SelfDualVector omega = standard_kahler_vector();
  CHECK(w_perp_norm2(op(Vec3(2, -1, -1).asDiagonal()), omega) < 1e-30);
  Mat3 m = Mat3::Zero();
  m(0, 1) = m(1, 0) = 1.0;
  CHECK(w_perp_norm2(op(m), omega) == doctest::Approx(2.0));
  CHECK_THROWS_AS(w_perp_norm2(op(m), sd(0, 0, 0)), DegenerateInput);
}

TEST_CASE("w_perp_norm2 satisfies Pythagoras") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const WeylPlusOperator w = op(oracle::random_traceless(rng));
    const SelfDualVector omega{oracle::random_omega(rng)};
    const double q = w_quadratic(w, omega);
    const double lhs = w_apply(w, omega).norm2();
    CHECK(lhs == doctest::Approx(w_perp_norm2(w, omega) + q * q / omega.norm2()).epsilon(1e-12));
  }
}

TEST_CASE("lemma1_gap vanishes on the equality configuration") {
  const SelfDualVector omega = standard_kahler_vector();
  for (double t : {-3.0, -0.5, 0.0, 0.25, 7.0}) {
    CHECK(std::abs(lemma1_gap(op(Vec3(2 * t, -t, -t).asDiagonal()), omega)) < 1e-12 * (1 + t * t));
  }
  CHECK(lemma1_gap(op(Mat3::Zero()), omega) == 0.0);
}

TEST_CASE("lemma1 gaps reject badly normalised forms") {
  const WeylPlusOperator w = op(Vec3(1, 0, -1).asDiagonal());
  CHECK_THROWS_AS(lemma1_gap(w, sd(1, 0, 0)), DegenerateInput);
  CHECK_THROWS_AS(lemma1_half_gap(w, sd(0, 0, 0)), DegenerateInput);
}

TEST_CASE("lemma1 gaps are nonnegative on random samples") {
  std::mt19937_64 rng(42);
  double worst = 0.0, worst_half = 0.0;
  for (int t = 0; t < 100000; ++t) {
    const WeylPlusOperator w = op(oracle::random_traceless(rng));
    const SelfDualVector omega{oracle::random_omega(rng)};
    worst = std::min(worst, lemma1_gap(w, omega));
    worst_half = std::min(worst_half, lemma1_half_gap(w, omega));
  }
  CHECK(worst >= -1e-10);
  CHECK(worst_half >= -1e-10);
}

TEST_CASE("lemma1 gaps are invariant under simultaneous rotation") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 50; ++t) {
    const Mat3 m = oracle::random_traceless(rng);
    const Vec3 v = oracle::random_omega(rng);
    const Mat3 r = oracle::random_rotation3(rng);
    const double a = lemma1_gap(op(m), SelfDualVector{v});
    const double b = lemma1_gap(op(r * m * r.transpose()), SelfDualVector{r * v});
    CHECK(a == doctest::Approx(b).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("lemma1 gap closed form for omega along the first axis") {
  // With omega = sqrt(2) e1 and W = [[a,b,c],[b,d,f],[c,f,-a-d]] the gap is
  // 2 (d + a/2)^2 + 2 f^2, independent of b and c.
  std::mt19937_64 rng(13);
  std::normal_distribution<double> normal;
  for (int t = 0; t < 100; ++t) {
    const double a = normal(rng), b = normal(rng), c = normal(rng), d = normal(rng), f = normal(rng);
    Mat3 m;
    m << a, b, c, b, d, f, c, f, -a - d;
    const double expected = 2 * (d + a / 2) * (d + a / 2) + 2 * f * f;
    CHECK(lemma1_gap(op(m), standard_kahler_vector()) == doctest::Approx(expected).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("minimising the half-weighted gap forces perp = 0 and a degenerate lower pair") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 10; ++t) {
    const SelfDualVector omega{oracle::random_omega(rng)};
    const auto f = [&](const Mat3& m) { return lemma1_half_gap(op(m), omega); };
    const auto min = oracle::minimize_on_unit_sphere(f, oracle::random_traceless(rng));
    CHECK(min.value < 1e-8);
    CHECK(w_perp_norm2(op(min.w), omega) < 1e-6);
    // Restriction to the plane orthogonal to omega is a multiple of the identity.
    Eigen::SelfAdjointEigenSolver<Mat3> es(min.w);
    const Vec3 ev = es.eigenvalues();
    const Vec3 u = omega.v.normalized();
    double lower_split = 1e300;
    for (int k = 0; k < 3; ++k) {
      if (std::abs(es.eigenvectors().col(k).dot(u)) > 0.9) {
        const int i = (k + 1) % 3, j = (k + 2) % 3;
        lower_split = std::abs(ev[i] - ev[j]);
      }
    }
    CHECK(lower_split < 1e-3);
  }
}

TEST_CASE("operator blocks round trip") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> normal;
  Mat6 a;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) a(i, j) = normal(rng);
  const Mat6 sym = 0.5 * (a + a.transpose());
  const OperatorBlocks blocks = split_operator(sym);
  CHECK((assemble_operator(blocks) - sym).norm() < 1e-13);
  CHECK((blocks.plus_plus - blocks.plus_plus.transpose()).norm() < 1e-14);
}

TEST_CASE("Kaehler-type block has the expected norm") {
  const double s = 24.0;
  const WeylPlusOperator w = op(Vec3(s / 6, -s / 12, -s / 12).asDiagonal());
  CHECK(w.norm2() == doctest::Approx(s * s / 24));
}
