#include <cmath>

#include "doctest.h"

#include "curvlab/almost_kahler.hpp"
#include "curvlab/catalog.hpp"
#include "curvlab/errors.hpp"
#include "curvlab/verify.hpp"
#include "oracles.hpp"

using namespace curvlab;

namespace {

// Coordinate components of a frame 2-form.
Mat4 coordinate_form(const PointGeometry& pg, const TwoForm& frame_form) {
  return pg.coframe.transpose() * frame_form.to_matrix() * pg.coframe;
}

}  // namespace

TEST_CASE("flat torus: constant standard form, no torsion, no curvature") {
  const CatalogEntry e = load("t4_flat");
  const Vec4 x(0.5, 1.5, 2.5, 3.5);
  const TwoForm omega = omega_field(e.desc, *e.j, x);
  TwoForm w1;
  w1.c[pair_index(0, 1)] = 1.0;
  w1.c[pair_index(2, 3)] = 1.0;
  CHECK((omega.c - w1.c).norm() < 1e-15);
  CHECK(nabla_omega_norm2(e.desc, *e.j, x) == 0.0);
  const StarScalar st = s_star(e.desc, *e.j, x);
  CHECK(st.s_star == 0.0);
  CHECK(w_quadratic_identity_residual(e.desc, *e.j, x) == 0.0);
  const BlairCurvature f = blair_curvature(e.desc, *e.j, x);
  CHECK(f.f_plus.norm2() == 0.0);
  CHECK(f.f_minus.norm2() == 0.0);
}

TEST_CASE("product of spheres: sum of area forms") {
  const CatalogEntry e = load("s2xs2", {{"a", 1.0}, {"b", 2.0}});
  const Vec4 x(0.8, 0.3, 2.1, 1.0);
  const PointGeometry pg = riemann(e.desc, x);
  const TwoForm omega = omega_field(e.desc, *e.j, x);
  CHECK(omega.norm2() == doctest::Approx(2.0));
  Mat4 area = Mat4::Zero();
  area(0, 1) = std::sin(0.8);
  area(2, 3) = 4.0 * std::sin(2.1);
  area -= area.transpose().eval();
  CHECK((coordinate_form(pg, omega) - area).norm() < 1e-13);
  CHECK(nabla_omega_norm2(e.desc, *e.j, x) < 1e-20);
}

TEST_CASE("Fubini-Study form matches the potential") {
  const CatalogEntry e = load("cp2_fs");
  const auto grad_phi = [](const Vec4& y) -> Vec4 { return 2.0 * y / (1.0 + y.squaredNorm()); };
  const Mat4 j = value_of(e.j->field, Vec4::Zero());
  for (const Vec4& x : sample_points(e.desc, 5, 9)) {
    const PointGeometry pg = riemann(e.desc, x);
    const Mat4 expected = oracle::kahler_form_from_potential(grad_phi, j, x);
    CHECK((coordinate_form(pg, omega_field(e.desc, *e.j, x)) - expected).cwiseAbs().maxCoeff() < 1e-7);
  }
}

TEST_CASE("Kaehler entries have parallel fundamental form") {
  for (const std::string id : {"t4_flat", "s2xs2", "cp2_fs", "ch2_chart"}) {
    const CatalogEntry e = load(id);
    for (const Vec4& x : sample_points(e.desc, 10, 2)) {
      CHECK_MESSAGE(nabla_omega_norm2(e.desc, *e.j, x) < 1e-10, id);
    }
  }
}

TEST_CASE("star-scalar curvature on the catalog") {
  const CatalogEntry s2 = load("s2xs2");
  const StarScalar st = s_star(s2.desc, *s2.j, Vec4(1.0, 0.2, 2.0, 0.4));
  CHECK(st.s_star == doctest::Approx(4.0));
  CHECK(st.consistency_residual() < 1e-12);

  const CatalogEntry cp2 = load("cp2_fs");
  const Vec4 x(0.2, 0.4, -0.1, 0.3);
  CHECK(s_star(cp2.desc, *cp2.j, x).s_star == doctest::Approx(24.0));
  const AlmostKahlerSample sample = evaluate_structure(cp2.desc, *cp2.j, x);
  CHECK(sample.w_omega_omega == doctest::Approx(8.0));
  CHECK(sample.w_perp2 < 1e-20);
  CHECK(w_quadratic_identity_residual(cp2.desc, *cp2.j, x) < 1e-12);
}

TEST_CASE("Kodaira-Thurston: strict star-scalar excess") {
  for (double mode : {0.0, 1.0}) {
    const CatalogEntry e = load("kodaira_thurston", {{"mode", mode}});
    for (const Vec4& x : sample_points(e.desc, 10, 4)) {
      const StarScalar st = s_star(e.desc, *e.j, x);
      CHECK(st.scalar == doctest::Approx(-0.5));
      CHECK(st.nabla_omega_norm2 == doctest::Approx(1.0));
      CHECK(st.s_star == doctest::Approx(0.5));
      CHECK(st.consistency_residual() < 1e-8);
      const AlmostKahlerSample sample = evaluate_structure(e.desc, *e.j, x);
      CHECK(std::abs(sample.w_omega_omega) > 0.1);
      CHECK(w_quadratic_identity_residual(e.desc, *e.j, x) < 1e-8);
    }
  }
}

TEST_CASE("anti-canonical curvature on Kaehler entries") {
  const CatalogEntry cp2 = load("cp2_fs");
  const Vec4 x(0.3, -0.2, 0.5, 0.6);
  const BlairCurvature f = blair_curvature(cp2.desc, *cp2.j, x);
  const AlmostKahlerSample sample = evaluate_structure(cp2.desc, *cp2.j, x);
  CHECK((f.f_plus.v - 6.0 * sample.omega_plus.v).norm() < 1e-12);
  CHECK(f.f_minus.norm2() < 1e-24);
  CHECK(f.residual < 1e-12);

  const CatalogEntry s2 = load("s2xs2", {{"a", 1.0}, {"b", 2.0}});
  const Vec4 y(0.9, 0.1, 2.0, 0.3);
  const AlmostKahlerSample ps = evaluate_structure(s2.desc, *s2.j, y);
  CHECK((ps.blair.f_plus.v - (2.5 / 4.0) * ps.omega_plus.v).norm() < 1e-12);
  CHECK(ps.blair.f_minus.norm2() == doctest::Approx(ric0_norm2(ps.geometry) / 2.0));
}

TEST_CASE("Blair decomposition holds on the non-Kaehler entry") {
  const CatalogEntry e = load("kodaira_thurston");
  const BlairCurvature f = blair_curvature(e.desc, *e.j, Vec4::Zero());
  CHECK(f.residual < 1e-12);
}

TEST_CASE("incompatible structures are rejected") {
  const CatalogEntry e = load("t4_flat");
  Mat4 bad = Mat4::Zero();
  bad(1, 0) = 2.0;
  bad(0, 1) = -0.5;
  bad(3, 2) = 1.0;
  bad(2, 3) = -1.0;
  const CompatibleJ skewed{[bad](const Point4<HyperDual>&) { return constant_matrix<HyperDual>(bad); }};
  CHECK_THROWS_AS(evaluate_structure(e.desc, skewed, Vec4::Zero()), IncompatibleStructure);
  // Orthogonal but anti-self-dual: e12 - e34.
  Mat4 asd = Mat4::Zero();
  asd(1, 0) = 1.0;
  asd(0, 1) = -1.0;
  asd(3, 2) = -1.0;
  asd(2, 3) = 1.0;
  const CompatibleJ wrong_side{[asd](const Point4<HyperDual>&) { return constant_matrix<HyperDual>(asd); }};
  CHECK_THROWS_AS(evaluate_structure(e.desc, wrong_side, Vec4::Zero()), IncompatibleStructure);
}
