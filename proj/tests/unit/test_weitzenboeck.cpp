#include <cmath>

#include "doctest.h"

#include "curvlab/catalog.hpp"
#include "curvlab/errors.hpp"
#include "curvlab/weitzenboeck.hpp"

using namespace curvlab;

TEST_CASE("constant self-dual form on the flat torus is exact") {
  const CatalogEntry e = load("t4_flat");
  for (int n : {8, 11}) {
    const WeitzenboeckResult r = weitzenboeck_analysis(e.desc, named_field(e, "constant"), default_grid(e.desc, n));
    CHECK(r.residual <= 1e-10);
    CHECK(r.max_curvature_term == 0.0);
    CHECK(r.evaluated_nodes > 0);
  }
}

TEST_CASE("bump form on the flat torus converges at second order") {
  const CatalogEntry e = load("t4_flat");
  const ConvergenceTable t = weitzenboeck_convergence(e, "bump", {8, 12, 16});
  REQUIRE(t.order.has_value());
  CHECK_FALSE(t.exact);
  CHECK(*t.order >= 1.8);
  CHECK(*t.order <= 2.2);
  CHECK(t.levels[0].result.residual > t.levels[2].result.residual);
}

TEST_CASE("round sphere: a nonzero curvature term is balanced exactly") {
  // Delta and nabla^* nabla of P+(dx12 + dx34) differ by (s/3) alpha here.
  const CatalogEntry e = load("s4_round");
  for (int n : {8, 16}) {
    const WeitzenboeckResult r = weitzenboeck_analysis(e.desc, named_field(e, "constant"), default_grid(e.desc, n));
    CHECK(r.max_curvature_term > 1.0);
    CHECK(r.residual < 1e-10);
  }
}

TEST_CASE("Kaehler form of a product of spheres: curvature term vanishes, residual converges") {
  const CatalogEntry e = load("s2xs2");
  const ConvergenceTable t = weitzenboeck_convergence(e, "omega", {9, 13, 17});
  CHECK(t.levels.back().result.max_curvature_term < 1e-10);
  REQUIRE(t.order.has_value());
  CHECK(*t.order >= 1.8);
}

TEST_CASE("serial and parallel grids agree") {
  const CatalogEntry e = load("t4_flat");
  const GridSpec g = default_grid(e.desc, 8);
  const auto a = weitzenboeck_analysis(e.desc, named_field(e, "bump"), g, Execution::Serial);
  const auto b = weitzenboeck_analysis(e.desc, named_field(e, "bump"), g, Execution::Parallel);
  CHECK(a.residual == b.residual);
  CHECK(a.evaluated_nodes == b.evaluated_nodes);
}

TEST_CASE("Weitzenboeck errors") {
  const CatalogEntry t4 = load("t4_flat");
  CHECK_THROWS_AS(weitzenboeck_analysis(t4.desc, named_field(t4, "bump"), default_grid(t4.desc, 6)), ConfigError);
  const FormField asd = [](const Vec4&) {
    Mat4 a = Mat4::Zero();
    a(0, 1) = 1.0;
    a(2, 3) = -1.0;
    return Mat4(a - a.transpose());
  };
  CHECK_THROWS_AS(weitzenboeck_analysis(t4.desc, asd, default_grid(t4.desc, 8)), DegenerateInput);
  const CatalogEntry kt = load("kodaira_thurston");
  CHECK_THROWS_AS(weitzenboeck_analysis(kt.desc, named_field(kt, "omega"), GridSpec{}), ConfigError);
  CHECK_THROWS_AS(weitzenboeck_convergence(t4, "bump", {8, 12}), ConfigError);
  CHECK_THROWS_AS(named_field(t4, "wiggle"), ConfigError);
  CHECK_THROWS_AS(named_field(load("s4_round"), "omega"), ConfigError);
}

TEST_CASE("fitted order of exact power laws") {
  const std::vector<double> h = {0.4, 0.2, 0.1, 0.05};
  std::vector<double> y;
  for (double x : h) y.push_back(3.0 * x * x);
  CHECK(fitted_order(h, y) == doctest::Approx(2.0));
}
