#include <cmath>
#include <numbers>

#include "doctest.h"

#include "curvlab/catalog.hpp"
#include "curvlab/errors.hpp"
#include "curvlab/quadrature.hpp"

using namespace curvlab;

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly") {
  for (int n : {2, 5, 12}) {
    const GaussRule rule = gauss_legendre(n, -1.0, 2.0);
    for (int p = 0; p <= 2 * n - 1; ++p) {
      double sum = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], p);
      const double exact = (std::pow(2.0, p + 1) - std::pow(-1.0, p + 1)) / (p + 1);
      CHECK(sum == doctest::Approx(exact).epsilon(1e-13));
    }
    for (double x : rule.nodes) {
      CHECK(x > -1.0);
      CHECK(x < 2.0);
    }
  }
}

TEST_CASE("schemes recover the volume") {
  struct Case {
    std::string id;
    int n;
    double tol;
  };
  for (const Case& c : {Case{"t4_flat", 4, 1e-12}, Case{"s2xs2", 12, 1e-12}, Case{"s4_round", 16, 1e-9},
                        Case{"cp2_fs", 16, 1e-9}}) {
    const CatalogEntry e = load(c.id);
    const QuadratureScheme s = make_scheme(e.desc, c.n);
    CHECK(s.nodes.size() == static_cast<std::size_t>(c.n * c.n * c.n * c.n));
    CHECK_MESSAGE(s.total_weight() == doctest::Approx(e.volume->value()).epsilon(c.tol), c.id);
  }
}

TEST_CASE("kinds follow the domain") {
  CHECK(make_scheme(load("t4_flat").desc, 2).kind == QuadratureKind::PeriodicTrapezoid);
  CHECK(make_scheme(load("s2xs2").desc, 2).kind == QuadratureKind::GaussLegendreProduct);
  CHECK(make_scheme(load("cp2_fs").desc, 2).kind == QuadratureKind::RadialCompactified);
  const QuadratureScheme h = homogeneous_scheme(Vec4::Zero(), 5.0);
  CHECK(h.kind == QuadratureKind::HomogeneousShortcut);
  CHECK(h.total_weight() == 5.0);
  CHECK(to_string(QuadratureKind::RadialCompactified) == "radial_compactified");
}

TEST_CASE("scheme errors") {
  CHECK_THROWS_AS(make_scheme(load("kodaira_thurston").desc, 8), ConfigError);
  CHECK_THROWS_AS(make_scheme(load("h4_hyperbolic").desc, 8), ConfigError);
  CHECK_THROWS_AS(make_scheme(load("t4_flat").desc, 1), ConfigError);
}

TEST_CASE("compensated summation") {
  NeumaierSum s;
  for (double x : {1.0, 1e100, 1.0, -1e100}) s.add(x);
  CHECK(s.value() == 2.0);
}
