#include <numbers>

#include "doctest.h"

#include "curvlab/catalog.hpp"
#include "curvlab/errors.hpp"

using namespace curvlab;

TEST_CASE("catalog ids load with consistent flags") {
  CHECK(catalog_ids().size() == 7);
  for (const std::string& id : catalog_ids()) {
    const CatalogEntry e = load(id);
    CHECK(e.id == id);
    CHECK_MESSAGE(flag_inconsistencies(e).empty(), id);
    if (e.flags.kahler) CHECK(e.j.has_value());
    if (e.compact()) {
      CHECK(e.topology.has_value());
      CHECK(e.volume.has_value());
    }
  }
}

TEST_CASE("reference data") {
  const CatalogEntry t4 = load("t4_flat");
  CHECK(t4.flags.kahler);
  CHECK(t4.flags.einstein);
  CHECK(t4.flags.constant_s);
  CHECK(t4.topology->chi == 0.0);
  CHECK(t4.topology->tau == 0.0);
  CHECK(*t4.known_scalar == 0.0);

  const CatalogEntry cp2 = load("cp2_fs");
  CHECK(cp2.flags.kahler);
  CHECK(cp2.flags.einstein);
  CHECK(cp2.flags.self_dual);
  CHECK(cp2.topology->chi == 3.0);
  CHECK(cp2.topology->tau == 1.0);
  CHECK(cp2.topology->c1_squared() == 9.0);
  CHECK(*cp2.known_scalar == 24.0);
  CHECK(cp2.volume->value() == doctest::Approx(std::numbers::pi * std::numbers::pi / 2));

  const CatalogEntry kt = load("kodaira_thurston");
  CHECK(kt.flags.almost_kahler);
  CHECK_FALSE(kt.flags.kahler);
  CHECK_FALSE(kt.flags.delta_wplus_zero);
  CHECK(kt.topology->chi == 0.0);
  CHECK(kt.topology->tau == 0.0);

  CHECK(load("h4_hyperbolic").pointwise_only);
  CHECK(load("ch2_chart").pointwise_only);
}

TEST_CASE("parameters") {
  const CatalogEntry s2 = load("s2xs2", {{"a", 1.0}, {"b", 2.0}});
  CHECK_FALSE(s2.flags.einstein);
  CHECK(s2.flags.delta_wplus_zero);
  CHECK(*s2.known_scalar == doctest::Approx(2.5));
  CHECK(load("s2xs2").flags.einstein);
  CHECK(*load("s4_round", {{"r", 2.0}}).known_scalar == doctest::Approx(3.0));
  CHECK(default_params("s2xs2").at("a") == 1.0);
  CHECK(load("t4_flat", {{"mode", 1.0}}).desc.is_frame());
  CHECK(load("kodaira_thurston", {{"mode", 0.0}}).desc.is_chart());
}

TEST_CASE("configuration errors") {
  CHECK_THROWS_AS(load("no_such_entry"), ConfigError);
  CHECK_THROWS_AS(load("s4_round", {{"radius", 1.0}}), ConfigError);
  CHECK_THROWS_AS(load("s4_round", {{"r", -1.0}}), ConfigError);
  CHECK_THROWS_AS(load("t4_flat", {{"mode", 2.0}}), ConfigError);
  CHECK_THROWS_AS(load("cp2_fs", {{"r", 1.0}}), ConfigError);
  CHECK_THROWS_AS(default_params("nope"), ConfigError);
}

TEST_CASE("inconsistent flags are reported") {
  CatalogEntry e = load("s2xs2");
  e.flags.delta_wplus_zero = false;
  CHECK_FALSE(flag_inconsistencies(e).empty());
  CatalogEntry k = load("cp2_fs");
  k.flags.almost_kahler = false;
  CHECK_FALSE(flag_inconsistencies(k).empty());
}
