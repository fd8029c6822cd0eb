#include "doctest.h"

#include "curvlab/catalog.hpp"
#include "curvlab/errors.hpp"
#include "curvlab/verify.hpp"

using namespace curvlab;

namespace {

const Check* find(const VerifyReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

VerifyOptions quick() {
  VerifyOptions o;
  o.samples = 20;
  o.resolution = 8;
  return o;
}

}  // namespace

TEST_CASE("Kaehler-Einstein entry passes everything") {
  const VerifyReport r = verify_entry(load("cp2_fs"), quick());
  CHECK(r.passed());
  CHECK(r.count(CheckStatus::Fail) == 0);
  CHECK(r.count(CheckStatus::Refused) == 0);
  REQUIRE(find(r, "wplus_bound_saturation") != nullptr);
  CHECK(find(r, "wplus_bound_saturation")->status == CheckStatus::Pass);
}

TEST_CASE("flat torus passes everything") {
  CHECK(verify_entry(load("t4_flat"), quick()).passed());
}

TEST_CASE("non-Kaehler entry is observational where hypotheses are not certified") {
  const VerifyReport r = verify_entry(load("kodaira_thurston"), quick());
  CHECK(r.passed());
  REQUIRE(find(r, "s_star_consistency") != nullptr);
  CHECK(find(r, "s_star_consistency")->status == CheckStatus::Pass);
  CHECK(find(r, "cor3_identity")->status == CheckStatus::Refused);
  CHECK(find(r, "thm3_gap")->status == CheckStatus::Observational);
  CHECK(find(r, "prop2_value")->status == CheckStatus::Observational);
}

TEST_CASE("non-Einstein Kaehler entry refuses the Einstein identity") {
  const VerifyReport r = verify_entry(load("s2xs2", {{"a", 1.0}, {"b", 2.0}}), quick());
  CHECK(r.passed());
  CHECK(find(r, "thm3_equality")->status == CheckStatus::Pass);
  CHECK(find(r, "cor3_identity")->status == CheckStatus::Refused);
}

TEST_CASE("pointwise-only entries skip integrals") {
  const VerifyReport r = verify_entry(load("ch2_chart"), quick());
  CHECK(r.passed());
  CHECK_FALSE(r.integrals.has_value());
  CHECK_FALSE(r.integral_note.empty());
}

TEST_CASE("tolerances") {
  Tolerances t;
  CHECK(t.get("pointwise") == 1e-8);
  t.set("pointwise", 1e-6);
  CHECK(t.get("pointwise") == 1e-6);
  CHECK_THROWS_AS(t.set("nonsense", 1.0), ConfigError);
  CHECK_THROWS_AS(t.set("pointwise", 0.0), ConfigError);
  CHECK_THROWS_AS(t.get("nonsense"), ConfigError);
}

TEST_CASE("an impossible tolerance produces a failure, not an exception") {
  VerifyOptions o = quick();
  o.integral = false;
  o.tolerances.set("pointwise", 1e-300);
  const VerifyReport r = verify_entry(load("s2xs2", {{"a", 1.0}, {"b", 2.0}}), o);
  CHECK_FALSE(r.passed());
  CHECK(r.count(CheckStatus::Fail) > 0);
}

TEST_CASE("sample points are reproducible and inside the domain") {
  const CatalogEntry e = load("s2xs2");
  const auto a = sample_points(e.desc, 50, 4);
  const auto b = sample_points(e.desc, 50, 4);
  REQUIRE(a.size() == 50);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i] == b[i]);
    CHECK(contains(e.desc, a[i]));
  }
  CHECK(random_orthogonal(3, false).determinant() == doctest::Approx(1.0));
  CHECK(random_orthogonal(3, true).determinant() == doctest::Approx(-1.0));
}

TEST_CASE("block table of the Fubini-Study metric") {
  for (const BlockRow& row : block_table(load("cp2_fs"), 5, 2)) {
    CHECK(row.wplus_eigenvalues[0] == doctest::Approx(-2.0));
    CHECK(row.wplus_eigenvalues[1] == doctest::Approx(-2.0));
    CHECK(row.wplus_eigenvalues[2] == doctest::Approx(4.0));
    CHECK(row.wminus2 < 1e-20);
  }
  for (const BlockRow& row : block_table(load("s4_round"), 5, 2)) {
    CHECK(row.wplus2 < 1e-20);
    CHECK(row.wminus2 < 1e-20);
  }
}
