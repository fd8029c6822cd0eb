#include <charconv>
#include <random>
#include <sstream>

#include "doctest.h"

#include "curvlab/catalog.hpp"
#include "curvlab/report.hpp"

using namespace curvlab;

namespace {

std::size_t columns(const std::string& line) {
  std::size_t n = 1;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') quoted = !quoted;
    if (c == ',' && !quoted) ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("numbers round-trip exactly") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int t = 0; t < 1000; ++t) {
    const double x = u(rng) * std::pow(10.0, t % 20 - 10);
    const std::string s = format_number(x);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == x);
  }
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(3.0) == "3");
}

TEST_CASE("envelope carries the schema version and entry data") {
  const CatalogEntry e = load("cp2_fs");
  const Json j = envelope("verify", e);
  CHECK(j["schema"] == "curvlab.report/1");
  CHECK(j["command"] == "verify");
  CHECK(j["entry"]["id"] == "cp2_fs");
  CHECK(j["entry"]["topology"]["c1_squared"] == 9.0);
  CHECK(j["entry"]["flags"]["kahler"] == true);
  CHECK(load("h4_hyperbolic").pointwise_only);
  CHECK(envelope("decompose", load("h4_hyperbolic"))["entry"]["topology"].is_null());
}

TEST_CASE("integral report serialises deterministically") {
  const CatalogEntry e = load("cp2_fs");
  const IntegralReport r = integral_report(e, 8);
  const std::string a = to_json(r).dump(2);
  const std::string b = to_json(integral_report(e, 8)).dump(2);
  CHECK(a == b);
  const Json j = to_json(r);
  CHECK(j["scheme"] == "homogeneous_shortcut");
  CHECK(j["fields"]["chi"]["provenance"] == "homogeneous_shortcut");
  CHECK(j["fields"].contains("prop1_lhs"));
}

TEST_CASE("CSV rows match the header") {
  const CatalogEntry kt = load("kodaira_thurston");
  const IntegralReport r = integral_report(kt, 8);
  CHECK(columns(integral_csv_header()) == columns(integral_csv_row(r)));
  std::vector<Check> checks = {{"x", "pointwise", CheckStatus::Pass, 1e-12, 1e-8, "detail, with comma"}};
  const std::string rows = checks_csv_rows("kodaira_thurston", checks);
  CHECK(columns(checks_csv_header()) == columns(rows));
  CHECK(rows.find("\"detail, with comma\"") != std::string::npos);
  const auto blocks = block_table(load("cp2_fs"), 3, 1);
  std::istringstream in(blocks_csv_rows("cp2_fs", blocks));
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    CHECK(columns(line) == columns(blocks_csv_header()));
    ++n;
  }
  CHECK(n == 3);
}

TEST_CASE("convergence tables serialise the order") {
  ConvergenceTable t;
  t.field = "constant";
  t.exact = true;
  t.levels.push_back({8, {}});
  CHECK(to_json(t)["order"] == "exact");
  t.exact = false;
  t.order = 2.0;
  CHECK(to_json(t)["order"] == 2.0);
  CHECK(convergence_csv_rows("t4_flat", t).find(",2\n") != std::string::npos);
}
