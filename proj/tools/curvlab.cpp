// curvlab: block tables, verification reports and Weitzenboeck convergence
// tables for the built-in catalog.
//
// Exit codes: 0 success, 1 a certified check failed, 2 configuration error,
// 3 numerical/engine error.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "curvlab/catalog.hpp"
#include "curvlab/errors.hpp"
#include "curvlab/functionals.hpp"
#include "curvlab/report.hpp"
#include "curvlab/verify.hpp"
#include "curvlab/weitzenboeck.hpp"

namespace {

using namespace curvlab;

struct RunConfig {
  std::string entry;
  std::vector<std::string> params;
  std::string resolutions = "8,12,16";
  std::string sections = "all";
  std::string out;
  std::vector<std::string> tolerances;
  std::string format = "text";
  std::string field;
  int samples = 0;  // 0: command default
  std::uint64_t seed = 1;
  bool serial = false;
  bool no_shortcut = false;
};

std::pair<std::string, std::string> split_key_value(const std::string& s, const char* what) {
  const auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError(std::string("expected ") + what + " as key=value, got '" + s + "'");
  return {s.substr(0, eq), s.substr(eq + 1)};
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse " + what + " value '" + s + "'");
  }
}

std::vector<int> parse_resolutions(const std::string& list) {
  std::vector<int> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const double v = parse_double(item, "resolution");
    if (v < 1 || v != static_cast<int>(v)) throw ConfigError("resolutions must be positive integers");
    out.push_back(static_cast<int>(v));
  }
  if (out.empty()) throw ConfigError("at least one resolution is required");
  return out;
}

struct Sections {
  bool pointwise = false, integral = false, weitzenboeck = false;
};

Sections parse_sections(const std::string& list) {
  Sections s;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "all") {
      s = {true, true, true};
    } else if (item == "pointwise") {
      s.pointwise = true;
    } else if (item == "integral") {
      s.integral = true;
    } else if (item == "weitzenboeck") {
      s.weitzenboeck = true;
    } else {
      throw ConfigError("unknown section '" + item + "' (pointwise, integral, weitzenboeck, all)");
    }
  }
  return s;
}

CatalogEntry load_entry(const RunConfig& cfg) {
  if (cfg.entry.empty()) throw ConfigError("--entry is required");
  std::map<std::string, double> params;
  for (const auto& p : cfg.params) {
    const auto [k, v] = split_key_value(p, "--param");
    params[k] = parse_double(v, "parameter '" + k + "'");
  }
  return load(cfg.entry, params);
}

Tolerances load_tolerances(const RunConfig& cfg) {
  Tolerances tol;
  for (const auto& t : cfg.tolerances) {
    const auto [k, v] = split_key_value(t, "--tol");
    tol.set(k, parse_double(v, "tolerance '" + k + "'"));
  }
  return tol;
}

Execution execution_of(const RunConfig& cfg) { return cfg.serial ? Execution::Serial : Execution::Parallel; }

/// Writes JSON and CSV to --out (if given) and the requested format to stdout.
void emit(const RunConfig& cfg, const std::string& stem, const Json& json, const std::string& csv,
          const std::string& text) {
  const std::string dumped = json.dump(2) + "\n";
  if (!cfg.out.empty()) {
    std::filesystem::create_directories(cfg.out);
    std::ofstream(std::filesystem::path(cfg.out) / (stem + ".json"), std::ios::binary) << dumped;
    std::ofstream(std::filesystem::path(cfg.out) / (stem + ".csv"), std::ios::binary) << csv;
  }
  if (cfg.format == "json") {
    std::cout << dumped;
  } else if (cfg.format == "csv") {
    std::cout << csv;
  } else {
    std::cout << text;
  }
}

std::string fixed(double x, int precision = 6) {
  std::ostringstream os;
  os << std::setprecision(precision) << x;
  return os.str();
}

int cmd_decompose(const RunConfig& cfg) {
  const CatalogEntry entry = load_entry(cfg);
  const int samples = cfg.samples > 0 ? cfg.samples : 5;
  const auto rows = block_table(entry, samples, cfg.seed);

  Json json = envelope("decompose", entry);
  json["config"] = {{"samples", samples}, {"seed", cfg.seed}};
  Json list = Json::array();
  for (const auto& r : rows) list.push_back(to_json(r));
  json["rows"] = list;

  std::ostringstream text;
  text << "entry " << entry.id << ": curvature blocks at " << samples << " sampled points\n";
  text << std::left << std::setw(44) << "point" << std::setw(36) << "W+ eigenvalues" << std::setw(14) << "s"
       << std::setw(14) << "|ric0|^2" << std::setw(14) << "|W+|^2" << "|W-|^2\n";
  for (const auto& r : rows) {
    std::ostringstream p, ev;
    p << '(' << fixed(r.point[0], 4) << ", " << fixed(r.point[1], 4) << ", " << fixed(r.point[2], 4) << ", "
      << fixed(r.point[3], 4) << ')';
    ev << fixed(r.wplus_eigenvalues[0]) << ' ' << fixed(r.wplus_eigenvalues[1]) << ' '
       << fixed(r.wplus_eigenvalues[2]);
    text << std::left << std::setw(44) << p.str() << std::setw(36) << ev.str() << std::setw(14) << fixed(r.scalar)
         << std::setw(14) << fixed(r.ric0_2) << std::setw(14) << fixed(r.wplus2) << fixed(r.wminus2) << '\n';
  }
  emit(cfg, "decompose_" + entry.id, json, blocks_csv_header() + blocks_csv_rows(entry.id, rows), text.str());
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  const CatalogEntry entry = load_entry(cfg);
  const Sections sections = parse_sections(cfg.sections);
  const std::vector<int> resolutions = parse_resolutions(cfg.resolutions);

  VerifyOptions options;
  options.samples = cfg.samples > 0 ? cfg.samples : 100;
  options.seed = cfg.seed;
  options.resolution = *std::max_element(resolutions.begin(), resolutions.end());
  options.pointwise = sections.pointwise;
  options.integral = sections.integral;
  options.weitzenboeck = sections.weitzenboeck;
  if (resolutions.size() >= 3) options.weitzenboeck_resolutions = resolutions;
  options.report.execution = execution_of(cfg);
  options.report.use_shortcut = !cfg.no_shortcut;
  options.tolerances = load_tolerances(cfg);
  const VerifyReport report = verify_entry(entry, options);

  Json json = envelope("verify", entry);
  Json tol = Json::object();
  for (const auto& [k, v] : options.tolerances.all()) tol[k] = v;
  json["config"] = {{"sections", cfg.sections},       {"resolution", options.resolution},
                    {"samples", options.samples},     {"seed", options.seed},
                    {"shortcut", !cfg.no_shortcut},   {"tolerances", tol}};
  Json checks = Json::array();
  for (const auto& c : report.checks) checks.push_back(to_json(c));
  json["checks"] = checks;
  json["integrals"] = report.integrals ? to_json(*report.integrals) : Json(nullptr);
  if (!report.integral_note.empty()) json["integral_note"] = report.integral_note;
  Json conv = Json::array();
  for (const auto& t : report.convergence) conv.push_back(to_json(t));
  json["convergence"] = conv;
  json["summary"] = {{"pass", report.count(CheckStatus::Pass)},
                     {"fail", report.count(CheckStatus::Fail)},
                     {"refused", report.count(CheckStatus::Refused)},
                     {"observational", report.count(CheckStatus::Observational)},
                     {"ok", report.passed()}};

  std::string csv = checks_csv_header() + checks_csv_rows(entry.id, report.checks);
  if (report.integrals) csv += "\n" + integral_csv_header() + integral_csv_row(*report.integrals);

  std::ostringstream text;
  text << "entry " << entry.id << '\n';
  for (const auto& c : report.checks) {
    text << "  [" << std::left << std::setw(13) << to_string(c.status) << "] " << std::setw(10) << c.section
         << std::setw(44) << c.name << fixed(c.value, 6);
    if (c.tolerance > 0.0) text << " (tol " << fixed(c.tolerance, 3) << ')';
    if (!c.detail.empty()) text << "  " << c.detail;
    text << '\n';
  }
  if (report.integrals) {
    const IntegralReport& r = *report.integrals;
    text << "integrals (" << to_string(r.kind) << ", resolution " << r.resolution << ")\n";
    for (const auto& [name, e] : r.fields) {
      text << "  " << std::left << std::setw(26) << name << std::setw(24) << fixed(e.value, 15) << "+- "
           << fixed(e.error, 3) << "  " << e.provenance << '\n';
    }
    for (const auto& [name, why] : r.refusals) text << "  " << name << " refused: " << why << '\n';
  }
  if (!report.integral_note.empty()) text << report.integral_note << '\n';
  text << (report.passed() ? "verify: all certified checks passed\n" : "verify: FAILED\n");
  emit(cfg, "verify_" + entry.id, json, csv, text.str());
  return report.passed() ? 0 : 1;
}

int cmd_converge(const RunConfig& cfg) {
  const CatalogEntry entry = load_entry(cfg);
  const std::vector<int> resolutions = parse_resolutions(cfg.resolutions);
  std::string field = cfg.field;
  if (field.empty()) field = entry.j && entry.id != "t4_flat" ? "omega" : "bump";
  const ConvergenceTable table = weitzenboeck_convergence(entry, field, resolutions, execution_of(cfg));

  Json json = envelope("converge", entry);
  json["config"] = {{"resolutions", resolutions}, {"field", field}};
  json["table"] = to_json(table);

  std::ostringstream text;
  text << "entry " << entry.id << ", field " << field << '\n';
  text << std::left << std::setw(6) << "n" << std::setw(16) << "h" << std::setw(16) << "residual" << "curvature term\n";
  for (const auto& l : table.levels) {
    text << std::left << std::setw(6) << l.n << std::setw(16) << fixed(l.result.h) << std::setw(16)
         << fixed(l.result.residual) << fixed(l.result.max_curvature_term) << '\n';
  }
  text << "fitted order: " << (table.exact ? "exact" : (table.order ? fixed(*table.order, 4) : "n/a")) << '\n';
  emit(cfg, "converge_" + entry.id + "_" + field, json,
       convergence_csv_header() + convergence_csv_rows(entry.id, table), text.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"curvlab: curvature algebra of 4-manifolds on an explicit catalog"};
  app.set_config("--config", "", "TOML/INI file with the same keys as the flags; flags win");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--entry", cfg.entry, "catalog id: " + [] {
    std::string ids;
    for (const auto& id : catalog_ids()) ids += (ids.empty() ? "" : ", ") + id;
    return ids;
  }());
  app.add_option("--param", cfg.params, "entry parameter k=v (repeatable)");
  app.add_option("--resolutions", cfg.resolutions, "comma-separated resolution levels")->capture_default_str();
  app.add_option("--sections", cfg.sections, "pointwise,integral,weitzenboeck or all")->capture_default_str();
  app.add_option("--out", cfg.out, "directory for JSON and CSV output");
  app.add_option("--tol", cfg.tolerances, "tolerance override name=value (repeatable)");
  app.add_option("--format", cfg.format, "stdout format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  app.add_option("--field", cfg.field, "Weitzenboeck test field: bump, constant or omega");
  app.add_option("--samples", cfg.samples, "number of sampled points");
  app.add_option("--seed", cfg.seed, "seed for sampled points")->capture_default_str();
  app.add_flag("--serial", cfg.serial, "use the serial reference kernels");
  app.add_flag("--no-shortcut", cfg.no_shortcut, "integrate homogeneous entries by node quadrature");

  auto* decompose = app.add_subcommand("decompose", "curvature block table at sampled points");
  auto* verify = app.add_subcommand("verify", "pointwise, integral and Weitzenboeck checks");
  auto* converge = app.add_subcommand("converge", "Weitzenboeck residual against resolution");
  for (auto* sub : {decompose, verify, converge}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*decompose) return cmd_decompose(cfg);
    if (*verify) return cmd_verify(cfg);
    return cmd_converge(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const HypothesisViolation& e) {
    std::cerr << "hypothesis violation: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
