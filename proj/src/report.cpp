#include "curvlab/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace curvlab {

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

Json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

Json to_json(const Estimate& e) {
  Json j;
  j["value"] = number(e.value);
  j["error"] = number(e.error);
  j["provenance"] = e.provenance;
  j["resolution"] = e.resolution;
  if (e.coarse_value) {
    j["coarse_value"] = number(*e.coarse_value);
    j["coarse_resolution"] = e.coarse_resolution;
  } else {
    j["coarse_value"] = nullptr;
    j["coarse_resolution"] = nullptr;
  }
  return j;
}

Json to_json(const IntegralReport& r) {
  Json j;
  j["scheme"] = to_string(r.kind);
  j["resolution"] = r.resolution;
  j["coarse_resolution"] = r.coarse_resolution;
  j["volume"] = to_json(r.volume);
  Json fields = Json::object();
  for (const auto& [name, e] : r.fields) fields[name] = to_json(e);
  j["fields"] = fields;
  Json refusals = Json::array();
  for (const auto& [name, why] : r.refusals) refusals.push_back({{"quantity", name}, {"reason", why}});
  j["refusals"] = refusals;
  return j;
}

Json to_json(const Check& c) {
  Json j;
  j["name"] = c.name;
  j["section"] = c.section;
  j["status"] = to_string(c.status);
  j["value"] = number(c.value);
  j["tolerance"] = number(c.tolerance);
  j["detail"] = c.detail;
  return j;
}

Json to_json(const ConvergenceTable& t) {
  Json j;
  j["field"] = t.field;
  Json levels = Json::array();
  for (const auto& l : t.levels) {
    levels.push_back({{"n", l.n},
                      {"h", number(l.result.h)},
                      {"residual", number(l.result.residual)},
                      {"curvature_term", number(l.result.max_curvature_term)},
                      {"max_alpha", number(l.result.max_alpha)},
                      {"evaluated_nodes", l.result.evaluated_nodes}});
  }
  j["levels"] = levels;
  j["rounding_floor"] = number(t.floor);
  if (t.exact) {
    j["order"] = "exact";
  } else if (t.order) {
    j["order"] = number(*t.order);
  } else {
    j["order"] = nullptr;
  }
  return j;
}

Json to_json(const BlockRow& row) {
  Json j;
  j["point"] = {row.point[0], row.point[1], row.point[2], row.point[3]};
  j["wplus_eigenvalues"] = {row.wplus_eigenvalues[0], row.wplus_eigenvalues[1], row.wplus_eigenvalues[2]};
  j["scalar"] = number(row.scalar);
  j["ric0_norm2"] = number(row.ric0_2);
  j["wplus_norm2"] = number(row.wplus2);
  j["wminus_norm2"] = number(row.wminus2);
  return j;
}

Json entry_json(const CatalogEntry& entry) {
  Json j;
  j["id"] = entry.id;
  Json params = Json::object();
  for (const auto& [k, v] : entry.params) params[k] = v;  // std::map: sorted keys
  j["params"] = params;
  j["flags"] = {{"almost_kahler", entry.flags.almost_kahler}, {"kahler", entry.flags.kahler},
                {"einstein", entry.flags.einstein},           {"constant_s", entry.flags.constant_s},
                {"delta_wplus_zero", entry.flags.delta_wplus_zero},
                {"delta_wplus_justification", entry.flags.delta_wplus_justification},
                {"self_dual", entry.flags.self_dual}};
  j["pointwise_only"] = entry.pointwise_only;
  if (entry.topology) {
    j["topology"] = {{"chi", entry.topology->chi},
                     {"tau", entry.topology->tau},
                     {"c1_squared", entry.topology->c1_squared()}};
  } else {
    j["topology"] = nullptr;
  }
  if (entry.volume) {
    j["volume"] = {{"pi_coefficient", entry.volume->coefficient},
                   {"pi_power", entry.volume->power},
                   {"value", entry.volume->value()}};
  } else {
    j["volume"] = nullptr;
  }
  return j;
}

Json envelope(const std::string& command, const CatalogEntry& entry) {
  Json j;
  j["schema"] = kReportSchema;
  j["command"] = command;
  j["entry"] = entry_json(entry);
  return j;
}

const std::vector<std::string>& integral_fields() {
  static const std::vector<std::string> fields = {
      "chi",       "tau",       "chi_minus_3tau_integral", "int_s",          "int_s2",
      "int_wplus2", "int_wminus2", "thm3_gap",             "c1_squared_topological", "wplus_topological_bound",
      "s2_topological_value", "c1_dot_omega", "c1_squared_blair", "prop1_lhs",     "prop1_rhs",
      "prop2_value", "cor3_lhs",  "cor3_rhs"};
  return fields;
}

std::string integral_csv_header() {
  std::string out = "entry,scheme,resolution,coarse_resolution,volume,volume_error";
  for (const auto& f : integral_fields()) out += "," + f + "," + f + "_error," + f + "_provenance";
  return out + "\n";
}

std::string integral_csv_row(const IntegralReport& r) {
  std::ostringstream os;
  os << csv_escape(r.entry) << ',' << to_string(r.kind) << ',' << r.resolution << ',' << r.coarse_resolution << ','
     << format_number(r.volume.value) << ',' << format_number(r.volume.error);
  for (const auto& f : integral_fields()) {
    if (const Estimate* e = r.find(f)) {
      os << ',' << format_number(e->value) << ',' << format_number(e->error) << ',' << e->provenance;
    } else {
      os << ",,,";
    }
  }
  os << '\n';
  return os.str();
}

std::string checks_csv_header() { return "entry,section,name,status,value,tolerance,detail\n"; }

std::string checks_csv_rows(const std::string& entry, const std::vector<Check>& checks) {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << csv_escape(entry) << ',' << c.section << ',' << c.name << ',' << to_string(c.status) << ','
       << format_number(c.value) << ',' << format_number(c.tolerance) << ',' << csv_escape(c.detail) << '\n';
  }
  return os.str();
}

std::string convergence_csv_header() { return "entry,field,n,h,residual,curvature_term,evaluated_nodes,order\n"; }

std::string convergence_csv_rows(const std::string& entry, const ConvergenceTable& t) {
  const std::string order = t.exact ? "exact" : (t.order ? format_number(*t.order) : "");
  std::ostringstream os;
  for (const auto& l : t.levels) {
    os << csv_escape(entry) << ',' << t.field << ',' << l.n << ',' << format_number(l.result.h) << ','
       << format_number(l.result.residual) << ',' << format_number(l.result.max_curvature_term) << ','
       << l.result.evaluated_nodes << ',' << order << '\n';
  }
  return os.str();
}

std::string blocks_csv_header() {
  return "entry,x1,x2,x3,x4,wplus_ev1,wplus_ev2,wplus_ev3,scalar,ric0_norm2,wplus_norm2,wminus_norm2\n";
}

std::string blocks_csv_rows(const std::string& entry, const std::vector<BlockRow>& rows) {
  std::ostringstream os;
  for (const auto& r : rows) {
    os << csv_escape(entry);
    for (int a = 0; a < 4; ++a) os << ',' << format_number(r.point[a]);
    for (int a = 0; a < 3; ++a) os << ',' << format_number(r.wplus_eigenvalues[a]);
    os << ',' << format_number(r.scalar) << ',' << format_number(r.ric0_2) << ',' << format_number(r.wplus2) << ','
       << format_number(r.wminus2) << '\n';
  }
  return os.str();
}

}  // namespace curvlab
