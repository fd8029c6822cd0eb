#pragma once

// Serialization of reports. JSON documents carry a schema version; CSV rows
// use a fixed column set so files from different entries concatenate.
// Numbers are written in shortest round-trip form, so output is byte-stable
// for a fixed configuration.

#include <string>
#include <vector>

#include "json.hpp"

#include "curvlab/catalog.hpp"
#include "curvlab/functionals.hpp"
#include "curvlab/verify.hpp"
#include "curvlab/weitzenboeck.hpp"

namespace curvlab {

inline constexpr const char* kReportSchema = "curvlab.report/1";

using Json = nlohmann::ordered_json;

/// Shortest decimal string that parses back to the same double.
std::string format_number(double x);

Json to_json(const Estimate& e);
Json to_json(const IntegralReport& r);
Json to_json(const Check& c);
Json to_json(const ConvergenceTable& t);
Json to_json(const BlockRow& row);
Json entry_json(const CatalogEntry& entry);

/// Wraps a payload in the versioned envelope {schema, command, entry, ...}.
Json envelope(const std::string& command, const CatalogEntry& entry);

/// Field names of the integral CSV, in column order.
const std::vector<std::string>& integral_fields();

std::string integral_csv_header();
std::string integral_csv_row(const IntegralReport& r);

std::string checks_csv_header();
std::string checks_csv_rows(const std::string& entry, const std::vector<Check>& checks);

std::string convergence_csv_header();
std::string convergence_csv_rows(const std::string& entry, const ConvergenceTable& t);

std::string blocks_csv_header();
std::string blocks_csv_rows(const std::string& entry, const std::vector<BlockRow>& rows);

}  // namespace curvlab
