#pragma once

#include "cnbound/bounds.hpp"
#include "cnbound/scan.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace cnb {

enum class OutputFormat { kv, csv };
OutputFormat parse_output_format(std::string_view text);

/// One output record: ordered (field, value) pairs.
using Row = std::vector<std::pair<std::string, std::string>>;

/// Header of every output. Lines start with "# " so the record section can be
/// compared across runs by dropping them.
struct RunManifest {
  std::string command;
  Row config;
  double seconds = 0;
  Row counts;
};
std::string render_manifest(const RunManifest& m);

/// kv: one "k=v k=v ..." line per row. csv: a header line, then one line per
/// row; cells holding commas or quotes are quoted. Rows must share fields.
std::string render_rows(const std::vector<Row>& rows, OutputFormat fmt);
/// A titled section: "# <title>" followed by render_rows.
std::string render_section(const std::string& title, const std::vector<Row>& rows, OutputFormat fmt);

Row scan_record_row(const ScanRecord& r);
Row scan_summary_row(const ScanConfig& c, const ScanResult& result);
Row bound_report_row(const BoundReport& r);
Row profile_row(const CurveProfile& p);

/// "key=value" lines; blank lines and lines starting with '#' are skipped.
/// Keys may repeat (e.g. several points), so order is kept.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

}  // namespace cnb
