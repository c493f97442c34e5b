#include "cnbound/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace cnb {

namespace {

// Working-precision reals carry this bound.
std::string fmt(const Real& x) { return format_bounded({x, Real("1e-40")}); }

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

}  // namespace

OutputFormat parse_output_format(std::string_view text) {
  if (text == "kv") return OutputFormat::kv;
  if (text == "csv") return OutputFormat::csv;
  throw InvalidInput("unknown output format '" + std::string(text) + "' (expected kv or csv)");
}

std::string render_manifest(const RunManifest& m) {
  std::ostringstream os;
  os << "# manifest\n";
  os << "# command=" << m.command << "\n";
  os << "# version=" << CNBOUND_VERSION << "\n";
  for (const auto& [k, v] : m.config) os << "# config." << k << "=" << v << "\n";
  os << "# elapsed_seconds=" << std::fixed << std::setprecision(3) << m.seconds << "\n";
  for (const auto& [k, v] : m.counts) os << "# count." << k << "=" << v << "\n";
  return os.str();
}

std::string render_rows(const std::vector<Row>& rows, OutputFormat fmt) {
  std::ostringstream os;
  if (fmt == OutputFormat::kv) {
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? " " : "") << row[i].first << "=" << row[i].second;
      os << "\n";
    }
    return os.str();
  }
  if (rows.empty()) return {};
  for (std::size_t i = 0; i < rows[0].size(); ++i) os << (i ? "," : "") << csv_cell(rows[0][i].first);
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i].second);
    os << "\n";
  }
  return os.str();
}

std::string render_section(const std::string& title, const std::vector<Row>& rows, OutputFormat fmt) {
  return "# " + title + "\n" + render_rows(rows, fmt);
}

Row scan_record_row(const ScanRecord& r) {
  const bool has = r.report.has_value();
  return {
      {"a", r.a.get_str()},
      {"m", r.m.get_str()},
      {"n", r.n.get_str()},
      {"t", r.t.get_str()},
      {"d", r.d.get_str()},
      {"D", r.D.get_str()},
      {"u", r.Q.u.get_str()},
      {"v", r.Q.v.get_str()},
      {"w", r.Q.w.get_str()},
      {"suitable", has ? yes_no(r.report->suitable) : "na"},
      {"parity_even_rank", r.parity_even_rank ? yes_no(*r.parity_even_rank) : "na"},
      {"lower_bound", has && r.report->T_E > 0 ? format_bounded(r.report->lower_bound) : "na"},
      {"class_number_if_computed", r.class_number ? r.class_number->get_str() : "na"},
  };
}

Row scan_summary_row(const ScanConfig& c, const ScanResult& result) {
  return {
      {"X", c.X.get_str()},
      {"T", c.T.get_str()},
      {"A", c.A.get_str()},
      {"B", c.B.get_str()},
      {"h", c.h.get_str()},
      {"modulus", c.modulus.get_str()},
      {"total_count", std::to_string(result.records.size())},
      {"distinct_d_count", std::to_string(summatory_count(result.records).size())},
  };
}

Row bound_report_row(const BoundReport& r) {
  return {
      {"D", r.D.get_str()},
      {"u", r.Q.u.get_str()},
      {"v", r.Q.v.get_str()},
      {"w", r.Q.w.get_str()},
      {"T_E", fmt(r.T_E)},
      {"c_EQ", format_bounded(r.c_EQ)},
      {"c_hat", format_bounded(r.c_hat)},
      {"lower_bound", r.T_E > 0 ? format_bounded(r.lower_bound) : "na"},
      {"suitable", yes_no(r.suitable)},
      {"certified", yes_no(r.certified())},
      {"ggz_display", fmt(r.ggz)},
  };
}

Row profile_row(const CurveProfile& p) {
  Row row{
      {"curve", to_string(p.E)},
      {"rank", std::to_string(p.rank)},
      {"torsion", std::to_string(p.torsion_order)},
      {"regulator", format_bounded(p.regulator)},
      {"regulator_scale", p.scale == HeightScale::x_coordinate ? "x_coordinate" : "half"},
      {"diameter", format_bounded(p.diameter)},
      {"delta", fmt(p.delta)},
      {"omega", fmt(p.omega)},
  };
  row.emplace_back("c_E", p.rank > 0 ? format_bounded(c_E(p)) : "refused_rank_0");
  return row;
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos || eq == 0)
      throw InvalidInput("config file '" + path + "' line " + std::to_string(no) + ": expected key=value");
    out.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return out;
}

}  // namespace cnb
