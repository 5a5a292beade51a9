#include "squidom/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "squidom/parameters.hpp"

namespace squidom {

using nlohmann::ordered_json;

void Report::set_inputs(ordered_json in) {
  inputs = std::move(in);
  input_digest = digest(inputs);
}

std::size_t Report::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  throw std::out_of_range("report has no column " + name);
}

double Report::number(std::size_t row, const std::string& name) const {
  return std::get<double>(rows.at(row).at(column(name)));
}

const std::string& Report::text(std::size_t row, const std::string& name) const {
  return std::get<std::string>(rows.at(row).at(column(name)));
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

namespace {

void emit(const ordered_json& j, int indent, int depth, std::string& out) {
  const bool pretty = indent >= 0;
  auto newline = [&](int d) {
    if (!pretty) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case ordered_json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += ordered_json(k).dump();
        out += pretty ? ": " : ":";
        emit(v, indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case ordered_json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // arrays of scalars stay on one line
      bool flat = true;
      for (const auto& v : j) flat = flat && !v.is_structured();
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += pretty && flat ? ", " : ",";
        if (!flat) newline(depth + 1);
        emit(j[i], indent, depth + 1, out);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case ordered_json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_number(v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

ordered_json cell_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return *d;
  return std::get<std::string>(c);
}

std::string csv_field(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

}  // namespace

std::string json_text(const ordered_json& j, int indent) {
  std::string out;
  emit(j, indent, 0, out);
  if (indent >= 0) out += '\n';
  return out;
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string digest(const ordered_json& j) { return fnv1a_hex(json_text(j, -1)); }

ordered_json to_json(const Report& r) {
  ordered_json j;
  j["scenario"] = r.scenario;
  j["input_digest"] = r.input_digest;
  j["inputs"] = r.inputs;
  j["summary"] = r.summary;
  j["provenance"] = r.provenance;
  j["warnings"] = r.warnings;
  j["columns"] = r.columns;
  ordered_json rows = ordered_json::array();
  for (const auto& row : r.rows) {
    ordered_json jr = ordered_json::array();
    for (const auto& c : row) jr.push_back(cell_json(c));
    rows.push_back(std::move(jr));
  }
  j["rows"] = std::move(rows);
  return j;
}

Report report_from_json(const ordered_json& j) {
  Report r;
  r.scenario = j.at("scenario").get<std::string>();
  r.input_digest = j.at("input_digest").get<std::string>();
  r.inputs = j.at("inputs");
  r.summary = j.at("summary");
  r.provenance = j.at("provenance");
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  r.columns = j.at("columns").get<std::vector<std::string>>();
  for (const auto& jr : j.at("rows")) {
    std::vector<Cell> row;
    for (const auto& c : jr) {
      if (c.is_string())
        row.emplace_back(c.get<std::string>());
      else if (c.is_null())
        row.emplace_back(std::numeric_limits<double>::quiet_NaN());
      else
        row.emplace_back(c.get<double>());
    }
    r.rows.push_back(std::move(row));
  }
  return r;
}

std::string csv_text(const Report& r) {
  std::string out;
  for (std::size_t i = 0; i < r.columns.size(); ++i) out += (i ? "," : "") + csv_field(r.columns[i]);
  out += '\n';
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_field(row[i]);
    out += '\n';
  }
  return out;
}

ordered_json device_to_json(const DeviceParameters& device) {
  ordered_json j = ordered_json::object();
  for (const auto& f : parameter_fields()) {
    const std::string path(f.path);
    const double v = f.get(device) * f.io_scale();
    const auto dot = path.find('.');
    if (dot == std::string::npos)
      j[path] = v;
    else
      j[path.substr(0, dot)][path.substr(dot + 1)] = v;
  }
  return j;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace squidom
