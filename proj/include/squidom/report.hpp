#pragma once

// Report container and its deterministic serialization. Floating-point values
// are written with 17 significant digits; non-finite values become JSON null
// and "nan"/"inf" in CSV.

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "squidom/device_model.hpp"

namespace squidom {

using Cell = std::variant<double, std::string>;

struct Report {
  std::string scenario;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  std::string input_digest;  // FNV-1a 64 of the canonical inputs text
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  nlohmann::ordered_json provenance = nlohmann::ordered_json::object();
  std::vector<std::string> warnings;

  /// Sets inputs and recomputes the digest.
  void set_inputs(nlohmann::ordered_json in);
  std::size_t column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
  const std::string& text(std::size_t row, const std::string& name) const;
};

std::string format_number(double v);

/// Canonical JSON text. indent < 0 gives the compact form used for digests.
std::string json_text(const nlohmann::ordered_json& j, int indent = 2);

/// 16 hex digits.
std::string fnv1a_hex(std::string_view text);
std::string digest(const nlohmann::ordered_json& j);

nlohmann::ordered_json to_json(const Report& r);
Report report_from_json(const nlohmann::ordered_json& j);
std::string csv_text(const Report& r);

/// Device block in I/O units (Hz, SI, flux in Phi_0), nested by dotted path.
nlohmann::ordered_json device_to_json(const DeviceParameters& device);

void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace squidom
