#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace becthermo {

inline constexpr const char* kToolVersion = "0.1.0";

// Tabular output of a CLI command. meta carries everything needed to
// reproduce the rows bit-exactly: resolved config, quadrature spec, seed,
// tool version, and the command with its options.
struct ScanResult {
  int schema_version = 1;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  nlohmann::json meta;
};

// CSV with a leading "# meta: {...}" line; doubles printed with %.17g so
// identical runs give identical bytes.
void write_csv(const ScanResult& r, std::ostream& os);
void write_json(const ScanResult& r, std::ostream& os);

// FNV-1a over the canonical key=value rendering of a config; stored in meta
// so downstream files can be matched to the parameters that produced them.
std::string config_fingerprint(const struct PhysicalConfig& config);

std::string format_double(double v);

}  // namespace becthermo
