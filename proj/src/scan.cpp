#include "becthermo/scan.hpp"

#include <cstdint>
#include <cstdio>
#include <ostream>

#include "becthermo/params.hpp"

namespace becthermo {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const ScanResult& r, std::ostream& os) {
  os << "# meta: " << r.meta.dump() << "\n";
  for (std::size_t i = 0; i < r.columns.size(); ++i) {
    os << (i ? "," : "") << r.columns[i];
  }
  os << "\n";
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? "," : "") << format_double(row[i]);
    }
    os << "\n";
  }
}

void write_json(const ScanResult& r, std::ostream& os) {
  nlohmann::json j;
  j["schema_version"] = r.schema_version;
  j["meta"] = r.meta;
  j["columns"] = r.columns;
  j["rows"] = r.rows;
  os << j.dump(2) << "\n";
}

std::string config_fingerprint(const PhysicalConfig& config) {
  std::string canon;
  const auto append = [&](const char* key, double v) {
    canon += key;
    canon += '=';
    canon += format_double(v);
    canon += ';';
  };
  append("m_A_kg", config.m_A);
  append("m_B_kg", config.m_B);
  append("omega_B_rad_s", config.omega_B);
  append("n_per_m", config.n);
  append("a_B_m", config.a_B);
  append("a_AB_m", config.a_AB);
  append("sigma", config.sigma);

  // FNV-1a 64
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace becthermo
