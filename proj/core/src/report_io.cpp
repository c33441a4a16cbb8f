#include "landscape/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace landscape {

std::string format_double(double v) {
  if (std::isnan(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

void append_manifest_body(std::ostringstream& os, const RunManifest& m,
                          bool with_wall_time) {
  os << "{\"command\":\"" << json_escape(m.command) << "\",\"config\":{";
  for (std::size_t i = 0; i < m.config.size(); ++i) {
    if (i) os << ",";
    os << "\"" << json_escape(m.config[i].first) << "\":\""
       << json_escape(m.config[i].second) << "\"";
  }
  os << "},\"seed\":" << m.seed;
  os << ",\"version\":\"" << json_escape(m.version) << "\"";
  if (with_wall_time) os << ",\"wall_time_s\":" << format_double(m.wall_time_s);
  os << ",\"evaluations\":" << m.evaluations << "}";
}

}  // namespace

std::string entropy_report_json(const EntropyReport& rep,
                                const RunManifest& manifest) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"n_hat\": " << rep.n_hat << ",\n";
  os << "  \"K\": " << rep.population << ",\n";
  os << "  \"failures\": " << rep.failures << ",\n";
  os << "  \"minima\": [\n";
  for (int i = 0; i < rep.n_hat; ++i) {
    os << "    {\"y\": " << format_double(rep.values[i])
       << ", \"k\": " << rep.counts[i]
       << ", \"x\": " << format_double(rep.x[i])
       << ", \"v\": " << format_double(rep.v[i])
       << ", \"q\": " << format_double(rep.q_hat[i]) << "}"
       << (i + 1 < rep.n_hat ? "," : "") << "\n";
  }
  os << "  ],\n";
  os << "  \"sigma\": " << format_double(rep.sigma) << ",\n";
  os << "  \"c\": " << format_double(rep.c) << ",\n";
  os << "  \"y_min\": " << format_double(rep.y_min) << ",\n";
  os << "  \"ce_hat\": " << format_double(rep.ce_hat) << ",\n";
  if (rep.delta_valid) {
    os << "  \"delta\": " << format_double(rep.delta) << ",\n";
  } else {
    os << "  \"delta\": null,\n";
  }
  os << "  \"intervals\": {";
  {
    bool first = true;
    for (const auto& [level, hw] : rep.intervals) {
      if (!first) os << ", ";
      first = false;
      os << "\"" << level << "\": " << format_double(hw);
    }
  }
  os << "},\n";
  os << "  \"manifest\": ";
  append_manifest_body(os, manifest, /*with_wall_time=*/false);
  os << "\n}\n";
  return os.str();
}

std::string manifest_json(const RunManifest& m) {
  std::ostringstream os;
  append_manifest_body(os, m, /*with_wall_time=*/true);
  os << "\n";
  return os.str();
}

std::string manifest_json_embedded(const RunManifest& m) {
  std::ostringstream os;
  append_manifest_body(os, m, /*with_wall_time=*/false);
  return os.str();
}

std::string csv_table(const std::string& header,
                      const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream os;
  os << header << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ",";
      os << row[i];
    }
    os << "\n";
  }
  return os.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace landscape
