#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "landscape/entropy.hpp"

namespace landscape {

inline constexpr const char* kVersion = "0.1.0";

// %.17g: enough digits to round-trip any double exactly.
std::string format_double(double v);

// Everything needed to reproduce an output bit-exactly, plus run stats.
// wall_time_s is the one non-deterministic field; report files embed the
// manifest without it and the full manifest goes to a sidecar.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;  // flag -> value
  std::uint64_t seed = 0;
  std::string version = kVersion;
  double wall_time_s = 0.0;
  std::uint64_t evaluations = 0;
};

// Report JSON with fields n_hat, K, failures, minima[{y,k,x,v,q}], sigma,
// c, y_min, ce_hat, delta, intervals, manifest.  delta is null when the
// plug-in delta^2 was negative.
std::string entropy_report_json(const EntropyReport& report,
                                const RunManifest& manifest);

// Full manifest (including wall time) for the .manifest.json sidecar.
std::string manifest_json(const RunManifest& manifest);

// Manifest object without the wall-time field, for embedding in
// byte-reproducible outputs.  No trailing newline.
std::string manifest_json_embedded(const RunManifest& manifest);

// Minimal CSV writer; rows of preformatted cells.
std::string csv_table(const std::string& header,
                      const std::vector<std::vector<std::string>>& rows);

void write_file(const std::string& path, const std::string& contents);

}  // namespace landscape
