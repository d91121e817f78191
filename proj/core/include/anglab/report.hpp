#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "anglab/admissibility.hpp"
#include "anglab/kernels.hpp"
#include "anglab/nse_picard.hpp"
#include "anglab/parallel.hpp"

namespace anglab {

/// Floats serialized with 17 significant digits (exact double round-trip).
std::string fmt_double(double v);

/// SHA-256 hex digest.
std::string sha256_hex(const std::string& data);

/// Key-sorted, whitespace-free JSON; hash input for config identity.
std::string canonical_json(const nlohmann::json& j);

nlohmann::ordered_json verdict_to_json(const Verdict& v);
nlohmann::ordered_json decay_fit_to_json(const DecayFit& f);
nlohmann::ordered_json regularity_to_json(const RegularityClass& rc);

/// Row-major CSV with '#' axis-header comments.
std::string scan_to_csv(const ScanResult& r);

/// CSV trace: iteration, t, norm, ratio.
std::string picard_trace_to_csv(const PicardTrace& trace, const MonitorNorm& monitor);

struct ReportHeader {
  std::string tool_version;
  std::string config_hash;
};

/// Writes a report with a header line recording tool version and config
/// hash (no timestamps; outputs are byte-reproducible).
void write_report(const std::string& body, const std::string& path, const ReportHeader& header,
                  bool json_body);

/// Parsed and schema-validated run configuration; unknown fields rejected.
struct RunConfig {
  std::string command;
  std::optional<IndexTuple> tuple;
  nlohmann::ordered_json params;  // command-specific
  std::string output;
  long long seed = 0;

  static RunConfig from_json_text(const std::string& text);
  std::string to_json_text() const;
  std::string hash() const;
};

extern const char* kToolVersion;

}  // namespace anglab
