#include "anglab/report.hpp"

#include <openssl/sha.h>

#include <cstdio>
#include <fstream>

namespace anglab {

const char* kToolVersion = "angular-lab 0.1.0";

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(), digest);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * SHA256_DIGEST_LENGTH);
  for (unsigned char b : digest) {
    out.push_back(hex[b >> 4]);
    out.push_back(hex[b & 0xf]);
  }
  return out;
}

std::string canonical_json(const nlohmann::json& j) { return j.dump(); }

nlohmann::ordered_json verdict_to_json(const Verdict& v) {
  nlohmann::ordered_json j;
  j["theorem"] = v.theorem_id;
  j["overall"] = to_string(v.overall);
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : v.constraints) {
    nlohmann::ordered_json cj;
    cj["id"] = c.id;
    cj["description"] = c.description;
    cj["relation"] = to_string(c.relation);
    cj["lhs"] = fmt_double(c.lhs);
    cj["rhs"] = fmt_double(c.rhs);
    cj["status"] = to_string(c.status);
    arr.push_back(cj);
  }
  j["constraints"] = arr;
  j["notes"] = v.notes;
  return j;
}

nlohmann::ordered_json decay_fit_to_json(const DecayFit& f) {
  nlohmann::ordered_json j;
  j["slope"] = fmt_double(f.slope);
  j["intercept"] = fmt_double(f.intercept);
  j["residual"] = fmt_double(f.residual);
  j["t_min"] = fmt_double(f.t_min);
  j["t_max"] = fmt_double(f.t_max);
  return j;
}

nlohmann::ordered_json regularity_to_json(const RegularityClass& rc) {
  nlohmann::ordered_json j;
  j["class"] = rc.value == RegularityClass::Global      ? "Global"
               : rc.value == RegularityClass::LocalOnly ? "LocalOnly"
                                                        : "Unknown";
  if (rc.ptilde_local_threshold) j["ptilde_L"] = fmt_double(*rc.ptilde_local_threshold);
  if (rc.ptilde_global_threshold) j["ptilde_G"] = fmt_double(*rc.ptilde_global_threshold);
  j["notes"] = rc.notes;
  return j;
}

std::string scan_to_csv(const ScanResult& r) {
  std::string out;
  out += "# checker: " + r.checker + "\n";
  for (size_t a = 0; a < r.axes.size(); ++a) {
    out += "# axis" + std::to_string(a + 1) + ": " + r.axes[a].field + " from " +
           fmt_double(r.axes[a].lo) + " to " + fmt_double(r.axes[a].hi) + " steps " +
           std::to_string(r.axes[a].steps) + "\n";
  }
  if (r.axes.size() == 1) {
    out += r.axes[0].field + ",verdict\n";
    for (size_t i = 0; i < r.grid.size(); ++i)
      out += fmt_double(r.axis_values[0][i]) + std::string(",") + to_string(r.grid[i]) + "\n";
  } else {
    out += r.axes[0].field + "," + r.axes[1].field + ",verdict\n";
    size_t cols = r.axis_values[1].size();
    for (size_t i = 0; i < r.axis_values[0].size(); ++i)
      for (size_t k = 0; k < cols; ++k)
        out += fmt_double(r.axis_values[0][i]) + std::string(",") +
               fmt_double(r.axis_values[1][k]) + "," + to_string(r.grid[i * cols + k]) + "\n";
  }
  return out;
}

std::string picard_trace_to_csv(const PicardTrace& trace, const MonitorNorm& monitor) {
  std::string out = "iteration,t,norm,ratio\n";
  // Per-time norms of the final iterate; per-iteration diff norms and ratios.
  for (size_t j = 0; j < trace.final_iterate.size(); ++j) {
    double nrm = monitor_field_norm(trace.final_iterate[j].second, monitor);
    out += std::to_string(trace.iterations) + "," + fmt_double(trace.times[j]) + "," +
           fmt_double(nrm) + ",\n";
  }
  for (size_t k = 0; k < trace.diff_norms.size(); ++k) {
    std::string ratio = k < trace.contraction_ratios.size() + 1 && k >= 1
                            ? fmt_double(trace.contraction_ratios[k - 1])
                            : "";
    out += std::to_string(k + 2) + ",," + fmt_double(trace.diff_norms[k]) + "," + ratio + "\n";
  }
  return out;
}

void write_report(const std::string& body, const std::string& path, const ReportHeader& header,
                  bool json_body) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  if (json_body) {
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(body);
    nlohmann::ordered_json wrapped;
    wrapped["tool"] = header.tool_version;
    wrapped["config_hash"] = header.config_hash;
    wrapped["result"] = j;
    os << wrapped.dump(2) << "\n";
  } else {
    os << "# tool: " << header.tool_version << "\n";
    os << "# config_hash: " << header.config_hash << "\n";
    os << body;
  }
}

RunConfig RunConfig::from_json_text(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw config_error(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw config_error("config: expected a JSON object");
  RunConfig c;
  for (auto& [key, val] : j.items()) {
    if (key == "command") c.command = val.get<std::string>();
    else if (key == "tuple") c.tuple = IndexTuple::from_json_text(val.dump());
    else if (key == "params") {
      if (!val.is_object()) throw config_error("config: params must be an object");
      c.params = val;
    } else if (key == "output") c.output = val.get<std::string>();
    else if (key == "seed") c.seed = val.get<long long>();
    else throw config_error("config: unknown field '" + key + "'");
  }
  if (c.command.empty()) throw config_error("config: missing command");
  return c;
}

std::string RunConfig::to_json_text() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  if (tuple) j["tuple"] = nlohmann::ordered_json::parse(tuple->to_json_text());
  if (!params.is_null() && !params.empty()) j["params"] = params;
  if (!output.empty()) j["output"] = output;
  j["seed"] = seed;
  return j.dump();
}

std::string RunConfig::hash() const {
  return sha256_hex(canonical_json(nlohmann::json::parse(to_json_text())));
}

}  // namespace anglab
