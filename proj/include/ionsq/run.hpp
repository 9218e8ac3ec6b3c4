// run.hpp — executes a validated config and renders the machine-readable
// reports (deterministic JSON, plus a CSV table for sweeps).
#pragma once

#include "ionsq/config.hpp"

#include <json.hpp>

namespace ionsq {

using Json = nlohmann::ordered_json;

struct RunOutcome {
  Json report;
  std::string csv;  // nonempty only for sweep runs with csv format
};

// Runs the configured command. Deterministic: identical configs produce
// byte-identical reports. Wall-clock timings are logged separately by the
// CLI, never placed in the report.
RunOutcome run(const ProtocolConfig& cfg);

// Serializes the report exactly as written to disk.
std::string render_report(const Json& report);

// Writes atomically (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& content);

Json error_object(const Error& err);

}  // namespace ionsq
