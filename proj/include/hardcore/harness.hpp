#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hardcore/ensemble.hpp"

namespace hardcore {

// Malformed configuration; maps to exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvariant = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  std::string subcommand;
  int d = 2;
  int M = 2;
  std::vector<std::string> lambdas;  // raw text; p/q for exact work, decimals for sampling
  std::optional<std::vector<int>> v0;
  std::optional<Boundary> boundary;
  std::uint64_t seed = 1;
  std::uint64_t sweeps = 1100000;
  std::uint64_t burn_in = 100000;
  std::optional<std::size_t> tau;
  bool force_large = false;
  std::optional<double> psi;
  std::size_t budget = kDefaultEnumerationBudget;
  std::size_t samples = 0;  // 0 means exhaustive where an audit supports it
  int r_max = 8;
  std::string out;    // empty writes to stdout
  int threads = 0;    // 0 keeps the OpenMP default
  std::string file;   // failure artifact for replay
  std::string source = "contours";  // approx-audit: contours (from J0) or pairs (every pair with v0 ∈ A and W ∩ Δ = ∅)
  // Restricts contour-audit and approx-audit to these hex instances; set by replay only.
  std::vector<std::string> instances;

  // Every key that affects results; out and threads are excluded.
  nlohmann::json to_json() const;
  // FNV-1a over to_json().dump().
  std::uint64_t hash() const;
};

// Applies one key=value assignment. Throws UsageError on unknown keys or bad values.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);
// Applies every key of a JSON object, numbers and booleans converted to text first.
void apply_json(RunConfig& cfg, const nlohmann::json& obj);
// argv[1] is the subcommand, the rest key=value; config=file.json is read first, later keys override it.
RunConfig parse_args(int argc, const char* const* argv);
// Rejects inconsistent settings; called by run() before dispatch.
void validate(const RunConfig& cfg);

const std::vector<std::string>& subcommands();
std::string usage();

// Header block shared by every artifact.
nlohmann::json header_json(const RunConfig& cfg);
std::string csv_header_block(const RunConfig& cfg);
std::string hex64(std::uint64_t x);

struct Artifact {
  std::string suffix;  // appended to cfg.out; empty for the primary artifact
  std::string text;
};

struct RunResult {
  int status = kExitOk;
  nlohmann::json report;
  nlohmann::json failures = nlohmann::json::array();
  std::vector<Artifact> artifacts;  // artifacts[0] is the primary one
};

// Runs a config without touching the filesystem. `log` receives one-line summaries.
RunResult run(const RunConfig& cfg, std::ostream& log);
// Writes artifacts under cfg.out (primary to `stdout_sink` when out is empty) and
// <out>.failures.json whenever out is set.
void write_artifacts(const RunConfig& cfg, const RunResult& result, std::ostream& stdout_sink);

// Full entry point: parse, run, map errors to exit codes.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hardcore
