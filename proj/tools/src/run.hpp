#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "config.hpp"
#include "nhskin/topology.hpp"

namespace nhskin::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitValidation = 3;

struct RunOptions {
  std::filesystem::path out_dir = ".";
  std::optional<std::uint64_t> seed;  // overrides the config seed
  int threads = 1;
  double tolerance = 1e-7;  // relative to 1 + max |lambda|
};

struct RunOutcome {
  int exit_code = kExitOk;
  std::string message;
  std::filesystem::path csv;
  std::filesystem::path json;
  nlohmann::json sidecar;
};

struct ValidationReport {
  bool pass = true;
  bool oracle_only = false;  // the analytic path fell back to the oracle at least once
  double max_mismatch = 0.0;
  double allowed = 0.0;
  nlohmann::json detail;
};

/// One evaluated spectrum; `block` holds the stacking index per value or is empty.
struct Evaluation {
  Spectrum spectrum;
  std::vector<int> block;
  nlohmann::json diagnostics = nlohmann::json::object();
};

struct Sizes {
  int n = 0, n1 = 0, n2 = 0;
};

Sizes configured_sizes(const RunConfig& c);
Evaluation evaluate(const RunConfig& c, cplx delta_l, cplx delta_r, const Sizes& sz,
                    int threads = 1);
Matrix assemble(const RunConfig& c, cplx delta_l, cplx delta_r, const Sizes& sz);
std::optional<BlochSampler> bloch_sampler(const RunConfig& c);

/// Analytic path against the dense oracle at N <= 12.
ValidationReport validate(const RunConfig& c, double tolerance = 1e-7);

/// Executes the configured task and writes <name>.csv and <name>.json under out_dir.
RunOutcome run(const RunConfig& c, const RunOptions& opt);

/// Fixed 17 significant digits; negative zero prints as 0.
std::string format_number(double x);

}  // namespace nhskin::cli
