#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "nhskin/types.hpp"

namespace nhskin::cli {

class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class Task { spectrum, states, winding, gap, envelope, sweep, sensitivity, balance };

const char* to_string(Task t);
Task parse_task(const std::string& s);

/// Boundary deformation: one value, an asymmetric (left, right) pair, or a real grid.
struct DeltaSpec {
  enum class Kind { scalar, pair, grid };
  Kind kind = Kind::scalar;
  cplx value{0.0};
  cplx left{0.0}, right{0.0};
  double start = 0.0, stop = 0.0, step = 0.0;

  /// (delta_l, delta_r) for every point, in order.
  std::vector<std::pair<cplx, cplx>> points() const;
};

struct RunConfig {
  std::string name;
  std::string model;
  Task task = Task::spectrum;
  std::map<std::string, cplx> params;
  int n = 0;
  int n1 = 0;
  int n2 = 0;
  std::vector<int> sizes;
  DeltaSpec delta;
  std::string boundary = "bc1";
  cplx delta2{1.0};
  cplx delta2_prime{1.0};
  std::vector<cplx> base_energies;
  int random_bases = 0;
  double target = 0.5;
  int exclude_smallest = 0;
  double screen_eps = 0.01;
  double screen_threshold = 1.2;
  bool verify = false;
  std::uint64_t seed = 0;
  nlohmann::json raw;

  cplx param(const std::string& key) const;
  bool is_2d() const;
};

/// Parameter names accepted by a model, with their defaults.
const std::map<std::string, cplx>& model_parameters(const std::string& model);
const std::vector<std::string>& model_names();

cplx parse_complex(const nlohmann::json& j, const std::string& where);
RunConfig parse_config(const nlohmann::json& j);
/// A non-empty task_override replaces the task named in the file before validation.
RunConfig load_config(const std::filesystem::path& path, const std::string& task_override = "");

}  // namespace nhskin::cli
