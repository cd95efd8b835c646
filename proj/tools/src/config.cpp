#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace nhskin::cli {

namespace {

using json = nlohmann::json;

std::map<std::string, cplx> with_defaults(std::initializer_list<std::pair<const char*, double>> kv) {
  std::map<std::string, cplx> m;
  for (const auto& [k, v] : kv) m[k] = v;
  return m;
}

std::map<std::string, cplx> stacked_ssh_names() {
  std::map<std::string, cplx> m;
  for (const char* base : {"t_d", "u_d", "u_u", "v_dl", "v_dr", "v_ul", "v_ur"})
    for (const char* sub : {"1", "2"}) m[std::string(base) + sub] = 0.0;
  for (const char* base : {"t_l", "t_r"})
    for (const char* sub : {"1", "2"}) m[std::string(base) + sub] = 1.0;
  return m;
}

const std::map<std::string, std::map<std::string, cplx>>& registry() {
  static const std::map<std::string, std::map<std::string, cplx>> r = {
      {"hn", with_defaults({{"t_d", 0}, {"t_l", 1}, {"t_r", 1}})},
      {"hn-general",
       with_defaults({{"t_d", 0}, {"t_l", 1}, {"t_r", 1}, {"eps_first", 0}, {"eps_last", 0}})},
      {"ssh", with_defaults({{"t_l1", 1}, {"t_r1", 1}, {"t_l2", 1}, {"t_r2", 1}, {"v1", 0}, {"v2", 0}})},
      {"ssh-odd",
       with_defaults({{"t_l1", 1}, {"t_r1", 1}, {"t_l2", 1}, {"t_r2", 1}, {"v1", 0}, {"v2", 0}})},
      {"unidirectional", with_defaults({{"t_l", 1}, {"u_l", 1}})},
      {"mixed-longrange", with_defaults({{"t_r", 1}, {"u_l", 1}})},
      {"general-chain", with_defaults({{"t_l", 0}, {"t_r", 0}, {"u_l", 0}, {"u_r", 0}})},
      {"stacked-hn", with_defaults({{"t_d", 0}, {"t_l", 1}, {"t_r", 1}, {"u_d", 0}, {"u_u", 0},
                                    {"v_dl", 0}, {"v_dr", 0}, {"v_ul", 0}, {"v_ur", 0}})},
      {"stacked-ssh", stacked_ssh_names()},
      {"triangular", with_defaults({{"t_l", 1}, {"t_r", 1}})},
      {"kagome", with_defaults({{"t_l", 1}, {"t_r", 1}, {"s_l", 1}, {"s_r", 1}})},
      {"separable-square", with_defaults({{"x_t_d", 0}, {"x_t_l", 1}, {"x_t_r", 1}, {"y_t_d", 0},
                                          {"y_t_l", 1}, {"y_t_r", 1}})},
  };
  return r;
}

const std::set<std::string> kTopLevel = {
    "name",        "model",          "task",         "params",      "n",
    "n1",          "n2",             "sizes",        "delta",       "boundary",
    "delta2",      "delta2_prime",   "base_energies", "random_bases", "target",
    "exclude_smallest", "screen",    "verify",       "seed"};

int positive_int(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() <= 0)
    throw ConfigError(where + ": expected a positive integer");
  return j.get<int>();
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + ": expected a number");
  return j.get<double>();
}

DeltaSpec parse_delta(const json& j) {
  DeltaSpec d;
  if (j.is_number() || j.is_array()) {
    d.kind = DeltaSpec::Kind::scalar;
    d.value = parse_complex(j, "delta");
    return d;
  }
  if (!j.is_object()) throw ConfigError("delta: expected a number, [re, im] or an object");
  for (const auto& [k, v] : j.items())
    if (k != "value" && k != "left" && k != "right" && k != "start" && k != "stop" && k != "step")
      throw ConfigError("delta." + k + ": unknown field");
  if (j.contains("value")) {
    d.kind = DeltaSpec::Kind::scalar;
    d.value = parse_complex(j.at("value"), "delta.value");
  } else if (j.contains("left") || j.contains("right")) {
    if (!j.contains("left") || !j.contains("right"))
      throw ConfigError("delta: a pair needs both left and right");
    d.kind = DeltaSpec::Kind::pair;
    d.left = parse_complex(j.at("left"), "delta.left");
    d.right = parse_complex(j.at("right"), "delta.right");
  } else if (j.contains("step")) {
    d.kind = DeltaSpec::Kind::grid;
    d.start = j.contains("start") ? number(j.at("start"), "delta.start") : 0.0;
    d.stop = j.contains("stop") ? number(j.at("stop"), "delta.stop") : 1.0;
    d.step = number(j.at("step"), "delta.step");
    if (!(d.step > 0.0)) throw ConfigError("delta.step: grid step must be positive");
    if (d.stop < d.start) throw ConfigError("delta: stop must not be below start");
  } else {
    throw ConfigError("delta: object needs value, left/right, or start/stop/step");
  }
  return d;
}

}  // namespace

const char* to_string(Task t) {
  switch (t) {
    case Task::spectrum: return "spectrum";
    case Task::states: return "states";
    case Task::winding: return "winding";
    case Task::gap: return "gap";
    case Task::envelope: return "envelope";
    case Task::sweep: return "sweep";
    case Task::sensitivity: return "sensitivity";
    case Task::balance: return "balance";
  }
  return "?";
}

Task parse_task(const std::string& s) {
  for (Task t : {Task::spectrum, Task::states, Task::winding, Task::gap, Task::envelope,
                 Task::sweep, Task::sensitivity, Task::balance})
    if (s == to_string(t)) return t;
  throw ConfigError("task: unknown task '" + s + "'");
}

std::vector<std::pair<cplx, cplx>> DeltaSpec::points() const {
  switch (kind) {
    case Kind::scalar: return {{value, value}};
    case Kind::pair: return {{left, right}};
    case Kind::grid: {
      std::vector<std::pair<cplx, cplx>> out;
      const long count = std::lround((stop - start) / step);
      for (long i = 0; i <= count; ++i) {
        const double x = start + static_cast<double>(i) * step;
        out.push_back({x, x});
      }
      return out;
    }
  }
  return {};
}

cplx RunConfig::param(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) throw ConfigError("params." + key + ": not defined for model " + model);
  return it->second;
}

bool RunConfig::is_2d() const {
  return model == "stacked-hn" || model == "stacked-ssh" || model == "triangular" ||
         model == "kagome" || model == "separable-square";
}

const std::map<std::string, cplx>& model_parameters(const std::string& model) {
  auto it = registry().find(model);
  if (it == registry().end()) throw ConfigError("model: unknown model '" + model + "'");
  return it->second;
}

const std::vector<std::string>& model_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : registry()) v.push_back(k);
    return v;
  }();
  return names;
}

cplx parse_complex(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError(where + ": expected a number or [re, im]");
}

RunConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  for (const auto& [k, v] : j.items())
    if (!kTopLevel.count(k)) throw ConfigError(k + ": unknown field");
  RunConfig c;
  c.raw = j;
  if (!j.contains("model") || !j.at("model").is_string()) throw ConfigError("model: required string");
  c.model = j.at("model").get<std::string>();
  c.params = model_parameters(c.model);
  c.name = j.contains("name") ? j.at("name").get<std::string>() : c.model;
  if (j.contains("task")) c.task = parse_task(j.at("task").get<std::string>());
  if (j.contains("params")) {
    if (!j.at("params").is_object()) throw ConfigError("params: expected an object");
    for (const auto& [k, v] : j.at("params").items()) {
      if (!c.params.count(k))
        throw ConfigError("params." + k + ": unknown parameter for model " + c.model);
      c.params[k] = parse_complex(v, "params." + k);
    }
  }
  if (j.contains("n")) c.n = positive_int(j.at("n"), "n");
  if (j.contains("n1")) c.n1 = positive_int(j.at("n1"), "n1");
  if (j.contains("n2")) c.n2 = positive_int(j.at("n2"), "n2");
  if (j.contains("sizes")) {
    if (!j.at("sizes").is_array()) throw ConfigError("sizes: expected an array");
    for (std::size_t i = 0; i < j.at("sizes").size(); ++i)
      c.sizes.push_back(positive_int(j.at("sizes")[i], "sizes[" + std::to_string(i) + "]"));
  }
  if (j.contains("delta")) c.delta = parse_delta(j.at("delta"));
  if (j.contains("boundary")) {
    c.boundary = j.at("boundary").get<std::string>();
    if (c.boundary != "bc1" && c.boundary != "bc2" && c.boundary != "open" && c.boundary != "custom")
      throw ConfigError("boundary: expected bc1, bc2, open or custom");
  }
  if (j.contains("delta2")) c.delta2 = parse_complex(j.at("delta2"), "delta2");
  if (j.contains("delta2_prime")) c.delta2_prime = parse_complex(j.at("delta2_prime"), "delta2_prime");
  if (j.contains("base_energies")) {
    if (!j.at("base_energies").is_array()) throw ConfigError("base_energies: expected an array");
    for (std::size_t i = 0; i < j.at("base_energies").size(); ++i)
      c.base_energies.push_back(
          parse_complex(j.at("base_energies")[i], "base_energies[" + std::to_string(i) + "]"));
  }
  if (j.contains("random_bases")) c.random_bases = positive_int(j.at("random_bases"), "random_bases");
  if (j.contains("target")) {
    c.target = number(j.at("target"), "target");
    if (!(c.target > 0.0)) throw ConfigError("target: must be positive");
  }
  if (j.contains("exclude_smallest")) {
    if (!j.at("exclude_smallest").is_number_integer() || j.at("exclude_smallest").get<int>() < 0)
      throw ConfigError("exclude_smallest: expected a non-negative integer");
    c.exclude_smallest = j.at("exclude_smallest").get<int>();
  }
  if (j.contains("screen")) {
    const json& s = j.at("screen");
    if (!s.is_object()) throw ConfigError("screen: expected an object");
    for (const auto& [k, v] : s.items()) {
      if (k == "eps") c.screen_eps = number(v, "screen.eps");
      else if (k == "threshold") c.screen_threshold = number(v, "screen.threshold");
      else throw ConfigError("screen." + k + ": unknown field");
    }
  }
  if (j.contains("verify")) {
    if (!j.at("verify").is_boolean()) throw ConfigError("verify: expected a boolean");
    c.verify = j.at("verify").get<bool>();
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw ConfigError("seed: expected an unsigned integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }

  const bool two_d = c.is_2d();
  if (two_d && (c.n1 == 0 || c.n2 == 0) && c.task != Task::sensitivity)
    throw ConfigError("n1, n2: required for model " + c.model);
  if (!two_d && c.n == 0 && c.task != Task::sensitivity && c.task != Task::winding &&
      c.task != Task::gap && c.task != Task::balance)
    throw ConfigError("n: required for model " + c.model);
  if (c.delta.kind == DeltaSpec::Kind::pair && c.model != "hn-general" && c.model != "ssh" &&
      c.model != "ssh-odd")
    throw ConfigError("delta: asymmetric pair not supported by model " + c.model);
  if (c.model == "ssh-odd" && c.n != 0 && c.n % 2 == 0) throw ConfigError("n: ssh-odd needs odd n");
  if (c.model == "ssh" && c.n != 0 && c.n % 2 != 0) throw ConfigError("n: ssh needs even n");
  if (c.task == Task::sweep && c.delta.kind != DeltaSpec::Kind::grid)
    throw ConfigError("delta: sweep needs a start/stop/step grid");
  if (c.task == Task::sensitivity && c.sizes.size() < 4)
    throw ConfigError("sizes: sensitivity needs at least 4 sizes");
  return c;
}

RunConfig load_config(const std::filesystem::path& path, const std::string& task_override) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  if (!task_override.empty() && j.is_object()) j["task"] = task_override;
  RunConfig c = parse_config(j);
  if (!j.contains("name")) c.name = path.stem().string();
  return c;
}

}  // namespace nhskin::cli
