#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "run.hpp"

int main(int argc, char** argv) {
  using namespace nhskin::cli;

  CLI::App app{"Non-Hermitian lattice spectra: closed forms, oracle checks and sweeps"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  int threads = 1;
  double tolerance = 1e-7;

  std::vector<std::string> names = {"spectrum", "states", "winding",     "gap",     "envelope",
                                    "sweep",    "sensitivity", "balance", "validate"};
  std::vector<std::pair<std::string, CLI::App*>> subs;
  CLI::Option* seed_opt_any = nullptr;
  std::vector<CLI::Option*> seed_opts;
  for (const auto& name : names) {
    CLI::App* sub = app.add_subcommand(
        name, name == "validate" ? "Analytic path against the dense oracle at N <= 12"
                                 : "Run the " + name + " task");
    sub->add_option("--config", config_path, "JSON run configuration")->required()->check(
        CLI::ExistingFile);
    sub->add_option("--out", out_dir, "Output directory");
    seed_opts.push_back(sub->add_option("--seed", seed, "Seed for random draws"));
    sub->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--tolerance", tolerance, "Relative analytic/oracle tolerance")
        ->check(CLI::PositiveNumber);
    subs.emplace_back(name, sub);
  }
  CLI11_PARSE(app, argc, argv);

  std::string chosen;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (subs[i].second->parsed()) {
      chosen = subs[i].first;
      if (seed_opts[i]->count() > 0) seed_opt_any = seed_opts[i];
    }
  }

  try {
    if (chosen == "validate") {
      const RunConfig cfg = load_config(config_path);
      const ValidationReport rep = validate(cfg, tolerance);
      std::printf("%s\n", rep.detail.dump(2).c_str());
      if (!rep.pass) {
        std::fprintf(stderr, "validation failure: max distance %.3e exceeds %.3e\n",
                     rep.max_mismatch, rep.allowed);
        return kExitValidation;
      }
      return kExitOk;
    }
    const RunConfig cfg = load_config(config_path, chosen);

    RunOptions opt;
    opt.out_dir = out_dir;
    if (seed_opt_any) opt.seed = seed;
    opt.threads = threads;
    opt.tolerance = tolerance;
    const RunOutcome out = run(cfg, opt);
    if (out.exit_code != kExitOk) {
      std::fprintf(stderr, "%s\n", out.message.c_str());
      return out.exit_code;
    }
    std::printf("wrote %s and %s\n", out.csv.string().c_str(), out.json.string().c_str());
    return kExitOk;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
}
