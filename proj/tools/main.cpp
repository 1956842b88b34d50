#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fama/cli.hpp"

namespace {

int default_threads() {
  if (const char* env = std::getenv("FAMA_SIM_THREADS")) {
    try {
      int t = std::stoi(env);
      if (t >= 1) return t;
    } catch (const std::exception&) {
      // fall through to the built-in default
    }
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FAMA link-level Monte Carlo simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", fama::cli::kToolVersion);

  std::string config_path;
  std::string output_path;
  fama::cli::Overrides overrides;
  std::uint64_t seed_flag = 0;
  int threads_flag = default_threads();
  std::uint64_t trials_flag = 0;

  auto add_common = [&](CLI::App* sub, bool config_required) {
    sub->add_option("--config,-c", config_path, "Input file")
        ->required(config_required);
    sub->add_option("--output,-o", output_path, "Output file")->required();
    auto* s = sub->add_option("--seed", seed_flag, "Master seed override");
    auto* t = sub->add_option("--threads", threads_flag, "Worker threads");
    auto* n = sub->add_option("--trials", trials_flag, "Trial count override");
    return std::tuple{s, t, n};
  };

  auto* run = app.add_subcommand("run", "Run an outage/multiplexing-gain sweep");
  auto [run_seed, run_threads, run_trials] = add_common(run, true);

  auto* rpdr = app.add_subcommand(
      "rpdr", "Compute the gain envelope and RPDR of a pattern file");
  add_common(rpdr, true);

  auto* gen = app.add_subcommand("gen-patterns",
                                 "Generate a synthetic pattern CSV");
  add_common(gen, false);
  fama::cli::GenOptions gen_options;
  int grid_n1 = 0, grid_n2 = 0;
  gen->add_option("--ports", gen_options.n_ports, "Number of ports")
      ->check(CLI::PositiveNumber);
  auto* g1 = gen->add_option("--n1", grid_n1, "First-channel positions (grid set)");
  auto* g2 = gen->add_option("--n2", grid_n2, "Second-channel positions (grid set)");
  g1->needs(g2);
  g2->needs(g1);
  gen->add_option("--base-gain", gen_options.profile.base_gain_dbi, "Lobe gain, dBi");
  gen->add_option("--lobe-center", gen_options.profile.lobe_center_deg, "Lobe center, deg");
  gen->add_option("--lobe-width", gen_options.profile.lobe_width_deg, "Lobe width, deg");
  gen->add_option("--floor", gen_options.profile.floor_dbi, "Gain floor, dBi");
  gen->add_option("--null-depth", gen_options.profile.null_depth_db, "Notch depth, dB");
  gen->add_option("--null-width", gen_options.profile.null_width_deg, "Notch half-width, deg");
  gen->add_option("--null-start", gen_options.profile.null_start_deg, "First notch center, deg");
  gen->add_option("--null-drift", gen_options.profile.null_drift_deg, "Notch drift per port, deg");
  gen->add_option("--grid-step", gen_options.profile.grid_step_deg, "Sample spacing, deg");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : fama::cli::kExitConfigError;
  }

  if (run->parsed()) {
    if (run_seed->count()) overrides.seed = seed_flag;
    if (run_threads->count() || std::getenv("FAMA_SIM_THREADS")) {
      overrides.threads = threads_flag;
    }
    if (run_trials->count()) overrides.trials = trials_flag;
    return fama::cli::cmd_run(config_path, output_path, overrides, std::cerr);
  }
  if (rpdr->parsed()) {
    return fama::cli::cmd_rpdr(config_path, output_path, std::cerr);
  }
  if (gen->parsed()) {
    if (grid_n1 > 0 && grid_n2 > 0) {
      gen_options.grid_n1 = grid_n1;
      gen_options.grid_n2 = grid_n2;
    }
    return fama::cli::cmd_gen_patterns(gen_options, output_path, std::cerr);
  }
  return fama::cli::kExitInternalError;
}
