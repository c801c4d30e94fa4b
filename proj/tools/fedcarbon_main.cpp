// Command-line front end: closed-form sweeps (analyze), learning-coupled
// footprint runs (simulate) and scheme crossover solving (breakeven).
//
// Exit codes: 0 success, 2 configuration problem, 3 cost-model oracle
// failure (event-billed and closed-form totals diverged).

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "fedcarbon/config.hpp"
#include "fedcarbon/results.hpp"
#include "fedcarbon/runner.hpp"
#include "fedcarbon/sweep.hpp"
#include "fedcarbon/units.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string preset;
  std::string out_path = "-";
  std::string format = "csv";
  std::optional<long long> seed;
  std::optional<int> threads;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_format) {
  cmd->add_option("--config", args.config_path, "experiment config (JSON)");
  cmd->add_option("--preset", args.preset,
                  "bundled experiment: fig3a, fig3b, fig3c or table3");
  cmd->add_option("--out", args.out_path, "output path (default: stdout)");
  if (with_format)
    cmd->add_option("--format", args.format, "csv or jsonl")
        ->check(CLI::IsMember({"csv", "jsonl"}));
  cmd->add_option("--seed", args.seed, "override the config seed");
  cmd->add_option("--threads", args.threads, "override the config worker thread count");
}

fedcarbon::ExperimentConfig load(const CommonArgs& args) {
  using fedcarbon::ConfigError;
  if (args.config_path.empty() == args.preset.empty())
    throw ConfigError("give exactly one of --config or --preset");
  fedcarbon::ExperimentConfig config;
  if (!args.preset.empty()) {
    const char* text = fedcarbon::preset_config_text(args.preset);
    if (!text) throw ConfigError("unknown preset \"" + args.preset +
                                 "\" (known: fig3a, fig3b, fig3c, table3)");
    config = fedcarbon::parse_config_text(text, "preset:" + args.preset);
  } else {
    config = fedcarbon::load_config(args.config_path);
  }
  if (args.seed) config.seed = static_cast<std::uint64_t>(*args.seed);
  if (args.threads) {
    if (*args.threads < 1) throw ConfigError("--threads must be >= 1");
    config.threads = *args.threads;
  }
  for (const std::string& warning : config.warnings())
    std::cerr << "warning: " << warning << "\n";
  // Human-facing numbers are presented at 4 significant digits; the CSV and
  // JSONL outputs keep 6.
  std::cerr << "device round energy: "
            << fedcarbon::format_sig(config.fleet.device_round_energy_j(), 4) << " J ("
            << (config.fleet.device_energy_source ==
                        fedcarbon::DeviceEnergySource::Profile
                    ? "from device profile; implied device/center ratio "
                    : "from ratio; implied device/center ratio ")
            << fedcarbon::format_sig(config.fleet.implied_compute_ratio(), 4)
            << " of the center's "
            << fedcarbon::format_sig(config.fleet.center_round_energy_j(), 4) << " J)\n";
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy and carbon footprints of centralized, federated and "
               "consensus-driven training"};
  app.require_subcommand(1);

  CommonArgs analyze_args;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "closed-form energy/carbon over the config's sweep grid");
  add_common(analyze, analyze_args, true);

  CommonArgs simulate_args;
  std::string events_path;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "train to the loss target and bill the logged events");
  add_common(simulate, simulate_args, true);
  simulate->add_option("--events", events_path, "also write the event log (JSON lines)");

  CommonArgs breakeven_args;
  std::string scheme_a = "fl", scheme_b = "cl";
  std::optional<long long> n_a, n_b;
  CLI::App* breakeven = app.add_subcommand(
      "breakeven", "link efficiency below which scheme A emits less than scheme B");
  add_common(breakeven, breakeven_args, false);
  breakeven->add_option("--scheme-a", scheme_a, "first scheme (default fl)");
  breakeven->add_option("--scheme-b", scheme_b, "second scheme (default cl)");
  breakeven->add_option("--n-a", n_a, "rounds for scheme A (default: config rounds)");
  breakeven->add_option("--n-b", n_b, "rounds for scheme B (default: config rounds)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (analyze->parsed()) {
      const auto config = load(analyze_args);
      const auto rows = fedcarbon::run_analysis(config);
      fedcarbon::emit_results(rows, analyze_args.format, analyze_args.out_path);
      std::cerr << "analyze: " << rows.size() << " rows\n";
      return 0;
    }
    if (simulate->parsed()) {
      const auto config = load(simulate_args);
      const auto outcome = fedcarbon::run_simulation(config);
      fedcarbon::emit_results(outcome.rows, simulate_args.format, simulate_args.out_path);
      if (!events_path.empty()) fedcarbon::write_event_log(outcome.traces, events_path);
      for (const auto& row : outcome.rows)
        std::cerr << "simulate: " << fedcarbon::to_string(row.scheme) << " n=" << row.n
                  << " loss=" << fedcarbon::format_sig(row.loss_final, 4)
                  << (row.target_reached == 1 ? " (target reached)"
                                              : " (target not reached)")
                  << "\n";
      return 0;
    }
    if (breakeven->parsed()) {
      const auto config = load(breakeven_args);
      const auto a = fedcarbon::scheme_from_string(scheme_a);
      const auto b = fedcarbon::scheme_from_string(scheme_b);
      if (!a || !b) throw fedcarbon::ConfigError("schemes must be cl, fl or cfl");
      long long rounds_a = n_a.value_or(config.rounds.value_or(-1));
      long long rounds_b = n_b.value_or(config.rounds.value_or(-1));
      if (rounds_a < 0 || rounds_b < 0)
        throw fedcarbon::ConfigError(
            "breakeven needs round counts: set config rounds or pass --n-a/--n-b");
      const auto result = fedcarbon::break_even_ee(config, *a, *b, rounds_a, rounds_b);

      std::string text = "{\"scheme_a\":\"" + std::string(fedcarbon::to_string(*a)) +
                         "\",\"scheme_b\":\"" + std::string(fedcarbon::to_string(*b)) +
                         "\",\"n_a\":" + std::to_string(rounds_a) +
                         ",\"n_b\":" + std::to_string(rounds_b) +
                         ",\"comm_coeff_a\":" + fedcarbon::format_sig(result.comm_coeff_a, 9) +
                         ",\"base_a\":" + fedcarbon::format_sig(result.base_a, 9) +
                         ",\"comm_coeff_b\":" + fedcarbon::format_sig(result.comm_coeff_b, 9) +
                         ",\"base_b\":" + fedcarbon::format_sig(result.base_b, 9) +
                         ",\"ee_star\":" +
                         (result.ee_star ? fedcarbon::format_sig(*result.ee_star, 9)
                                         : "null") +
                         ",\"bisection_verified\":" +
                         (result.bisection_verified ? "true" : "false") + "}\n";
      if (breakeven_args.out_path == "-") {
        std::cout << text;
      } else {
        std::FILE* f = std::fopen(breakeven_args.out_path.c_str(), "wb");
        if (!f) throw std::runtime_error("cannot write " + breakeven_args.out_path);
        std::fwrite(text.data(), 1, text.size(), f);
        std::fclose(f);
      }
      return 0;
    }
  } catch (const fedcarbon::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fedcarbon::OracleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
