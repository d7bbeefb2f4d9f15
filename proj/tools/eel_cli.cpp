// Experiment runner CLI. Thin shell over the C API in eel.h.

#include <cstdint>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "eel.h"

namespace {

struct SubcommandSpec {
  const char* name;
  const char* scenario;
  const char* help;
};

constexpr SubcommandSpec kSubcommands[] = {
    {"gen-data", "gen-data", "Generate a synthetic table and write it as CSV"},
    {"label", "label", "Collect a labeled training set via ELC"},
    {"eedl", "eedl-cardinality",
     "Run the experience-enhanced cardinality-estimation pipeline"},
    {"eerl", "eerl-index", "Run the experience-enhanced index-tuning agent"},
    {"verify-theorem", "theorem-verify",
     "Randomized verification of the credibility bound"},
    {"elc-bench", "elc-bench",
     "Time rule labeling against execution labeling"},
    {"report", "report", "Summarize the CSV artifacts of previous runs"},
};

int run_subcommand(const char* scenario, const std::string& config_path,
                   const uint64_t* seed, const std::string& out) {
  char errbuf[512] = {0};
  eel_experiment* exp =
      eel_experiment_create(config_path.c_str(), errbuf, sizeof(errbuf));
  if (!exp) {
    std::fprintf(stderr, "error: %s\n", errbuf);
    return EEL_ERR_CONFIG;
  }
  if (std::string(eel_experiment_scenario(exp)) != scenario) {
    std::fprintf(stderr,
                 "error: config field [experiment] scenario is `%s`, "
                 "but this subcommand requires `%s`\n",
                 eel_experiment_scenario(exp), scenario);
    eel_experiment_destroy(exp);
    return EEL_ERR_CONFIG;
  }
  if (seed) eel_experiment_set_seed(exp, *seed);
  if (!out.empty()) eel_experiment_set_out_dir(exp, out.c_str());

  int status = eel_experiment_run(exp);
  if (status != EEL_OK)
    std::fprintf(stderr, "error: %s\n", eel_experiment_error(exp));
  eel_experiment_destroy(exp);
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("eel experiment runner (") + eel_version() + ")"};
  app.require_subcommand(1);

  struct Parsed {
    std::string config;
    std::string out;
    uint64_t seed = 0;
    bool has_seed = false;
    const char* scenario = nullptr;
  } parsed;

  for (const auto& sub : kSubcommands) {
    CLI::App* cmd = app.add_subcommand(sub.name, sub.help);
    cmd->add_option("--config", parsed.config, "Experiment config file")
        ->required();
    cmd->add_option("--seed", parsed.seed, "Override the config's seed list");
    cmd->add_option("--out", parsed.out, "Output directory");
    cmd->callback([&parsed, &sub, cmd]() {
      parsed.scenario = sub.scenario;
      parsed.has_seed = cmd->count("--seed") > 0;
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : EEL_ERR_CONFIG;
  }

  return run_subcommand(parsed.scenario, parsed.config,
                        parsed.has_seed ? &parsed.seed : nullptr, parsed.out);
}
