#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "eel/config.hpp"

namespace eel {

/// Scenario runner behind both the C API and the CLI. Exit codes: 0 success,
/// 1 runtime failure, 2 config error.
class Experiment {
 public:
  static constexpr const char* kVersion = "eel 0.1.0";

  // Throws ConfigError on malformed input.
  explicit Experiment(ConfigFile config);

  void set_seed(u64 seed) { seed_override_ = seed; }
  void set_out_dir(std::string dir) { out_dir_ = std::move(dir); }

  const std::string& scenario() const { return scenario_; }
  const std::vector<u64>& seeds() const { return seeds_; }

  // Runs the configured scenario, writing CSV artifacts plus a manifest
  // under the output directory. Returns the exit status.
  int run();

  const std::string& error_message() const { return error_; }

 private:
  void run_scenario(const std::string& name);
  void run_gen_data();
  void run_label();
  void run_eedl();
  void run_eerl();
  void run_theorem_verify();
  void run_elc_bench();
  void run_report();
  void write_manifest();
  void write_file(const std::string& name, const std::string& content) const;

  ConfigFile config_;
  std::string scenario_;
  std::vector<u64> seeds_;
  std::optional<u64> seed_override_;
  std::string out_dir_;
  std::string error_;
};

// Deterministic float formatting shared by every CSV writer.
std::string format_real(double v);

}  // namespace eel
