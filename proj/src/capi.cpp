#include "eel.h"

#include <cstring>
#include <string>

#include "eel/config.hpp"
#include "eel/experiment.hpp"

struct eel_experiment {
  eel::Experiment impl;
  std::string error;

  explicit eel_experiment(eel::ConfigFile cfg) : impl(std::move(cfg)) {}
};

namespace {

void copy_error(const std::string& msg, char* errbuf, size_t errbuf_len) {
  if (!errbuf || errbuf_len == 0) return;
  size_t n = msg.size() < errbuf_len - 1 ? msg.size() : errbuf_len - 1;
  std::memcpy(errbuf, msg.data(), n);
  errbuf[n] = '\0';
}

}  // namespace

extern "C" {

const char* eel_version(void) { return eel::Experiment::kVersion; }

eel_experiment* eel_experiment_create(const char* config_path, char* errbuf,
                                      size_t errbuf_len) {
  if (!config_path) {
    copy_error("config_path is null", errbuf, errbuf_len);
    return nullptr;
  }
  try {
    auto cfg = eel::ConfigFile::load(config_path);
    return new eel_experiment(std::move(cfg));
  } catch (const std::exception& e) {
    copy_error(e.what(), errbuf, errbuf_len);
    return nullptr;
  }
}

int eel_experiment_set_seed(eel_experiment* exp, uint64_t seed) {
  if (!exp) return EEL_ERR_RUNTIME;
  exp->impl.set_seed(seed);
  return EEL_OK;
}

int eel_experiment_set_out_dir(eel_experiment* exp, const char* dir) {
  if (!exp || !dir) return EEL_ERR_RUNTIME;
  exp->impl.set_out_dir(dir);
  return EEL_OK;
}

int eel_experiment_run(eel_experiment* exp) {
  if (!exp) return EEL_ERR_RUNTIME;
  try {
    int status = exp->impl.run();
    exp->error = exp->impl.error_message();
    return status;
  } catch (const std::exception& e) {
    exp->error = e.what();
    return EEL_ERR_RUNTIME;
  }
}

const char* eel_experiment_scenario(const eel_experiment* exp) {
  return exp ? exp->impl.scenario().c_str() : "";
}

const char* eel_experiment_error(const eel_experiment* exp) {
  return exp ? exp->error.c_str() : "";
}

void eel_experiment_destroy(eel_experiment* exp) { delete exp; }

}  // extern "C"
