#include "eel/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "eel/eedl.hpp"
#include "eel/eerl.hpp"
#include "eel/ekb.hpp"
#include "eel/elc.hpp"
#include "eel/metrics.hpp"
#include "eel/sea.hpp"
#include "eel/synthdb.hpp"
#include "eel/workload.hpp"

namespace eel {

namespace fs = std::filesystem;

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

namespace {

Distribution distribution_from_name(const std::string& name) {
  if (name == "uniform") return Distribution::Uniform;
  if (name == "zipf") return Distribution::Zipf;
  if (name == "gaussian") return Distribution::Gaussian;
  throw ConfigError("unknown distribution: " + name);
}

// column grammar: `name uniform LO HI` | `name zipf S LO HI`
//                 | `name gaussian MEAN STDDEV LO HI`
ColumnSpec parse_column(const std::string& line) {
  auto words = split_words(line);
  if (words.size() < 4) throw ConfigError("malformed column spec: " + line);
  ColumnSpec c;
  c.name = words[0];
  c.dist = distribution_from_name(words[1]);
  try {
    switch (c.dist) {
      case Distribution::Uniform:
        if (words.size() != 4) throw ConfigError("");
        c.lo = std::stoll(words[2]);
        c.hi = std::stoll(words[3]);
        break;
      case Distribution::Zipf:
        if (words.size() != 5) throw ConfigError("");
        c.zipf_s = std::stod(words[2]);
        c.lo = std::stoll(words[3]);
        c.hi = std::stoll(words[4]);
        break;
      case Distribution::Gaussian:
        if (words.size() != 6) throw ConfigError("");
        c.mean = std::stod(words[2]);
        c.stddev = std::stod(words[3]);
        c.lo = std::stoll(words[4]);
        c.hi = std::stoll(words[5]);
        break;
    }
  } catch (const std::exception&) {
    throw ConfigError("malformed column spec: " + line);
  }
  return c;
}

TableSpec parse_table(const ConfigFile& cfg) {
  TableSpec spec;
  spec.name = cfg.get_or("table", "name", "t");
  spec.row_count = static_cast<std::size_t>(cfg.get_int_or("table", "rows", 20000));
  for (const auto& line : cfg.get_all("table", "column"))
    spec.columns.push_back(parse_column(line));
  if (spec.columns.empty()) {
    // default desk-scale table
    spec.columns.push_back(parse_column("a uniform 1 1000"));
    spec.columns.push_back(parse_column("b zipf 1.1 1 1000"));
    spec.columns.push_back(parse_column("c gaussian 500 150 1 1000"));
  }
  spec.validate();
  return spec;
}

std::vector<QueryTemplate> load_templates(const ConfigFile& cfg,
                                          const TableSpec& spec, u64 seed) {
  std::string source = cfg.get_or("workload", "templates", "random");
  if (source == "random") {
    auto count =
        static_cast<std::size_t>(cfg.get_int_or("workload", "template_count", 8));
    return random_templates(spec, count, seed);
  }
  std::ifstream in(source);
  if (!in) throw ConfigError("cannot open template file: " + source);
  std::vector<QueryTemplate> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    out.push_back(template_from_string(spec.name, line));
  }
  if (out.empty()) throw ConfigError("template file is empty: " + source);
  return out;
}

EedlConfig parse_eedl_config(const ConfigFile& cfg, u64 seed) {
  EedlConfig c;
  c.credibility_bound = cfg.get_real_or("eedl", "d", 0.5);
  c.retrain_interval =
      static_cast<std::size_t>(cfg.get_int_or("eedl", "interval", 500));
  c.pretrain_size =
      static_cast<std::size_t>(cfg.get_int_or("eedl", "pretrain_size", 5000));
  c.pool_capacity =
      static_cast<std::size_t>(cfg.get_int_or("eedl", "pool_capacity", 10000));
  c.minibatch = static_cast<std::size_t>(cfg.get_int_or("eedl", "minibatch", 64));
  c.pretrain_epochs =
      static_cast<std::size_t>(cfg.get_int_or("eedl", "pretrain_epochs", 40));
  c.retrain_passes = cfg.get_real_or("eedl", "retrain_passes", 25.0);
  c.learning_rate = cfg.get_real_or("eedl", "learning_rate", 1e-3);
  c.hidden = static_cast<std::size_t>(cfg.get_int_or("eedl", "hidden", 64));
  c.ekb_threshold = cfg.get_real_or("eedl", "ekb_threshold", 0.75);
  if (c.retrain_interval < 1) throw ConfigError("[eedl] interval must be >= 1");
  if (c.credibility_bound < 0.0) throw ConfigError("[eedl] d must be >= 0");
  c.seed = seed;
  return c;
}

EerlConfig parse_eerl_config(const ConfigFile& cfg, u64 seed) {
  EerlConfig c;
  c.iterations =
      static_cast<std::size_t>(cfg.get_int_or("eerl", "iterations", 8000));
  c.schedule.alpha0 = cfg.get_real_or("eerl", "alpha", 0.2);
  c.schedule.beta = cfg.get_real_or("eerl", "beta", 0.0);
  c.schedule.w = cfg.get_real_or("eerl", "w", 0.0);
  c.schedule.c1 = static_cast<std::size_t>(cfg.get_int_or("eerl", "c1", 0));
  c.schedule.c2 = static_cast<std::size_t>(cfg.get_int_or("eerl", "c2", 0));
  c.schedule.decrease =
      cfg.get_or("eerl", "direction", "decrease") != "increase";
  c.index_budget = static_cast<std::size_t>(cfg.get_int_or("eerl", "budget", 3));
  c.gamma = cfg.get_real_or("eerl", "gamma", 0.9);
  c.minibatch = static_cast<std::size_t>(cfg.get_int_or("eerl", "minibatch", 64));
  c.learning_rate = cfg.get_real_or("eerl", "learning_rate", 1e-3);
  c.kb_interval =
      static_cast<std::size_t>(cfg.get_int_or("eerl", "kb_interval", 1000));
  try {
    c.schedule.validate();
  } catch (const EngineError& e) {
    throw ConfigError(std::string("[eerl] ") + e.what());
  }
  c.seed = seed;
  return c;
}

std::string trim_zeros(double v) {
  std::string s = format_real(v);
  return s;
}

}  // namespace

Experiment::Experiment(ConfigFile config) : config_(std::move(config)) {
  scenario_ = config_.get("experiment", "scenario");
  static const std::vector<std::string> known = {
      "gen-data", "label",     "eedl-cardinality", "eerl-index",
      "theorem-verify", "elc-bench", "report"};
  bool ok = false;
  for (const auto& k : known) ok = ok || k == scenario_;
  if (!ok) throw ConfigError("unknown scenario: " + scenario_);

  for (const auto& w : split_words(config_.get_or("experiment", "seeds", "")))
    seeds_.push_back(std::stoull(w));
  if (seeds_.empty())
    throw ConfigError("missing config field: [experiment] seeds");
  out_dir_ = config_.get_or("experiment", "out", "out");
}

int Experiment::run() {
  try {
    if (seed_override_) seeds_ = {*seed_override_};
    fs::create_directories(out_dir_);
    run_scenario(scenario_);
    write_manifest();
    return 0;
  } catch (const ConfigError& e) {
    error_ = e.what();
    return 2;
  } catch (const std::exception& e) {
    error_ = e.what();
    return 1;
  }
}

void Experiment::run_scenario(const std::string& name) {
  if (name == "gen-data") run_gen_data();
  else if (name == "label") run_label();
  else if (name == "eedl-cardinality") run_eedl();
  else if (name == "eerl-index") run_eerl();
  else if (name == "theorem-verify") run_theorem_verify();
  else if (name == "elc-bench") run_elc_bench();
  else run_report();
}

void Experiment::write_file(const std::string& name,
                            const std::string& content) const {
  fs::path p = fs::path(out_dir_) / name;
  std::ofstream out(p, std::ios::binary);
  if (!out) throw EngineError("cannot write output file: " + p.string());
  out << content;
}

void Experiment::write_manifest() {
  std::ostringstream os;
  os << "version " << kVersion << '\n';
  os << "scenario " << scenario_ << '\n';
  os << "config_hash " << std::hex << std::setw(16) << std::setfill('0')
     << config_.hash() << std::dec << '\n';
  os << "seeds";
  for (u64 s : seeds_) os << ' ' << s;
  os << '\n';
  write_file("manifest", os.str());
}

void Experiment::run_gen_data() {
  TableSpec spec = parse_table(config_);
  Table table = generate_table(spec, seeds_.front());
  write_file(spec.name + ".csv", table_to_csv(table));
}

void Experiment::run_label() {
  TableSpec spec = parse_table(config_);
  u64 seed = seeds_.front();
  Table table = generate_table(spec, seed);
  auto templates = load_templates(config_, spec, seed ^ 0x7ea71e5u);
  auto target =
      static_cast<std::size_t>(config_.get_int_or("label", "target_size", 5000));
  std::string mode = config_.get_or("label", "mode", "rule");

  TrainingSet ts;
  if (mode == "execution") {
    auto queries = generate_queries(templates, spec, target, seed ^ 0x51abe1u);
    ts = label_by_execution(queries, table);
  } else if (mode == "rule") {
    TableStats stats = build_stats(
        table, static_cast<std::size_t>(config_.get_int_or("label", "buckets", 64)));
    LabelSources sources;
    sources.templates = &templates;
    sources.rule = [&stats](const Query& q) {
      return estimate_cardinality_rule(stats, q);
    };
    ts = collect_labels(spec, sources, target, seed ^ 0x51abe1u);
  } else {
    throw ConfigError("[label] mode must be `rule` or `execution`");
  }
  write_file("training_set.csv", training_set_to_csv(ts));
}

void Experiment::run_eedl() {
  TableSpec spec = parse_table(config_);
  u64 data_seed = static_cast<u64>(config_.get_int_or("table", "seed", 42));
  Table table = generate_table(spec, data_seed);
  TableStats stats = build_stats(
      table, static_cast<std::size_t>(config_.get_int_or("eedl", "buckets", 64)));
  auto stream_len =
      static_cast<std::size_t>(config_.get_int_or("eedl", "stream", 2000));
  auto heldout_len =
      static_cast<std::size_t>(config_.get_int_or("eedl", "heldout", 1000));

  for (u64 seed : seeds_) {
    auto templates = load_templates(config_, spec, seed ^ 0x7ea71e5u);
    EedlConfig cfg = parse_eedl_config(config_, seed);
    if (cfg.pretrain_size < 1)
      throw ConfigError("[eedl] pretrain_size must be >= 1");

    EedlPipeline pipeline(table, stats, cfg);
    LabelSources sources;
    sources.templates = &templates;
    sources.rule = [&stats](const Query& q) {
      return estimate_cardinality_rule(stats, q);
    };
    pipeline.pretrain(sources);

    auto stream = generate_queries(templates, spec, stream_len, seed ^ 0x57e3a1u);
    auto heldout =
        generate_queries(templates, spec, heldout_len, seed ^ 0x8e1d0u);

    // optional drift: switch the declared environment demand mid-stream
    std::vector<FeatureTags> schedule;
    const std::vector<FeatureTags>* schedule_ptr = nullptr;
    if (config_.has("eedl", "drift_at")) {
      auto drift_at =
          static_cast<std::size_t>(config_.get_int("eedl", "drift_at"));
      FeatureTags before = tags_from_words(
          {"cardinality", "accuracy", "relational", "online", "multi"});
      FeatureTags after = tags_from_words(split_words(config_.get_or(
          "eedl", "drift_demand", "cardinality time relational offline single")));
      for (std::size_t i = 0; i < stream.size(); ++i)
        schedule.push_back(i < drift_at ? before : after);
      schedule_ptr = &schedule;
    }

    EedlResult result = pipeline.run_online(stream, heldout, schedule_ptr);
    std::string suffix = "_seed" + std::to_string(seed) + ".csv";
    write_file("online_records" + suffix, online_records_to_csv(result.records));
    write_file("retrain_history" + suffix,
               retrain_history_to_csv(result.history));
  }
}

void Experiment::run_eerl() {
  u64 data_seed = static_cast<u64>(config_.get_int_or("eerl", "data_seed", 42));
  auto rows = static_cast<std::size_t>(
      config_.get_int_or("eerl", "rows_per_table", 2000));
  EerlScenarioSetup setup = default_eerl_setup(data_seed, rows);

  for (u64 seed : seeds_) {
    EerlConfig cfg = parse_eerl_config(config_, seed);
    IndexTuningEnv env(setup.specs, setup.stats, setup.templates, cfg, seed);
    RunHistory history = train_eerl(env, cfg);
    std::string name = "rl_history_" + trim_zeros(cfg.schedule.alpha0) + "_" +
                       trim_zeros(cfg.schedule.beta) + "_" +
                       std::to_string(seed) + ".csv";
    write_file(name, run_history_to_csv(history));
  }
}

void Experiment::run_theorem_verify() {
  auto n = static_cast<std::size_t>(
      config_.get_int_or("theorem", "instances", 10000));
  Rng rng(seeds_.front());
  std::ostringstream os;
  os << "instance,c_star,eps_n,eps_cap,d,c_learned,lhs,rhs,ok\n";
  std::size_t violations = 0;

  auto emit = [&](std::size_t i, const BoundInstance& inst, double c_learned) {
    double lhs = std::abs(c_learned - inst.c_star) / inst.c_star;
    double rhs = theorem_bound(inst.d, inst.eps_cap);
    bool ok = verify_bound_instance(inst, c_learned);
    if (!ok) ++violations;
    os << i << ',' << format_real(inst.c_star) << ',' << format_real(inst.eps_n)
       << ',' << format_real(inst.eps_cap) << ',' << format_real(inst.d) << ','
       << format_real(c_learned) << ',' << format_real(lhs) << ','
       << format_real(rhs) << ',' << (ok ? 1 : 0) << '\n';
  };

  // boundary-tight worst case first
  BoundInstance tight{100.0, 0.2, 0.2, 0.1};
  emit(0, tight, 132.0);
  for (std::size_t i = 1; i < n; ++i) {
    BoundInstance inst;
    inst.c_star = 1.0 + rng.uniform() * (1e6 - 1.0);
    inst.eps_cap = rng.uniform();
    inst.eps_n = rng.uniform() * inst.eps_cap;
    inst.d = rng.uniform();
    // learned solution anywhere inside the credibility ball, both sides
    double c_rule = inst.c_rule();
    double c_learned = c_rule * (1.0 + inst.d * (2.0 * rng.uniform() - 1.0));
    emit(i, inst, c_learned);
  }
  write_file("theorem_report.csv", os.str());
  if (violations > 0)
    throw EngineError("theorem verification found " +
                      std::to_string(violations) + " violations");
}

void Experiment::run_elc_bench() {
  TableSpec spec = parse_table(config_);
  auto rows = static_cast<std::size_t>(
      config_.get_int_or("bench", "rows", 100000));
  spec.row_count = rows;
  auto n_queries =
      static_cast<std::size_t>(config_.get_int_or("bench", "queries", 10000));
  u64 seed = seeds_.front();

  Table table = generate_table(spec, seed);
  TableStats stats = build_stats(table);
  auto templates = load_templates(config_, spec, seed ^ 0x7ea71e5u);
  auto queries = generate_queries(templates, spec, n_queries, seed ^ 0x51abe1u);

  using clock = std::chrono::steady_clock;
  auto t0 = clock::now();
  LabelSources sources;
  sources.templates = &templates;
  sources.rule = [&stats](const Query& q) {
    return estimate_cardinality_rule(stats, q);
  };
  TrainingSet rule_ts = collect_labels(spec, sources, n_queries, seed ^ 0x51abe1u);
  auto t1 = clock::now();
  TrainingSet exec_ts = label_by_execution(queries, table);
  auto t2 = clock::now();

  double rule_s = std::chrono::duration<double>(t1 - t0).count();
  double exec_s = std::chrono::duration<double>(t2 - t1).count();
  std::ostringstream os;
  os << "rows,queries,rule_seconds,execution_seconds,ratio,rule_examples,"
        "execution_examples\n";
  os << rows << ',' << n_queries << ',' << format_real(rule_s) << ','
     << format_real(exec_s) << ',' << format_real(exec_s / std::max(rule_s, 1e-12))
     << ',' << rule_ts.examples.size() << ',' << exec_ts.examples.size() << '\n';
  write_file("elc_bench.csv", os.str());
}

void Experiment::run_report() {
  std::string dir = config_.get_or("report", "dir", out_dir_);
  std::ostringstream os;
  os << "file,rows,last_line\n";
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".csv") paths.push_back(entry.path());
  std::sort(paths.begin(), paths.end());
  for (const auto& p : paths) {
    std::ifstream in(p);
    std::string line, last;
    std::size_t rows = 0;
    bool first = true;
    while (std::getline(in, line)) {
      if (first) {
        first = false;
        continue;
      }
      ++rows;
      last = line;
    }
    os << p.filename().string() << ',' << rows << ",\"" << last << "\"\n";
  }
  write_file("report.csv", os.str());
}

}  // namespace eel
