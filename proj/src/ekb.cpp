#include "eel/ekb.hpp"

#include <cmath>
#include <map>
#include <sstream>

namespace eel {

namespace {

// One-hot layout: task(2) | goal(3) | data_model(3) | mode(2) | multi(1)
constexpr std::size_t kTaskOffset = 0;
constexpr std::size_t kGoalOffset = 2;
constexpr std::size_t kDataModelOffset = 5;
constexpr std::size_t kModeOffset = 8;
constexpr std::size_t kMultiOffset = 10;

}  // namespace

std::array<double, FeatureTags::kEncodedLength> FeatureTags::encode() const {
  std::array<double, kEncodedLength> v{};
  v[kTaskOffset + static_cast<std::size_t>(task)] = 1.0;
  v[kGoalOffset + static_cast<std::size_t>(goal)] = 1.0;
  v[kDataModelOffset + static_cast<std::size_t>(data_model)] = 1.0;
  v[kModeOffset + static_cast<std::size_t>(mode)] = 1.0;
  v[kMultiOffset] = multi_column ? 1.0 : 0.0;
  return v;
}

FeatureTags tags_from_words(const std::vector<std::string>& words) {
  FeatureTags tags;
  bool has_task = false, has_goal = false, has_dm = false, has_mode = false;
  auto set_once = [](bool& flag, const std::string& word) {
    if (flag) throw EngineError("feature tags: slot set twice by '" + word + "'");
    flag = true;
  };
  for (const auto& w : words) {
    if (w == "cardinality") { set_once(has_task, w); tags.task = TaskTag::Cardinality; }
    else if (w == "index") { set_once(has_task, w); tags.task = TaskTag::Index; }
    else if (w == "accuracy") { set_once(has_goal, w); tags.goal = GoalTag::Accuracy; }
    else if (w == "cost") { set_once(has_goal, w); tags.goal = GoalTag::Cost; }
    else if (w == "time") { set_once(has_goal, w); tags.goal = GoalTag::Time; }
    else if (w == "relational") { set_once(has_dm, w); tags.data_model = DataModelTag::Relational; }
    else if (w == "graph") { set_once(has_dm, w); tags.data_model = DataModelTag::Graph; }
    else if (w == "kv") { set_once(has_dm, w); tags.data_model = DataModelTag::KeyValue; }
    else if (w == "online") { set_once(has_mode, w); tags.mode = ModeTag::Online; }
    else if (w == "offline") { set_once(has_mode, w); tags.mode = ModeTag::Offline; }
    else if (w == "multi") { tags.multi_column = true; }
    else if (w == "single") { tags.multi_column = false; }
    else throw EngineError("feature tags: unknown word '" + w + "'");
  }
  if (!has_task || !has_goal || !has_dm || !has_mode)
    throw EngineError("feature tags: every categorical slot needs a value");
  return tags;
}

std::vector<std::string> tags_to_words(const FeatureTags& tags) {
  std::vector<std::string> words;
  words.push_back(tags.task == TaskTag::Cardinality ? "cardinality" : "index");
  switch (tags.goal) {
    case GoalTag::Accuracy: words.push_back("accuracy"); break;
    case GoalTag::Cost: words.push_back("cost"); break;
    case GoalTag::Time: words.push_back("time"); break;
  }
  switch (tags.data_model) {
    case DataModelTag::Relational: words.push_back("relational"); break;
    case DataModelTag::Graph: words.push_back("graph"); break;
    case DataModelTag::KeyValue: words.push_back("kv"); break;
  }
  words.push_back(tags.mode == ModeTag::Online ? "online" : "offline");
  words.push_back(tags.multi_column ? "multi" : "single");
  return words;
}

BehaviorRegistry BehaviorRegistry::with_builtins() {
  BehaviorRegistry reg;
  reg.register_behavior("histogram-estimator");
  reg.register_behavior("coldstart-estimator");
  reg.register_behavior("index-frequent-build");
  reg.register_behavior("index-drop-infrequent");
  reg.register_behavior("index-drop-repeated");
  return reg;
}

void BehaviorRegistry::register_behavior(const std::string& id) { ids_.insert(id); }

bool BehaviorRegistry::known(const std::string& id) const {
  return ids_.count(id) > 0;
}

RuleMethod standardize(const MethodDescriptor& raw, const BehaviorRegistry& reg) {
  if (!reg.known(raw.behavior_id))
    throw EngineError("standardize: unknown behavior '" + raw.behavior_id + "'");
  if (raw.output.empty())
    throw EngineError("standardize: method output is empty");
  RuleMethod m;
  m.inputs = raw.inputs;
  m.output = raw.output;
  m.parameters = raw.parameters;
  m.feature = tags_from_words(raw.tags);
  m.behavior_id = raw.behavior_id;
  return m;
}

double tag_similarity(const FeatureTags& a, const FeatureTags& b) {
  auto va = a.encode();
  auto vb = b.encode();
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < va.size(); ++i) {
    dot += va[i] * vb[i];
    na += va[i] * va[i];
    nb += vb[i] * vb[i];
  }
  // sqrt of the product keeps identical tag sets at exactly 1.0
  return dot / std::sqrt(na * nb);
}

void KnowledgeBase::add(RuleMethod entry) {
  for (const auto& existing : entries_)
    if (existing.feature == entry.feature)
      throw EngineError("knowledge base: duplicate feature vector");
  entries_.push_back(std::move(entry));
}

std::size_t KnowledgeBase::match_index(const FeatureTags& demand) const {
  if (entries_.empty()) throw EngineError("knowledge base is empty");
  std::size_t best = 0;
  double best_sim = -1.0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    double sim = tag_similarity(entries_[i].feature, demand);
    if (sim > best_sim) {  // ties keep the lowest index
      best_sim = sim;
      best = i;
    }
  }
  return best;
}

const RuleMethod& KnowledgeBase::match(const FeatureTags& demand) const {
  return entries_[match_index(demand)];
}

std::string KnowledgeBase::serialize() const {
  std::ostringstream os;
  for (const auto& m : entries_) {
    os << "entry\n";
    os << "  behavior " << m.behavior_id << '\n';
    os << "  output " << m.output << '\n';
    os << "  inputs";
    for (const auto& in : m.inputs) os << ' ' << in;
    os << '\n';
    os << "  parameters";
    for (const auto& [k, v] : m.parameters) os << ' ' << k << '=' << v;
    os << '\n';
    os << "  feature";
    for (const auto& w : tags_to_words(m.feature)) os << ' ' << w;
    os << '\n';
  }
  return os.str();
}

KnowledgeBase KnowledgeBase::deserialize(const std::string& text,
                                         const BehaviorRegistry& reg) {
  KnowledgeBase kb;
  std::istringstream is(text);
  std::string line;
  MethodDescriptor current;
  bool open = false;
  auto flush = [&]() {
    if (open) kb.add(standardize(current, reg));
    current = MethodDescriptor{};
  };
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "entry") {
      flush();
      open = true;
    } else if (head == "behavior") {
      ls >> current.behavior_id;
    } else if (head == "output") {
      ls >> current.output;
    } else if (head == "inputs") {
      std::string w;
      while (ls >> w) current.inputs.push_back(w);
    } else if (head == "parameters") {
      std::string w;
      while (ls >> w) {
        auto eq = w.find('=');
        if (eq == std::string::npos)
          throw EngineError("kb file: malformed parameter '" + w + "'");
        current.parameters.emplace_back(w.substr(0, eq),
                                        std::stod(w.substr(eq + 1)));
      }
    } else if (head == "feature") {
      std::string w;
      while (ls >> w) current.tags.push_back(w);
    } else {
      throw EngineError("kb file: unknown record '" + head + "'");
    }
  }
  flush();
  return kb;
}

bool needs_update(const RuleMethod& current, const FeatureTags& env_demand,
                  double threshold) {
  return tag_similarity(current.feature, env_demand) < threshold;
}

}  // namespace eel
