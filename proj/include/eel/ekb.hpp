#pragma once

#include <array>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "eel/common.hpp"

namespace eel {

enum class TaskTag { Cardinality, Index };
enum class GoalTag { Accuracy, Cost, Time };
enum class DataModelTag { Relational, Graph, KeyValue };
enum class ModeTag { Online, Offline };

/// Applicability tags of a rule-based method; each categorical slot holds
/// exactly one value.
struct FeatureTags {
  TaskTag task = TaskTag::Cardinality;
  GoalTag goal = GoalTag::Accuracy;
  DataModelTag data_model = DataModelTag::Relational;
  ModeTag mode = ModeTag::Online;
  bool multi_column = false;

  static constexpr std::size_t kEncodedLength = 11;
  std::array<double, kEncodedLength> encode() const;

  bool operator==(const FeatureTags&) const = default;
};

// Parses tag words like {"index", "cost", "relational", "offline", "multi"}.
// Throws EngineError when a categorical slot is missing or set twice.
FeatureTags tags_from_words(const std::vector<std::string>& words);
std::vector<std::string> tags_to_words(const FeatureTags& tags);

/// Unstandardized method description as authored in a KB file or config.
struct MethodDescriptor {
  std::vector<std::string> inputs;
  std::string output;
  std::vector<std::pair<std::string, double>> parameters;
  std::vector<std::string> tags;
  std::string behavior_id;
};

/// Standardized KB entry: (input, output, parameter, feature) plus the id of
/// the executable behavior registered in the artifact.
struct RuleMethod {
  std::vector<std::string> inputs;
  std::string output;
  std::vector<std::pair<std::string, double>> parameters;
  FeatureTags feature;
  std::string behavior_id;
};

/// Names of rule behaviors the artifact ships; standardization rejects
/// descriptors pointing anywhere else.
class BehaviorRegistry {
 public:
  static BehaviorRegistry with_builtins();

  void register_behavior(const std::string& id);
  bool known(const std::string& id) const;

 private:
  std::set<std::string> ids_;
};

RuleMethod standardize(const MethodDescriptor& raw, const BehaviorRegistry& reg);

double tag_similarity(const FeatureTags& a, const FeatureTags& b);

class KnowledgeBase {
 public:
  void add(RuleMethod entry);
  const std::vector<RuleMethod>& entries() const { return entries_; }

  // Entry maximizing cosine similarity to the demand vector; ties go to the
  // lowest entry index. Returns the entry index.
  std::size_t match_index(const FeatureTags& demand) const;
  const RuleMethod& match(const FeatureTags& demand) const;

  std::string serialize() const;
  static KnowledgeBase deserialize(const std::string& text,
                                   const BehaviorRegistry& reg);

 private:
  std::vector<RuleMethod> entries_;
};

// True iff similarity(current.feature, env_demand) < threshold (strict).
bool needs_update(const RuleMethod& current, const FeatureTags& env_demand,
                  double threshold);

}  // namespace eel
