#include "eel/sea.hpp"

#include <cmath>

namespace eel {

double credibility(double c_learned, double c_rule) {
  if (c_rule <= 0.0)
    throw EngineError("credibility: rule solution must be positive");
  return std::abs(c_learned - c_rule) / c_rule;
}

CredibilityDecision choose(double c_learned, double c_rule, double d) {
  if (d < 0.0) throw EngineError("choose: credibility bound must be >= 0");
  CredibilityDecision dec;
  dec.c_learned = c_learned;
  dec.c_rule = c_rule;
  dec.credibility = credibility(c_learned, c_rule);
  dec.bound = d;
  dec.chosen = dec.credibility < d ? Chosen::Learned : Chosen::Rule;
  return dec;
}

double theorem_bound(double d, double eps_cap) {
  if (d < 0.0 || eps_cap < 0.0)
    throw EngineError("theorem_bound: arguments must be >= 0");
  return d * (1.0 + eps_cap) + eps_cap;
}

bool verify_bound_instance(const BoundInstance& inst, double c_learned,
                           double rel_tolerance) {
  if (inst.eps_n > inst.eps_cap)
    throw EngineError("bound instance: eps_n exceeds eps_cap");
  double c = credibility(c_learned, inst.c_rule());
  if (c > inst.d * (1.0 + rel_tolerance) + rel_tolerance)
    throw EngineError("bound instance not gated: credibility exceeds d");
  double lhs = std::abs(c_learned - inst.c_star) / inst.c_star;
  double rhs = theorem_bound(inst.d, inst.eps_cap);
  return lhs <= rhs * (1.0 + rel_tolerance) + rel_tolerance;
}

}  // namespace eel
