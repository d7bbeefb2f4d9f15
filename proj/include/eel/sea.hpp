#pragma once

#include "eel/common.hpp"

namespace eel {

enum class Chosen { Learned, Rule };

/// Audit record of one credibility-gated choice.
struct CredibilityDecision {
  double c_learned = 0.0;
  double c_rule = 0.0;
  double credibility = 0.0;
  double bound = 0.0;
  Chosen chosen = Chosen::Rule;

  double chosen_value() const {
    return chosen == Chosen::Learned ? c_learned : c_rule;
  }
};

/// One randomized verification instance: rule solution C_R = C_*(1 + eps_n)
/// with eps_n <= eps_cap, and a learned solution inside the credibility ball.
struct BoundInstance {
  double c_star = 1.0;   // optimal solution value
  double eps_n = 0.0;    // realized rule error |C_R - C_*| / C_*
  double eps_cap = 0.0;  // worst-case rule error bound
  double d = 0.0;        // credibility bound

  double c_rule() const { return c_star * (1.0 + eps_n); }
};

// |c_L - c_R| / c_R. c_R must be positive.
double credibility(double c_learned, double c_rule);

// Learned solution iff credibility < d (strict); boundary goes to the rule.
CredibilityDecision choose(double c_learned, double c_rule, double d);

// Worst-case relative error of a gated learned solution: d(1 + eps) + eps.
double theorem_bound(double d, double eps_cap);

// Checks |c_L - C_*| / C_* <= theorem_bound(d, eps_cap) for one instance.
// Requires the instance to be gated: credibility(c_L, C_R) <= d.
bool verify_bound_instance(const BoundInstance& inst, double c_learned,
                           double rel_tolerance = 1e-9);

}  // namespace eel
