#pragma once

#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "boolpp/clone.hpp"
#include "boolpp/conditions.hpp"
#include "boolpp/structure.hpp"

namespace boolpp {

enum class Tag { Bottom, Meet, D3, M, D3M, P, Q, DiP, DiQ, MQ, Top };

/// A pp-constructability class of Boolean clones. `index` is the chain
/// index i >= 3 for DiP / DiQ and 0 otherwise.
struct PosetClass {
  Tag tag = Tag::Bottom;
  int index = 0;

  static PosetClass dip(int i);
  static PosetClass diq(int i);

  std::string to_string() const;  // "Meet", "DiQ(4)"
  /// Accepts to_string() output and "DiP4" / "dip:4".
  static std::optional<PosetClass> parse(std::string_view text);

  friend bool operator==(const PosetClass&, const PosetClass&) = default;
  friend auto operator<=>(const PosetClass&, const PosetClass&) = default;
};

bool leq(const PosetClass& a, const PosetClass& b);

/// "NP-complete", "P-complete", "⊕L-complete", "NL-complete" or "L".
std::string complexity_of(const PosetClass& c);

struct ClassInfo {
  PosetClass cls;
  std::vector<std::string> members;  // catalog labels in the class
  std::string canonical_structure;   // empty when none is shipped
  std::string complexity;
  std::string note;
  GeneratorSet representative;
};

ClassInfo class_info(const PosetClass& c);

/// Classes with chain index up to `chain_depth`, plus the limits P and Q.
std::vector<PosetClass> lattice_classes(int chain_depth);

struct Cover {
  PosetClass lower, upper;
  bool elided = false;  // P -> DiP(depth) and Q -> DiQ(depth): the chain continues below
};

std::vector<Cover> hasse_covers(int chain_depth);
std::string export_dot(int chain_depth);

struct Separation {
  H1Condition condition;
  SatResult in_upper;  // witness in the representative of a
  SatResult in_lower;  // exhaustive refusal in the representative of b
};

/// A height 1 condition holding in a but not in b, re-verified on the class
/// representatives. Throws Error when leq(a, b).
Separation separating_condition(const PosetClass& a, const PosetClass& b);

struct BatteryOutcome {
  std::string condition;  // H1Condition::name
  bool holds = false;
  SatResult result;
};

struct Classification {
  std::optional<PosetClass> cls;  // empty when unresolved
  std::string complexity;
  std::vector<BatteryOutcome> battery;  // in evaluation order
  int chain_bound = 0;
  bool cutoff_binds = false;  // the QNU chain search reached the bound without a hit
  std::string note;

  const BatteryOutcome* find(std::string_view condition) const;
};

using ConditionOracle = std::function<SatResult(const H1Condition&)>;

/// The decision table. `allow_limits` is false for finite structures, where
/// P and Q cannot occur.
Classification classify_with(const ConditionOracle& oracle, int chain_bound, bool allow_limits);

/// The chain bound is raised to the largest generator arity when that is larger.
Classification classify_generators(const GeneratorSet& g, int chain_bound = 6);
/// Chain bound: largest relation arity plus one (at least 3).
Classification classify_structure(const Structure& a);

/// Names of the full battery for chain bound K, in column order:
/// Const, Comm, QMin, QNU(3..K), QJ(4), HM(3).
std::vector<H1Condition> battery_conditions(int chain_bound);

/// One row per catalog entry: every battery condition evaluated plus the class.
struct DecisionRow {
  std::string label;
  std::vector<bool> outcomes;  // battery_conditions order
  std::string cls;             // PosetClass::to_string or "unresolved"
};

std::vector<DecisionRow> compute_decision_table(int chain_bound, int threads = 0);
std::string format_decision_table(int chain_bound, const std::vector<DecisionRow>& rows);
std::vector<DecisionRow> parse_decision_table(std::string_view text, int* chain_bound);

}  // namespace boolpp
