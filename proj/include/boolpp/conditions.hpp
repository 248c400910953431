#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "boolpp/boolfn.hpp"
#include "boolpp/clone.hpp"
#include "boolpp/structure.hpp"

namespace boolpp {

/// One side of a height 1 identity: a symbol applied to variables.
struct Term {
  int symbol = 0;         // index into H1Condition::symbols
  std::vector<int> vars;  // 0-based variable indices

  friend bool operator==(const Term&, const Term&) = default;
};

struct Identity {
  Term lhs, rhs;
  int variables = 0;  // variables are 0..variables-1, numbered by first occurrence

  friend bool operator==(const Identity&, const Identity&) = default;
};

class H1Condition {
 public:
  struct Symbol {
    std::string name;
    int arity = 0;
    friend bool operator==(const Symbol&, const Symbol&) = default;
  };

  std::string name;  // display name, e.g. "QNU(4)"
  std::vector<Symbol> symbols;
  std::vector<Identity> identities;

  /// Index of the symbol, registering it on first use. Throws on an arity clash.
  int symbol(const std::string& name, int arity);
  int find_symbol(std::string_view name) const;  // -1 when absent

  /// Adds lhs ≈ rhs. Variable labels are arbitrary ints; they are renumbered.
  void add(int lhs_symbol, const std::vector<int>& lhs_vars, int rhs_symbol, const std::vector<int>& rhs_vars);

  /// DSL text, one identity per line.
  std::string to_string() const;
  int max_arity() const;

  friend bool operator==(const H1Condition& a, const H1Condition& b) {
    return a.symbols == b.symbols && a.identities == b.identities;
  }
};

/// Lines like "f(x,y,y) = f(y,x,y) = f(y,y,x)"; '≈' may replace '='; '#' starts a comment.
H1Condition parse_condition(std::string_view text);

enum class Family { QNU, QuasiMajority, QuasiMinority, QJ, HM, Comm, Const };

H1Condition builtin(Family family, int parameter = 0);
/// "qnu:4", "qmaj", "qminor", "qj:4", "hm:3", "comm", "const".
H1Condition builtin(std::string_view name);
std::vector<std::string> builtin_names();

struct Witness {
  std::vector<std::pair<std::string, BoolFn>> assignment;  // in symbol order
  const BoolFn* find(std::string_view symbol) const;
};

struct SatResult {
  std::optional<Witness> witness;
  std::uint64_t nodes = 0;
  bool exhausted = true;  // false: node limit reached, nothing is decided

  bool satisfied() const { return witness.has_value(); }
  bool refuted() const { return !witness && exhausted; }
};

/// True iff the tables satisfy every identity of the condition.
bool check_witness(const H1Condition& c, const Witness& w);

/// Search for witnesses inside [G]. Symbols of arity <= 3 range over the
/// closure; larger ones over the polymorphisms of invariant_relations(G, arity).
SatResult satisfies_clone(const GeneratorSet& g, const H1Condition& c, std::uint64_t node_limit = 0);

/// Search for witnesses among the polymorphisms of A.
SatResult satisfies_structure(const Structure& a, const H1Condition& c, std::uint64_t node_limit = 0);

}  // namespace boolpp
