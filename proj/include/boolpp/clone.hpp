#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "boolpp/boolfn.hpp"
#include "boolpp/structure.hpp"

namespace boolpp {

/// Generators of a clone. An empty set denotes the projection clone.
struct GeneratorSet {
  std::string label;
  std::vector<BoolFn> generators;

  /// "d3, p" / "3:00010111" / "" ; an optional "label =" prefix is kept as label.
  static GeneratorSet parse(std::string_view spec);
  std::string to_string() const;
};

/// The k-ary part of a clone, as a sorted set of tables.
class CloneSlice {
 public:
  CloneSlice(int arity, std::vector<BoolFn> members);

  int arity() const { return arity_; }
  const std::vector<BoolFn>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool contains(const BoolFn& f) const;
  bool includes(const CloneSlice& other) const;  // other is a subset

  friend bool operator==(const CloneSlice&, const CloneSlice&) = default;

 private:
  int arity_;
  std::vector<BoolFn> members_;
};

/// Least set of k-ary operations containing the projections and closed
/// under superposition with the generators.
CloneSlice closure_at_arity(const GeneratorSet& g, int k);

/// f in [G]. Arity <= 3 decides by closure; larger arities use the
/// relational description (see invariant_relations).
bool contains(const GeneratorSet& g, const BoolFn& f);

GeneratorSet dual_clone(const GeneratorSet& g);

CloneSlice idempotent_reduct_at_arity(const GeneratorSet& g, int k);

/// True iff [G] has a constant operation.
bool has_constant(const GeneratorSet& g);
/// True iff the negation c lies in [G].
bool has_negation(const GeneratorSet& g);

/// Relations preserved by every generator, drawn from a fixed library:
/// all ternary relations (kept only when not an intersection of larger
/// preserved ternary relations), the two 4-ary parity relations, and the
/// blockers B_k / NAND_k for 4 <= k <= max_blocker_arity. For every
/// Boolean clone, the n-ary polymorphisms of the result are exactly the
/// n-ary members of [G] when n <= max_blocker_arity.
std::vector<Relation> invariant_relations(const GeneratorSet& g, int max_blocker_arity);
Structure invariant_structure(const GeneratorSet& g, int max_blocker_arity);

struct CatalogEntry {
  std::string label;
  GeneratorSet generators;
  std::string dual_label;
};

/// Every clone named in the classification, with the chains d_i up to `chain_bound`.
std::vector<CatalogEntry> catalog(int chain_bound = 8);
std::optional<CatalogEntry> catalog_entry(std::string_view label, int chain_bound = 8);

enum class MinorMapRule { Dual, Constant, NegationCollapse, Idempotentizer };

std::optional<MinorMapRule> minor_map_rule_from_name(std::string_view name);
std::string to_string(MinorMapRule rule);

struct MinorMapCheck {
  bool ok = false;
  std::string detail;  // first failure, or the precondition that does not hold
  std::size_t operations_checked = 0;
  std::size_t minors_checked = 0;
};

/// Checks that the rule's map xi sends every f in [source] of arity <= cap
/// into [target] and satisfies xi(f_pi) = xi(f)_pi for every index map pi
/// with target arity <= cap. Throws Error when the rule does not apply.
MinorMapCheck verify_minor_map(MinorMapRule rule, const GeneratorSet& source, const GeneratorSet& target, int cap);

}  // namespace boolpp
