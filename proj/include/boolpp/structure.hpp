#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "boolpp/boolfn.hpp"

namespace boolpp {

class CloneSlice;

/// A relation on {0,1}. Tuples are encoded like table indices: the first
/// coordinate is the most significant bit.
class Relation {
 public:
  Relation(std::string name, int arity, std::vector<std::uint32_t> tuples);
  /// Tuples written as bit strings, leftmost character = first coordinate.
  static Relation from_strings(std::string name, int arity, const std::vector<std::string>& tuples);
  /// {0,1}^arity minus the listed tuples.
  static Relation complement_of(std::string name, int arity, const std::vector<std::uint32_t>& missing);

  const std::string& name() const { return name_; }
  int arity() const { return arity_; }
  const std::vector<std::uint32_t>& tuples() const { return tuples_; }
  std::size_t size() const { return tuples_.size(); }
  bool contains(std::uint32_t tuple) const { return (bits_[tuple >> 6] >> (tuple & 63)) & 1u; }
  bool empty() const { return tuples_.empty(); }
  bool full() const { return tuples_.size() == (std::size_t{1} << arity_); }

  std::string tuple_string(std::uint32_t tuple) const;
  Relation renamed(std::string name) const;

  /// Same arity and tuple set; names are ignored.
  bool same_tuples(const Relation& other) const { return arity_ == other.arity_ && tuples_ == other.tuples_; }

 private:
  std::string name_;
  int arity_;
  std::vector<std::uint32_t> tuples_;
  std::vector<std::uint64_t> bits_;
};

/// A relational structure with domain {0,1}.
struct Structure {
  std::string name;
  std::vector<Relation> relations;

  const Relation* find(std::string_view relation_name) const;
  int max_arity() const;
};

/// True iff applying f row-wise to any f.arity() tuples of R yields a tuple of R.
bool preserves(const BoolFn& f, const Relation& r);
bool preserves_all(const BoolFn& f, const Structure& s);

/// All k-ary operations preserving every relation of `s`, found by
/// backtracking over table cells in index order.
CloneSlice polymorphisms_at_arity(const Structure& s, int k);

/// Canonical structures: D_2SAT, D_HORNSAT, D_3LIN2, D_STCON, B2_LEQ, C2,
/// blocker:<k>, blocker_leq:<k>, idempotence.
Structure canonical(std::string_view name);
std::vector<std::string> canonical_names();

/// Relation building blocks used by several modules.
Relation singleton(bool value);                  // {0} or {1}, named "zero"/"one"
Relation order_relation();                       // "leq" = {00,01,11}
Relation blocker_relation(int k);                // "B<k>" = {0,1}^k minus 0..0
Relation nand_relation(int k);                   // "NAND<k>" = {0,1}^k minus 1..1
Relation affine_relation(int a, int b, int c, int d);  // {ax+by+cz=d}

/// Structure file: {"name": ..., "relations": [{"name", "arity", "tuples": ["010", ...]}]}.
Structure structure_from_json(std::string_view text);
std::string structure_to_json(const Structure& s);
Structure load_structure(const std::string& path);

}  // namespace boolpp
