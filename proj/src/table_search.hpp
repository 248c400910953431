#pragma once

// Backtracking over the truth tables of several function symbols at once.
// Cells forced equal by identities are merged into classes up front; each
// symbol's table is checked against its own constraint after every
// assignment.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "boolpp/boolfn.hpp"
#include "boolpp/structure.hpp"

namespace boolpp::detail {

struct PartialTable {
  int arity = 0;
  std::vector<std::int8_t> value;       // -1 while undecided
  std::vector<std::uint32_t> decided;  // in assignment order
};

class TableConstraint {
 public:
  virtual ~TableConstraint() = default;
  /// `cell` was just assigned. Every violation not involving `cell` has
  /// already been ruled out.
  virtual bool consistent(const PartialTable& t, std::uint32_t cell) const = 0;
};

/// The table must preserve every listed relation.
class RelationalConstraint final : public TableConstraint {
 public:
  explicit RelationalConstraint(const std::vector<Relation>& relations);
  ~RelationalConstraint() override;
  bool consistent(const PartialTable& t, std::uint32_t cell) const override;
  /// Full check of a complete table against every relation.
  bool preserved_by(const BoolFn& f) const;

 private:
  struct Compiled;
  std::vector<std::unique_ptr<Compiled>> compiled_;
};

/// The table must equal one of the listed operations.
class MemberConstraint final : public TableConstraint {
 public:
  explicit MemberConstraint(std::vector<BoolFn> members) : members_(std::move(members)) {}
  bool consistent(const PartialTable& t, std::uint32_t cell) const override;

 private:
  std::vector<BoolFn> members_;
};

struct SearchSymbol {
  std::string name;
  int arity = 1;
  const TableConstraint* constraint = nullptr;  // null: unconstrained
};

struct CellLink {
  int symbol_a;
  std::uint32_t cell_a;
  int symbol_b;
  std::uint32_t cell_b;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  bool exhausted = true;  // false when the node limit cut the search short
};

class TableSearch {
 public:
  TableSearch(std::vector<SearchSymbol> symbols, const std::vector<CellLink>& links,
              std::uint64_t node_limit = 0);

  /// First solution in the deterministic order (classes by first cell,
  /// value 0 before 1).
  std::optional<std::vector<BoolFn>> first(SearchStats& stats);

  /// Visits every solution; the visitor returns false to stop.
  void each(const std::function<bool(const std::vector<BoolFn>&)>& visit, SearchStats& stats);

 private:
  struct Cell {
    int symbol;
    std::uint32_t index;
  };

  bool descend(std::size_t cls, const std::function<bool(const std::vector<BoolFn>&)>& visit,
               SearchStats& stats);
  bool assign(std::size_t cls, int value);
  void unassign(std::size_t cls);
  std::vector<BoolFn> snapshot() const;

  std::vector<SearchSymbol> symbols_;
  std::vector<PartialTable> tables_;
  std::vector<std::vector<Cell>> classes_;
  std::uint64_t node_limit_;
  bool stopped_ = false;
};

}  // namespace boolpp::detail
