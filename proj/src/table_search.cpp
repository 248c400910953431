#include "table_search.hpp"

#include <array>
#include <numeric>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace boolpp::detail {

namespace {

constexpr std::uint32_t kNoCell = ~std::uint32_t{0};
constexpr std::size_t kLookaheadDepth = 2;

inline int pattern_bit(std::uint32_t pattern, int length, int position) {
  return static_cast<int>((pattern >> (length - 1 - position)) & 1u);
}

}  // namespace

// Relations of arity <= 3 are checked by enumerating row selections that
// contain the new cell, pruning on column prefixes that cannot extend to a
// tuple. Larger relations use a layered automaton and a breadth-first pass
// over the reachable column-state vectors, which stays small for blockers
// and parity relations.
struct RelationalConstraint::Compiled {
  explicit Compiled(const Relation& rel) : r(rel.arity()) {
    for (std::uint32_t t = 0; t < (1u << r); ++t)
      if (!rel.contains(t)) bad_outputs.push_back(t);
    if (r <= 3) {
      invalid_prefixes.resize(static_cast<std::size_t>(r) + 1);
      for (int len = 1; len <= r; ++len) {
        for (std::uint32_t u = 0; u < (1u << len); ++u) {
          bool extends = false;
          for (std::uint32_t s = 0; s < (1u << (r - len)) && !extends; ++s)
            extends = rel.contains((u << (r - len)) | s);
          if (!extends) invalid_prefixes[static_cast<std::size_t>(len)].push_back(u);
        }
      }
      return;
    }
    build_automaton(rel);
  }

  void build_automaton(const Relation& rel) {
    // States at level p are residual languages of length-p prefixes.
    std::vector<std::vector<std::uint32_t>> prefix_state(static_cast<std::size_t>(r) + 1);
    col_live.resize(static_cast<std::size_t>(r) + 1);
    out_live.resize(static_cast<std::size_t>(r) + 1);
    for (int p = 0; p <= r; ++p) {
      const int rest = r - p;
      std::unordered_map<std::string, std::uint32_t> ids;
      auto& states = prefix_state[static_cast<std::size_t>(p)];
      states.resize(std::size_t{1} << p);
      for (std::uint32_t u = 0; u < (1u << p); ++u) {
        std::string residual(std::size_t{1} << rest, '0');
        std::size_t count = 0;
        for (std::uint32_t s = 0; s < (1u << rest); ++s)
          if (rel.contains((u << rest) | s)) {
            residual[s] = '1';
            ++count;
          }
        auto [it, fresh] = ids.emplace(residual, static_cast<std::uint32_t>(ids.size()));
        if (fresh) {
          col_live[static_cast<std::size_t>(p)].push_back(count > 0);
          out_live[static_cast<std::size_t>(p)].push_back(count < residual.size());
        }
        states[u] = it->second;
      }
    }
    trans.resize(static_cast<std::size_t>(r));
    for (int p = 0; p < r; ++p) {
      auto& level = trans[static_cast<std::size_t>(p)];
      level.assign(col_live[static_cast<std::size_t>(p)].size(), {0, 0});
      for (std::uint32_t u = 0; u < (1u << p); ++u)
        for (int b = 0; b < 2; ++b)
          level[prefix_state[static_cast<std::size_t>(p)][u]][static_cast<std::size_t>(b)] =
              prefix_state[static_cast<std::size_t>(p) + 1][(u << 1) | static_cast<std::uint32_t>(b)];
    }
  }

  bool consistent(const PartialTable& t, std::uint32_t cell) const {
    return r <= 3 ? consistent_small(t, cell) : consistent_automaton(t);
  }

  bool consistent_small(const PartialTable& t, std::uint32_t cell) const {
    const std::uint32_t all = (1u << t.arity) - 1;
    std::array<std::vector<std::uint32_t>, 2> by_value;
    for (auto d : t.decided) by_value[static_cast<std::size_t>(t.value[d])].push_back(d);
    // cell == kNoCell: look for any violation among the decided cells.
    const int vc = cell == kNoCell ? -1 : t.value[cell];
    std::array<std::uint32_t, 3> chosen{};

    // Depth-first over positions; true when a violating selection exists.
    std::function<bool(int, int, std::uint32_t)> search = [&](int p, int fixed, std::uint32_t out) -> bool {
      if (p == r) return true;
      const int want = pattern_bit(out, r, p);
      auto try_cell = [&](std::uint32_t d) {
        chosen[static_cast<std::size_t>(p)] = d;
        for (auto w : invalid_prefixes[static_cast<std::size_t>(p) + 1]) {
          std::uint32_t m = all;
          for (int q = 0; q <= p; ++q)
            m &= pattern_bit(w, p + 1, q) ? chosen[static_cast<std::size_t>(q)] : ~chosen[static_cast<std::size_t>(q)];
          if (m & all) return false;
        }
        return search(p + 1, fixed, out);
      };
      if (p == fixed) return try_cell(cell);
      for (auto d : by_value[static_cast<std::size_t>(want)])
        if (try_cell(d)) return true;
      return false;
    };

    if (vc < 0) {
      for (auto b : bad_outputs)
        if (search(0, -1, b)) return false;
      return true;
    }
    for (int i = 0; i < r; ++i)
      for (auto b : bad_outputs)
        if (pattern_bit(b, r, i) == vc && search(0, i, b)) return false;
    return true;
  }

  bool consistent_automaton(const PartialTable& t) const {
    const int n = t.arity;
    // Key: one byte per column state, then the output state.
    std::unordered_set<std::string> frontier{std::string(static_cast<std::size_t>(n) + 1, '\0')};
    for (int p = 0; p < r; ++p) {
      const auto& level = trans[static_cast<std::size_t>(p)];
      const auto& clive = col_live[static_cast<std::size_t>(p) + 1];
      const auto& olive = out_live[static_cast<std::size_t>(p) + 1];
      std::unordered_set<std::string> next;
      std::string key(static_cast<std::size_t>(n) + 1, '\0');
      for (const auto& state : frontier) {
        for (auto d : t.decided) {
          bool live = true;
          for (int j = 0; j < n && live; ++j) {
            auto s = level[static_cast<unsigned char>(state[static_cast<std::size_t>(j)])]
                          [static_cast<std::size_t>(argument_bit(d, n, j))];
            live = clive[s];
            key[static_cast<std::size_t>(j)] = static_cast<char>(s);
          }
          if (!live) continue;
          auto o = level[static_cast<unsigned char>(state[static_cast<std::size_t>(n)])]
                        [static_cast<std::size_t>(t.value[d])];
          if (!olive[o]) continue;
          key[static_cast<std::size_t>(n)] = static_cast<char>(o);
          next.insert(key);
        }
      }
      if (next.empty()) return true;
      frontier = std::move(next);
    }
    return frontier.empty();
  }

  int r;
  std::vector<std::uint32_t> bad_outputs;
  std::vector<std::vector<std::uint32_t>> invalid_prefixes;
  std::vector<std::vector<std::array<std::uint32_t, 2>>> trans;
  std::vector<std::vector<char>> col_live, out_live;
};

RelationalConstraint::RelationalConstraint(const std::vector<Relation>& relations) {
  for (const auto& rel : relations) {
    if (rel.empty() || rel.full()) continue;  // preserved by every operation
    compiled_.push_back(std::make_unique<Compiled>(rel));
    if (compiled_.back()->r > 3) {
      for (const auto& level : compiled_.back()->col_live)
        if (level.size() > 255) throw Error("relation " + rel.name() + " is too irregular to compile");
    }
  }
}

RelationalConstraint::~RelationalConstraint() = default;

bool RelationalConstraint::consistent(const PartialTable& t, std::uint32_t cell) const {
  for (const auto& c : compiled_)
    if (!c->consistent(t, cell)) return false;
  return true;
}

bool RelationalConstraint::preserved_by(const BoolFn& f) const {
  PartialTable t;
  t.arity = f.arity();
  t.value.resize(f.table_size());
  for (std::uint32_t i = 0; i < f.table_size(); ++i) {
    t.value[i] = f.at(i) ? 1 : 0;
    t.decided.push_back(i);
  }
  for (const auto& c : compiled_)
    if (!c->consistent(t, kNoCell)) return false;
  return true;
}

bool MemberConstraint::consistent(const PartialTable& t, std::uint32_t) const {
  for (const auto& m : members_) {
    bool agrees = true;
    for (auto d : t.decided)
      if (m.at(d) != (t.value[d] != 0)) {
        agrees = false;
        break;
      }
    if (agrees) return true;
  }
  return false;
}

TableSearch::TableSearch(std::vector<SearchSymbol> symbols, const std::vector<CellLink>& links,
                         std::uint64_t node_limit)
    : symbols_(std::move(symbols)), node_limit_(node_limit) {
  std::vector<std::size_t> offset;
  std::size_t total = 0;
  for (const auto& s : symbols_) {
    if (s.arity < 1 || s.arity > kMaxArity) throw Error("symbol " + s.name + " has unsupported arity");
    offset.push_back(total);
    total += std::size_t{1} << s.arity;
    PartialTable t;
    t.arity = s.arity;
    t.value.assign(std::size_t{1} << s.arity, -1);
    tables_.push_back(std::move(t));
  }

  std::vector<std::size_t> parent(total);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& l : links) {
    auto a = find(offset[static_cast<std::size_t>(l.symbol_a)] + l.cell_a);
    auto b = find(offset[static_cast<std::size_t>(l.symbol_b)] + l.cell_b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }

  std::unordered_map<std::size_t, std::size_t> class_of_root;
  for (std::size_t s = 0; s < symbols_.size(); ++s) {
    for (std::uint32_t i = 0; i < (1u << symbols_[s].arity); ++i) {
      auto root = find(offset[s] + i);
      auto [it, fresh] = class_of_root.emplace(root, classes_.size());
      if (fresh) classes_.emplace_back();
      classes_[it->second].push_back({static_cast<int>(s), i});
    }
  }
}

bool TableSearch::assign(std::size_t cls, int value) {
  for (const auto& c : classes_[cls]) {
    auto& t = tables_[static_cast<std::size_t>(c.symbol)];
    t.value[c.index] = static_cast<std::int8_t>(value);
    t.decided.push_back(c.index);
  }
  for (const auto& c : classes_[cls]) {
    const auto* constraint = symbols_[static_cast<std::size_t>(c.symbol)].constraint;
    if (constraint && !constraint->consistent(tables_[static_cast<std::size_t>(c.symbol)], c.index)) return false;
  }
  return true;
}

void TableSearch::unassign(std::size_t cls) {
  for (auto it = classes_[cls].rbegin(); it != classes_[cls].rend(); ++it) {
    auto& t = tables_[static_cast<std::size_t>(it->symbol)];
    t.value[it->index] = -1;
    t.decided.pop_back();
  }
}

std::vector<BoolFn> TableSearch::snapshot() const {
  std::vector<BoolFn> out;
  for (const auto& t : tables_) {
    BoolFn f(t.arity);
    for (std::uint32_t i = 0; i < t.value.size(); ++i) f.set(i, t.value[i] == 1);
    out.push_back(std::move(f));
  }
  return out;
}

bool TableSearch::descend(std::size_t cls, const std::function<bool(const std::vector<BoolFn>&)>& visit,
                          SearchStats& stats) {
  if (cls == classes_.size()) return visit(snapshot());
  // Lookahead near the root: a later class that admits neither value closes
  // the branch. Deeper in the tree it costs more than it prunes.
  if (cls < kLookaheadDepth) {
    for (std::size_t later = cls; later < classes_.size(); ++later) {
      bool open = false;
      for (int v = 0; v < 2 && !open; ++v) {
        ++stats.nodes;
        open = assign(later, v);
        unassign(later);
      }
      if (!open) return true;
    }
  }
  for (int v = 0; v < 2; ++v) {
    ++stats.nodes;
    if (node_limit_ && stats.nodes > node_limit_) {
      stats.exhausted = false;
      stopped_ = true;
      return false;
    }
    bool ok = assign(cls, v);
    bool keep_going = !ok || descend(cls + 1, visit, stats);
    unassign(cls);
    if (!keep_going) return false;
  }
  return true;
}

std::optional<std::vector<BoolFn>> TableSearch::first(SearchStats& stats) {
  std::optional<std::vector<BoolFn>> found;
  each(
      [&](const std::vector<BoolFn>& sol) {
        found = sol;
        return false;
      },
      stats);
  return found;
}

void TableSearch::each(const std::function<bool(const std::vector<BoolFn>&)>& visit, SearchStats& stats) {
  stopped_ = false;
  stats.exhausted = true;
  descend(0, visit, stats);
}

}  // namespace boolpp::detail
