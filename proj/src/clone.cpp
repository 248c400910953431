#include "boolpp/clone.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "table_search.hpp"

namespace boolpp {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<BoolFn> projections(int k) {
  std::vector<BoolFn> out;
  for (int i = 1; i <= k; ++i) out.push_back(BoolFn::projection(i, k));
  return out;
}

}  // namespace

GeneratorSet GeneratorSet::parse(std::string_view spec) {
  GeneratorSet g;
  std::string body(spec);
  if (auto eq = body.find('='); eq != std::string::npos) {
    g.label = trim(body.substr(0, eq));
    body = body.substr(eq + 1);
  }
  body = trim(body);
  if (body.size() >= 2 && body.front() == '[' && body.back() == ']') body = body.substr(1, body.size() - 2);
  if (trim(body).empty() || trim(body) == "∅") return g;
  std::stringstream ss(body + ",");
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw Error("generator spec \"" + std::string(spec) + "\" has an empty entry");
    g.generators.push_back(item.find(':') != std::string::npos ? BoolFn::parse(item) : named(item));
  }
  return g;
}

std::string GeneratorSet::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (i) out += ",";
    auto name = canonical_name(generators[i]);
    out += name.empty() ? generators[i].to_string() : name;
  }
  return out + "]";
}

CloneSlice::CloneSlice(int arity, std::vector<BoolFn> members) : arity_(arity), members_(std::move(members)) {
  for (const auto& m : members_)
    if (m.arity() != arity_) throw Error("clone slice member has the wrong arity");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool CloneSlice::contains(const BoolFn& f) const { return std::binary_search(members_.begin(), members_.end(), f); }

bool CloneSlice::includes(const CloneSlice& other) const {
  return std::includes(members_.begin(), members_.end(), other.members_.begin(), other.members_.end());
}

namespace {

// States of `gen` after a prefix of its arguments has been fixed, merged
// when the remaining subtables agree.
struct Residuals {
  std::vector<std::vector<std::array<std::uint32_t, 2>>> trans;
  std::vector<bool> final_value;
};

Residuals residuals_of(const BoolFn& gen) {
  const int n = gen.arity();
  Residuals res;
  std::vector<std::vector<std::uint32_t>> state(static_cast<std::size_t>(n) + 1);
  std::vector<std::size_t> count(static_cast<std::size_t>(n) + 1);
  for (int p = 0; p <= n; ++p) {
    const std::uint32_t width = 1u << (n - p);
    std::map<std::string, std::uint32_t> ids;
    auto& st = state[static_cast<std::size_t>(p)];
    st.resize(std::size_t{1} << p);
    for (std::uint32_t u = 0; u < (1u << p); ++u) {
      std::string sub(width, '0');
      for (std::uint32_t s = 0; s < width; ++s)
        if (gen.at((u << (n - p)) | s)) sub[s] = '1';
      auto [it, fresh] = ids.emplace(sub, static_cast<std::uint32_t>(ids.size()));
      if (fresh && p == n) res.final_value.push_back(sub[0] == '1');
      st[u] = it->second;
    }
    count[static_cast<std::size_t>(p)] = ids.size();
  }
  res.trans.resize(static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p) {
    auto& level = res.trans[static_cast<std::size_t>(p)];
    level.assign(count[static_cast<std::size_t>(p)], {0, 0});
    for (std::uint32_t u = 0; u < (1u << p); ++u)
      for (std::uint32_t b = 0; b < 2; ++b)
        level[state[static_cast<std::size_t>(p)][u]][b] = state[static_cast<std::size_t>(p) + 1][(u << 1) | b];
  }
  return res;
}

// All gen(f_1, ..., f_n) with every f_i drawn from `args`, computed one
// argument position at a time over the vectors of per-row states.
std::vector<BoolFn> apply_all(const Residuals& res, const std::vector<BoolFn>& args, int k) {
  const std::size_t rows = std::size_t{1} << k;
  std::set<std::vector<std::uint32_t>> frontier{std::vector<std::uint32_t>(rows, 0)};
  for (const auto& level : res.trans) {
    std::set<std::vector<std::uint32_t>> next;
    std::vector<std::uint32_t> v(rows);
    for (const auto& cur : frontier)
      for (const auto& f : args) {
        for (std::size_t x = 0; x < rows; ++x) v[x] = level[cur[x]][f.at(static_cast<std::uint32_t>(x)) ? 1 : 0];
        next.insert(v);
      }
    frontier = std::move(next);
  }
  std::vector<BoolFn> out;
  for (const auto& cur : frontier) {
    BoolFn h(k);
    for (std::size_t x = 0; x < rows; ++x) h.set(static_cast<std::uint32_t>(x), res.final_value[cur[x]]);
    out.push_back(std::move(h));
  }
  return out;
}

}  // namespace

CloneSlice closure_at_arity(const GeneratorSet& g, int k) {
  if (k < 1) throw Error("closure arity must be positive");
  std::vector<BoolFn> all = projections(k);
  std::unordered_set<BoolFn, BoolFnHash> seen(all.begin(), all.end());
  std::vector<Residuals> res;
  for (const auto& gen : g.generators) res.push_back(residuals_of(gen));

  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<BoolFn> found;
    for (const auto& r : res)
      for (auto& h : apply_all(r, all, k))
        if (seen.insert(h).second) found.push_back(std::move(h));
    grew = !found.empty();
    for (auto& f : found) all.push_back(std::move(f));
  }
  return CloneSlice(k, std::move(all));
}

bool has_constant(const GeneratorSet& g) {
  const auto unary = closure_at_arity(g, 1);
  return unary.contains(BoolFn::constant(false)) || unary.contains(BoolFn::constant(true));
}

bool has_negation(const GeneratorSet& g) { return closure_at_arity(g, 1).contains(named("c")); }

std::vector<Relation> invariant_relations(const GeneratorSet& g, int max_blocker_arity) {
  std::vector<Relation> out;
  auto preserved = [&](const Relation& r) {
    detail::RelationalConstraint c({r});
    return std::all_of(g.generators.begin(), g.generators.end(), [&](const BoolFn& f) { return c.preserved_by(f); });
  };

  // Ternary relations as 8-bit masks over the tuple indices 0..7.
  std::vector<unsigned> kept_masks;
  std::vector<unsigned> masks;
  for (unsigned mask = 1; mask < 255; ++mask) {
    std::vector<std::uint32_t> tuples;
    for (std::uint32_t t = 0; t < 8; ++t)
      if (mask & (1u << t)) tuples.push_back(t);
    if (preserved(Relation("T", 3, tuples))) masks.push_back(mask);
  }
  for (unsigned mask : masks) {
    unsigned meet = 255;
    for (unsigned other : masks)
      if (other != mask && (other & mask) == mask) meet &= other;
    if (meet != mask) kept_masks.push_back(mask);
  }
  for (unsigned mask : kept_masks) {
    std::vector<std::uint32_t> tuples;
    std::string name = "T{";
    for (std::uint32_t t = 0; t < 8; ++t)
      if (mask & (1u << t)) {
        tuples.push_back(t);
        if (name.size() > 2) name += ",";
        for (int j = 0; j < 3; ++j) name += static_cast<char>('0' + argument_bit(t, 3, j));
      }
    out.emplace_back(name + "}", 3, std::move(tuples));
  }

  for (int parity = 0; parity < 2; ++parity) {
    std::vector<std::uint32_t> tuples;
    for (std::uint32_t t = 0; t < 16; ++t)
      if ((__builtin_popcount(t) & 1) == parity) tuples.push_back(t);
    Relation r(parity ? "ODD4" : "EVEN4", 4, std::move(tuples));
    if (preserved(r)) out.push_back(std::move(r));
  }
  for (int k = 4; k <= max_blocker_arity; ++k) {
    for (auto r : {blocker_relation(k), nand_relation(k)})
      if (preserved(r)) out.push_back(std::move(r));
  }
  return out;
}

Structure invariant_structure(const GeneratorSet& g, int max_blocker_arity) {
  return {"Inv" + g.to_string(), invariant_relations(g, max_blocker_arity)};
}

bool contains(const GeneratorSet& g, const BoolFn& f) {
  if (f.arity() <= 3) return closure_at_arity(g, f.arity()).contains(f);
  detail::RelationalConstraint c(invariant_relations(g, f.arity()));
  return c.preserved_by(f);
}

GeneratorSet dual_clone(const GeneratorSet& g) {
  GeneratorSet d;
  d.label = g.label.empty() ? "" : g.label + "^d";
  for (const auto& f : g.generators) d.generators.push_back(dual(f));
  return d;
}

CloneSlice idempotent_reduct_at_arity(const GeneratorSet& g, int k) {
  const auto slice = closure_at_arity(g, k);
  std::vector<BoolFn> members;
  for (const auto& f : slice.members())
    if (f.is_idempotent()) members.push_back(f);
  return CloneSlice(k, std::move(members));
}

namespace {

// Generator names whose duals are again catalog names.
std::string dual_name(const std::string& n) {
  static const std::map<std::string, std::string> pairs = {
      {"and", "or"}, {"or", "and"}, {"0", "1"}, {"1", "0"}, {"p", "p^d"}, {"p^d", "p"}, {"q", "q^d"}, {"q^d", "q"}};
  if (auto it = pairs.find(n); it != pairs.end()) return it->second;
  if (n.size() >= 2 && n[0] == 'd' && std::isdigit(static_cast<unsigned char>(n[1])) && n != "d3") {
    if (n.ends_with("^d")) return n.substr(0, n.size() - 2);
    return n + "^d";
  }
  return n;  // c, m, d3 are self-dual
}

CatalogEntry make_entry(const std::vector<std::string>& names, std::string dual_label = {}) {
  GeneratorSet g;
  std::string label = "[";
  std::string dlabel = "[";
  for (std::size_t i = 0; i < names.size(); ++i) {
    g.generators.push_back(named(names[i]));
    label += (i ? "," : "") + names[i];
    dlabel += (i ? "," : "") + dual_name(names[i]);
  }
  label += "]";
  dlabel += "]";
  g.label = label;
  return {label, std::move(g), dual_label.empty() ? dlabel : dual_label};
}

}  // namespace

std::vector<CatalogEntry> catalog(int chain_bound) {
  if (chain_bound < 3) throw Error("catalog chain bound must be at least 3");
  std::vector<CatalogEntry> out;
  out.push_back(make_entry({}));
  for (auto names : std::vector<std::vector<std::string>>{{"c"},
                                                          {"0"},
                                                          {"1"},
                                                          {"and"},
                                                          {"or"},
                                                          {"m"},
                                                          {"m", "c"},
                                                          {"d3"},
                                                          {"d3", "m"},
                                                          {"d3", "c"},
                                                          {"p"},
                                                          {"p^d"},
                                                          {"q"},
                                                          {"q^d"},
                                                          {"d3", "p"},
                                                          {"d3", "p^d"},
                                                          {"and", "or"}})
    out.push_back(make_entry(names));
  // The dual of {and, or} is {or, and}: same clone.
  for (auto& e : out)
    if (e.label == "[and,or]") e.dual_label = "[and,or]";
  for (int i = 3; i <= chain_bound; ++i) {
    // The dual side of each chain dualizes both generators; d_i itself is
    // not self-dual for i > 3.
    const std::string d = "d" + std::to_string(i);
    const std::string dd = i == 3 ? d : d + "^d";
    if (i > 3) {
      out.push_back(make_entry({d, "p"}));
      out.push_back(make_entry({dd, "p^d"}));
      out.push_back(make_entry({d}));
      out.push_back(make_entry({dd}));
    }
    out.push_back(make_entry({d, "q"}));
    out.push_back(make_entry({dd, "q^d"}));
  }
  // {or, q} generates every idempotent operation, a self-dual clone.
  out.push_back(make_entry({"or", "q"}, "[or,q]"));
  out.push_back(make_entry({"m", "q"}, "[m,q]"));
  return out;
}

std::optional<CatalogEntry> catalog_entry(std::string_view label, int chain_bound) {
  for (auto& e : catalog(chain_bound))
    if (e.label == label) return e;
  return std::nullopt;
}

std::optional<MinorMapRule> minor_map_rule_from_name(std::string_view name) {
  if (name == "dual" || name == "dual-map") return MinorMapRule::Dual;
  if (name == "constant" || name == "constant-map") return MinorMapRule::Constant;
  if (name == "negation-collapse") return MinorMapRule::NegationCollapse;
  if (name == "idempotentizer") return MinorMapRule::Idempotentizer;
  return std::nullopt;
}

std::string to_string(MinorMapRule rule) {
  switch (rule) {
    case MinorMapRule::Dual: return "dual-map";
    case MinorMapRule::Constant: return "constant-map";
    case MinorMapRule::NegationCollapse: return "negation-collapse";
    case MinorMapRule::Idempotentizer: return "idempotentizer";
  }
  return "?";
}

namespace {

BoolFn negate(const BoolFn& f) {
  return BoolFn::from_function(f.arity(), [&](std::uint32_t x) { return !f.at(x); });
}

// All maps {0..n-1} -> {0..r-1}.
std::vector<IndexMap> all_index_maps(int n, int r) {
  std::vector<IndexMap> out;
  std::vector<int> image(static_cast<std::size_t>(n), 0);
  while (true) {
    out.emplace_back(r, image);
    int p = n - 1;
    while (p >= 0 && ++image[static_cast<std::size_t>(p)] == r) image[static_cast<std::size_t>(p--)] = 0;
    if (p < 0) break;
  }
  return out;
}

}  // namespace

MinorMapCheck verify_minor_map(MinorMapRule rule, const GeneratorSet& source, const GeneratorSet& target, int cap) {
  if (cap < 1) throw Error("minor-map cap must be positive");
  std::vector<CloneSlice> src, dst;
  for (int n = 1; n <= cap; ++n) {
    src.push_back(closure_at_arity(source, n));
    dst.push_back(closure_at_arity(target, n));
  }

  bool constant_value = false;
  switch (rule) {
    case MinorMapRule::Constant: {
      if (dst[0].contains(BoolFn::constant(false)))
        constant_value = false;
      else if (dst[0].contains(BoolFn::constant(true)))
        constant_value = true;
      else
        throw Error("constant-map: target " + target.to_string() + " has no constant operation");
      break;
    }
    case MinorMapRule::NegationCollapse:
      for (const auto& slice : src)
        for (const auto& f : slice.members())
          if (f.projection_index() < 0 && negate(f).projection_index() < 0)
            throw Error("negation-collapse: " + f.to_string() + " is neither a projection nor a negated projection");
      break;
    case MinorMapRule::Idempotentizer:
      for (const auto& slice : src)
        for (const auto& f : slice.members())
          if (f.is_constant()) throw Error("idempotentizer: source contains the constant " + f.to_string());
      break;
    case MinorMapRule::Dual: break;
  }

  auto xi = [&](const BoolFn& f) -> BoolFn {
    switch (rule) {
      case MinorMapRule::Dual: return dual(f);
      case MinorMapRule::Constant: return BoolFn::constant(constant_value, f.arity());
      case MinorMapRule::NegationCollapse: {
        int i = f.projection_index();
        return i >= 0 ? f : BoolFn::projection(negate(f).projection_index() + 1, f.arity());
      }
      case MinorMapRule::Idempotentizer: return f.is_idempotent() ? f : negate(f);
    }
    return f;
  };

  MinorMapCheck check;
  for (int n = 1; n <= cap; ++n) {
    for (const auto& f : src[static_cast<std::size_t>(n - 1)].members()) {
      ++check.operations_checked;
      const BoolFn image = xi(f);
      if (!dst[static_cast<std::size_t>(n - 1)].contains(image)) {
        check.detail = "image of " + f.to_string() + " is " + image.to_string() + ", not in " + target.to_string();
        return check;
      }
      for (int r = 1; r <= cap; ++r) {
        for (const auto& pi : all_index_maps(n, r)) {
          ++check.minors_checked;
          if (xi(minor(f, pi)) != minor(image, pi)) {
            check.detail = "xi(f_pi) != xi(f)_pi for f = " + f.to_string();
            return check;
          }
        }
      }
    }
  }
  check.ok = true;
  return check;
}

}  // namespace boolpp
