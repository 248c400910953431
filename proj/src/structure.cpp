#include "boolpp/structure.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "boolpp/clone.hpp"
#include "json.hpp"
#include "table_search.hpp"

namespace boolpp {

Relation::Relation(std::string name, int arity, std::vector<std::uint32_t> tuples)
    : name_(std::move(name)), arity_(arity), tuples_(std::move(tuples)) {
  if (arity_ < 1 || arity_ > kMaxArity) throw Error("relation " + name_ + ": unsupported arity");
  std::sort(tuples_.begin(), tuples_.end());
  tuples_.erase(std::unique(tuples_.begin(), tuples_.end()), tuples_.end());
  bits_.assign(arity_ <= 6 ? 1 : (std::size_t{1} << (arity_ - 6)), 0);
  for (auto t : tuples_) {
    if (t >= (1u << arity_)) throw Error("relation " + name_ + ": tuple out of range");
    bits_[t >> 6] |= std::uint64_t{1} << (t & 63);
  }
}

Relation Relation::from_strings(std::string name, int arity, const std::vector<std::string>& tuples) {
  std::vector<std::uint32_t> encoded;
  for (const auto& s : tuples) {
    if (static_cast<int>(s.size()) != arity)
      throw Error("relation " + name + ": tuple \"" + s + "\" does not have length " + std::to_string(arity));
    std::uint32_t t = 0;
    for (char ch : s) {
      if (ch != '0' && ch != '1') throw Error("relation " + name + ": tuple \"" + s + "\" is not a bit string");
      t = (t << 1) | static_cast<std::uint32_t>(ch == '1');
    }
    encoded.push_back(t);
  }
  return Relation(std::move(name), arity, std::move(encoded));
}

Relation Relation::complement_of(std::string name, int arity, const std::vector<std::uint32_t>& missing) {
  std::vector<std::uint32_t> tuples;
  for (std::uint32_t t = 0; t < (1u << arity); ++t)
    if (std::find(missing.begin(), missing.end(), t) == missing.end()) tuples.push_back(t);
  return Relation(std::move(name), arity, std::move(tuples));
}

std::string Relation::tuple_string(std::uint32_t tuple) const {
  std::string s(static_cast<std::size_t>(arity_), '0');
  for (int j = 0; j < arity_; ++j)
    if (argument_bit(tuple, arity_, j)) s[static_cast<std::size_t>(j)] = '1';
  return s;
}

Relation Relation::renamed(std::string name) const {
  Relation r = *this;
  r.name_ = std::move(name);
  return r;
}

const Relation* Structure::find(std::string_view relation_name) const {
  for (const auto& r : relations)
    if (r.name() == relation_name) return &r;
  return nullptr;
}

int Structure::max_arity() const {
  int m = 0;
  for (const auto& r : relations) m = std::max(m, r.arity());
  return m;
}

bool preserves(const BoolFn& f, const Relation& r) {
  return detail::RelationalConstraint({r}).preserved_by(f);
}

bool preserves_all(const BoolFn& f, const Structure& s) {
  return detail::RelationalConstraint(s.relations).preserved_by(f);
}

CloneSlice polymorphisms_at_arity(const Structure& s, int k) {
  if (k < 1) throw Error("polymorphisms: arity must be positive");
  detail::RelationalConstraint constraint(s.relations);
  detail::TableSearch search({{"f", k, &constraint}}, {});
  detail::SearchStats stats;
  std::vector<BoolFn> members;
  search.each(
      [&](const std::vector<BoolFn>& sol) {
        members.push_back(sol.front());
        return true;
      },
      stats);
  return CloneSlice(k, std::move(members));
}

Relation singleton(bool value) { return Relation(value ? "one" : "zero", 1, {value ? 1u : 0u}); }

Relation order_relation() { return Relation("leq", 2, {0b00, 0b01, 0b11}); }

Relation blocker_relation(int k) {
  if (k < 2) throw Error("blocker arity must be at least 2");
  return Relation::complement_of("B" + std::to_string(k), k, {0});
}

Relation nand_relation(int k) {
  if (k < 2) throw Error("NAND arity must be at least 2");
  return Relation::complement_of("NAND" + std::to_string(k), k, {(1u << k) - 1});
}

Relation affine_relation(int a, int b, int c, int d) {
  std::vector<std::uint32_t> tuples;
  for (std::uint32_t t = 0; t < 8; ++t) {
    int x = argument_bit(t, 3, 0), y = argument_bit(t, 3, 1), z = argument_bit(t, 3, 2);
    if (((a * x + b * y + c * z) & 1) == d) tuples.push_back(t);
  }
  return Relation("R" + std::to_string(a) + std::to_string(b) + std::to_string(c) + std::to_string(d), 3,
                  std::move(tuples));
}

namespace {

// R_ab / R_abc: everything except the one named tuple.
Relation missing_one(const std::string& bits) {
  std::uint32_t t = 0;
  for (char ch : bits) t = (t << 1) | static_cast<std::uint32_t>(ch == '1');
  return Relation::complement_of("R" + bits, static_cast<int>(bits.size()), {t});
}

bool parse_suffix(std::string_view name, std::string_view prefix, int& k) {
  if (name.substr(0, prefix.size()) != prefix) return false;
  auto rest = name.substr(prefix.size());
  if (!rest.empty() && (rest.front() == '(' && rest.back() == ')')) rest = rest.substr(1, rest.size() - 2);
  auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), k);
  return ec == std::errc{} && ptr == rest.data() + rest.size() && !rest.empty();
}

}  // namespace

Structure canonical(std::string_view name) {
  int k = 0;
  if (name == "D_2SAT")
    return {"D_2SAT", {missing_one("00"), missing_one("01"), missing_one("10"), missing_one("11")}};
  if (name == "D_HORNSAT")
    return {"D_HORNSAT", {missing_one("110"), missing_one("111"), singleton(false), singleton(true)}};
  if (name == "D_3LIN2") {
    Structure s{"D_3LIN2", {}};
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c)
          for (int d = 0; d < 2; ++d) {
            if (a + b + c == 0) continue;
            auto r = affine_relation(a, b, c, d);
            bool duplicate = std::any_of(s.relations.begin(), s.relations.end(),
                                         [&](const Relation& o) { return o.same_tuples(r); });
            if (!duplicate) s.relations.push_back(std::move(r));
          }
    return s;
  }
  if (name == "D_STCON") return {"D_STCON", {singleton(false), singleton(true), order_relation()}};
  if (name == "C2") return {"C2", {singleton(false), singleton(true), Relation("neq", 2, {0b01, 0b10})}};
  if (name == "idempotence") return {"idempotence", {singleton(false), singleton(true)}};
  if (name == "B2_LEQ" || name == "B2_leq") name = "blocker_leq:2";
  if (parse_suffix(name, "blocker_leq:", k) || parse_suffix(name, "blocker_leq", k)) {
    if (k < 2) throw Error("blocker_leq needs k >= 2");
    return {"blocker_leq:" + std::to_string(k), {singleton(false), singleton(true), blocker_relation(k), order_relation()}};
  }
  if (parse_suffix(name, "blocker:", k) || parse_suffix(name, "blocker", k)) {
    if (k < 2) throw Error("blocker needs k >= 2");
    return {"blocker:" + std::to_string(k), {singleton(false), singleton(true), blocker_relation(k)}};
  }
  throw Error("unknown canonical structure \"" + std::string(name) + "\"");
}

std::vector<std::string> canonical_names() {
  return {"D_2SAT", "D_HORNSAT", "D_3LIN2", "D_STCON", "B2_LEQ", "C2", "blocker:<k>", "blocker_leq:<k>", "idempotence"};
}

Structure structure_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("structure JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("relations") || !j["relations"].is_array())
    throw Error("structure JSON needs a \"relations\" array");
  Structure s;
  s.name = j.value("name", "");
  std::set<std::string> seen;
  for (const auto& r : j["relations"]) {
    if (!r.contains("arity") || !r.contains("tuples")) throw Error("relation entry needs \"arity\" and \"tuples\"");
    std::string name = r.value("name", "R" + std::to_string(s.relations.size()));
    if (!seen.insert(name).second) throw Error("duplicate relation name \"" + name + "\"");
    s.relations.push_back(
        Relation::from_strings(name, r["arity"].get<int>(), r["tuples"].get<std::vector<std::string>>()));
  }
  return s;
}

std::string structure_to_json(const Structure& s) {
  nlohmann::json j;
  j["name"] = s.name;
  j["relations"] = nlohmann::json::array();
  for (const auto& r : s.relations) {
    std::vector<std::string> tuples;
    for (auto t : r.tuples()) tuples.push_back(r.tuple_string(t));
    j["relations"].push_back({{"name", r.name()}, {"arity", r.arity()}, {"tuples", tuples}});
  }
  return j.dump(2);
}

Structure load_structure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open structure file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return structure_from_json(buf.str());
}

}  // namespace boolpp
