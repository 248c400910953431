#include "boolpp/poset.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace boolpp {

PosetClass PosetClass::dip(int i) {
  if (i < 3) throw Error("chain index must be at least 3");
  return {Tag::DiP, i};
}

PosetClass PosetClass::diq(int i) {
  if (i < 3) throw Error("chain index must be at least 3");
  return {Tag::DiQ, i};
}

std::string PosetClass::to_string() const {
  switch (tag) {
    case Tag::Bottom: return "Bottom";
    case Tag::Meet: return "Meet";
    case Tag::D3: return "D3";
    case Tag::M: return "M";
    case Tag::D3M: return "D3M";
    case Tag::P: return "P";
    case Tag::Q: return "Q";
    case Tag::DiP: return "DiP(" + std::to_string(index) + ")";
    case Tag::DiQ: return "DiQ(" + std::to_string(index) + ")";
    case Tag::MQ: return "MQ";
    case Tag::Top: return "Top";
  }
  return "?";
}

std::optional<PosetClass> PosetClass::parse(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  static const std::map<std::string, Tag> plain = {{"bottom", Tag::Bottom}, {"meet", Tag::Meet}, {"d3", Tag::D3},
                                                   {"m", Tag::M},           {"d3m", Tag::D3M},   {"p", Tag::P},
                                                   {"q", Tag::Q},           {"mq", Tag::MQ},     {"top", Tag::Top}};
  if (auto it = plain.find(s); it != plain.end()) return PosetClass{it->second, 0};
  for (auto [prefix, tag] : {std::pair{"dip", Tag::DiP}, std::pair{"diq", Tag::DiQ}}) {
    std::string_view rest(s);
    if (!rest.starts_with(prefix)) continue;
    rest.remove_prefix(3);
    if (!rest.empty() && (rest.front() == '(' || rest.front() == ':')) rest.remove_prefix(1);
    if (!rest.empty() && rest.back() == ')') rest.remove_suffix(1);
    if (rest.empty() || !std::all_of(rest.begin(), rest.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
      return std::nullopt;
    int i = std::stoi(std::string(rest));
    if (i < 3) return std::nullopt;
    return PosetClass{tag, i};
  }
  return std::nullopt;
}

bool leq(const PosetClass& a, const PosetClass& b) {
  if (a == b || a.tag == Tag::Bottom || b.tag == Tag::Top) return true;
  if (a.tag == Tag::Top || b.tag == Tag::Bottom) return false;
  if (b.tag == Tag::MQ) return true;
  if (a.tag == Tag::MQ) return false;
  auto chain = [](Tag t) { return t == Tag::DiP || t == Tag::DiQ; };
  switch (a.tag) {
    case Tag::Meet: return b.tag == Tag::P || b.tag == Tag::Q || chain(b.tag);
    case Tag::D3: return b.tag == Tag::D3M || (chain(b.tag) && b.index == 3);
    case Tag::M: return b.tag == Tag::D3M;
    case Tag::P: return b.tag == Tag::Q || chain(b.tag);
    case Tag::Q: return b.tag == Tag::DiQ;
    case Tag::DiP: return chain(b.tag) && b.index <= a.index;
    case Tag::DiQ: return b.tag == Tag::DiQ && b.index <= a.index;
    default: return false;
  }
}

std::string complexity_of(const PosetClass& c) {
  switch (c.tag) {
    case Tag::Bottom: return "NP-complete";
    case Tag::Meet: return "P-complete";
    case Tag::M: return "⊕L-complete";
    case Tag::D3:
    case Tag::P:
    case Tag::DiP: return "NL-complete";
    default: return "L";
  }
}

ClassInfo class_info(const PosetClass& c) {
  ClassInfo info;
  info.cls = c;
  info.complexity = complexity_of(c);
  const std::string i = std::to_string(c.index);
  auto rep = [&](const std::string& spec) { info.representative = GeneratorSet::parse(spec); };
  switch (c.tag) {
    case Tag::Bottom:
      info.members = {"[]", "[c]"};
      rep("[]");
      break;
    case Tag::Meet:
      info.members = {"[and]", "[or]"};
      info.canonical_structure = "D_HORNSAT";
      rep("[and]");
      break;
    case Tag::D3:
      info.members = {"[d3]"};
      info.canonical_structure = "D_2SAT";
      rep("[d3]");
      break;
    case Tag::M:
      info.members = {"[m]", "[m,c]"};
      info.canonical_structure = "D_3LIN2";
      rep("[m]");
      break;
    case Tag::D3M:
      info.members = {"[d3,m]", "[d3,c]"};
      info.canonical_structure = "C2";
      rep("[d3,m]");
      break;
    case Tag::P:
      info.members = {"[p]", "[p^d]"};
      rep("[p]");
      break;
    case Tag::Q:
      info.members = {"[q]", "[q^d]"};
      rep("[q]");
      break;
    case Tag::DiP:
      if (c.index == 3)
        info.members = {"[d3,p]", "[d3,p^d]", "[and,or]"};
      else
        info.members = {"[d" + i + ",p]", "[d" + i + "^d,p^d]", "[d" + i + "]", "[d" + i + "^d]"};
      info.canonical_structure = "blocker_leq:" + std::to_string(c.index - 1);
      rep("[d" + i + ",p]");
      break;
    case Tag::DiQ:
      if (c.index == 3)
        info.members = {"[d3,q]", "[d3,q^d]"};
      else
        info.members = {"[d" + i + ",q]", "[d" + i + "^d,q^d]"};
      info.canonical_structure = "blocker:" + std::to_string(c.index - 1);
      rep("[d" + i + ",q]");
      break;
    case Tag::MQ:
      info.members = {"[or,q]", "[m,q]"};
      info.canonical_structure = "idempotence";
      rep("[or,q]");
      break;
    case Tag::Top:
      info.members = {"[0]", "[1]"};
      info.note = "every instance is satisfiable by a constant assignment";
      rep("[0]");
      break;
  }
  info.representative.label = info.members.front();
  return info;
}

std::vector<PosetClass> lattice_classes(int chain_depth) {
  if (chain_depth < 3) throw Error("chain depth must be at least 3");
  std::vector<PosetClass> out = {{Tag::Bottom, 0}, {Tag::Meet, 0}, {Tag::D3, 0}, {Tag::M, 0},
                                 {Tag::D3M, 0},    {Tag::P, 0},    {Tag::Q, 0}};
  for (int i = 3; i <= chain_depth; ++i) out.push_back(PosetClass::dip(i));
  for (int i = 3; i <= chain_depth; ++i) out.push_back(PosetClass::diq(i));
  out.push_back({Tag::MQ, 0});
  out.push_back({Tag::Top, 0});
  return out;
}

std::vector<Cover> hasse_covers(int chain_depth) {
  const auto classes = lattice_classes(chain_depth);
  std::vector<Cover> out;
  for (const auto& a : classes)
    for (const auto& b : classes) {
      if (a == b || !leq(a, b)) continue;
      bool between = std::any_of(classes.begin(), classes.end(), [&](const PosetClass& c) {
        return c != a && c != b && leq(a, c) && leq(c, b);
      });
      if (between) continue;
      bool elided = (a.tag == Tag::P && b.tag == Tag::DiP) || (a.tag == Tag::Q && b.tag == Tag::DiQ);
      out.push_back({a, b, elided});
    }
  return out;
}

std::string export_dot(int chain_depth) {
  auto id = [](const PosetClass& c) {
    std::string s = c.to_string();
    std::string out;
    for (char ch : s)
      if (std::isalnum(static_cast<unsigned char>(ch))) out += ch;
    return out;
  };
  std::ostringstream out;
  out << "digraph PBoole {\n  rankdir=BT;\n  node [shape=box];\n";
  for (const auto& c : lattice_classes(chain_depth)) {
    auto info = class_info(c);
    out << "  " << id(c) << " [label=\"" << c.to_string() << "\\n" << info.representative.label << "\\n"
        << info.complexity << "\", complexity=\"" << info.complexity << "\"";
    if (!info.note.empty()) out << ", note=\"" << info.note << "\"";
    out << "];\n";
  }
  for (const auto& cov : hasse_covers(chain_depth)) {
    if (cov.elided) {
      std::string dots = id(cov.upper) + "_more";
      out << "  " << dots << " [label=\"...\", shape=plaintext, elided=true];\n";
      out << "  " << id(cov.lower) << " -> " << dots << " [style=dashed];\n";
      out << "  " << dots << " -> " << id(cov.upper) << " [style=dashed];\n";
    } else {
      out << "  " << id(cov.lower) << " -> " << id(cov.upper) << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

Separation separating_condition(const PosetClass& a, const PosetClass& b) {
  if (leq(a, b)) throw Error(a.to_string() + " is below " + b.to_string() + "; nothing separates them");
  const GeneratorSet upper = class_info(a).representative;
  const GeneratorSet lower = class_info(b).representative;
  std::vector<H1Condition> candidates = {builtin(Family::Const),         builtin(Family::QuasiMajority),
                                         builtin(Family::Comm),          builtin(Family::QuasiMinority),
                                         builtin(Family::HM, 3),         builtin(Family::QJ, 4)};
  const int top_index = std::max({a.index, b.index, 3}) + 1;
  for (int k = 4; k <= top_index; ++k) candidates.push_back(builtin(Family::QNU, k));
  for (auto& c : candidates) {
    SatResult in_upper = satisfies_clone(upper, c);
    if (!in_upper.satisfied()) continue;
    SatResult in_lower = satisfies_clone(lower, c);
    if (in_lower.refuted()) return {std::move(c), std::move(in_upper), std::move(in_lower)};
  }
  throw Error("no condition of the battery separates " + a.to_string() + " from " + b.to_string());
}

const BatteryOutcome* Classification::find(std::string_view condition) const {
  for (const auto& b : battery)
    if (b.condition == condition) return &b;
  return nullptr;
}

Classification classify_with(const ConditionOracle& oracle, int chain_bound, bool allow_limits) {
  Classification out;
  out.chain_bound = chain_bound;
  auto holds = [&](const H1Condition& c) {
    if (const auto* done = out.find(c.name)) return done->holds;
    SatResult r = oracle(c);
    if (!r.satisfied() && !r.exhausted) throw Error("search for " + c.name + " stopped before it was exhaustive");
    out.battery.push_back({c.name, r.satisfied(), std::move(r)});
    return out.battery.back().holds;
  };
  auto resolve = [&](PosetClass c) {
    out.cls = c;
    out.complexity = complexity_of(c);
    return out;
  };

  const bool is_const = holds(builtin(Family::Const));
  const bool comm = holds(builtin(Family::Comm));
  const bool qmin = holds(builtin(Family::QuasiMinority));
  const bool qnu3 = holds(builtin(Family::QuasiMajority));
  const bool qj4 = holds(builtin(Family::QJ, 4));
  const bool hm3 = holds(builtin(Family::HM, 3));
  if (is_const) return resolve({Tag::Top, 0});
  if (qmin) {
    if (qnu3) return resolve({comm ? Tag::MQ : Tag::D3M, 0});
    return resolve({Tag::M, 0});
  }
  if (qnu3) {
    if (!comm) return resolve({Tag::D3, 0});
    return resolve(hm3 ? PosetClass::diq(3) : PosetClass::dip(3));
  }
  if (!comm) return resolve({Tag::Bottom, 0});
  for (int k = 4; k <= chain_bound; ++k)
    if (holds(builtin(Family::QNU, k))) return resolve(hm3 ? PosetClass::diq(k) : PosetClass::dip(k));
  if (!qj4) return resolve({Tag::Meet, 0});
  if (allow_limits) return resolve({hm3 ? Tag::Q : Tag::P, 0});
  out.cutoff_binds = true;
  out.note = "no QNU(k) with k <= " + std::to_string(chain_bound) +
             "; a finite structure cannot lie in P or Q, so the chain cutoff is inconsistent for this input";
  return out;
}

Classification classify_generators(const GeneratorSet& g, int chain_bound) {
  if (chain_bound < 4) throw Error("chain bound must be at least 4");
  int bound = chain_bound;
  for (const auto& f : g.generators) bound = std::max(bound, f.arity());
  auto out = classify_with([&](const H1Condition& c) { return satisfies_clone(g, c); }, bound, true);
  if (bound > chain_bound)
    out.note = "chain bound raised to " + std::to_string(bound) + ", the largest generator arity";
  return out;
}

Classification classify_structure(const Structure& a) {
  const int bound = std::max(a.max_arity() + 1, 3);
  return classify_with([&](const H1Condition& c) { return satisfies_structure(a, c); }, bound, false);
}

std::vector<H1Condition> battery_conditions(int chain_bound) {
  std::vector<H1Condition> out = {builtin(Family::Const), builtin(Family::Comm), builtin(Family::QuasiMinority)};
  for (int k = 3; k <= chain_bound; ++k) out.push_back(builtin(Family::QNU, k));
  out.push_back(builtin(Family::QJ, 4));
  out.push_back(builtin(Family::HM, 3));
  return out;
}

std::vector<DecisionRow> compute_decision_table(int chain_bound, int threads) {
  const auto entries = catalog(chain_bound);
  const auto conditions = battery_conditions(chain_bound);
  std::vector<DecisionRow> rows(entries.size());
  std::size_t next = 0;
  std::mutex m;
  auto work = [&] {
    while (true) {
      std::size_t i;
      {
        std::lock_guard lock(m);
        if (next == entries.size()) return;
        i = next++;
      }
      const auto& g = entries[i].generators;
      std::map<std::string, SatResult> cache;
      DecisionRow row;
      row.label = entries[i].label;
      for (const auto& c : conditions) {
        auto r = satisfies_clone(g, c);
        row.outcomes.push_back(r.satisfied());
        cache.emplace(c.name, std::move(r));
      }
      auto cls = classify_with([&](const H1Condition& c) { return cache.at(c.name); }, chain_bound, true).cls;
      row.cls = cls ? cls->to_string() : "unresolved";
      rows[i] = std::move(row);
    }
  };
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return rows;
}

std::string format_decision_table(int chain_bound, const std::vector<DecisionRow>& rows) {
  std::ostringstream out;
  out << "# chain_bound " << chain_bound << "\n";
  out << "label";
  for (const auto& c : battery_conditions(chain_bound)) out << "\t" << c.name;
  out << "\tclass\n";
  for (const auto& r : rows) {
    out << r.label;
    for (bool b : r.outcomes) out << "\t" << (b ? 1 : 0);
    out << "\t" << r.cls << "\n";
  }
  return out.str();
}

std::vector<DecisionRow> parse_decision_table(std::string_view text, int* chain_bound) {
  std::istringstream in{std::string(text)};
  std::string line;
  int bound = 0;
  std::vector<DecisionRow> rows;
  std::size_t columns = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# chain_bound ", 0) == 0) {
      bound = std::stoi(line.substr(14));
      columns = battery_conditions(bound).size();
      continue;
    }
    if (line[0] == '#' || line.rfind("label\t", 0) == 0) continue;
    if (!bound) throw Error("decision table: missing chain_bound header");
    std::istringstream fields(line);
    std::vector<std::string> f;
    std::string cell;
    while (std::getline(fields, cell, '\t')) f.push_back(cell);
    if (f.size() != columns + 2) throw Error("decision table: wrong number of columns in \"" + line + "\"");
    DecisionRow row;
    row.label = f.front();
    for (std::size_t i = 1; i <= columns; ++i) row.outcomes.push_back(f[i] == "1");
    row.cls = f.back();
    rows.push_back(std::move(row));
  }
  if (chain_bound) *chain_bound = bound;
  return rows;
}

}  // namespace boolpp
