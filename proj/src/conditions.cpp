#include "boolpp/conditions.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <sstream>

#include "table_search.hpp"

namespace boolpp {

int H1Condition::symbol(const std::string& sym, int arity) {
  if (arity < 1 || arity > kMaxArity) throw Error("symbol " + sym + ": unsupported arity " + std::to_string(arity));
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i].name != sym) continue;
    if (symbols[i].arity != arity)
      throw Error("symbol " + sym + " is used with arity " + std::to_string(symbols[i].arity) + " and " +
                  std::to_string(arity));
    return static_cast<int>(i);
  }
  symbols.push_back({sym, arity});
  return static_cast<int>(symbols.size()) - 1;
}

int H1Condition::find_symbol(std::string_view sym) const {
  for (std::size_t i = 0; i < symbols.size(); ++i)
    if (symbols[i].name == sym) return static_cast<int>(i);
  return -1;
}

void H1Condition::add(int lhs_symbol, const std::vector<int>& lhs_vars, int rhs_symbol,
                      const std::vector<int>& rhs_vars) {
  auto check = [&](int s, const std::vector<int>& vars) {
    if (s < 0 || s >= static_cast<int>(symbols.size())) throw Error("identity refers to an unknown symbol");
    if (static_cast<int>(vars.size()) != symbols[static_cast<std::size_t>(s)].arity)
      throw Error("symbol " + symbols[static_cast<std::size_t>(s)].name + " applied to the wrong number of variables");
  };
  check(lhs_symbol, lhs_vars);
  check(rhs_symbol, rhs_vars);
  Identity id;
  std::map<int, int> renumber;
  auto side = [&](int s, const std::vector<int>& vars) {
    Term t{s, {}};
    for (int v : vars) {
      auto [it, fresh] = renumber.emplace(v, static_cast<int>(renumber.size()));
      t.vars.push_back(it->second);
    }
    return t;
  };
  id.lhs = side(lhs_symbol, lhs_vars);
  id.rhs = side(rhs_symbol, rhs_vars);
  id.variables = static_cast<int>(renumber.size());
  identities.push_back(std::move(id));
}

namespace {

std::string var_name(int v) {
  static const char* names = "xyzuvw";
  if (v < 6) return std::string(1, names[v]);
  return "x" + std::to_string(v + 1);
}

}  // namespace

std::string H1Condition::to_string() const {
  std::string out;
  auto term = [&](const Term& t) {
    std::string s = symbols[static_cast<std::size_t>(t.symbol)].name + "(";
    for (std::size_t i = 0; i < t.vars.size(); ++i) s += (i ? "," : "") + var_name(t.vars[i]);
    return s + ")";
  };
  for (const auto& id : identities) out += term(id.lhs) + " = " + term(id.rhs) + "\n";
  return out;
}

int H1Condition::max_arity() const {
  int m = 0;
  for (const auto& s : symbols) m = std::max(m, s.arity);
  return m;
}

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; });
}

struct ParsedTerm {
  std::string symbol;
  std::vector<std::string> args;
};

ParsedTerm parse_term(const std::string& text, int line) {
  const std::string where = "line " + std::to_string(line) + ": ";
  auto open = text.find('(');
  if (open == std::string::npos) {
    if (is_identifier(text)) throw Error(where + "side \"" + text + "\" is a bare variable");
    throw Error(where + "cannot parse \"" + text + "\"");
  }
  if (text.back() != ')') throw Error(where + "expected ')' at the end of \"" + text + "\"");
  ParsedTerm t;
  t.symbol = trim(text.substr(0, open));
  if (!is_identifier(t.symbol)) throw Error(where + "bad symbol name \"" + t.symbol + "\"");
  std::string inner = text.substr(open + 1, text.size() - open - 2);
  if (inner.find('(') != std::string::npos || inner.find(')') != std::string::npos)
    throw Error(where + "nested terms are not height 1");
  std::stringstream ss(inner);
  std::string arg;
  while (std::getline(ss, arg, ',')) {
    arg = trim(arg);
    if (!is_identifier(arg)) throw Error(where + "bad variable \"" + arg + "\"");
    t.args.push_back(arg);
  }
  if (t.args.empty()) throw Error(where + "symbol " + t.symbol + " needs at least one argument");
  return t;
}

}  // namespace

H1Condition parse_condition(std::string_view text) {
  H1Condition c;
  std::string body(text);
  // "≈" is accepted as a synonym of "=".
  for (std::size_t pos; (pos = body.find("≈")) != std::string::npos;) body.replace(pos, 3, "=");
  std::stringstream lines(body);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::vector<ParsedTerm> sides;
    std::stringstream parts(line);
    std::string part;
    while (std::getline(parts, part, '=')) sides.push_back(parse_term(trim(part), lineno));
    if (line.back() == '=') throw Error("line " + std::to_string(lineno) + ": missing right-hand side");
    if (sides.size() < 2) throw Error("line " + std::to_string(lineno) + ": an identity needs two sides");
    std::map<std::string, int> vars;
    std::vector<std::pair<int, std::vector<int>>> terms;
    for (const auto& s : sides) {
      int sym = 0;
      try {
        sym = c.symbol(s.symbol, static_cast<int>(s.args.size()));
      } catch (const Error& e) {
        throw Error("line " + std::to_string(lineno) + ": " + e.what());
      }
      std::vector<int> v;
      for (const auto& a : s.args) v.push_back(vars.emplace(a, static_cast<int>(vars.size())).first->second);
      terms.emplace_back(sym, std::move(v));
    }
    for (std::size_t i = 0; i + 1 < terms.size(); ++i)
      c.add(terms[i].first, terms[i].second, terms[i + 1].first, terms[i + 1].second);
  }
  if (c.identities.empty()) throw Error("condition has no identities");
  return c;
}

H1Condition builtin(Family family, int parameter) {
  H1Condition c;
  // Variables: 0 = x, 1 = y, 2 = z.
  auto chain = [&](int sym, const std::vector<std::vector<int>>& rows) {
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) c.add(sym, rows[i], sym, rows[i + 1]);
  };
  switch (family) {
    case Family::QuasiMajority:
      parameter = 3;
      [[fallthrough]];
    case Family::QNU: {
      if (parameter < 3) throw Error("QNU(k) needs k >= 3");
      c.name = "QNU(" + std::to_string(parameter) + ")";
      int f = c.symbol("f", parameter);
      std::vector<std::vector<int>> rows;
      for (int pos = parameter - 1; pos >= 0; --pos) {
        std::vector<int> row(static_cast<std::size_t>(parameter), 0);
        row[static_cast<std::size_t>(pos)] = 1;
        rows.push_back(row);
      }
      rows.emplace_back(static_cast<std::size_t>(parameter), 0);
      chain(f, rows);
      break;
    }
    case Family::QuasiMinority: {
      c.name = "QMin";
      int f = c.symbol("f", 3);
      chain(f, {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}, {0, 0, 0}});
      break;
    }
    case Family::QJ: {
      if (parameter < 1) throw Error("QJ(n) needs n >= 1");
      c.name = "QJ(" + std::to_string(parameter) + ")";
      std::vector<int> t;
      for (int i = 0; i <= parameter; ++i) t.push_back(c.symbol("t" + std::to_string(i), 3));
      c.add(t.front(), {0, 1, 2}, t.front(), {0, 0, 0});
      c.add(t.back(), {0, 1, 2}, t.back(), {2, 2, 2});
      for (int i = 0; i <= parameter; ++i) c.add(t[static_cast<std::size_t>(i)], {0, 1, 0}, t[static_cast<std::size_t>(i)], {0, 0, 0});
      for (int i = 0; i < parameter; ++i) {
        auto a = t[static_cast<std::size_t>(i)], b = t[static_cast<std::size_t>(i) + 1];
        if (i % 2 == 0)
          c.add(a, {0, 0, 2}, b, {0, 0, 2});
        else
          c.add(a, {0, 2, 2}, b, {0, 2, 2});
      }
      break;
    }
    case Family::HM: {
      if (parameter < 1) throw Error("HM(n) needs n >= 1");
      c.name = "HM(" + std::to_string(parameter) + ")";
      std::vector<int> p;
      for (int i = 0; i <= parameter; ++i) p.push_back(c.symbol("p" + std::to_string(i), 3));
      c.add(p.front(), {0, 1, 2}, p.front(), {0, 0, 0});
      c.add(p.back(), {0, 1, 2}, p.back(), {2, 2, 2});
      for (int i = 0; i < parameter; ++i)
        c.add(p[static_cast<std::size_t>(i)], {0, 0, 1}, p[static_cast<std::size_t>(i) + 1], {0, 1, 1});
      break;
    }
    case Family::Comm: {
      c.name = "Comm";
      int f = c.symbol("f", 2);
      c.add(f, {0, 1}, f, {1, 0});
      break;
    }
    case Family::Const: {
      c.name = "Const";
      int f = c.symbol("f", 1);
      c.add(f, {0}, f, {1});
      break;
    }
  }
  return c;
}

H1Condition builtin(std::string_view name) {
  std::string n(name);
  std::transform(n.begin(), n.end(), n.begin(), [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  auto param = [&](std::string_view prefix, int& k) {
    if (n.substr(0, prefix.size()) != prefix) return false;
    auto rest = n.substr(prefix.size());
    if (!rest.empty() && (rest.front() == ':' || rest.front() == '(')) rest = rest.substr(1);
    if (!rest.empty() && rest.back() == ')') rest.pop_back();
    if (rest.empty() || !std::all_of(rest.begin(), rest.end(), [](unsigned char ch) { return std::isdigit(ch); }))
      return false;
    k = std::stoi(rest);
    return true;
  };
  int k = 0;
  if (n == "qmaj" || n == "quasi-majority" || n == "quasi_majority") return builtin(Family::QuasiMajority);
  if (n == "qminor" || n == "qmin" || n == "quasi-minority" || n == "quasi_minority")
    return builtin(Family::QuasiMinority);
  if (n == "comm") return builtin(Family::Comm);
  if (n == "const") return builtin(Family::Const);
  if (param("qnu", k)) return builtin(Family::QNU, k);
  if (param("qj", k)) return builtin(Family::QJ, k);
  if (param("hm", k)) return builtin(Family::HM, k);
  throw Error("unknown condition \"" + std::string(name) + "\"");
}

std::vector<std::string> builtin_names() {
  return {"qnu:<k>", "qmaj", "qminor", "qj:<n>", "hm:<n>", "comm", "const"};
}

const BoolFn* Witness::find(std::string_view symbol) const {
  for (const auto& [name, f] : assignment)
    if (name == symbol) return &f;
  return nullptr;
}

bool check_witness(const H1Condition& c, const Witness& w) {
  std::vector<const BoolFn*> tables;
  for (const auto& s : c.symbols) {
    const BoolFn* f = w.find(s.name);
    if (!f || f->arity() != s.arity) return false;
    tables.push_back(f);
  }
  for (const auto& id : c.identities) {
    auto side = [&](const Term& t) {
      return minor(*tables[static_cast<std::size_t>(t.symbol)], IndexMap(id.variables, t.vars));
    };
    if (side(id.lhs) != side(id.rhs)) return false;
  }
  return true;
}

namespace {

std::uint32_t cell_of(const Term& t, std::uint32_t assignment, int variables) {
  std::uint32_t cell = 0;
  for (int v : t.vars) cell = (cell << 1) | static_cast<std::uint32_t>(argument_bit(assignment, variables, v));
  return cell;
}

SatResult run(const H1Condition& c, const std::vector<const detail::TableConstraint*>& constraints,
              std::uint64_t node_limit) {
  std::vector<detail::SearchSymbol> symbols;
  for (std::size_t i = 0; i < c.symbols.size(); ++i)
    symbols.push_back({c.symbols[i].name, c.symbols[i].arity, constraints[i]});
  std::vector<detail::CellLink> links;
  for (const auto& id : c.identities)
    for (std::uint32_t a = 0; a < (1u << id.variables); ++a)
      links.push_back({id.lhs.symbol, cell_of(id.lhs, a, id.variables), id.rhs.symbol,
                       cell_of(id.rhs, a, id.variables)});
  detail::TableSearch search(std::move(symbols), links, node_limit);
  detail::SearchStats stats;
  auto found = search.first(stats);
  SatResult r;
  r.nodes = stats.nodes;
  r.exhausted = found.has_value() || stats.exhausted;
  if (found) {
    Witness w;
    for (std::size_t i = 0; i < c.symbols.size(); ++i) w.assignment.emplace_back(c.symbols[i].name, (*found)[i]);
    r.witness = std::move(w);
  }
  return r;
}

}  // namespace

SatResult satisfies_clone(const GeneratorSet& g, const H1Condition& c, std::uint64_t node_limit) {
  std::map<int, std::unique_ptr<detail::TableConstraint>> by_arity;
  std::vector<const detail::TableConstraint*> constraints;
  for (const auto& s : c.symbols) {
    auto& slot = by_arity[s.arity];
    if (!slot) {
      if (s.arity <= 3)
        slot = std::make_unique<detail::MemberConstraint>(closure_at_arity(g, s.arity).members());
      else
        slot = std::make_unique<detail::RelationalConstraint>(invariant_relations(g, s.arity));
    }
    constraints.push_back(slot.get());
  }
  return run(c, constraints, node_limit);
}

SatResult satisfies_structure(const Structure& a, const H1Condition& c, std::uint64_t node_limit) {
  detail::RelationalConstraint constraint(a.relations);
  std::vector<const detail::TableConstraint*> constraints(c.symbols.size(), &constraint);
  return run(c, constraints, node_limit);
}

}  // namespace boolpp
