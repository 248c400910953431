#include "boolpp/reduction.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

namespace boolpp {

void check_instance(const CspInstance& inst) {
  if (inst.variables < 0) throw Error("instance: negative variable count");
  for (const auto& c : inst.constraints) {
    const Relation* r = inst.structure.find(c.relation);
    if (!r) throw Error("instance: relation \"" + c.relation + "\" is not in " + inst.structure.name);
    if (static_cast<int>(c.vars.size()) != r->arity())
      throw Error("instance: " + c.relation + " expects " + std::to_string(r->arity()) + " variables");
    for (int v : c.vars)
      if (v < 0 || v >= inst.variables) throw Error("instance: variable " + std::to_string(v + 1) + " out of range");
  }
}

CspInstance parse_instance(std::string_view json, const std::string& base_dir) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("instance JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("structure") || !j.contains("variables"))
    throw Error("instance JSON needs \"structure\" and \"variables\"");
  CspInstance inst;
  try {
    const auto& s = j["structure"];
    if (s.is_string()) {
      std::string name = s.get<std::string>();
      if (name.ends_with(".json")) {
        std::filesystem::path p(name);
        if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
        inst.structure = load_structure(p.string());
      } else {
        inst.structure = canonical(name);
      }
    } else {
      inst.structure = structure_from_json(s.dump());
    }
    inst.variables = j["variables"].get<int>();
    for (const auto& c : j.value("constraints", nlohmann::json::array())) {
      if (!c.is_array() || c.size() != 2) throw Error("instance: each constraint is [\"R\", [vars]]");
      CspConstraint con{c[0].get<std::string>(), {}};
      for (int v : c[1].get<std::vector<int>>()) con.vars.push_back(v - 1);
      inst.constraints.push_back(std::move(con));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("instance JSON: ") + e.what());
  }
  check_instance(inst);
  return inst;
}

CspInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open instance file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str(), std::filesystem::path(path).parent_path().string());
}

std::string instance_to_json(const CspInstance& inst) {
  nlohmann::json j;
  j["structure"] = inst.structure.name;
  j["variables"] = inst.variables;
  j["constraints"] = nlohmann::json::array();
  for (const auto& c : inst.constraints) {
    std::vector<int> vars;
    for (int v : c.vars) vars.push_back(v + 1);
    j["constraints"].push_back(nlohmann::json::array({c.relation, vars}));
  }
  return j.dump();
}

ReducedInstance reduce_instance(const CspInstance& inst, const PpCertificate& c) {
  if (auto check = verify_certificate(c); !check.ok) throw Error("certificate does not verify: " + check.detail);
  for (const auto& r : c.target.relations) {
    const Relation* mine = inst.structure.find(r.name());
    if (!mine || mine->arity() != r.arity() || !mine->same_tuples(r))
      throw Error("instance structure does not match the certificate target");
  }
  check_instance(inst);
  const int n = c.power.dimension;

  std::vector<int> parent(static_cast<std::size_t>(inst.variables * n));
  std::iota(parent.begin(), parent.end(), 0);
  auto fresh = [&] {
    parent.push_back(static_cast<int>(parent.size()));
    return static_cast<int>(parent.size()) - 1;
  };
  std::function<int(int)> find = [&](int x) {
    return parent[static_cast<std::size_t>(x)] == x ? x : parent[static_cast<std::size_t>(x)] = find(parent[static_cast<std::size_t>(x)]);
  };

  std::vector<CspConstraint> atoms;
  for (const auto& con : inst.constraints) {
    const PowerRelation* pr = nullptr;
    for (const auto& candidate : c.power.relations)
      if (candidate.name == con.relation) pr = &candidate;
    if (!pr) throw Error("certificate has no formula for " + con.relation);
    const auto& phi = pr->formula;
    std::vector<int> local(static_cast<std::size_t>(phi.free_vars + phi.existential_vars));
    for (int b = 0; b < pr->arity; ++b)
      for (int j = 0; j < n; ++j) local[static_cast<std::size_t>(b * n + j)] = con.vars[static_cast<std::size_t>(b)] * n + j;
    for (int e = 0; e < phi.existential_vars; ++e) local[static_cast<std::size_t>(phi.free_vars + e)] = fresh();
    for (const auto& atom : phi.atoms) {
      CspConstraint a{atom.relation, {}};
      for (int v : atom.args) a.vars.push_back(local[static_cast<std::size_t>(v)]);
      atoms.push_back(std::move(a));
    }
    for (auto [u, v] : phi.equalities) {
      int ru = find(local[static_cast<std::size_t>(u)]), rv = find(local[static_cast<std::size_t>(v)]);
      if (ru != rv) parent[static_cast<std::size_t>(std::max(ru, rv))] = std::min(ru, rv);
    }
  }

  // Dense renumbering of the surviving representatives in index order.
  std::vector<int> number(parent.size(), -1);
  int count = 0;
  for (std::size_t v = 0; v < parent.size(); ++v)
    if (find(static_cast<int>(v)) == static_cast<int>(v)) number[v] = count++;
  auto renamed = [&](int v) { return number[static_cast<std::size_t>(find(v))]; };

  ReducedInstance out;
  out.instance.structure = c.source;
  out.instance.variables = count;
  std::set<CspConstraint> seen;
  for (auto& a : atoms) {
    for (int& v : a.vars) v = renamed(v);
    if (seen.insert(a).second) out.instance.constraints.push_back(a);
  }
  for (int v = 0; v < inst.variables; ++v) {
    std::vector<int> block;
    for (int j = 0; j < n; ++j) block.push_back(renamed(v * n + j));
    out.variable_map.push_back(std::move(block));
  }
  return out;
}

bool satisfies(const CspInstance& inst, const std::vector<int>& assignment) {
  if (static_cast<int>(assignment.size()) != inst.variables) return false;
  for (const auto& c : inst.constraints) {
    const Relation* r = inst.structure.find(c.relation);
    std::uint32_t t = 0;
    for (int v : c.vars) t = (t << 1) | static_cast<std::uint32_t>(assignment[static_cast<std::size_t>(v)] != 0);
    if (!r || !r->contains(t)) return false;
  }
  return true;
}

std::optional<std::vector<int>> solve_bruteforce(const CspInstance& inst) {
  check_instance(inst);
  if (inst.variables > kMaxSolverVariables)
    throw Error("instance has " + std::to_string(inst.variables) + " variables; the solver stops at " +
                std::to_string(kMaxSolverVariables));
  // Constraints are checked as soon as their last variable is set.
  std::vector<std::vector<const CspConstraint*>> due(static_cast<std::size_t>(inst.variables));
  for (const auto& c : inst.constraints)
    due[static_cast<std::size_t>(*std::max_element(c.vars.begin(), c.vars.end()))].push_back(&c);
  std::vector<int> value(static_cast<std::size_t>(inst.variables), 0);
  std::function<bool(int)> go = [&](int v) {
    if (v == inst.variables) return true;
    for (int b = 0; b < 2; ++b) {
      value[static_cast<std::size_t>(v)] = b;
      bool ok = true;
      for (const auto* c : due[static_cast<std::size_t>(v)]) {
        std::uint32_t t = 0;
        for (int x : c->vars) t = (t << 1) | static_cast<std::uint32_t>(value[static_cast<std::size_t>(x)]);
        if (!inst.structure.find(c->relation)->contains(t)) {
          ok = false;
          break;
        }
      }
      if (ok && go(v + 1)) return true;
    }
    return false;
  };
  if (go(0)) return value;
  return std::nullopt;
}

std::vector<int> transport_solution(const ReducedInstance& r, const PpCertificate& c,
                                    const std::vector<int>& reduced_solution) {
  std::vector<int> out;
  for (const auto& block : r.variable_map) {
    int element = 0;
    for (int v : block) element = (element << 1) | (reduced_solution[static_cast<std::size_t>(v)] != 0);
    out.push_back(c.hom_to_target[static_cast<std::size_t>(element)]);
  }
  return out;
}

CspInstance random_instance(const Structure& s, int max_variables, int max_constraints, std::mt19937_64& rng) {
  if (s.relations.empty()) throw Error("random instance: the structure has no relations");
  CspInstance inst;
  inst.structure = s;
  inst.variables = std::uniform_int_distribution<int>(1, max_variables)(rng);
  const int count = std::uniform_int_distribution<int>(0, max_constraints)(rng);
  std::uniform_int_distribution<std::size_t> pick_rel(0, s.relations.size() - 1);
  std::uniform_int_distribution<int> pick_var(0, inst.variables - 1);
  for (int i = 0; i < count; ++i) {
    const auto& r = s.relations[pick_rel(rng)];
    CspConstraint c{r.name(), {}};
    for (int j = 0; j < r.arity(); ++j) c.vars.push_back(pick_var(rng));
    inst.constraints.push_back(std::move(c));
  }
  return inst;
}

ValidationReport validate_reduction(const PpCertificate& c, int count, std::uint64_t seed, int max_variables,
                                    int max_constraints) {
  ValidationReport rep;
  rep.seed = seed;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < count; ++i) {
    CspInstance inst = random_instance(c.target, max_variables, max_constraints, rng);
    ReducedInstance red = reduce_instance(inst, c);
    ++rep.instances;
    rep.largest_reduced = std::max(rep.largest_reduced, red.instance.constraints.size());
    auto original = solve_bruteforce(inst);
    auto reduced = solve_bruteforce(red.instance);
    if (original.has_value() == reduced.has_value())
      ++rep.agreements;
    else
      rep.failures.push_back("instance " + std::to_string(i) + ": " + instance_to_json(inst) +
                             (original ? " is satisfiable but its reduction is not" : " is unsatisfiable but its reduction is satisfiable"));
    if (reduced) {
      ++rep.satisfiable;
      if (satisfies(inst, transport_solution(red, c, *reduced)))
        ++rep.transported;
      else
        rep.failures.push_back("instance " + std::to_string(i) + ": transported solution violates " + instance_to_json(inst));
    }
  }
  return rep;
}

}  // namespace boolpp
