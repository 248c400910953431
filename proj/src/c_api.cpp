#include "boolpp/boolpp.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <variant>

#include "boolpp/clone.hpp"
#include "boolpp/conditions.hpp"
#include "boolpp/poset.hpp"
#include "boolpp/ppcon.hpp"
#include "boolpp/reduction.hpp"
#include "boolpp/structure.hpp"
#include "boolpp/verify.hpp"
#include "json.hpp"

using nlohmann::json;
using namespace boolpp;

struct bp_subject {
  std::variant<Structure, GeneratorSet> value;
  std::string text;  // as given by the caller
};

struct bp_condition {
  H1Condition condition;
};

struct bp_certificate {
  PpCertificate cert;
};

namespace {

constexpr int kMaxMemberArity = 4;
constexpr int kMaxChainBound = 12;

thread_local std::string last_error;

struct Failure {
  bp_status status;
  std::string message;
};

// Runs `body`; exceptions become a status plus the thread's last error.
template <class F>
bp_status guard(bp_status on_error, F&& body) {
  last_error.clear();
  try {
    body();
    return BP_OK;
  } catch (const Failure& f) {
    last_error = f.message;
    return f.status;
  } catch (const Error& e) {
    last_error = e.what();
    return on_error;
  } catch (const std::exception& e) {
    last_error = e.what();
    return BP_ERR_INTERNAL;
  }
}

void need(bool ok, const char* what) {
  if (!ok) throw Failure{BP_ERR_ARGUMENT, what};
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{BP_ERR_IO, "cannot open " + path};
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool looks_like_file(const std::string& s) {
  return s.ends_with(".json") || s.find('/') != std::string::npos || std::filesystem::is_regular_file(s);
}

json witness_json(const Witness& w) {
  json out = json::object();
  for (const auto& [symbol, f] : w.assignment) out[symbol] = f.to_string();
  return out;
}

json sat_json(const SatResult& r) {
  json out;
  out["result"] = r.satisfied() ? "satisfied" : r.exhausted ? "refuted" : "unknown";
  out["nodes"] = r.nodes;
  if (r.witness) out["witness"] = witness_json(*r.witness);
  return out;
}

SatResult evaluate(const bp_subject& s, const H1Condition& c, std::uint64_t limit = 0) {
  if (auto st = std::get_if<Structure>(&s.value)) return satisfies_structure(*st, c, limit);
  return satisfies_clone(std::get<GeneratorSet>(s.value), c, limit);
}

Classification classify(const bp_subject& s, int chain_bound) {
  if (chain_bound > kMaxChainBound)
    throw Failure{BP_ERR_LIMIT, "chain bound " + std::to_string(chain_bound) + " exceeds " + std::to_string(kMaxChainBound)};
  if (auto st = std::get_if<Structure>(&s.value)) {
    if (chain_bound <= 0) return classify_structure(*st);
    const int bound = std::max({chain_bound, st->max_arity() + 1, 3});
    return classify_with([&](const H1Condition& c) { return satisfies_structure(*st, c); }, bound, false);
  }
  return classify_generators(std::get<GeneratorSet>(s.value), chain_bound <= 0 ? 6 : std::max(chain_bound, 4));
}

json classification_json(const bp_subject& s, const Classification& c) {
  json out;
  out["subject"] = s.text;
  out["class"] = c.cls ? json(c.cls->to_string()) : json(nullptr);
  out["complexity"] = c.complexity;
  out["chain_bound"] = c.chain_bound;
  out["cutoff_binds"] = c.cutoff_binds;
  if (!c.note.empty()) out["note"] = c.note;
  if (c.cls) {
    auto info = class_info(*c.cls);
    out["canonical_structure"] = info.canonical_structure;
    out["catalog_members"] = info.members;
  }
  out["battery"] = json::array();
  for (const auto& b : c.battery) {
    json row = sat_json(b.result);
    row["condition"] = b.condition;
    row["holds"] = b.holds;
    out["battery"].push_back(std::move(row));
  }
  return out;
}

json check_json(const PaperCheck& c) {
  return {{"group", c.group}, {"name", c.name}, {"ok", c.ok}, {"detail", c.detail}, {"seconds", c.seconds}};
}

}  // namespace

extern "C" {

const char* bp_version(void) { return "1.0.0"; }

const char* bp_last_error(void) { return last_error.c_str(); }

void bp_string_free(char* s) { std::free(s); }

bp_status bp_subject_structure(const char* file_or_name, bp_subject** out) {
  return guard(BP_ERR_PARSE, [&] {
    need(file_or_name && out, "null argument");
    std::string text = file_or_name;
    Structure s;
    if (looks_like_file(text)) {
      s = structure_from_json(read_file(text));
      if (s.name.empty()) s.name = std::filesystem::path(text).stem().string();
    } else {
      s = canonical(text);
    }
    *out = new bp_subject{std::move(s), text};
  });
}

bp_status bp_subject_structure_json(const char* text, bp_subject** out) {
  return guard(BP_ERR_PARSE, [&] {
    need(text && out, "null argument");
    auto s = structure_from_json(text);
    std::string name = s.name.empty() ? "inline structure" : s.name;
    *out = new bp_subject{std::move(s), name};
  });
}

bp_status bp_subject_generators(const char* spec, bp_subject** out) {
  return guard(BP_ERR_PARSE, [&] {
    need(spec && out, "null argument");
    auto g = GeneratorSet::parse(spec);
    *out = new bp_subject{g, "[" + std::string(spec) + "]"};
  });
}

bp_status bp_subject_auto(const char* text, bp_subject** out) {
  if (!text || !out) return guard(BP_ERR_ARGUMENT, [] { need(false, "null argument"); });
  std::string t = text;
  if (t.size() >= 2 && t.front() == '[' && t.back() == ']') return bp_subject_generators(t.substr(1, t.size() - 2).c_str(), out);
  return bp_subject_structure(text, out);
}

void bp_subject_free(bp_subject* s) { delete s; }

int bp_subject_is_structure(const bp_subject* s) { return s && std::holds_alternative<Structure>(s->value); }

bp_status bp_subject_describe(const bp_subject* s, char** out) {
  return guard(BP_ERR_ARGUMENT, [&] {
    need(s && out, "null argument");
    json j;
    j["subject"] = s->text;
    if (auto st = std::get_if<Structure>(&s->value)) {
      j["kind"] = "structure";
      j["structure"] = json::parse(structure_to_json(*st));
    } else {
      j["kind"] = "generators";
      j["generators"] = json::array();
      for (const auto& f : std::get<GeneratorSet>(s->value).generators) j["generators"].push_back(f.to_string());
    }
    *out = dup(j.dump());
  });
}

bp_status bp_condition_load(const char* name_or_file, bp_condition** out) {
  return guard(BP_ERR_PARSE, [&] {
    need(name_or_file && out, "null argument");
    std::string text = name_or_file;
    if (std::filesystem::is_regular_file(text)) {
      auto c = parse_condition(read_file(text));
      if (c.name.empty()) c.name = std::filesystem::path(text).stem().string();
      *out = new bp_condition{std::move(c)};
    } else {
      *out = new bp_condition{builtin(std::string_view(text))};
    }
  });
}

bp_status bp_condition_parse(const char* text, bp_condition** out) {
  return guard(BP_ERR_PARSE, [&] {
    need(text && out, "null argument");
    *out = new bp_condition{parse_condition(text)};
  });
}

void bp_condition_free(bp_condition* c) { delete c; }

bp_status bp_classify(const bp_subject* s, int chain_bound, char** json_out) {
  return guard(BP_ERR_ARGUMENT, [&] {
    need(s && json_out, "null argument");
    *json_out = dup(classification_json(*s, classify(*s, chain_bound)).dump());
  });
}

bp_status bp_compare(const bp_subject* a, const bp_subject* b, int chain_bound, char** json_out) {
  return guard(BP_ERR_ARGUMENT, [&] {
    need(a && b && json_out, "null argument");
    auto ca = classify(*a, chain_bound), cb = classify(*b, chain_bound);
    json j;
    j["a"] = classification_json(*a, ca);
    j["b"] = classification_json(*b, cb);
    j["separations"] = json::array();
    if (!ca.cls || !cb.cls) {
      j["relation"] = "unknown";
      *json_out = dup(j.dump());
      return;
    }
    const bool ab = leq(*ca.cls, *cb.cls), ba = leq(*cb.cls, *ca.cls);
    j["relation"] = ab && ba ? "equivalent" : ab ? "below" : ba ? "above" : "incomparable";
    // A condition holding in `upper` and failing in `lower`, re-checked on the subjects themselves.
    auto separate = [&](const bp_subject& upper, const PosetClass& cu, const bp_subject& lower, const PosetClass& cl,
                        const char* direction) {
      auto sep = separating_condition(cu, cl);
      json row;
      row["direction"] = direction;
      row["condition"] = sep.condition.name;
      row["identities"] = sep.condition.to_string();
      row["holds_in"] = upper.text;
      row["fails_in"] = lower.text;
      row["in_holding"] = sat_json(evaluate(upper, sep.condition));
      row["in_failing"] = sat_json(evaluate(lower, sep.condition));
      row["verified"] = row["in_holding"]["result"] == "satisfied" && row["in_failing"]["result"] == "refuted";
      j["separations"].push_back(std::move(row));
    };
    if (!ba) separate(*b, *cb.cls, *a, *ca.cls, "b_not_below_a");
    if (!ab) separate(*a, *ca.cls, *b, *cb.cls, "a_not_below_b");
    *json_out = dup(j.dump());
  });
}

bp_status bp_check(const bp_subject* s, const bp_condition* c, uint64_t node_limit, char** json_out) {
  return guard(BP_ERR_ARGUMENT, [&] {
    need(s && c && json_out, "null argument");
    auto r = evaluate(*s, c->condition, node_limit);
    json j = sat_json(r);
    j["subject"] = s->text;
    j["condition"] = c->condition.name;
    j["identities"] = c->condition.to_string();
    if (r.witness) j["witness_verified"] = check_witness(c->condition, *r.witness);
    *json_out = dup(j.dump());
  });
}

bp_status bp_members(const bp_subject* s, int arity, char** json_out) {
  return guard(BP_ERR_ARGUMENT, [&] {
    need(s && json_out, "null argument");
    need(arity >= 1, "arity must be positive");
    if (arity > kMaxMemberArity)
      throw Failure{BP_ERR_LIMIT, "arity " + std::to_string(arity) + " exceeds " + std::to_string(kMaxMemberArity)};
    auto slice = std::holds_alternative<Structure>(s->value)
                     ? polymorphisms_at_arity(std::get<Structure>(s->value), arity)
                     : closure_at_arity(std::get<GeneratorSet>(s->value), arity);
    json j;
    j["subject"] = s->text;
    j["arity"] = arity;
    j["count"] = slice.size();
    j["members"] = json::array();
    for (const auto& f : slice.members()) j["members"].push_back(f.to_string());
    *json_out = dup(j.dump());
  });
}

bp_status bp_verify_paper(bp_progress_fn progress, void* user, char** json_out) {
  return guard(BP_ERR_INTERNAL, [&] {
    need(json_out != nullptr, "null argument");
    auto checks = verify_paper([&](const PaperCheck& c) {
      if (progress) progress(check_json(c).dump().c_str(), user);
    });
    json j;
    j["checks"] = json::array();
    std::size_t passed = 0;
    for (const auto& c : checks) {
      passed += c.ok;
      j["checks"].push_back(check_json(c));
    }
    j["passed"] = passed;
    j["failed"] = checks.size() - passed;
    *json_out = dup(j.dump());
  });
}

bp_status bp_export_lattice(int chain_depth, const char* format, char** out) {
  return guard(BP_ERR_ARGUMENT, [&] {
    need(out != nullptr, "null argument");
    need(chain_depth >= 3, "chain depth must be at least 3");
    if (chain_depth > 64) throw Failure{BP_ERR_LIMIT, "chain depth exceeds 64"};
    std::string fmt = format ? format : "dot";
    if (fmt == "dot") {
      *out = dup(export_dot(chain_depth));
      return;
    }
    need(fmt == "json", "format must be dot or json");
    json j;
    j["chain_depth"] = chain_depth;
    j["classes"] = json::array();
    for (const auto& c : lattice_classes(chain_depth)) {
      auto info = class_info(c);
      j["classes"].push_back({{"class", c.to_string()},
                              {"complexity", info.complexity},
                              {"canonical_structure", info.canonical_structure},
                              {"representative", info.representative.to_string()},
                              {"members", info.members}});
    }
    j["covers"] = json::array();
    for (const auto& c : hasse_covers(chain_depth))
      j["covers"].push_back({{"lower", c.lower.to_string()}, {"upper", c.upper.to_string()}, {"elided", c.elided}});
    *out = dup(j.dump());
  });
}

bp_status bp_decision_table(int chain_bound, int threads, char** tsv_out) {
  return guard(BP_ERR_ARGUMENT, [&] {
    need(tsv_out != nullptr, "null argument");
    need(chain_bound >= 3, "chain bound must be at least 3");
    if (chain_bound > kMaxChainBound)
      throw Failure{BP_ERR_LIMIT, "chain bound exceeds " + std::to_string(kMaxChainBound)};
    *tsv_out = dup(format_decision_table(chain_bound, compute_decision_table(chain_bound, std::max(threads, 0))));
  });
}

bp_status bp_decision_table_check(const char* path, int threads, char** json_out) {
  return guard(BP_ERR_PARSE, [&] {
    need(path && json_out, "null argument");
    int bound = 0;
    auto shipped = parse_decision_table(read_file(path), &bound);
    if (bound > kMaxChainBound) throw Failure{BP_ERR_LIMIT, "chain bound exceeds " + std::to_string(kMaxChainBound)};
    auto fresh = compute_decision_table(bound, std::max(threads, 0));
    json j;
    j["chain_bound"] = bound;
    j["rows"] = fresh.size();
    j["mismatches"] = json::array();
    for (const auto& row : fresh) {
      auto it = std::find_if(shipped.begin(), shipped.end(), [&](const DecisionRow& r) { return r.label == row.label; });
      if (it == shipped.end())
        j["mismatches"].push_back({{"label", row.label}, {"problem", "missing from the file"}});
      else if (it->outcomes != row.outcomes || it->cls != row.cls)
        j["mismatches"].push_back({{"label", row.label}, {"problem", "file says " + it->cls + ", search gives " + row.cls}});
    }
    if (shipped.size() != fresh.size())
      j["mismatches"].push_back({{"label", "*"}, {"problem", "file has " + std::to_string(shipped.size()) + " rows, catalog has " +
                                                              std::to_string(fresh.size())}});
    j["ok"] = j["mismatches"].empty();
    *json_out = dup(j.dump());
  });
}

bp_status bp_certificate_load(const char* path, bp_certificate** out) {
  return guard(BP_ERR_PARSE, [&] {
    need(path && out, "null argument");
    read_file(path);  // distinguishes a missing file from a malformed one
    *out = new bp_certificate{load_certificate(path)};
  });
}

bp_status bp_certificate_stcon_to_b2(bp_certificate** out) {
  return guard(BP_ERR_INTERNAL, [&] {
    need(out != nullptr, "null argument");
    *out = new bp_certificate{stcon_to_b2()};
  });
}

void bp_certificate_free(bp_certificate* c) { delete c; }

bp_status bp_certificate_verify(const bp_certificate* c, char** json_out) {
  return guard(BP_ERR_ARGUMENT, [&] {
    need(c && json_out, "null argument");
    auto r = verify_certificate(c->cert);
    json j{{"ok", r.ok}, {"detail", r.detail}, {"source", c->cert.source.name}, {"target", c->cert.target.name},
           {"dimension", c->cert.power.dimension}};
    *json_out = dup(j.dump());
  });
}

bp_status bp_reduce(const bp_certificate* c, const char* instance_path, char** json_out) {
  return guard(BP_ERR_PARSE, [&] {
    need(c && instance_path && json_out, "null argument");
    read_file(instance_path);
    auto inst = load_instance(instance_path);
    auto red = reduce_instance(inst, c->cert);
    json j;
    j["instance"] = json::parse(instance_to_json(red.instance));
    j["variable_map"] = json::array();
    for (const auto& block : red.variable_map) {
      std::vector<int> one_based;
      for (int v : block) one_based.push_back(v + 1);
      j["variable_map"].push_back(one_based);
    }
    if (inst.variables <= kMaxSolverVariables && red.instance.variables <= kMaxSolverVariables) {
      auto original = solve_bruteforce(inst);
      auto reduced = solve_bruteforce(red.instance);
      j["original_satisfiable"] = original.has_value();
      j["reduced_satisfiable"] = reduced.has_value();
      if (reduced) j["transported_solution"] = transport_solution(red, c->cert, *reduced);
    }
    *json_out = dup(j.dump());
  });
}

bp_status bp_validate_reduction(const bp_certificate* c, int count, uint64_t seed, char** json_out) {
  return guard(BP_ERR_ARGUMENT, [&] {
    need(c && json_out, "null argument");
    need(count >= 0, "count must be non-negative");
    auto r = validate_reduction(c->cert, count, seed);
    json j{{"seed", r.seed},
           {"instances", r.instances},
           {"agreements", r.agreements},
           {"satisfiable", r.satisfiable},
           {"transported", r.transported},
           {"largest_reduced", r.largest_reduced},
           {"failures", r.failures},
           {"ok", r.ok()}};
    *json_out = dup(j.dump());
  });
}

}  // extern "C"
