// Command-line front end. Talks to the library through the C interface only.
#include <cstdio>
#include <iostream>
#include <map>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "boolpp/boolpp.h"
#include "json.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct CallError {
  bp_status status;
  std::string message;
};

void call(bp_status s) {
  if (s != BP_OK) throw CallError{s, bp_last_error()};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  bp_string_free(s);
  return out;
}

using Subject = std::unique_ptr<bp_subject, decltype(&bp_subject_free)>;
using Condition = std::unique_ptr<bp_condition, decltype(&bp_condition_free)>;
using Certificate = std::unique_ptr<bp_certificate, decltype(&bp_certificate_free)>;

Subject open_subject(const std::string& structure, const std::string& generators, bool use_generators) {
  bp_subject* s = nullptr;
  if (use_generators)
    call(bp_subject_generators(generators.c_str(), &s));
  else
    call(bp_subject_structure(structure.c_str(), &s));
  return Subject(s, bp_subject_free);
}

Subject open_any(const std::string& text) {
  bp_subject* s = nullptr;
  call(bp_subject_auto(text.c_str(), &s));
  return Subject(s, bp_subject_free);
}

// Readable names for the conditions that have one.
std::string display(const std::string& condition) {
  static const std::map<std::string, std::string> names = {
      {"QNU(3)", "quasi majority"}, {"QMin", "quasi minority"}, {"Comm", "f(x,y)≈f(y,x)"}, {"Const", "f(x)≈f(y)"}};
  auto it = names.find(condition);
  return it == names.end() ? condition : it->second;
}

std::string outcome(const json& r) {
  std::string nodes = std::to_string(r.value("nodes", 0)) + " nodes";
  std::string result = r["result"];
  if (result == "refuted") return "refuted, exhaustive, " + nodes;
  if (result == "unknown") return "undecided, search stopped after " + nodes;
  return "satisfied, " + nodes;
}

void print_witness(const json& r, const std::string& indent) {
  if (!r.contains("witness")) return;
  for (const auto& [symbol, table] : r["witness"].items())
    std::cout << indent << symbol << " = " << table.get<std::string>() << "\n";
}

void print_classification(const json& c) {
  std::cout << "subject " << c["subject"].get<std::string>() << "\n";
  if (c["class"].is_null())
    std::cout << "class unresolved\n";
  else
    std::cout << "class " << c["class"].get<std::string>() << ", " << c["complexity"].get<std::string>() << "\n";
  if (c.contains("note")) std::cout << "note: " << c["note"].get<std::string>() << "\n";
  std::cout << "chain bound " << c["chain_bound"].get<int>() << (c["cutoff_binds"].get<bool>() ? " (binds)" : "") << "\n";
  if (c.contains("canonical_structure") && !c["canonical_structure"].get<std::string>().empty())
    std::cout << "canonical structure " << c["canonical_structure"].get<std::string>() << "\n";
  std::cout << "battery:\n";
  for (const auto& b : c["battery"]) {
    std::printf("  %-8s %s\n", b["condition"].get<std::string>().c_str(), outcome(b).c_str());
    print_witness(b, "      ");
  }
}

int cmd_classify(const json& c, bool as_json) {
  if (as_json)
    std::cout << c.dump(2) << "\n";
  else
    print_classification(c);
  return kExitOk;
}

int cmd_compare(const json& j, bool as_json) {
  if (as_json) {
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }
  auto cls = [](const json& c) { return c["class"].is_null() ? std::string("unresolved") : c["class"].get<std::string>(); };
  std::cout << "A " << j["a"]["subject"].get<std::string>() << ": " << cls(j["a"]) << "\n";
  std::cout << "B " << j["b"]["subject"].get<std::string>() << ": " << cls(j["b"]) << "\n";
  const std::string rel = j["relation"];
  std::string witnesses;
  for (const auto& s : j["separations"]) {
    if (!witnesses.empty()) witnesses += ", ";
    witnesses += display(s["condition"]) + (s["direction"] == "b_not_below_a" ? " (→)" : " (←)");
  }
  if (rel == "equivalent")
    std::cout << "≡\n";
  else if (rel == "unknown")
    std::cout << "unknown: a class is unresolved\n";
  else if (rel == "incomparable")
    std::cout << "incomparable; witnesses: " << witnesses << "\n";
  else
    std::cout << (rel == "below" ? "⪯" : "⪰") << " strictly; witness: " << witnesses << "\n";
  for (const auto& s : j["separations"]) {
    std::cout << "  " << s["condition"].get<std::string>() << " holds in " << s["holds_in"].get<std::string>() << " ("
              << outcome(s["in_holding"]) << "), fails in " << s["fails_in"].get<std::string>() << " ("
              << outcome(s["in_failing"]) << ")\n";
    print_witness(s["in_holding"], "      ");
  }
  return kExitOk;
}

int cmd_check(const json& j, bool as_json) {
  if (as_json) {
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }
  std::cout << "condition " << j["condition"].get<std::string>() << "\n";
  std::string ids = j["identities"];
  for (std::size_t pos = 0, end; pos < ids.size(); pos = end + 1) {
    end = ids.find('\n', pos);
    if (end == std::string::npos) end = ids.size();
    std::cout << "  " << ids.substr(pos, end - pos) << "\n";
  }
  std::cout << "in " << j["subject"].get<std::string>() << ": " << outcome(j) << "\n";
  print_witness(j, "  ");
  return kExitOk;
}

int cmd_members(const json& j, bool as_json) {
  if (as_json) {
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }
  std::cout << j["count"].get<std::size_t>() << " members of arity " << j["arity"].get<int>() << "\n";
  for (const auto& m : j["members"]) std::cout << m.get<std::string>() << "\n";
  return kExitOk;
}

void on_check(const char* line, void* user) {
  if (*static_cast<bool*>(user)) return;
  auto c = json::parse(line);
  std::printf("%s  %-14s %s (%.2fs)\n      %s\n", c["ok"].get<bool>() ? "PASS" : "FAIL", c["group"].get<std::string>().c_str(),
              c["name"].get<std::string>().c_str(), c["seconds"].get<double>(), c["detail"].get<std::string>().c_str());
  std::fflush(stdout);
}

int cmd_verify_paper(bool as_json) {
  char* out = nullptr;
  call(bp_verify_paper(on_check, &as_json, &out));
  auto j = json::parse(take(out));
  if (as_json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << j["passed"].get<int>() << " passed, " << j["failed"].get<int>() << " failed\n";
  return j["failed"].get<int>() == 0 ? kExitOk : kExitFailed;
}

int cmd_reduce(const std::string& cert_path, const std::string& instance, int validate, std::uint64_t seed, bool as_json) {
  bp_certificate* raw = nullptr;
  call(cert_path.empty() ? bp_certificate_stcon_to_b2(&raw) : bp_certificate_load(cert_path.c_str(), &raw));
  Certificate cert(raw, bp_certificate_free);
  char* out = nullptr;
  call(bp_certificate_verify(cert.get(), &out));
  auto check = json::parse(take(out));
  json report;
  report["certificate"] = check;
  if (!check["ok"].get<bool>()) {
    if (as_json)
      std::cout << report.dump(2) << "\n";
    else
      std::cout << "certificate does not verify: " << check["detail"].get<std::string>() << "\n";
    return kExitFailed;
  }
  if (!instance.empty()) {
    call(bp_reduce(cert.get(), instance.c_str(), &out));
    report["reduction"] = json::parse(take(out));
  }
  if (validate > 0) {
    call(bp_validate_reduction(cert.get(), validate, seed, &out));
    report["validation"] = json::parse(take(out));
  }
  const bool ok = !report.contains("validation") || report["validation"]["ok"].get<bool>();
  if (as_json) {
    std::cout << report.dump(2) << "\n";
    return ok ? kExitOk : kExitFailed;
  }
  std::cout << "certificate " << check["source"].get<std::string>() << " -> " << check["target"].get<std::string>()
            << ", dimension " << check["dimension"].get<int>() << ": verified\n";
  if (report.contains("reduction")) {
    const auto& r = report["reduction"];
    const auto& inst = r["instance"];
    std::cout << "reduced instance over " << inst["structure"].get<std::string>() << ": " << inst["variables"].get<int>()
              << " variables, " << inst["constraints"].size() << " constraints\n";
    for (const auto& c : inst["constraints"]) {
      std::string args;
      for (const auto& v : c[1]) args += (args.empty() ? "" : ",") + std::to_string(v.get<int>());
      std::cout << "  " << c[0].get<std::string>() << "(" << args << ")\n";
    }
    std::cout << "variable map:\n";
    for (std::size_t i = 0; i < r["variable_map"].size(); ++i) {
      std::string block;
      for (const auto& v : r["variable_map"][i]) block += (block.empty() ? "" : ",") + std::to_string(v.get<int>());
      std::cout << "  v" << i + 1 << " -> (" << block << ")\n";
    }
    if (r.contains("original_satisfiable"))
      std::cout << "original " << (r["original_satisfiable"].get<bool>() ? "satisfiable" : "unsatisfiable") << ", reduced "
                << (r["reduced_satisfiable"].get<bool>() ? "satisfiable" : "unsatisfiable") << "\n";
    if (r.contains("transported_solution")) {
      std::string sol;
      for (const auto& v : r["transported_solution"]) sol += (sol.empty() ? "" : " ") + std::to_string(v.get<int>());
      std::cout << "transported solution: " << sol << "\n";
    }
  }
  if (report.contains("validation")) {
    const auto& v = report["validation"];
    std::cout << "validation seed " << v["seed"].get<std::uint64_t>() << ": " << v["agreements"].get<int>() << "/"
              << v["instances"].get<int>() << " agree, " << v["transported"].get<int>() << "/" << v["satisfiable"].get<int>()
              << " solutions transported, largest reduced instance " << v["largest_reduced"].get<std::size_t>()
              << " constraints\n";
    for (const auto& f : v["failures"]) std::cout << "  " << f.get<std::string>() << "\n";
  }
  return ok ? kExitOk : kExitFailed;
}

int cmd_decision_table(int chain_bound, int threads, const std::string& check_path, bool as_json) {
  char* out = nullptr;
  if (check_path.empty()) {
    call(bp_decision_table(chain_bound, threads, &out));
    std::cout << take(out);
    return kExitOk;
  }
  call(bp_decision_table_check(check_path.c_str(), threads, &out));
  auto j = json::parse(take(out));
  if (as_json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << j["rows"].get<int>() << " rows regenerated at chain bound " << j["chain_bound"].get<int>() << ", "
              << j["mismatches"].size() << " mismatches\n";
    for (const auto& m : j["mismatches"])
      std::cout << "  " << m["label"].get<std::string>() << ": " << m["problem"].get<std::string>() << "\n";
  }
  return j["ok"].get<bool>() ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pp-constructability classes of Boolean structures and clones"};
  app.require_subcommand(1);
  app.set_version_flag("--version", bp_version());
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output");
  app.fallthrough();

  std::string structure, generators, condition, format = "dot", cert_path, instance, check_path;
  int chain_bound = 0, arity = 0, chain_depth = 6, validate = 0, threads = 0;
  std::uint64_t seed = 1, node_limit = 0;

  auto subject_options = [&](CLI::App* sub) {
    auto* group = sub->add_option_group("subject", "exactly one of");
    group->add_option("--structure", structure, "structure .json file or canonical name");
    group->add_option("--generators", generators, "generator spec such as \"d3,p\"");
    group->require_option(1);
    return group;
  };

  auto* classify = app.add_subcommand("classify", "class, complexity and battery of a structure or clone");
  auto* classify_subject = subject_options(classify);
  classify->add_option("--chain-bound", chain_bound, "largest QNU arity in the battery")->check(CLI::Range(3, 12));

  std::string a, b;
  auto* compare = app.add_subcommand("compare", "order between two structures or clones");
  compare->add_option("A", a, "structure file, canonical name or [generators]")->required();
  compare->add_option("B", b, "structure file, canonical name or [generators]")->required();
  compare->add_option("--chain-bound", chain_bound)->check(CLI::Range(3, 12));

  auto* check = app.add_subcommand("check", "decide a height 1 condition");
  check->add_option("--condition", condition, "builtin name or condition file")->required();
  auto* check_subject = subject_options(check);
  check->add_option("--node-limit", node_limit, "stop after this many search nodes (0: no limit)");

  auto* closure = app.add_subcommand("closure", "k-ary members of a generated clone");
  closure->add_option("--generators", generators)->required();
  closure->add_option("--arity", arity)->required()->check(CLI::Range(1, 4));

  auto* pol = app.add_subcommand("polymorphisms", "k-ary polymorphisms of a structure");
  pol->add_option("--structure", structure)->required();
  pol->add_option("--arity", arity)->required()->check(CLI::Range(1, 4));

  auto* verify = app.add_subcommand("verify-paper", "re-run every collapse and separation");

  auto* lattice = app.add_subcommand("export-lattice", "Hasse diagram of the classes");
  lattice->add_option("--chain-depth", chain_depth)->check(CLI::Range(3, 64));
  lattice->add_option("--format", format)->check(CLI::IsMember({"dot", "json"}));

  auto* reduce = app.add_subcommand("reduce", "reduce an instance through a pp-construction certificate");
  reduce->add_option("--certificate", cert_path, "certificate file (default: the built-in D_STCON one)");
  reduce->add_option("--instance", instance, "instance file over the certificate's target");
  reduce->add_option("--validate", validate, "also check N random instances")->check(CLI::NonNegativeNumber);
  reduce->add_option("--seed", seed);

  auto* table = app.add_subcommand("decision-table", "battery outcomes for every catalog clone");
  table->add_option("--chain-bound", chain_bound)->check(CLI::Range(3, 12));
  table->add_option("--check", check_path, "regenerate and compare with this table file");
  table->add_option("--threads", threads)->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    char* out = nullptr;
    if (*classify) {
      auto s = open_subject(structure, generators, !classify_subject->get_option("--generators")->empty());
      call(bp_classify(s.get(), chain_bound, &out));
      return cmd_classify(json::parse(take(out)), as_json);
    }
    if (*compare) {
      auto sa = open_any(a), sb = open_any(b);
      call(bp_compare(sa.get(), sb.get(), chain_bound, &out));
      return cmd_compare(json::parse(take(out)), as_json);
    }
    if (*check) {
      auto s = open_subject(structure, generators, !check_subject->get_option("--generators")->empty());
      bp_condition* raw = nullptr;
      call(bp_condition_load(condition.c_str(), &raw));
      Condition c(raw, bp_condition_free);
      call(bp_check(s.get(), c.get(), node_limit, &out));
      return cmd_check(json::parse(take(out)), as_json);
    }
    if (*closure || *pol) {
      auto s = open_subject(structure, generators, static_cast<bool>(*closure));
      call(bp_members(s.get(), arity, &out));
      return cmd_members(json::parse(take(out)), as_json);
    }
    if (*verify) return cmd_verify_paper(as_json);
    if (*lattice) {
      call(bp_export_lattice(chain_depth, as_json ? "json" : format.c_str(), &out));
      std::string text = take(out);
      std::cout << (as_json || format == "json" ? json::parse(text).dump(2) + "\n" : text);
      return kExitOk;
    }
    if (*reduce) return cmd_reduce(cert_path, instance, validate, seed, as_json);
    if (*table) return cmd_decision_table(chain_bound == 0 ? 8 : chain_bound, threads, check_path, as_json);
  } catch (const CallError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.status == BP_ERR_INTERNAL ? kExitFailed : kExitUsage;
  }
  return kExitUsage;
}
