// Acceptance run: one PASS/FAIL line per criterion.
#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "boolpp/clone.hpp"
#include "boolpp/conditions.hpp"
#include "boolpp/poset.hpp"
#include "boolpp/ppcon.hpp"
#include "boolpp/reduction.hpp"
#include "boolpp/structure.hpp"

using namespace boolpp;

namespace {

struct Result {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

GeneratorSet gens(const std::string& s) { return GeneratorSet::parse(s); }

bool sat(const GeneratorSet& g, const H1Condition& c) {
  auto r = satisfies_clone(g, c);
  return r.satisfied() && check_witness(c, *r.witness);
}

bool sat(const Structure& s, const H1Condition& c) {
  auto r = satisfies_structure(s, c);
  return r.satisfied() && check_witness(c, *r.witness);
}

// Refused by a search that ran to exhaustion, within `budget` seconds.
bool refuted(const Structure& s, const H1Condition& c, double budget = 1e9) {
  auto t = Clock::now();
  auto r = satisfies_structure(s, c);
  return r.refuted() && r.exhausted && seconds_since(t) < budget;
}

bool refuted(const GeneratorSet& g, const H1Condition& c) {
  auto r = satisfies_clone(g, c);
  return r.refuted() && r.exhausted;
}

std::string read(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Result duality() {
  Result r;
  int pairs = 0;
  for (const auto& e : catalog(8)) {
    auto check = verify_minor_map(MinorMapRule::Dual, e.generators, dual_clone(e.generators), 3);
    r.require(check.ok, e.label + ": " + check.detail);
    auto named_dual = catalog_entry(e.dual_label, 8);
    r.require(named_dual && closure_at_arity(named_dual->generators, 3) == closure_at_arity(dual_clone(e.generators), 3),
              e.label + " dual label");
    ++pairs;
  }
  r.detail = r.ok ? std::to_string(pairs) + " catalog clones" : r.detail;
  return r;
}

Result top_bottom() {
  Result r;
  for (const char* src : {"", "m", "d3,q"})
    r.require(verify_minor_map(MinorMapRule::Constant, gens(src), gens("0"), 3).ok, std::string("constant map from [") + src + "]");
  r.require(verify_minor_map(MinorMapRule::NegationCollapse, gens("c"), gens(""), 3).ok, "negation collapse");
  return r;
}

Result lattice_vs_d3p() {
  Result r;
  auto check = verify_certificate(stcon_to_b2());
  r.require(check.ok, check.detail);
  r.require(contains(gens("or,and"), named("d3")), "d3 in [or,and]");
  r.require(contains(gens("or,and"), named("p")), "p in [or,and]");
  return r;
}

Result idempotent_reducts() {
  Result r;
  r.require(verify_minor_map(MinorMapRule::Idempotentizer, gens("m,c"), gens("m"), 3).ok, "[m,c] -> [m]");
  r.require(verify_minor_map(MinorMapRule::Idempotentizer, gens("d3,c"), gens("d3,m"), 3).ok, "[d3,c] -> [d3,m]");
  for (int k = 1; k <= 3; ++k) {
    r.require(idempotent_reduct_at_arity(gens("m,c"), k) == closure_at_arity(gens("m"), k), "[m,c]^id at " + std::to_string(k));
    r.require(idempotent_reduct_at_arity(gens("d3,c"), k) == closure_at_arity(gens("d3,m"), k),
              "[d3,c]^id at " + std::to_string(k));
  }
  return r;
}

Result atoms() {
  Result r;
  const auto qmaj = builtin(Family::QuasiMajority), comm = builtin(Family::Comm), qmin = builtin(Family::QuasiMinority);
  r.require(sat(gens("d3"), qmaj), "quasi majority in [d3]");
  r.require(refuted(canonical("D_HORNSAT"), qmaj, 1), "quasi majority in Pol(D_HORNSAT)");
  r.require(refuted(canonical("D_3LIN2"), qmaj, 1), "quasi majority in Pol(D_3LIN2)");
  r.require(sat(gens("and"), comm), "Comm in [and]");
  r.require(refuted(canonical("D_2SAT"), comm, 1), "Comm in Pol(D_2SAT)");
  r.require(sat(gens("m"), qmin), "quasi minority in [m]");
  r.require(refuted(canonical("D_2SAT"), qmin, 1), "quasi minority in Pol(D_2SAT)");
  r.require(refuted(canonical("D_HORNSAT"), qmin, 1), "quasi minority in Pol(D_HORNSAT)");
  return r;
}

Result pixley() {
  Result r;
  r.require(refuted(canonical("D_2SAT"), builtin(Family::QuasiMinority)), "quasi minority in Pol(D_2SAT)");
  r.require(refuted(canonical("D_3LIN2"), builtin(Family::QuasiMajority)), "quasi majority in Pol(D_3LIN2)");
  r.require(refuted(canonical("C2"), builtin(Family::Comm)), "Comm in Pol(C2)");
  r.require(refuted(canonical("D_HORNSAT"), builtin(Family::QuasiMajority)), "quasi majority in Pol(D_HORNSAT)");
  return r;
}

Result chains(double& n5_seconds) {
  Result r;
  for (int n = 3; n <= 5; ++n) {
    auto t = Clock::now();
    const auto qnu = builtin(Family::QNU, n);
    const auto two_ones = BoolFn::from_function(n, [](std::uint32_t i) { return std::popcount(i) >= 2; });
    for (const std::string base : {"blocker:", "blocker_leq:"}) {
      const auto lower = canonical(base + std::to_string(n - 1)), upper = canonical(base + std::to_string(n));
      const std::string tag = "QNU(" + std::to_string(n) + ") " + base;
      r.require(sat(lower, qnu), tag + std::to_string(n - 1) + " witness");
      r.require(check_witness(qnu, Witness{{{"f", two_ones}}}) && preserves_all(two_ones, canonical("blocker:" + std::to_string(n - 1))),
                tag + " at-least-two-ones");
      r.require(refuted(upper, qnu), tag + std::to_string(n) + " refusal");
    }
    if (n == 5) n5_seconds = seconds_since(t);
  }
  r.require(n5_seconds < 60, "n = 5 over budget");
  return r;
}

Result hm_qj() {
  Result r;
  auto q = named("q"), p = named("p");
  auto qt = [&](std::vector<int> v) { return minor(q, IndexMap(3, std::move(v))); };
  auto pt = [&](std::vector<int> v) { return minor(p, IndexMap(3, std::move(v))); };
  const auto hm = builtin(Family::HM, 3), qj = builtin(Family::QJ, 4);
  r.require(sat(gens("q"), hm), "HM(3) search in [q]");
  r.require(check_witness(hm, Witness{{{"p0", qt({0, 0, 0})}, {"p1", qt({0, 1, 2})}, {"p2", qt({2, 0, 1})}, {"p3", qt({2, 2, 2})}}}),
            "explicit HM(3) assignment");
  r.require(refuted(canonical("blocker_leq:2"), hm), "HM(3) in Pol(blocker_leq(2))");
  r.require(sat(gens("p"), qj), "QJ(4) search in [p]");
  r.require(check_witness(qj, Witness{{{"t0", pt({0, 0, 0})},
                                       {"t1", pt({0, 1, 2})},
                                       {"t2", pt({0, 2, 2})},
                                       {"t3", pt({2, 0, 1})},
                                       {"t4", pt({2, 2, 2})}}}),
            "explicit QJ(4) assignment");
  r.require(refuted(gens("and"), qj), "QJ(4) in [and]");
  return r;
}

Result coatom() {
  Result r;
  r.require(refuted(canonical("idempotence"), builtin(Family::Const)), "Const in Pol({0},{1})");
  r.require(sat(gens("0"), builtin(Family::Const)), "Const in [0]");
  return r;
}

Result canonical_classes() {
  Result r;
  const std::vector<std::pair<std::string, std::string>> structures = {
      {"D_HORNSAT", "Meet"},          {"D_3LIN2", "M"},         {"D_2SAT", "D3"},           {"C2", "D3M"},
      {"idempotence", "MQ"},          {"blocker:2", "DiQ(3)"},  {"blocker_leq:2", "DiP(3)"}, {"blocker:3", "DiQ(4)"},
      {"blocker_leq:3", "DiP(4)"}};
  const std::vector<std::pair<std::string, std::string>> complexity = {
      {"Meet", "P-complete"}, {"M", "⊕L-complete"}, {"D3", "NL-complete"}, {"D3M", "L"},          {"MQ", "L"},
      {"DiQ(3)", "L"},        {"DiP(3)", "NL-complete"}, {"DiQ(4)", "L"},  {"DiP(4)", "NL-complete"}, {"Bottom", "NP-complete"}};
  auto expected_complexity = [&](const std::string& c) {
    for (const auto& [k, v] : complexity)
      if (k == c) return v;
    return std::string("?");
  };
  for (const auto& [name, want] : structures) {
    auto c = classify_structure(canonical(name));
    std::string got = c.cls ? c.cls->to_string() : "unresolved";
    r.require(got == want && c.complexity == expected_complexity(want), name + " gave " + got + ", " + c.complexity);
  }
  const std::vector<std::pair<std::string, std::string>> generators = {{"p", "P"}, {"q", "Q"}, {"", "Bottom"}, {"0", "Top"}};
  for (const auto& [g, want] : generators) {
    auto c = classify_generators(gens(g), 6);
    std::string got = c.cls ? c.cls->to_string() : "unresolved";
    r.require(got == want, "[" + g + "] gave " + got);
    if (want == "Bottom") r.require(c.complexity == "NP-complete", "[] complexity " + c.complexity);
  }
  return r;
}

Result decision_table() {
  Result r;
  int bound = 0;
  auto shipped = parse_decision_table(read(std::string(BOOLPP_DATA_DIR) + "/decision_table.tsv"), &bound);
  auto fresh = compute_decision_table(bound);
  r.require(shipped.size() == fresh.size(), "row counts differ");
  int mismatches = 0;
  for (const auto& row : fresh) {
    auto it = std::find_if(shipped.begin(), shipped.end(), [&](const DecisionRow& s) { return s.label == row.label; });
    if (it == shipped.end() || it->outcomes != row.outcomes || it->cls != row.cls) {
      ++mismatches;
      r.require(false, row.label);
    }
  }
  if (r.ok) r.detail = std::to_string(fresh.size()) + " rows at chain bound " + std::to_string(bound);
  return r;
}

Result reduction(double& secs) {
  Result r;
  auto t = Clock::now();
  auto report = validate_reduction(stcon_to_b2(), 100, 1);
  secs = seconds_since(t);
  r.require(report.instances == 100 && report.agreements == 100, std::to_string(report.agreements) + "/100 agree");
  r.require(report.transported == report.satisfiable, "transport failed");
  r.require(secs < 10, "over budget");
  if (r.ok)
    r.detail = "100/100 agree, " + std::to_string(report.transported) + "/" + std::to_string(report.satisfiable) + " transported";
  return r;
}

Result lattice_shape() {
  Result r;
  const auto covers = hasse_covers(6);
  int atoms = 0, coatoms = 0;
  for (const auto& c : covers) {
    atoms += c.lower.tag == Tag::Bottom;
    coatoms += c.upper.tag == Tag::Top;
    auto sep = separating_condition(c.upper, c.lower);
    r.require(sep.in_upper.satisfied() && sep.in_lower.refuted(), c.upper.to_string() + " over " + c.lower.to_string());
  }
  r.require(atoms == 3, std::to_string(atoms) + " atoms");
  r.require(coatoms == 1, std::to_string(coatoms) + " coatoms");
  for (int i = 3; i < 6; ++i) {
    r.require(leq(PosetClass::dip(i + 1), PosetClass::dip(i)) && !leq(PosetClass::dip(i), PosetClass::dip(i + 1)),
              "p-chain at " + std::to_string(i));
    r.require(leq(PosetClass::diq(i + 1), PosetClass::diq(i)) && !leq(PosetClass::diq(i), PosetClass::diq(i + 1)),
              "q-chain at " + std::to_string(i));
  }
  if (r.ok) r.detail = "3 atoms, 1 coatom, " + std::to_string(covers.size()) + " covers re-verified";
  return r;
}

}  // namespace

int main() {
  double n5 = 0, reduce_secs = 0;
  struct Criterion {
    const char* name;
    double budget;
    std::function<Result()> run;
  };
  const std::vector<Criterion> criteria = {
      {"duality collapse", 5, duality},
      {"top and bottom", 1e9, top_bottom},
      {"[or,and] equivalent to [d3,p]", 1e9, lattice_vs_d3p},
      {"idempotent reducts", 1e9, idempotent_reducts},
      {"atoms pairwise incomparable", 8, atoms},
      {"Pixley separations", 1e9, pixley},
      {"chain separations", 1e9, [&] { return chains(n5); }},
      {"HM and QJ separations", 1e9, hm_qj},
      {"coatom", 1e9, coatom},
      {"classification of canonical inputs", 1e9, canonical_classes},
      {"decision table regeneration", 1e9, decision_table},
      {"reduction validation", 1e9, [&] { return reduction(reduce_secs); }},
      {"lattice shape", 30, lattice_shape},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t = Clock::now();
    Result r;
    try {
      r = criteria[i].run();
    } catch (const std::exception& e) {
      r.ok = false;
      r.detail = std::string("error: ") + e.what();
    }
    const double secs = seconds_since(t);
    if (secs >= criteria[i].budget) r.require(false, "over the time budget");
    failed += !r.ok;
    std::printf("criterion %2zu %s  %s (%.2fs)%s%s\n", i + 1, r.ok ? "PASS" : "FAIL", criteria[i].name, secs,
                r.detail.empty() ? "" : ": ", r.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
