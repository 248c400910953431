#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "boolpp/clone.hpp"
#include "boolpp/conditions.hpp"
#include "boolpp/poset.hpp"
#include "boolpp/structure.hpp"
#include "doctest.h"

using namespace boolpp;

namespace {

PosetClass cls(const std::string& s) {
  auto c = PosetClass::parse(s);
  REQUIRE(c.has_value());
  return *c;
}

std::string read(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("order examples") {
  CHECK(leq(cls("Bottom"), cls("M")));
  CHECK(leq(cls("DiQ(4)"), cls("DiQ(3)")));
  CHECK_FALSE(leq(cls("DiQ(3)"), cls("DiQ(4)")));
  CHECK_FALSE(leq(cls("M"), cls("Meet")));
  CHECK_FALSE(leq(cls("Meet"), cls("M")));
  CHECK(leq(cls("MQ"), cls("Top")));
  CHECK(leq(cls("P"), cls("DiP(9)")));
}

TEST_CASE("the order is a partial order") {
  auto classes = lattice_classes(7);
  for (const auto& a : classes) {
    CHECK(leq(a, a));
    for (const auto& b : classes) {
      if (a != b) CHECK_FALSE((leq(a, b) && leq(b, a)));
      for (const auto& c : classes)
        if (leq(a, b) && leq(b, c)) CHECK(leq(a, c));
    }
  }
}

TEST_CASE("the order matches inclusion of battery outcomes on representatives") {
  const auto battery = battery_conditions(6);
  std::map<std::string, std::vector<bool>> holds;
  const auto classes = lattice_classes(5);
  for (const auto& c : classes) {
    auto rep = class_info(c).representative;
    for (const auto& cond : battery) holds[c.to_string()].push_back(satisfies_clone(rep, cond).satisfied());
  }
  for (const auto& a : classes)
    for (const auto& b : classes) {
      const auto& ha = holds[a.to_string()];
      const auto& hb = holds[b.to_string()];
      bool included = true;
      for (std::size_t i = 0; i < ha.size(); ++i) included = included && (!ha[i] || hb[i]);
      CAPTURE(a.to_string());
      CAPTURE(b.to_string());
      CHECK(leq(a, b) == included);
    }
}

TEST_CASE("class names") {
  for (const auto& c : lattice_classes(6)) CHECK(PosetClass::parse(c.to_string()) == c);
  CHECK(PosetClass::parse("dip:4") == PosetClass::dip(4));
  CHECK(PosetClass::parse("DiQ4") == PosetClass::diq(4));
  CHECK_FALSE(PosetClass::parse("DiP(2)"));
  CHECK_FALSE(PosetClass::parse("Middle"));
}

TEST_CASE("separating conditions") {
  CHECK(separating_condition(cls("D3"), cls("Meet")).condition == builtin(Family::QuasiMajority));
  CHECK(separating_condition(cls("Q"), cls("DiP(3)")).condition == builtin(Family::HM, 3));
  CHECK(separating_condition(cls("DiQ(3)"), cls("DiQ(4)")).condition == builtin(Family::QNU, 3));
  auto s = separating_condition(cls("DiP(4)"), cls("DiP(5)"));
  CHECK(s.condition == builtin(Family::QNU, 4));
  CHECK(s.in_upper.satisfied());
  CHECK(s.in_lower.refuted());
  CHECK_THROWS_AS(separating_condition(cls("Meet"), cls("Top")), Error);
}

TEST_CASE("complexity labels") {
  CHECK(complexity_of(cls("M")) == "⊕L-complete");
  CHECK(complexity_of(cls("DiP(5)")) == "NL-complete");
  CHECK(complexity_of(cls("DiQ(4)")) == "L");
  CHECK(complexity_of(cls("Bottom")) == "NP-complete");
  CHECK(complexity_of(cls("Meet")) == "P-complete");
  CHECK(complexity_of(cls("P")) == "NL-complete");
}

TEST_CASE("classifying generator sets") {
  CHECK(classify_generators(GeneratorSet::parse("and,or"), 6).cls == cls("DiP(3)"));
  CHECK(classify_generators(GeneratorSet::parse("m,c"), 6).cls == cls("M"));
  CHECK(classify_generators(GeneratorSet::parse("d4,q"), 6).cls == cls("DiQ(4)"));
  CHECK(classify_generators(GeneratorSet::parse("p^d"), 6).cls == cls("P"));
  CHECK(classify_generators(GeneratorSet::parse("or,q"), 6).cls == cls("MQ"));
  auto top = classify_generators(GeneratorSet::parse("1"), 6);
  CHECK(top.cls == cls("Top"));
  CHECK(top.battery.front().holds);
}

TEST_CASE("classifying structures") {
  CHECK(classify_structure(canonical("D_HORNSAT")).cls == cls("Meet"));
  CHECK(classify_structure(canonical("idempotence")).cls == cls("MQ"));
  CHECK(classify_structure(canonical("C2")).cls == cls("D3M"));
  CHECK(classify_structure(canonical("blocker:4")).cls == cls("DiQ(5)"));
  auto empty = structure_from_json("{\"relations\": [{\"name\": \"E\", \"arity\": 2, \"tuples\": []}]}");
  CHECK(classify_structure(empty).cls == cls("Top"));
  auto nae = load_structure(std::string(BOOLPP_DATA_DIR) + "/structures/nae3.json");
  auto c = classify_structure(nae);
  CHECK(c.cls == cls("Bottom"));
  CHECK(c.complexity == "NP-complete");
}

TEST_CASE("Hasse diagram") {
  auto covers = hasse_covers(6);
  int atoms = 0, under_top = 0;
  for (const auto& c : covers) {
    atoms += c.lower == cls("Bottom");
    if (c.upper == cls("Top")) {
      ++under_top;
      CHECK(c.lower == cls("MQ"));
    }
  }
  CHECK(atoms == 3);
  CHECK(under_top == 1);
  auto has = [&](const char* lo, const char* up) {
    return std::any_of(covers.begin(), covers.end(), [&](const Cover& c) { return c.lower == cls(lo) && c.upper == cls(up); });
  };
  CHECK(has("DiQ(4)", "DiQ(3)"));
  CHECK(has("DiP(6)", "DiP(5)"));
  CHECK_FALSE(has("DiP(5)", "DiP(3)"));
  // A cover relation has nothing strictly between its ends.
  auto classes = lattice_classes(6);
  for (const auto& c : covers) {
    if (c.elided) continue;
    for (const auto& m : classes) CHECK_FALSE((m != c.lower && m != c.upper && leq(c.lower, m) && leq(m, c.upper)));
  }
  auto dot = export_dot(4);
  CHECK(dot.find("digraph") == 0);
  CHECK(dot.find("DiQ4") != std::string::npos);
}

TEST_CASE("decision table text") {
  int bound = 0;
  auto rows = parse_decision_table(read(std::string(BOOLPP_DATA_DIR) + "/decision_table.tsv"), &bound);
  CHECK(bound == 8);
  CHECK(rows.size() == catalog(8).size());
  for (const auto& r : rows) {
    CAPTURE(r.label);
    auto members = class_info(cls(r.cls)).members;
    CHECK(std::find(members.begin(), members.end(), r.label) != members.end());
  }
  int again = 0;
  auto reparsed = parse_decision_table(format_decision_table(bound, rows), &again);
  CHECK(again == bound);
  CHECK(reparsed.size() == rows.size());
  CHECK_THROWS_AS(parse_decision_table("# chain_bound 4\nlabel\tclass\n[]\t0\t1\tBottom\n", &again), Error);
}

TEST_CASE("small decision table regenerates consistently") {
  auto rows = compute_decision_table(4, 2);
  for (const auto& r : rows) {
    CAPTURE(r.label);
    CHECK(r.cls == classify_generators(catalog_entry(r.label, 4)->generators, 4).cls->to_string());
  }
}
