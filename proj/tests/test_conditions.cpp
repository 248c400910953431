#include <functional>

#include "boolpp/clone.hpp"
#include "boolpp/conditions.hpp"
#include "boolpp/structure.hpp"
#include "doctest.h"

using namespace boolpp;

namespace {

// Both sides of every identity agree under every assignment of its variables.
bool naive_holds(const H1Condition& c, const std::vector<BoolFn>& fs) {
  for (const auto& id : c.identities) {
    for (std::uint32_t a = 0; a < (1u << id.variables); ++a) {
      auto side = [&](const Term& t) {
        std::vector<int> args;
        for (int v : t.vars) args.push_back((a >> v) & 1u);
        return fs[static_cast<std::size_t>(t.symbol)].eval(args);
      };
      if (side(id.lhs) != side(id.rhs)) return false;
    }
  }
  return true;
}

// Exhaustive product search over the clone's slices.
bool naive_satisfiable(const GeneratorSet& g, const H1Condition& c) {
  std::vector<std::vector<BoolFn>> slices;
  for (const auto& s : c.symbols) slices.push_back(closure_at_arity(g, s.arity).members());
  std::vector<BoolFn> pick;
  std::function<bool(std::size_t)> go = [&](std::size_t i) {
    if (i == slices.size()) return naive_holds(c, pick);
    for (const auto& f : slices[i]) {
      pick.push_back(f);
      if (go(i + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  return go(0);
}

std::vector<BoolFn> functions_of(const Witness& w) {
  std::vector<BoolFn> out;
  for (const auto& [name, f] : w.assignment) out.push_back(f);
  return out;
}

BoolFn q_term(const std::vector<int>& vars) { return minor(named("q"), IndexMap(3, vars)); }
BoolFn p_term(const std::vector<int>& vars) { return minor(named("p"), IndexMap(3, vars)); }

}  // namespace

TEST_CASE("parsing conditions") {
  auto comm = parse_condition("f(x,y) = f(y,x)");
  REQUIRE(comm.symbols.size() == 1);
  CHECK(comm.symbols[0].arity == 2);
  CHECK(comm == builtin(Family::Comm));
  CHECK(parse_condition("f(x) = f(y)") == builtin(Family::Const));
  CHECK(parse_condition("f(x,x,y) ≈ f(x,y,x) ≈ f(y,x,x) ≈ f(x,x,x)") == builtin(Family::QuasiMajority));
  CHECK_THROWS_AS(parse_condition("f(x,y) = g(y)\ng(x,x) = f(x,x)"), Error);
  CHECK_THROWS_AS(parse_condition("f(g(x),y) = f(y,x)"), Error);
  CHECK_THROWS_AS(parse_condition("f(x,y) = x"), Error);
  CHECK_THROWS_AS(parse_condition("f(x,y) f(y,x)"), Error);
  auto commented = parse_condition("# comment\n\ng(x,y) = g(y,x)  # trailing\n");
  CHECK(commented.identities.size() == 1);
}

TEST_CASE("builtin families") {
  auto qnu3 = builtin(Family::QNU, 3);
  CHECK(qnu3.symbols.size() == 1);
  CHECK(qnu3.identities.size() == 3);
  CHECK(builtin(Family::HM, 3).symbols.size() == 4);
  CHECK(builtin(Family::QJ, 4).symbols.size() == 5);
  CHECK(builtin("qnu:4") == builtin(Family::QNU, 4));
  CHECK(builtin("qmaj") == builtin(Family::QNU, 3));
  CHECK(builtin("qminor") == builtin(Family::QuasiMinority));
  CHECK(builtin("hm:3") == builtin(Family::HM, 3));
  CHECK_THROWS_AS(builtin("qnu:1"), Error);
  CHECK_THROWS_AS(builtin("frobenius"), Error);
  for (auto name : builtin_names()) {
    if (auto pos = name.find('<'); pos != std::string::npos) name = name.substr(0, pos) + "4";
    CHECK_NOTHROW(builtin(name));
  }
}

TEST_CASE("rendering parses back to the same condition") {
  for (const auto& c : {builtin(Family::QNU, 5), builtin(Family::HM, 3), builtin(Family::QJ, 4), builtin(Family::QuasiMinority),
                        builtin(Family::Comm), builtin(Family::Const)}) {
    CAPTURE(c.name);
    auto back = parse_condition(c.to_string());
    CHECK(back.to_string() == c.to_string());
    CHECK(back.identities.size() == c.identities.size());
  }
}

TEST_CASE("explicit HM(3) and QJ(4) witnesses") {
  Witness hm{{{"p0", q_term({0, 0, 0})}, {"p1", q_term({0, 1, 2})}, {"p2", q_term({2, 0, 1})}, {"p3", q_term({2, 2, 2})}}};
  CHECK(check_witness(builtin(Family::HM, 3), hm));
  CHECK(naive_holds(builtin(Family::HM, 3), functions_of(hm)));
  Witness qj{{{"t0", p_term({0, 0, 0})},
              {"t1", p_term({0, 1, 2})},
              {"t2", p_term({0, 2, 2})},
              {"t3", p_term({2, 0, 1})},
              {"t4", p_term({2, 2, 2})}}};
  CHECK(check_witness(builtin(Family::QJ, 4), qj));
  CHECK(naive_holds(builtin(Family::QJ, 4), functions_of(qj)));
  Witness wrong{{{"f", named("and")}}};
  CHECK_FALSE(check_witness(builtin(Family::QuasiMajority), Witness{{{"f", named("m")}}}));
  CHECK_FALSE(check_witness(builtin(Family::QuasiMajority), wrong));
}

TEST_CASE("clone satisfaction examples") {
  auto hm = satisfies_clone(GeneratorSet::parse("q"), builtin(Family::HM, 3));
  REQUIRE(hm.satisfied());
  CHECK(check_witness(builtin(Family::HM, 3), *hm.witness));
  auto qj = satisfies_clone(GeneratorSet::parse("p"), builtin(Family::QJ, 4));
  REQUIRE(qj.satisfied());
  CHECK(check_witness(builtin(Family::QJ, 4), *qj.witness));
  auto none = satisfies_clone(GeneratorSet::parse("and"), builtin(Family::QJ, 4));
  CHECK(none.refuted());
  CHECK(none.exhausted);
}

TEST_CASE("clone satisfaction matches exhaustive product search") {
  const std::vector<H1Condition> conditions = {builtin(Family::Const), builtin(Family::Comm), builtin(Family::QuasiMinority),
                                               builtin(Family::QuasiMajority), parse_condition("f(x,y,y) = f(y,x,x)")};
  for (const auto& e : catalog(4)) {
    for (const auto& c : conditions) {
      CAPTURE(e.label);
      CAPTURE(c.name);
      auto r = satisfies_clone(e.generators, c);
      CHECK(r.exhausted);
      CHECK(r.satisfied() == naive_satisfiable(e.generators, c));
      if (r.satisfied()) {
        CHECK(naive_holds(c, functions_of(*r.witness)));
        for (const auto& [name, f] : r.witness->assignment) CHECK(contains(e.generators, f));
      }
    }
  }
}

TEST_CASE("HM(3) matches exhaustive product search on small clones") {
  const auto hm = builtin(Family::HM, 3);
  int compared = 0;
  for (const auto& e : catalog(4)) {
    if (closure_at_arity(e.generators, 3).size() > 12) continue;
    CAPTURE(e.label);
    CHECK(satisfies_clone(e.generators, hm).satisfied() == naive_satisfiable(e.generators, hm));
    ++compared;
  }
  CHECK(compared >= 8);
}

TEST_CASE("structure satisfaction examples") {
  auto b2 = satisfies_structure(canonical("blocker:2"), builtin(Family::QuasiMajority));
  REQUIRE(b2.satisfied());
  auto g = b2.witness->find("f");
  REQUIRE(g != nullptr);
  CHECK(preserves_all(*g, canonical("blocker:2")));
  CHECK(check_witness(builtin(Family::QuasiMajority), Witness{{{"f", named("d3")}}}));
  CHECK(satisfies_structure(canonical("blocker:3"), builtin(Family::QuasiMajority)).refuted());
  CHECK(satisfies_structure(canonical("blocker_leq:2"), builtin(Family::HM, 3)).refuted());
  CHECK(satisfies_structure(canonical("idempotence"), builtin(Family::Const)).refuted());
}

TEST_CASE("a node limit stops the search undecided") {
  auto r = satisfies_structure(canonical("B2_LEQ"), builtin(Family::HM, 3), 3);
  CHECK_FALSE(r.satisfied());
  CHECK_FALSE(r.refuted());
  CHECK_FALSE(r.exhausted);
}
