#include <random>

#include "boolpp/reduction.hpp"
#include "doctest.h"

using namespace boolpp;

namespace {

CspInstance instance(const std::string& structure, int variables, std::vector<CspConstraint> constraints) {
  CspInstance i{canonical(structure), variables, std::move(constraints)};
  check_instance(i);
  return i;
}

// Every assignment, no pruning.
bool naive_satisfiable(const CspInstance& inst) {
  for (std::uint32_t a = 0; a < (1u << inst.variables); ++a) {
    std::vector<int> values;
    for (int v = 0; v < inst.variables; ++v) values.push_back((a >> v) & 1u);
    if (satisfies(inst, values)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("solver examples") {
  auto sol = solve_bruteforce(instance("D_STCON", 2, {{"leq", {0, 1}}, {"one", {0}}}));
  REQUIRE(sol);
  CHECK(*sol == std::vector<int>{1, 1});
  auto empty = solve_bruteforce(instance("D_STCON", 0, {}));
  REQUIRE(empty);
  CHECK(empty->empty());
  CHECK_FALSE(solve_bruteforce(instance("D_STCON", 1, {{"zero", {0}}, {"one", {0}}})));
  CHECK_THROWS_AS(solve_bruteforce(instance("D_STCON", kMaxSolverVariables + 1, {})), Error);
}

TEST_CASE("solver agrees with enumeration") {
  std::mt19937_64 rng(41);
  for (const std::string name : {"D_2SAT", "D_HORNSAT", "D_3LIN2", "B2_LEQ"}) {
    for (int i = 0; i < 50; ++i) {
      auto inst = random_instance(canonical(name), 7, 9, rng);
      auto sol = solve_bruteforce(inst);
      CHECK(sol.has_value() == naive_satisfiable(inst));
      if (sol) CHECK(satisfies(inst, *sol));
    }
  }
}

TEST_CASE("reduction examples") {
  const auto c = stcon_to_b2();
  auto single = reduce_instance(instance("B2_LEQ", 2, {{"B2", {0, 1}}}), c);
  CHECK(single.instance.variables == 4);
  REQUIRE(single.instance.constraints.size() == 1);
  CHECK(single.instance.constraints[0].relation == "leq");
  // x2 of the first block against y1 of the second.
  CHECK(single.instance.constraints[0].vars == std::vector<int>{single.variable_map[0][1], single.variable_map[1][0]});
  auto empty = reduce_instance(instance("B2_LEQ", 0, {}), c);
  CHECK(empty.instance.variables == 0);
  CHECK(empty.instance.constraints.empty());
  auto contradiction = reduce_instance(instance("B2_LEQ", 1, {{"zero", {0}}, {"one", {0}}}), c);
  CHECK_FALSE(solve_bruteforce(contradiction.instance));
}

TEST_CASE("reduction rejects mismatched input") {
  const auto c = stcon_to_b2();
  CHECK_THROWS_AS(reduce_instance(instance("D_2SAT", 1, {}), c), Error);
  auto broken = c;
  broken.hom_to_target[0] = 0;
  CHECK_THROWS_AS(reduce_instance(instance("B2_LEQ", 1, {}), broken), Error);
}

TEST_CASE("equisatisfiability and transport on 100 seeded instances") {
  auto report = validate_reduction(stcon_to_b2(), 100, 2024);
  CHECK(report.instances == 100);
  CHECK(report.agreements == 100);
  CHECK(report.transported == report.satisfiable);
  CHECK(report.satisfiable > 0);
  CHECK(report.satisfiable < 100);
  CHECK(report.ok());
  // Same seed, same report.
  auto again = validate_reduction(stcon_to_b2(), 100, 2024);
  CHECK(again.satisfiable == report.satisfiable);
  CHECK(again.largest_reduced == report.largest_reduced);
}

TEST_CASE("reduced size is linear in the instance") {
  const auto c = stcon_to_b2();
  std::mt19937_64 rng(42);
  for (int i = 0; i < 50; ++i) {
    auto inst = random_instance(c.target, 8, 10, rng);
    auto red = reduce_instance(inst, c);
    CHECK(red.instance.variables <= 2 * inst.variables);
    CHECK(red.instance.constraints.size() <= 2 * inst.constraints.size());
  }
}

TEST_CASE("instance files") {
  auto sat = load_instance(std::string(BOOLPP_DATA_DIR) + "/instances/b2leq_sat.json");
  CHECK(sat.variables == 4);
  CHECK(solve_bruteforce(sat).has_value());
  auto unsat = load_instance(std::string(BOOLPP_DATA_DIR) + "/instances/b2leq_unsat.json");
  CHECK_FALSE(solve_bruteforce(unsat).has_value());
  auto round = parse_instance(instance_to_json(sat));
  CHECK(round.constraints == sat.constraints);
  CHECK_THROWS_AS(parse_instance("{\"structure\": \"D_STCON\", \"variables\": 1, \"constraints\": [[\"leq\", [1]]]}"), Error);
  CHECK_THROWS_AS(parse_instance("{\"structure\": \"D_STCON\", \"variables\": 1, \"constraints\": [[\"one\", [2]]]}"), Error);
  CHECK_THROWS_AS(parse_instance("{\"variables\": 1}"), Error);
  auto inline_structure = parse_instance(
      "{\"structure\": {\"name\": \"S\", \"relations\": [{\"name\": \"T\", \"arity\": 1, \"tuples\": [\"1\"]}]},"
      " \"variables\": 1, \"constraints\": [[\"T\", [1]]]}");
  CHECK(*solve_bruteforce(inline_structure) == std::vector<int>{1});
}
