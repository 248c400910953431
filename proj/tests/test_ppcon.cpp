#include <random>

#include "boolpp/ppcon.hpp"
#include "boolpp/structure.hpp"
#include "doctest.h"

using namespace boolpp;

namespace {

// Free variables are the high bits of the tuple, first variable most significant.
Relation naive_eval(const Structure& a, const PpFormula& phi) {
  const int total = phi.free_vars + phi.existential_vars;
  std::vector<std::uint32_t> tuples;
  for (std::uint32_t fv = 0; fv < (1u << phi.free_vars); ++fv) {
    bool found = false;
    for (std::uint32_t ev = 0; ev < (1u << phi.existential_vars) && !found; ++ev) {
      const std::uint32_t all = (fv << phi.existential_vars) | ev;
      auto value = [&](int v) { return (all >> (total - 1 - v)) & 1u; };
      bool ok = true;
      for (const auto& atom : phi.atoms) {
        std::uint32_t t = 0;
        for (int v : atom.args) t = (t << 1) | value(v);
        ok = ok && a.find(atom.relation)->contains(t);
      }
      for (auto [u, v] : phi.equalities) ok = ok && value(u) == value(v);
      found = ok;
    }
    if (found) tuples.push_back(fv);
  }
  return Relation("phi", phi.free_vars, tuples);
}

FiniteStructure power_of(const PpCertificate& c) { return build_power(c.power); }

}  // namespace

TEST_CASE("eval_pp examples") {
  auto stcon = canonical("D_STCON");
  auto b2 = eval_pp(stcon, parse_pp_formula("leq(x2,y1)", {"x1", "x2", "y1", "y2"}, stcon));
  std::vector<std::uint32_t> expected;
  for (std::uint32_t t = 0; t < 16; ++t)
    if (((t >> 2) & 1u) <= ((t >> 1) & 1u)) expected.push_back(t);
  CHECK(b2.tuples() == expected);
  CHECK(b2.size() == 12);
  auto full = eval_pp(stcon, parse_pp_formula("", {"x"}, stcon));
  CHECK(full.full());
  auto zero = eval_pp(stcon, parse_pp_formula("x1 = 0 & x2 = 1", {"x1", "x2"}, stcon));
  CHECK(zero.tuples() == std::vector<std::uint32_t>{0b01});
  auto chain = eval_pp(stcon, parse_pp_formula("leq(x,u) ∧ leq(u,y) & u = v & one(v)", {"x", "y"}, stcon));
  CHECK(chain.tuples() == std::vector<std::uint32_t>{0b01, 0b11});
}

TEST_CASE("eval_pp agrees with enumeration on random formulas") {
  std::mt19937_64 rng(31);
  for (const std::string name : {"D_STCON", "D_2SAT", "D_3LIN2", "D_HORNSAT"}) {
    auto s = canonical(name);
    for (int trial = 0; trial < 60; ++trial) {
      PpFormula phi;
      phi.free_vars = 1 + static_cast<int>(rng() % 3);
      phi.existential_vars = static_cast<int>(rng() % 3);
      const int total = phi.free_vars + phi.existential_vars;
      const int atoms = static_cast<int>(rng() % 4);
      for (int i = 0; i < atoms; ++i) {
        const auto& r = s.relations[rng() % s.relations.size()];
        PpAtom atom{r.name(), {}};
        for (int j = 0; j < r.arity(); ++j) atom.args.push_back(static_cast<int>(rng() % static_cast<unsigned>(total)));
        phi.atoms.push_back(atom);
      }
      if (rng() % 3 == 0) phi.equalities.push_back({static_cast<int>(rng() % total), static_cast<int>(rng() % total)});
      CAPTURE(name);
      CAPTURE(trial);
      CHECK(eval_pp(s, phi).tuples() == naive_eval(s, phi).tuples());
    }
  }
}

TEST_CASE("formula errors") {
  auto sat = canonical("D_2SAT");
  CHECK_THROWS_AS(parse_pp_formula("x = 0", {"x"}, sat), Error);
  CHECK_THROWS_AS(parse_pp_formula("nope(x)", {"x"}, sat), Error);
  CHECK_THROWS_AS(parse_pp_formula("R00(x)", {"x"}, sat), Error);
  CHECK_THROWS_AS(parse_pp_formula("R00(x,y", {"x", "y"}, sat), Error);
}

TEST_CASE("the STCON power") {
  auto c = stcon_to_b2();
  auto power = power_of(c);
  CHECK(power.domain_size == 4);
  const FiniteRelation* leq = power.find("leq");
  REQUIRE(leq != nullptr);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const bool expected = (a >> 1) <= (b >> 1) && (b & 1) <= (a & 1);
      CHECK(leq->contains({a, b}) == expected);
    }
  const FiniteRelation* one = power.find("one");
  REQUIRE(one != nullptr);
  CHECK(one->tuples == std::vector<std::vector<int>>{{0b10}});
}

TEST_CASE("homomorphisms") {
  auto c = stcon_to_b2();
  auto power = power_of(c);
  auto target = FiniteStructure::from_boolean(canonical("B2_LEQ"));
  CHECK(is_homomorphism(power, target, {1, 0, 1, 1}));
  CHECK(is_homomorphism(target, power, {0b01, 0b10}));
  CHECK(hom_equivalent(power, target));
  CHECK(find_homomorphism(target, target).has_value());
  auto a = FiniteStructure::from_boolean(Structure{"A", {singleton(false).renamed("U")}});
  auto b = FiniteStructure::from_boolean(Structure{"B", {Relation("U", 1, {})}});
  CHECK_FALSE(find_homomorphism(a, b).has_value());
  CHECK(hom_equivalent(a, a));
}

TEST_CASE("certificates") {
  CHECK(verify_certificate(stcon_to_b2()).ok);
  for (const std::string name : {"D_2SAT", "D_HORNSAT", "D_3LIN2", "C2", "blocker:3"}) {
    CAPTURE(name);
    CHECK(verify_certificate(identity_certificate(canonical(name))).ok);
  }
  auto corrupted = stcon_to_b2();
  corrupted.hom_to_target[0b00] = 0;
  auto check = verify_certificate(corrupted);
  CHECK_FALSE(check.ok);
  CHECK(check.detail.find("B2") != std::string::npos);
  auto reparsed = parse_certificate(format_certificate(stcon_to_b2()));
  CHECK(verify_certificate(reparsed).ok);
  CHECK(reparsed.hom_to_target == stcon_to_b2().hom_to_target);
  auto loaded = load_certificate(std::string(BOOLPP_DATA_DIR) + "/certificates/stcon_to_b2.cert");
  CHECK(verify_certificate(loaded).ok);
  CHECK(stcon_to_b2_text().find("dimension 2") != std::string::npos);
  CHECK_THROWS_AS(parse_certificate("source D_STCON\ntarget B2_LEQ\ndimension 0\n"), Error);
}
