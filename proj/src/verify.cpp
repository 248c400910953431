#include "boolpp/verify.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <map>

#include "boolpp/clone.hpp"
#include "boolpp/conditions.hpp"
#include "boolpp/poset.hpp"
#include "boolpp/ppcon.hpp"
#include "boolpp/structure.hpp"

namespace boolpp {

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

class Suite {
 public:
  explicit Suite(const std::function<void(const PaperCheck&)>& progress) : progress_(progress) {}

  void run(const std::string& group, const std::string& name, const std::function<Outcome()>& body) {
    PaperCheck c{group, name, false, {}, 0};
    auto start = std::chrono::steady_clock::now();
    try {
      auto o = body();
      c.ok = o.ok;
      c.detail = std::move(o.detail);
    } catch (const std::exception& e) {
      c.detail = std::string("error: ") + e.what();
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (progress_) progress_(c);
    checks_.push_back(std::move(c));
  }

  std::vector<PaperCheck> take() { return std::move(checks_); }

 private:
  const std::function<void(const PaperCheck&)>& progress_;
  std::vector<PaperCheck> checks_;
};

std::string verdict(const SatResult& r) {
  if (r.satisfied()) return "witness found";
  return r.exhausted ? "refuted after " + std::to_string(r.nodes) + " nodes" : "search stopped";
}

Outcome sat_in_clone(const std::string& gens, const H1Condition& c) {
  auto r = satisfies_clone(GeneratorSet::parse(gens), c);
  bool ok = r.satisfied() && check_witness(c, *r.witness);
  return {ok, c.name + " in [" + gens + "]: " + verdict(r)};
}

Outcome unsat_in_clone(const std::string& gens, const H1Condition& c) {
  auto r = satisfies_clone(GeneratorSet::parse(gens), c);
  return {r.refuted(), c.name + " in [" + gens + "]: " + verdict(r)};
}

Outcome unsat_in_structure(const std::string& name, const H1Condition& c) {
  auto r = satisfies_structure(canonical(name), c);
  return {r.refuted(), c.name + " in Pol(" + name + "): " + verdict(r)};
}

Outcome sat_in_structure(const std::string& name, const H1Condition& c) {
  auto r = satisfies_structure(canonical(name), c);
  bool ok = r.satisfied() && check_witness(c, *r.witness);
  return {ok, c.name + " in Pol(" + name + "): " + verdict(r)};
}

Outcome both(const Outcome& a, const Outcome& b) { return {a.ok && b.ok, a.detail + "; " + b.detail}; }

Outcome minor_map(MinorMapRule rule, const std::string& source, const std::string& target) {
  auto r = verify_minor_map(rule, GeneratorSet::parse(source), GeneratorSet::parse(target), 3);
  return {r.ok, to_string(rule) + " [" + source + "] -> [" + target + "]: " +
                    std::to_string(r.operations_checked) + " operations, " + std::to_string(r.minors_checked) +
                    " minors" + (r.ok ? "" : "; " + r.detail)};
}

// The n-ary operation that is 1 iff at least two arguments are 1.
BoolFn at_least_two(int n) {
  return BoolFn::from_function(n, [](std::uint32_t index) { return std::popcount(index) >= 2; });
}

BoolFn term(const BoolFn& f, std::vector<int> vars) { return minor(f, IndexMap(3, std::move(vars))); }

}  // namespace

std::vector<PaperCheck> verify_paper(const std::function<void(const PaperCheck&)>& progress) {
  Suite s(progress);
  const H1Condition qmaj = builtin(Family::QuasiMajority);
  const H1Condition qmin = builtin(Family::QuasiMinority);
  const H1Condition comm = builtin(Family::Comm);
  const H1Condition cnst = builtin(Family::Const);

  // Collapses.
  s.run("collapse", "duality: every catalog clone is equivalent to its dual", [] {
    std::size_t n = 0;
    for (const auto& e : catalog(6)) {
      auto r = verify_minor_map(MinorMapRule::Dual, e.generators, dual_clone(e.generators), 3);
      if (!r.ok) return Outcome{false, e.label + ": " + r.detail};
      auto named_dual = catalog_entry(e.dual_label, 6);
      if (!named_dual || closure_at_arity(named_dual->generators, 3) != closure_at_arity(dual_clone(e.generators), 3))
        return Outcome{false, e.label + ": dual label " + e.dual_label + " does not name the dual clone"};
      ++n;
    }
    return Outcome{true, std::to_string(n) + " catalog entries, cap 3"};
  });
  for (const char* src : {"", "m", "d3,q"})
    s.run("collapse", std::string("top: constant map [") + src + "] -> [0]",
          [src] { return minor_map(MinorMapRule::Constant, src, "0"); });
  s.run("collapse", "bottom: negation collapse [c] -> []", [] { return minor_map(MinorMapRule::NegationCollapse, "c", ""); });
  s.run("collapse", "[or,and] is equivalent to [d3,p]: certificate D_STCON -> (B2, <=)", [] {
    auto r = verify_certificate(stcon_to_b2());
    return Outcome{r.ok, r.detail};
  });
  s.run("collapse", "[d3,p] is a subclone of [or,and] containing and", [] {
    auto lattice = GeneratorSet::parse("and,or");
    auto d3p = GeneratorSet::parse("d3,p");
    bool ok = contains(lattice, named("d3")) && contains(lattice, named("p")) && contains(d3p, named("and"));
    return Outcome{ok, ok ? "inclusions hold at arity 3" : "an inclusion fails"};
  });
  s.run("collapse", "idempotentizer [m,c] -> [m]", [] { return minor_map(MinorMapRule::Idempotentizer, "m,c", "m"); });
  s.run("collapse", "idempotentizer [d3,c] -> [d3,m]",
        [] { return minor_map(MinorMapRule::Idempotentizer, "d3,c", "d3,m"); });
  s.run("collapse", "idempotent reducts [m,c]^id = [m], [d3,c]^id = [d3,m] (arities 1-3)", [] {
    for (int k = 1; k <= 3; ++k) {
      if (idempotent_reduct_at_arity(GeneratorSet::parse("m,c"), k) != closure_at_arity(GeneratorSet::parse("m"), k))
        return Outcome{false, "[m,c]^id differs from [m] at arity " + std::to_string(k)};
      if (idempotent_reduct_at_arity(GeneratorSet::parse("d3,c"), k) != closure_at_arity(GeneratorSet::parse("d3,m"), k))
        return Outcome{false, "[d3,c]^id differs from [d3,m] at arity " + std::to_string(k)};
    }
    return Outcome{true, "slices equal at arities 1, 2, 3"};
  });

  // Separations.
  s.run("separation", "atoms: quasi majority separates [d3] from [and]",
        [&] { return both(sat_in_clone("d3", qmaj), unsat_in_structure("D_HORNSAT", qmaj)); });
  s.run("separation", "atoms: quasi majority separates [d3] from [m]",
        [&] { return unsat_in_structure("D_3LIN2", qmaj); });
  s.run("separation", "atoms: Comm separates [and] from [d3]",
        [&] { return both(sat_in_clone("and", comm), unsat_in_structure("D_2SAT", comm)); });
  s.run("separation", "atoms: Comm separates [and] from [m]", [&] { return unsat_in_structure("D_3LIN2", comm); });
  s.run("separation", "atoms: quasi minority separates [m] from [d3]",
        [&] { return both(sat_in_clone("m", qmin), unsat_in_structure("D_2SAT", qmin)); });
  s.run("separation", "atoms: quasi minority separates [m] from [and]",
        [&] { return unsat_in_structure("D_HORNSAT", qmin); });
  s.run("separation", "Pixley: [d3,m] is above neither [d3] nor [m] nor [and]", [&] {
    auto a = unsat_in_structure("D_2SAT", qmin);
    auto b = unsat_in_structure("D_3LIN2", qmaj);
    auto c = unsat_in_structure("D_HORNSAT", qmaj);
    return both(both(a, b), c);
  });
  s.run("separation", "Pixley: Comm separates [and] from [d3,m]", [&] { return unsat_in_structure("C2", comm); });
  for (int n = 3; n <= 5; ++n) {
    const H1Condition qnu = builtin(Family::QNU, n);
    for (const std::string base : {"blocker", "blocker_leq"}) {
      const std::string lower = base + ":" + std::to_string(n - 1), upper = base + ":" + std::to_string(n);
      s.run("separation", "QNU(" + std::to_string(n) + ") separates Pol(" + lower + ") from Pol(" + upper + ")", [=] {
        auto witness = sat_in_structure(lower, qnu);
        Witness g{{{"f", at_least_two(n)}}};
        bool g_ok = check_witness(qnu, g) && preserves_all(g.assignment.front().second, canonical("blocker:" + std::to_string(n - 1)));
        auto refuted = unsat_in_structure(upper, qnu);
        auto out = both(witness, refuted);
        out.ok = out.ok && g_ok;
        out.detail += g_ok ? "; the at-least-two-ones operation is a witness" : "; the at-least-two-ones operation fails";
        return out;
      });
    }
  }
  s.run("separation", "HM(3) holds in [q], with the explicit witnesses", [] {
    auto q = named("q");
    Witness w{{{"p0", term(q, {0, 0, 0})}, {"p1", term(q, {0, 1, 2})}, {"p2", term(q, {2, 0, 1})}, {"p3", term(q, {2, 2, 2})}}};
    const auto hm = builtin(Family::HM, 3);
    const auto slice = closure_at_arity(GeneratorSet::parse("q"), 3);
    bool members = std::all_of(w.assignment.begin(), w.assignment.end(), [&](const auto& a) { return slice.contains(a.second); });
    auto found = sat_in_clone("q", hm);
    bool ok = found.ok && members && check_witness(hm, w);
    return Outcome{ok, found.detail + (check_witness(hm, w) ? "; explicit assignment verifies" : "; explicit assignment fails")};
  });
  s.run("separation", "HM(3) separates [q] from [d3,p]", [] { return unsat_in_structure("B2_LEQ", builtin(Family::HM, 3)); });
  s.run("separation", "QJ(4) holds in [p], with the explicit witnesses", [] {
    auto p = named("p");
    Witness w{{{"t0", term(p, {0, 0, 0})},
               {"t1", term(p, {0, 1, 2})},
               {"t2", term(p, {0, 2, 2})},
               {"t3", term(p, {2, 0, 1})},
               {"t4", term(p, {2, 2, 2})}}};
    const auto qj = builtin(Family::QJ, 4);
    auto found = sat_in_clone("p", qj);
    bool explicit_ok = check_witness(qj, w);
    return Outcome{found.ok && explicit_ok, found.detail + (explicit_ok ? "; explicit assignment verifies" : "; explicit assignment fails")};
  });
  s.run("separation", "QJ(4) separates [p] from [and]", [] { return unsat_in_clone("and", builtin(Family::QJ, 4)); });
  s.run("separation", "coatom: Const separates [0] from the idempotent clones", [&] {
    return both(sat_in_clone("0", cnst), unsat_in_structure("idempotence", cnst));
  });
  s.run("separation", "min-order: quasi minority separates [m] from [d3,p] and [d3,q]", [&] {
    std::size_t count = 0;
    for (std::uint32_t t = 0; t < 256; ++t) {
      auto f = BoolFn::from_function(3, [t](std::uint32_t i) { return (t >> i) & 1u; });
      if (!check_witness(qmin, Witness{{{"f", f}}})) continue;
      ++count;
      for (const char* name : {"B2_LEQ", "blocker:2"})
        if (preserves_all(f, canonical(name)))
          return Outcome{false, "quasi minority " + f.to_string() + " is a polymorphism of " + name};
    }
    auto out = both(unsat_in_structure("B2_LEQ", qmin), unsat_in_structure("blocker:2", qmin));
    out.detail += "; none of the " + std::to_string(count) + " ternary quasi minority operations is a polymorphism of either";
    return out;
  });
  s.run("separation", "every non-inequality of the lattice (chain depth 5) has a live witness", [] {
    const auto classes = lattice_classes(5);
    std::size_t pairs = 0;
    for (const auto& a : classes)
      for (const auto& b : classes) {
        if (leq(a, b)) continue;
        auto sep = separating_condition(a, b);
        if (!sep.in_upper.satisfied() || !sep.in_lower.refuted())
          return Outcome{false, a.to_string() + " vs " + b.to_string()};
        ++pairs;
      }
    return Outcome{true, std::to_string(pairs) + " ordered pairs separated"};
  });

  // Classification.
  s.run("classification", "catalog clones land in their listed classes (chain bound 6)", [] {
    std::size_t n = 0;
    for (const auto& e : catalog(6)) {
      auto c = classify_generators(e.generators, 6);
      if (!c.cls) return Outcome{false, e.label + " unresolved"};
      auto members = class_info(*c.cls).members;
      if (std::find(members.begin(), members.end(), e.label) == members.end())
        return Outcome{false, e.label + " classified as " + c.cls->to_string()};
      ++n;
    }
    return Outcome{true, std::to_string(n) + " clones"};
  });
  const std::vector<std::pair<std::string, std::string>> structures = {
      {"D_HORNSAT", "Meet"},      {"D_3LIN2", "M"},          {"D_2SAT", "D3"},           {"C2", "D3M"},
      {"idempotence", "MQ"},      {"blocker:2", "DiQ(3)"},   {"blocker_leq:2", "DiP(3)"}, {"blocker:3", "DiQ(4)"},
      {"blocker_leq:3", "DiP(4)"}, {"D_STCON", "DiP(3)"}};
  for (const auto& [name, expected] : structures)
    s.run("classification", name + " is in " + expected, [name, expected] {
      auto c = classify_structure(canonical(name));
      std::string got = c.cls ? c.cls->to_string() : "unresolved";
      return Outcome{got == expected, got + ", " + c.complexity};
    });

  const std::vector<std::pair<std::string, std::string>> generators = {
      {"p", "P"}, {"q", "Q"}, {"", "Bottom"}, {"0", "Top"}};
  for (const auto& [gens, expected] : generators)
    s.run("classification", "[" + gens + "] is in " + expected, [gens, expected] {
      auto c = classify_generators(GeneratorSet::parse(gens));
      std::string got = c.cls ? c.cls->to_string() : "unresolved";
      return Outcome{got == expected, got + ", " + c.complexity};
    });

  // Lattice shape.
  s.run("lattice", "3 atoms and 1 coatom (chain depth 6)", [] {
    int atoms = 0, coatoms = 0;
    for (const auto& c : hasse_covers(6)) {
      atoms += c.lower.tag == Tag::Bottom;
      coatoms += c.upper.tag == Tag::Top;
    }
    return Outcome{atoms == 3 && coatoms == 1, std::to_string(atoms) + " atoms, " + std::to_string(coatoms) + " coatoms"};
  });
  s.run("lattice", "both chains descend strictly for 3 <= i <= 6", [] {
    for (int i = 3; i < 6; ++i)
      for (auto make : {&PosetClass::dip, &PosetClass::diq}) {
        auto upper = make(i), lower = make(i + 1);
        if (!leq(lower, upper) || leq(upper, lower))
          return Outcome{false, lower.to_string() + " is not strictly below " + upper.to_string()};
      }
    return Outcome{true, "DiP(6) < ... < DiP(3) and DiQ(6) < ... < DiQ(3)"};
  });
  s.run("lattice", "every cover of the Hasse diagram (chain depth 6) is strict", [] {
    std::size_t n = 0;
    for (const auto& c : hasse_covers(6)) {
      auto sep = separating_condition(c.upper, c.lower);
      if (!sep.in_upper.satisfied() || !sep.in_lower.refuted())
        return Outcome{false, c.upper.to_string() + " over " + c.lower.to_string()};
      ++n;
    }
    return Outcome{true, std::to_string(n) + " covers"};
  });
  return s.take();
}

}  // namespace boolpp
