#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "boolpp/structure.hpp"

namespace boolpp {

/// Relational structure over {0, ..., domain_size-1}, domain_size <= 16.
struct FiniteRelation {
  std::string name;
  int arity = 0;
  std::vector<std::vector<int>> tuples;  // sorted, distinct

  bool contains(const std::vector<int>& t) const;
};

struct FiniteStructure {
  int domain_size = 2;
  std::vector<FiniteRelation> relations;

  const FiniteRelation* find(std::string_view name) const;
  static FiniteStructure from_boolean(const Structure& s);
};

struct PpAtom {
  std::string relation;
  std::vector<int> args;  // variable indices; free variables come first
};

struct PpFormula {
  int free_vars = 0;
  int existential_vars = 0;
  std::vector<PpAtom> atoms;
  std::vector<std::pair<int, int>> equalities;
};

/// {a in {0,1}^free : some assignment of the existential variables satisfies every atom}.
Relation eval_pp(const Structure& a, const PpFormula& phi, const std::string& name = "phi");

/// Formula text such as "leq(x2,y1) & x1 = 0". `free_names` fixes the free
/// variables in order; any other identifier is existential. "v = 0" / "v = 1"
/// expand to atoms of the source's unary {0} / {1} relation.
PpFormula parse_pp_formula(std::string_view text, const std::vector<std::string>& free_names, const Structure& source);

struct PowerRelation {
  std::string name;
  int arity = 0;  // k; the formula has k * dimension free variables
  PpFormula formula;
};

struct PpPower {
  Structure source;
  int dimension = 1;
  std::vector<PowerRelation> relations;
};

/// Elements of {0,1}^n are numbered with the first coordinate most significant.
FiniteStructure build_power(const PpPower& p);

/// A homomorphism A -> B as an image per element of A, or nothing.
std::optional<std::vector<int>> find_homomorphism(const FiniteStructure& a, const FiniteStructure& b);
bool is_homomorphism(const FiniteStructure& a, const FiniteStructure& b, const std::vector<int>& map,
                     std::string* detail = nullptr);
bool hom_equivalent(const FiniteStructure& a, const FiniteStructure& b);

struct PpCertificate {
  Structure source;
  Structure target;
  PpPower power;
  std::vector<int> hom_to_target;    // power element -> {0,1}
  std::vector<int> hom_from_target;  // {0,1} -> power element
};

struct CertificateCheck {
  bool ok = false;
  std::string detail;
};

CertificateCheck verify_certificate(const PpCertificate& c);

/// Dimension 1, one formula per relation of `a`, identity maps.
PpCertificate identity_certificate(const Structure& a);

/// Text format:
///   source D_STCON
///   target B2_LEQ
///   dimension 2
///   relation leq 2 : leq(x1,y1) & leq(y2,x2)
///   hom_to_target 01->0 00->1 10->1 11->1
///   hom_from_target 0->01 1->10
/// Free variables are x, y, z, u, v, w (one letter per argument) followed by
/// a coordinate 1..n. source/target take a canonical name or a JSON file
/// path relative to `base_dir`.
PpCertificate parse_certificate(std::string_view text, const std::string& base_dir = ".");
PpCertificate load_certificate(const std::string& path);
std::string format_certificate(const PpCertificate& c);

/// The shipped D_STCON -> (B2, <=) certificate, same text as data/certificates/stcon_to_b2.cert.
std::string stcon_to_b2_text();
PpCertificate stcon_to_b2();

/// Name of the free variable for argument `block` (0-based) and coordinate `coord` (0-based).
std::string power_var_name(int block, int coord);

}  // namespace boolpp
