#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "boolpp/ppcon.hpp"
#include "boolpp/structure.hpp"

namespace boolpp {

struct CspConstraint {
  std::string relation;
  std::vector<int> vars;  // 0-based

  friend bool operator==(const CspConstraint&, const CspConstraint&) = default;
  friend auto operator<=>(const CspConstraint&, const CspConstraint&) = default;
};

struct CspInstance {
  Structure structure;  // supplies the signature
  int variables = 0;
  std::vector<CspConstraint> constraints;
};

/// Throws when a constraint names an unknown relation, has the wrong arity
/// or uses a variable out of range.
void check_instance(const CspInstance& inst);

/// {"structure": name-or-object, "variables": n, "constraints": [["R", [1,2]], ...]}, 1-based variables.
CspInstance parse_instance(std::string_view json, const std::string& base_dir = ".");
CspInstance load_instance(const std::string& path);
std::string instance_to_json(const CspInstance& inst);

struct ReducedInstance {
  CspInstance instance;
  std::vector<std::vector<int>> variable_map;  // target variable -> its n source variables
};

/// Rewrites an instance over the certificate's target into one over its
/// source. Throws when the certificate does not verify or the signatures differ.
ReducedInstance reduce_instance(const CspInstance& inst, const PpCertificate& c);

constexpr int kMaxSolverVariables = 24;

std::optional<std::vector<int>> solve_bruteforce(const CspInstance& inst);
bool satisfies(const CspInstance& inst, const std::vector<int>& assignment);

/// Reads a solution of the reduced instance back through hom_to_target.
std::vector<int> transport_solution(const ReducedInstance& r, const PpCertificate& c,
                                    const std::vector<int>& reduced_solution);

/// Uniform relation choice, variable tuples uniform with replacement.
CspInstance random_instance(const Structure& s, int max_variables, int max_constraints, std::mt19937_64& rng);

struct ValidationReport {
  std::uint64_t seed = 0;
  int instances = 0;
  int agreements = 0;
  int satisfiable = 0;
  int transported = 0;
  std::size_t largest_reduced = 0;  // constraints in the largest reduced instance
  std::vector<std::string> failures;

  bool ok() const { return failures.empty() && agreements == instances && transported == satisfiable; }
};

ValidationReport validate_reduction(const PpCertificate& c, int count, std::uint64_t seed, int max_variables = 8,
                                    int max_constraints = 10);

}  // namespace boolpp
