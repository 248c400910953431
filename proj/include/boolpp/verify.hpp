#pragma once

#include <functional>
#include <string>
#include <vector>

namespace boolpp {

struct PaperCheck {
  std::string group;  // "collapse", "separation", "classification", "lattice"
  std::string name;
  bool ok = false;
  std::string detail;
  double seconds = 0;
};

/// Every collapse and separation of the classification, re-run from scratch.
/// `progress` sees each check as soon as it finishes.
std::vector<PaperCheck> verify_paper(const std::function<void(const PaperCheck&)>& progress = {});

}  // namespace boolpp
