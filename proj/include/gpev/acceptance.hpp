#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gpev::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

struct Options {
  std::ostream* log = nullptr;  // when set, one pass/fail line per criterion
};

/// Runs the full acceptance suite (pinned tolerances; several criteria are
/// long multi-minute integrations).
std::vector<CriterionResult> run_all(const Options& opts = {});

bool all_passed(const std::vector<CriterionResult>& results);
void print_table(const std::vector<CriterionResult>& results, std::ostream& os);

}  // namespace gpev::acceptance
