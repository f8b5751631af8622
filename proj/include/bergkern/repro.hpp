#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bergkern {

struct CriterionResult {
   int id = 0;
   std::string group;
   std::string name;
   bool pass = false;
   std::string detail;  // reference values, computed values and tolerances
};

struct ReproOptions {
   // A group name (weights, zeros, regularity, projector) or a criterion id.
   std::optional<std::string> only;
   // Multiplies alpha_0 of the two-level step weight by (1 + perturb) in the
   // certificate criterion; a sensitivity check that must make it fail.
   double perturb = 0.0;
};

inline constexpr int kCriterionCount = 12;

const char* criterion_group(int id);

// Runs the acceptance checks. Throws std::invalid_argument when `only`
// matches nothing. An exception inside one check fails that check only.
std::vector<CriterionResult> run_acceptance(const ReproOptions& options = {});

// One "[PASS]"/"[FAIL]" line per criterion followed by a summary line.
void print_report(std::ostream& os, const std::vector<CriterionResult>& results);

} // namespace bergkern
