#pragma once

#include <string>
#include <vector>

namespace hspsim {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string message;
    double seconds = 0.0;
};

/// Runs one acceptance criterion (1..12). Tolerances are pinned inside each
/// runner. `threads` parallelizes independent trials; results are identical
/// for any thread count.
CriterionResult run_criterion(int id, unsigned threads);

/// All twelve criteria in order.
std::vector<CriterionResult> run_acceptance(unsigned threads);

}  // namespace hspsim
