#pragma once

#include <functional>
#include <string>
#include <vector>

namespace cis::cli {

enum class Level { Quick, Full };
Level parse_level(const std::string& name);

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0;
    double budget_seconds = 0;
};

/// Runs every acceptance criterion in order. `on_result` fires after each one.
std::vector<CriterionResult> run_acceptance(Level level,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace cis::cli
