#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace floquet::acceptance {

struct CriterionResult {
    int id;
    std::string name;
    bool passed;
    std::string detail;
};

/// Run the numbered verification criteria (all of them, or just `only`),
/// streaming one PASS/FAIL line per criterion to `progress` when given.
std::vector<CriterionResult> run(std::optional<int> only = std::nullopt,
                                 std::ostream* progress = nullptr);

/// Number of defined criteria.
int criterion_count();

/// (id, name) of every criterion, without running anything.
std::vector<std::pair<int, std::string>> list();

}  // namespace floquet::acceptance
