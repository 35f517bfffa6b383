#pragma once

#include "zetakit/json_io.hpp"

#include <string>
#include <vector>

namespace zetakit::acceptance {

struct CriterionResult {
    std::string id;
    std::string title;
    bool pass = false;
    io::Json details;
};

struct AcceptanceReport {
    std::vector<CriterionResult> criteria;

    bool all_pass() const {
        for (const auto& c : criteria)
            if (!c.pass) return false;
        return true;
    }
    io::Json to_json() const;
};

/// Runs the full acceptance suite. Self-contained and deterministic: fixed
/// seeds, no files, no network; two runs serialize to byte-identical JSON
/// (the final criterion checks exactly that).
AcceptanceReport run_acceptance();

}  // namespace zetakit::acceptance
