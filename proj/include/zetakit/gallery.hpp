#pragma once

#include "zetakit/json_io.hpp"

#include <map>
#include <string>
#include <vector>

namespace zetakit::gallery {

using io::Json;

/// One executable check attached to an entry; `kind` selects the verifier
/// and `params` carries its inputs together with the expected values.
struct Expectation {
    std::string kind;
    Json params;
    std::string provenance;  // how the expected value was obtained
};

/// Curated builtin example. Payloads are stored in exactly the JSON formats
/// the CLI accepts (variety or resolution-model files); entries with a
/// single payload use the name "main".
struct GalleryEntry {
    std::string id;
    std::string title;
    std::map<std::string, Json> payloads;
    std::vector<Expectation> expectations;
    std::vector<std::string> references;
    std::string notes;
};

struct EntrySummary {
    std::string id;
    std::string title;
    std::vector<std::string> payload_names;
    std::size_t expectation_count = 0;
};

std::vector<EntrySummary> list_entries();

const GalleryEntry& load(const std::string& id);

/// Resolves "entry", "entry#payload", or a payload alias (the payload's own
/// JSON "name") to the payload JSON.
const Json& resolve_payload(const std::string& reference);

struct CheckResult {
    std::string kind;
    std::string detail;
    bool pass = false;
    std::string expected;
    std::string actual;
    std::string provenance;
};

struct CheckReport {
    std::string entry;
    std::vector<CheckResult> results;
    bool all_pass() const {
        for (const auto& r : results)
            if (!r.pass) return false;
        return true;
    }
};

/// Runs every expectation of the entry, restricted to the given primes where
/// an expectation is prime-parametrized. Deterministic.
CheckReport run_checks(const std::string& id, const std::vector<std::uint64_t>& primes = {2, 3, 5, 7});

}  // namespace zetakit::gallery
