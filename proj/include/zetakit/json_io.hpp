#pragma once

#include "zetakit/birational.hpp"
#include "zetakit/padic.hpp"
#include "zetakit/varieties.hpp"
#include "zetakit/zeta.hpp"

#include <json.hpp>

#include <string>

namespace zetakit::io {

/// Insertion-ordered JSON keeps every report byte-deterministic.
using Json = nlohmann::ordered_json;

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

// Variety files:
// {"name": str, "strata": [{"id": str, "vars": [str], "equations": [str],
//  "inequations": [str]}], "claims": {"dim": int, "smooth": bool,
//  "proper": bool}, "good_primes_hint": [int]?}
varieties::StratifiedVariety variety_from_json(const Json& j);
Json variety_to_json(const varieties::StratifiedVariety& v);

// Resolution-model files:
// {"name": str, "n": int, "r": int, "upstairs": <variety>, "divisors":
//  [{"name": str, "e": int, "membership": {stratum_id: [poly-str]}}]}
padic::ResolutionModel model_from_json(const Json& j);
Json model_to_json(const padic::ResolutionModel& m);

// Discrepancy data: {"r": int, "entries": [{"name": str, "e": int}]}
birational::DiscrepancyVector discrepancy_from_json(const Json& j);
Json discrepancy_to_json(const birational::DiscrepancyVector& d);

/// Accepts a discrepancy file, or a resolution-model file from which the
/// discrepancy data is derived.
birational::DiscrepancyVector discrepancy_from_any(const Json& j);

// Exact values: {"r": int, "q": str, "coeffs": ["num/den", ...],
//                "decimal": "30 significant digits"}
Json extended_rational_to_json(const padic::ExtendedRational& v);
Json measure_to_json(const padic::MeasureResult& m);

Json count_sequence_to_json(const varieties::CountSequence& seq);

/// Schema "zeta-report/1": counts, recurrence, factored zeta with decimal
/// roots and error radii, Betti vector, Euler number, purity flags. Betti
/// numbers are extracted from counts alone, so they are reported as
/// conditional on good reduction.
Json zeta_report(const varieties::CountSequence& seq, const zeta::LinearRecurrence& rec,
                 const zeta::ZetaFunction& z, const zeta::WeilDecomposition& w,
                 bool bad_prime_warning);

Json comparison_to_json(const zeta::ComparisonReport& report);

}  // namespace zetakit::io
