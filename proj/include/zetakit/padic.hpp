#pragma once

#include "zetakit/birational.hpp"
#include "zetakit/extended_rational.hpp"
#include "zetakit/varieties.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace zetakit::padic {

/// Total measure: either a finite positive exact value or infinite.
/// Infinity is a first-class outcome (the non-log-terminal case), not an
/// error.
struct MeasureResult {
    bool finite = false;
    std::optional<ExtendedRational> value;

    static MeasureResult infinite() { return MeasureResult{}; }
    static MeasureResult make_finite(ExtendedRational v) {
        MeasureResult m;
        m.finite = true;
        m.value = std::move(v);
        return m;
    }
};

/// Per-coordinate disk factor of a divisor with multiple e at index r:
/// (q-1) / (q^(e/r+1) - 1), exactly, as an element of Q(q^(1/r)).
/// Equals 1 at e = 0; strictly decreases as e grows; requires e/r > -1.
ExtendedRational fiber_factor(long long e, unsigned r, const BigInt& q);

/// The one-dimensional local integral of |z|^(e/r): infinite iff e/r <= -1,
/// otherwise exactly (q-1) q^(e/r) / (q^(e/r+1) - 1). Total by construction.
MeasureResult local_integral(long long e, unsigned r, const BigInt& q);

/// A divisor on the upstairs variety: within each stratum it is the common
/// vanishing locus of the listed polynomials (in that stratum's variables);
/// strata absent from the map, or mapped to an empty list, are missed
/// entirely. The zero polynomial "0" marks a stratum contained in the
/// divisor.
struct Divisor {
    std::string name;
    long long e = 0;
    std::map<std::string, std::vector<varieties::IntPolynomial>> membership;
};

/// Smooth upstairs model with a simple-normal-crossing divisor family and
/// the integer multiples e_i of their discrepancies at index r. That the
/// family is SNC and realizes a resolution of some downstairs variety is the
/// model author's obligation, recorded in `notes`.
struct ResolutionModel {
    std::string name;
    unsigned n = 0;  // dimension
    unsigned r = 1;  // index
    varieties::StratifiedVariety upstairs;
    std::vector<Divisor> divisors;
    std::string notes;
};

birational::DiscrepancyVector discrepancy_of(const ResolutionModel& model);

/// Total canonical measure of the model over F_q, q = p^(r_ext * k):
///   q^(-n) * sum over subsets J of divisors of |E_J(F_q)| * prod fiber_factor(e_i)
/// where E_J is the locus on exactly the divisors in J. Infinite as soon as
/// some divisor with e/r <= -1 has points over the chosen field.
MeasureResult snc_measure(const ResolutionModel& model, std::uint64_t p, unsigned r_ext,
                          unsigned k, const varieties::CountOptions& opts = {});

enum class MeasureOrder { MeasureEqual, MeasureLessEq, MeasureGreaterEq, Incomparable };
const char* to_string(MeasureOrder v);

struct MeasureComparison {
    MeasureOrder verdict = MeasureOrder::Incomparable;
    birational::KOrder korder = birational::KOrder::Incomparable;
    MeasureResult a, b;
};

/// Compares two models sharing the upstairs variety and divisor names but
/// differing in e-vectors: a K-order verdict on the e-vectors is computed
/// first, the measures are evaluated exactly, and the predicted ordering is
/// checked (the verdict reports measure order for the first model against
/// the second).
MeasureComparison measure_compare(const ResolutionModel& a, const ResolutionModel& b,
                                  std::uint64_t p, unsigned k,
                                  const varieties::CountOptions& opts = {});

}  // namespace zetakit::padic
