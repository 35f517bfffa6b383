#pragma once

#include "zetakit/finite_field.hpp"
#include "zetakit/polynomial.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace zetakit::varieties {

/// One locally closed piece: the points of field^|vars| where every equation
/// vanishes and every inequation is nonzero.
struct Stratum {
    std::string id;
    std::vector<std::string> vars;
    std::vector<IntPolynomial> equations;
    std::vector<IntPolynomial> inequations;
};

/// User-asserted metadata; never verified by the library.
struct VarietyClaims {
    int dim = 0;
    bool smooth = false;
    bool proper = false;
};

/// A variety presented as disjoint strata. Disjointness and coverage of the
/// intended variety are the model author's obligation (documented contract),
/// valid at every prime not excluded by good_primes_hint.
struct StratifiedVariety {
    std::string name;
    std::vector<Stratum> strata;
    VarietyClaims claims;
    std::optional<std::vector<std::uint64_t>> good_primes_hint;
};

/// Point counts N_k = |X(F_{q^k})| for k = 1..K, q = p^r.
struct CountSequence {
    std::uint64_t p = 0;
    unsigned r = 1;
    std::vector<std::pair<unsigned, BigInt>> counts;  // (k, N_k), k consecutive from 1
    std::string variety_name;

    unsigned terms() const { return static_cast<unsigned>(counts.size()); }
    const BigInt& at(unsigned k) const { return counts.at(k - 1).second; }
};

struct CountOptions {
    unsigned workers = 0;  // 0: use ZETAKIT_WORKERS env var, else 1
    std::optional<double> time_budget_seconds;
    std::uint64_t enumeration_cap = fields::kDefaultEnumerationCap;
};

unsigned resolve_workers(const CountOptions& opts);

struct PointCount {
    BigInt value;
    bool bad_prime_warning = false;
};

/// Exhaustive count of a stratum over the given field: assignments are
/// visited in the canonical enumeration order and the result is independent
/// of worker count and chunking. Coefficients are reduced mod p up front.
/// Constraint-free strata are counted in closed form (order^|vars|).
BigInt count_stratum(const Stratum& s, const fields::FieldTable& field,
                     const CountOptions& opts = {});

/// Sum of stratum counts over F_{p^{r k}}. Attaches a warning (not an error)
/// when good_primes_hint excludes p.
PointCount count_points(const StratifiedVariety& v, std::uint64_t p, unsigned r, unsigned k,
                        const CountOptions& opts = {});

/// count_points for k = 1..K, with the per-k time budget applied to each k.
CountSequence count_sequence(const StratifiedVariety& v, std::uint64_t p, unsigned r, unsigned K,
                             const CountOptions& opts = {});

/// Standard cell decomposition of a projective variety: cell i sets
/// x_0 = ... = x_{i-1} = 0, x_i = 1; cells are disjoint and cover by
/// first-nonzero-coordinate normalization. All equations must be homogeneous.
StratifiedVariety projective_presentation(const std::vector<IntPolynomial>& equations, unsigned n,
                                          const std::string& name, VarietyClaims claims = {});

/// Character-sum count for strata recognized syntactically as y^2 = f(x):
/// sum over x of 1 + chi(f(x)) with chi the quadratic character (chi(0) = 0).
/// Requires odd characteristic; throws NotApplicable otherwise. The counting
/// pipeline uses this path automatically and silently falls back to
/// enumeration when it does not apply.
BigInt quadratic_character_count(const Stratum& s, const fields::FieldTable& field,
                                 const CountOptions& opts = {});

/// True when quadratic_character_count accepts the stratum over this field.
bool quadratic_character_applicable(const Stratum& s, const fields::FieldTable& field);

}  // namespace zetakit::varieties
