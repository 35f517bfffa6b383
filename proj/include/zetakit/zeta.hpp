#pragma once

#include "zetakit/varieties.hpp"

#include <complex>
#include <map>
#include <optional>
#include <vector>

namespace zetakit::zeta {

using varieties::CountSequence;

/// Minimal linear recurrence N_k = sum_i c_i N_{k-i} found over exact
/// rationals; charpoly is x^L - c_1 x^{L-1} - ... - c_L, stored ascending.
struct LinearRecurrence {
    std::vector<Rational> coeffs;
    std::vector<Rational> charpoly;

    unsigned length() const { return static_cast<unsigned>(coeffs.size()); }
    /// Connection polynomial C(t) = 1 - c_1 t - ... - c_L t^L, ascending.
    std::vector<Rational> connection() const;
    bool reproduces(const CountSequence& seq) const;
};

/// Berlekamp-Massey over exact rationals. Without a hint the fit is accepted
/// only under the identifiability rule 2L <= K; a length hint `length_hint`
/// allows L <= hint with at least one surplus validated term instead
/// (useful when the expected total Betti degree is known).
LinearRecurrence fit_recurrence(const CountSequence& seq,
                                std::optional<unsigned> length_hint = {});

/// One reciprocal root of the zeta function: Z has the factor
/// (1 - root * t)^{-exponent}, so exponent > 0 means a denominator factor.
struct ZetaFactor {
    std::complex<double> root;
    double radius = 0.0;  // a-posteriori bound estimate on the root location
    long long exponent = 0;
};

struct ZetaFunction {
    std::vector<ZetaFactor> factors;
    std::vector<BigInt> numerator;    // ascending coefficients in t, constant 1
    std::vector<BigInt> denominator;  // ascending coefficients in t, constant 1
    bool operator==(const ZetaFunction& o) const {
        return numerator == o.numerator && denominator == o.denominator;
    }
};

/// Reconstructs Z(t) = prod (1 - w_i t)^{-m_i} from the fitted recurrence:
/// the exponents m_i are solved from the first L terms, must round to
/// integers (tolerance 1e-6), and the expanded numerator/denominator are
/// verified against exp(sum N_k t^k / k) with exact rational arithmetic
/// through order K. Any mismatch throws NonIntegerWeights.
ZetaFunction zeta_function(const LinearRecurrence& rec, const CountSequence& seq);

struct WeilRoot {
    std::complex<double> value;
    double radius = 0.0;
    int weight = 0;         // j with |value| = q^{j/2}
    unsigned multiplicity = 0;
    int sign = 0;           // sign of the zeta exponent, (-1)^j under purity
};

struct WeilDecomposition {
    unsigned n = 0;
    std::vector<WeilRoot> roots;
    std::vector<unsigned> betti;  // h^0 .. h^{2n}
    long long euler = 0;
    bool purity_ok = true;
};

/// Assigns each reciprocal root the weight j = round(2 log_q |w|), requiring
/// |2 log_q |w| - j| <= 1e-6 (else WeightAmbiguous) and exponent sign
/// (-1)^j (else MixedSigns). When claims say smooth and proper, a failed
/// Poincare-duality check h^j = h^{2n-j} downgrades purity_ok instead of
/// aborting.
WeilDecomposition weil_structure(const ZetaFunction& z, std::uint64_t q, unsigned n,
                                 std::optional<varieties::VarietyClaims> claims = {});

/// Exact fit N_k = sum_m a_m q^{mk} with integer a_m, degree bounded by the
/// claimed dimension; nullopt when no such polynomial count exists.
struct CountingPolynomial {
    std::map<unsigned, BigInt> coeffs;  // degree -> nonzero integer coefficient
};
std::optional<CountingPolynomial> counting_polynomial(const CountSequence& seq,
                                                      unsigned degree_bound);

enum class CompareVerdict { Equal, ALessEq, BLessEq, Incomparable };
const char* to_string(CompareVerdict v);

struct ComparisonRow {
    unsigned k;
    BigInt a, b, diff;  // diff = a - b
};

struct ComparisonReport {
    CompareVerdict verdict = CompareVerdict::Equal;
    std::vector<ComparisonRow> rows;
};

/// Termwise comparison of two count sequences over the same (p, r, K).
ComparisonReport compare(const CountSequence& a, const CountSequence& b);

}  // namespace zetakit::zeta
