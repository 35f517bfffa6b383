#include "zetakit/padic.hpp"

#include "zetakit/errors.hpp"

#include <algorithm>
#include <numeric>

namespace zetakit::padic {

ExtendedRational fiber_factor(long long e, unsigned r, const BigInt& q) {
    if (r == 0) throw Error("Domain", "index r must be positive", ErrorCategory::Input);
    if (q < 2) throw Error("Domain", "q must be at least 2", ErrorCategory::Input);
    if (e <= -static_cast<long long>(r))
        throw NotLogTerminalError("fiber factor requires e/r > -1, got e = " + std::to_string(e) +
                                  ", r = " + std::to_string(r));
    // (q - 1) / (u^(e+r) - 1) with u = q^(1/r).
    const ExtendedRational one = ExtendedRational::from_rational(1, r, q);
    const ExtendedRational qm1 = ExtendedRational::from_rational(Rational(q - 1), r, q);
    const ExtendedRational den = ExtendedRational::root_power(e + static_cast<long long>(r), r, q) - one;
    return qm1 / den;
}

MeasureResult local_integral(long long e, unsigned r, const BigInt& q) {
    if (r == 0) throw Error("Domain", "index r must be positive", ErrorCategory::Input);
    if (q < 2) throw Error("Domain", "q must be at least 2", ErrorCategory::Input);
    if (e <= -static_cast<long long>(r)) return MeasureResult::infinite();
    // (q - 1) u^e / (u^(e+r) - 1).
    const ExtendedRational one = ExtendedRational::from_rational(1, r, q);
    const ExtendedRational qm1 = ExtendedRational::from_rational(Rational(q - 1), r, q);
    const ExtendedRational num = qm1 * ExtendedRational::root_power(e, r, q);
    const ExtendedRational den = ExtendedRational::root_power(e + static_cast<long long>(r), r, q) - one;
    return MeasureResult::make_finite(num / den);
}

birational::DiscrepancyVector discrepancy_of(const ResolutionModel& model) {
    birational::DiscrepancyVector d;
    d.r = model.r;
    for (const auto& div : model.divisors) d.entries.emplace_back(div.name, div.e);
    return d;
}

namespace {

using varieties::CountOptions;
using varieties::IntPolynomial;
using varieties::Stratum;

// Membership polynomials of one divisor on one stratum, or nullptr when the
// divisor misses the stratum.
const std::vector<IntPolynomial>* membership_on(const Divisor& div, const std::string& stratum_id) {
    auto it = div.membership.find(stratum_id);
    if (it == div.membership.end() || it->second.empty()) return nullptr;
    return &it->second;
}

BigInt count_divisor_locus(const ResolutionModel& model, const Divisor& div,
                           const fields::FieldTable& field, const CountOptions& opts) {
    BigInt total = 0;
    for (const auto& s : model.upstairs.strata) {
        const auto* polys = membership_on(div, s.id);
        if (!polys) continue;
        Stratum cut = s;
        for (const auto& g : *polys) cut.equations.push_back(g);
        total += count_stratum(cut, field, opts);
    }
    return total;
}

}  // namespace

MeasureResult snc_measure(const ResolutionModel& model, std::uint64_t p, unsigned r_ext,
                          unsigned k, const CountOptions& opts) {
    if (model.r == 0) throw Error("Domain", "model index r must be positive", ErrorCategory::Input);
    const fields::FieldTable field =
        fields::build_field(p, r_ext * k, opts.enumeration_cap);
    const BigInt q{field.order()};

    // A divisor at or below the log-terminal boundary makes the measure
    // infinite as soon as it actually has points over this field.
    for (const auto& div : model.divisors) {
        if (div.e > -static_cast<long long>(model.r)) continue;
        if (count_divisor_locus(model, div, field, opts) > 0) return MeasureResult::infinite();
    }

    ExtendedRational total(model.r, q);
    for (const auto& s : model.upstairs.strata) {
        // Divisors that can meet this stratum.
        std::vector<const Divisor*> present;
        for (const auto& div : model.divisors)
            if (membership_on(div, s.id)) present.push_back(&div);
        const std::size_t d = present.size();
        if (d > 20)
            throw Error("Domain", "too many divisors meet stratum '" + s.id + "'",
                        ErrorCategory::Input);

        for (std::size_t J = 0; J < (std::size_t{1} << d); ++J) {
            // Count points lying on exactly the divisors in J: add the
            // vanishing equations for J, and remove the locus of each other
            // divisor by inclusion-exclusion over supersets T of J.
            BigInt exact_count = 0;
            bool factor_needed = false;
            std::vector<std::size_t> complement;
            for (std::size_t i = 0; i < d; ++i)
                if (!(J & (std::size_t{1} << i))) complement.push_back(i);

            for (std::size_t T = 0; T < (std::size_t{1} << complement.size()); ++T) {
                Stratum cut = s;
                int parity = 1;
                for (std::size_t i = 0; i < d; ++i) {
                    if (J & (std::size_t{1} << i))
                        for (const auto& g : *membership_on(*present[i], s.id))
                            cut.equations.push_back(g);
                }
                for (std::size_t t = 0; t < complement.size(); ++t) {
                    if (T & (std::size_t{1} << t)) {
                        parity = -parity;
                        for (const auto& g : *membership_on(*present[complement[t]], s.id))
                            cut.equations.push_back(g);
                    }
                }
                const BigInt c = count_stratum(cut, field, opts);
                exact_count += parity > 0 ? c : -c;
            }
            if (exact_count == 0) continue;
            factor_needed = J != 0;

            ExtendedRational term =
                ExtendedRational::from_rational(Rational(exact_count), model.r, q);
            if (factor_needed) {
                for (std::size_t i = 0; i < d; ++i) {
                    if (!(J & (std::size_t{1} << i))) continue;
                    // e/r <= -1 with a populated locus was handled above.
                    term *= fiber_factor(present[i]->e, model.r, q);
                }
            }
            total += term;
        }
    }
    const Rational q_pow_n{BigInt(1), ipow(q, model.n)};
    total *= ExtendedRational::from_rational(q_pow_n, model.r, q);
    return MeasureResult::make_finite(total);
}

const char* to_string(MeasureOrder v) {
    switch (v) {
        case MeasureOrder::MeasureEqual: return "MeasureEqual";
        case MeasureOrder::MeasureLessEq: return "MeasureLessEq";
        case MeasureOrder::MeasureGreaterEq: return "MeasureGreaterEq";
        case MeasureOrder::Incomparable: return "Incomparable";
    }
    return "?";
}

namespace {

// Measure comparison with infinity: -1, 0, +1.
int compare_measures(const MeasureResult& a, const MeasureResult& b) {
    if (!a.finite && !b.finite) return 0;
    if (!a.finite) return 1;
    if (!b.finite) return -1;
    ExtendedRational va = *a.value;
    ExtendedRational vb = *b.value;
    if (va.index() != vb.index()) {
        const unsigned common = std::lcm(va.index(), vb.index());
        va = va.lift_to_index(common);
        vb = vb.lift_to_index(common);
    }
    return va.compare(vb);
}

}  // namespace

MeasureComparison measure_compare(const ResolutionModel& a, const ResolutionModel& b,
                                  std::uint64_t p, unsigned k, const CountOptions& opts) {
    MeasureComparison out;
    out.korder = birational::compare_k_order(discrepancy_of(a), discrepancy_of(b));
    if (out.korder == birational::KOrder::Incomparable) {
        out.verdict = MeasureOrder::Incomparable;
        return out;
    }
    out.a = snc_measure(a, p, 1, k, opts);
    out.b = snc_measure(b, p, 1, k, opts);
    const int cmp = compare_measures(out.a, out.b);
    if (cmp == 0)
        out.verdict = MeasureOrder::MeasureEqual;
    else if (cmp < 0)
        out.verdict = MeasureOrder::MeasureLessEq;
    else
        out.verdict = MeasureOrder::MeasureGreaterEq;

    // The K-order predicts the measure order; a violation means the models
    // do not satisfy the documented sharing contract.
    const bool consistent =
        (out.korder == birational::KOrder::Equal && cmp == 0) ||
        (out.korder == birational::KOrder::XLessEq && cmp <= 0) ||
        (out.korder == birational::KOrder::XGreaterEq && cmp >= 0);
    if (!consistent)
        throw Error("OrderViolation",
                    "measure order contradicts the K-order of the e-vectors; "
                    "the two models do not share upstairs data as required");
    return out;
}

}  // namespace zetakit::padic
