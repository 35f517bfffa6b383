#include "zetakit/birational.hpp"

#include "zetakit/errors.hpp"

#include <algorithm>
#include <numeric>

namespace zetakit::birational {

const char* to_string(Singularity s) {
    switch (s) {
        case Singularity::Terminal: return "Terminal";
        case Singularity::Canonical: return "Canonical";
        case Singularity::LogTerminal: return "LogTerminal";
        case Singularity::NotLogTerminal: return "NotLogTerminal";
    }
    return "?";
}

const char* to_string(KOrder v) {
    switch (v) {
        case KOrder::XLessEq: return "XLessEq";
        case KOrder::Equal: return "Equal";
        case KOrder::XGreaterEq: return "XGreaterEq";
        case KOrder::Incomparable: return "Incomparable";
    }
    return "?";
}

Singularity classify(const DiscrepancyVector& d) {
    if (d.r == 0) throw Error("Domain", "index r must be positive", ErrorCategory::Input);
    bool terminal = true, canonical = true, log_terminal = true;
    for (const auto& [name, e] : d.entries) {
        if (e <= 0) terminal = false;
        if (e < 0) canonical = false;
        if (e <= -static_cast<long long>(d.r)) log_terminal = false;
    }
    if (terminal) return Singularity::Terminal;
    if (canonical) return Singularity::Canonical;
    if (log_terminal) return Singularity::LogTerminal;
    return Singularity::NotLogTerminal;
}

DiscrepancyVector rescale_index(const DiscrepancyVector& d, unsigned r_new) {
    if (d.r == 0 || r_new == 0)
        throw Error("Domain", "index r must be positive", ErrorCategory::Input);
    if (r_new % d.r != 0)
        throw NotMultipleError("new index " + std::to_string(r_new) +
                               " is not a multiple of " + std::to_string(d.r));
    const long long factor = static_cast<long long>(r_new / d.r);
    DiscrepancyVector out;
    out.r = r_new;
    out.entries.reserve(d.entries.size());
    for (const auto& [name, e] : d.entries) out.entries.emplace_back(name, e * factor);
    return out;
}

KOrder compare_k_order(const DiscrepancyVector& a, const DiscrepancyVector& b) {
    if (a.r == 0 || b.r == 0)
        throw Error("Domain", "index r must be positive", ErrorCategory::Input);
    const unsigned common = static_cast<unsigned>(std::lcm(a.r, b.r));
    DiscrepancyVector ra = rescale_index(a, common);
    DiscrepancyVector rb = rescale_index(b, common);
    auto by_name = [](const auto& x, const auto& y) { return x.first < y.first; };
    std::sort(ra.entries.begin(), ra.entries.end(), by_name);
    std::sort(rb.entries.begin(), rb.entries.end(), by_name);
    if (ra.entries.size() != rb.entries.size())
        throw DivisorSetMismatchError("discrepancy vectors name different divisor sets");
    bool a_ge = true, b_ge = true;
    for (std::size_t i = 0; i < ra.entries.size(); ++i) {
        if (ra.entries[i].first != rb.entries[i].first)
            throw DivisorSetMismatchError("divisor '" + ra.entries[i].first +
                                          "' is missing from one of the vectors");
        if (ra.entries[i].second < rb.entries[i].second) a_ge = false;
        if (ra.entries[i].second > rb.entries[i].second) b_ge = false;
    }
    // E >= E' componentwise puts X below X' in the K-order.
    if (a_ge && b_ge) return KOrder::Equal;
    if (a_ge) return KOrder::XLessEq;
    if (b_ge) return KOrder::XGreaterEq;
    return KOrder::Incomparable;
}

}  // namespace zetakit::birational
