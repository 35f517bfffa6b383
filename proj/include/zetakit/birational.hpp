#pragma once

#include <string>
#include <utility>
#include <vector>

namespace zetakit::birational {

/// Integer multiples e_i of the exceptional-divisor coefficients at a fixed
/// index r, so each discrepancy is a_i = e_i / r. Divisors are matched by
/// name on a declared common resolution.
struct DiscrepancyVector {
    unsigned r = 1;
    std::vector<std::pair<std::string, long long>> entries;  // unique names
};

enum class Singularity { Terminal, Canonical, LogTerminal, NotLogTerminal };
const char* to_string(Singularity s);

/// Strongest applicable label: all a_i > 0 / >= 0 / > -1 respectively.
/// An empty vector classifies as Terminal (the smooth case).
Singularity classify(const DiscrepancyVector& d);

/// Verdicts are stated for the first argument X against the second X'.
/// Note the reversal: E >= E' componentwise means X <=_K X'.
enum class KOrder { XLessEq, Equal, XGreaterEq, Incomparable };
const char* to_string(KOrder v);

KOrder compare_k_order(const DiscrepancyVector& a, const DiscrepancyVector& b);

/// Rescales to a larger index r_new (a multiple of r); the discrepancies
/// a_i = e_i / r are unchanged, so classify is invariant.
DiscrepancyVector rescale_index(const DiscrepancyVector& d, unsigned r_new);

}  // namespace zetakit::birational
