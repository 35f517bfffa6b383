#include "zetakit/varieties.hpp"

#include "zetakit/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <thread>

namespace zetakit::varieties {

unsigned resolve_workers(const CountOptions& opts) {
    if (opts.workers > 0) return opts.workers;
    if (const char* env = std::getenv("ZETAKIT_WORKERS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && v <= 1024) return static_cast<unsigned>(v);
    }
    return 1;
}

namespace {

using fields::FieldTable;
using Clock = std::chrono::steady_clock;

struct Deadline {
    std::optional<Clock::time_point> at;
    bool expired() const { return at && Clock::now() > *at; }
};

Deadline make_deadline(const CountOptions& opts) {
    Deadline d;
    if (opts.time_budget_seconds)
        d.at = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                  std::chrono::duration<double>(*opts.time_budget_seconds));
    return d;
}

// Cooperative cancellation marker thrown inside workers.
struct Cancelled {};

// ---------------------------------------------------------------------------
// Compiled evaluation: a polynomial is flattened into a tree of Horner nodes,
// one per involved variable, children keyed by exponent. Node values are
// cached; a node is recomputed only when a variable it depends on (index <=
// its own) has changed since the last evaluation. Combined with the odometer
// enumeration below (last variable fastest), a typical step re-evaluates just
// the deepest Horner chain.

class PolyPlan {
public:
    PolyPlan(const IntPolynomial& poly, const FieldTable& field) : field_(&field), deg_(field.degree()) {
        std::vector<TermView> terms;
        terms.reserve(poly.terms().size());
        for (const auto& [e, c] : poly.terms()) {
            BigInt m = c % static_cast<long long>(field.characteristic());
            if (m < 0) m += static_cast<long long>(field.characteristic());
            std::uint32_t red = m.convert_to<std::uint32_t>();
            if (red != 0) terms.push_back({&e, red});
        }
        scratch_a_.resize(deg_);
        scratch_b_.resize(deg_);
        scratch_x_.resize(deg_);
        if (terms.empty()) {
            root_ = make_const(0);
        } else {
            int hi = static_cast<int>(poly.vars().size()) - 1;
            root_ = build(terms, hi);
        }
    }

    bool is_constant() const { return nodes_[static_cast<std::size_t>(root_)].var < 0; }
    bool constant_is_zero() const {
        return is_constant() && field_->k_is_zero(value_of(root_));
    }

    /// Point digits per variable; changed_from is the lowest variable index
    /// whose value changed since the previous call (0 on the first call).
    std::span<const std::uint32_t> eval(const std::vector<std::vector<std::uint32_t>>& point,
                                        int changed_from) {
        eval_node(root_, point, changed_from);
        return value_of(root_);
    }

private:
    struct TermView {
        const IntPolynomial::Exponents* e;
        std::uint32_t coeff;
    };
    struct Node {
        int var;  // -1 for constant leaves
        std::vector<std::pair<unsigned, int>> children;  // (exponent, node) descending
    };

    int make_const(std::uint32_t c) {
        nodes_.push_back({-1, {}});
        values_.resize(nodes_.size() * deg_, 0);
        values_[(nodes_.size() - 1) * deg_] = c;
        return static_cast<int>(nodes_.size()) - 1;
    }

    int build(const std::vector<TermView>& terms, int hi) {
        // Find the highest variable actually involved.
        int top = -1;
        for (const auto& t : terms) {
            for (int v = hi; v > top; --v)
                if ((*t.e)[static_cast<std::size_t>(v)] != 0) top = v;
        }
        if (top < 0) {
            // Pure constant: at most one term remains after projection.
            std::uint64_t sum = 0;
            for (const auto& t : terms) sum += t.coeff;
            return make_const(static_cast<std::uint32_t>(sum % field_->characteristic()));
        }
        std::vector<std::pair<unsigned, std::vector<TermView>>> groups;
        for (const auto& t : terms) {
            unsigned e = (*t.e)[static_cast<std::size_t>(top)];
            auto it = std::find_if(groups.begin(), groups.end(),
                                   [e](const auto& g) { return g.first == e; });
            if (it == groups.end()) {
                groups.push_back({e, {t}});
            } else {
                it->second.push_back(t);
            }
        }
        std::sort(groups.begin(), groups.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });
        std::vector<std::pair<unsigned, int>> children;
        children.reserve(groups.size());
        for (auto& [e, sub] : groups) children.push_back({e, build(sub, top - 1)});
        nodes_.push_back({top, std::move(children)});
        values_.resize(nodes_.size() * deg_, 0);
        return static_cast<int>(nodes_.size()) - 1;
    }

    std::span<const std::uint32_t> value_of(int id) const {
        return {values_.data() + static_cast<std::size_t>(id) * deg_, deg_};
    }
    std::span<std::uint32_t> value_slot(int id) {
        return {values_.data() + static_cast<std::size_t>(id) * deg_, deg_};
    }

    void eval_node(int id, const std::vector<std::vector<std::uint32_t>>& point, int changed_from) {
        Node& n = nodes_[static_cast<std::size_t>(id)];
        if (n.var < changed_from) return;  // cache valid
        for (const auto& [e, child] : n.children) eval_node(child, point, changed_from);

        const auto& x = point[static_cast<std::size_t>(n.var)];
        auto acc = std::span<std::uint32_t>(scratch_a_);
        auto tmp = std::span<std::uint32_t>(scratch_b_);
        auto first = value_of(n.children.front().second);
        std::copy(first.begin(), first.end(), acc.begin());
        unsigned prev_e = n.children.front().first;
        for (std::size_t i = 1; i < n.children.size(); ++i) {
            const auto [e, child] = n.children[i];
            for (unsigned g = 0; g < prev_e - e; ++g) {
                field_->k_mul(acc, x, tmp);
                std::swap(scratch_a_, scratch_b_);
                acc = std::span<std::uint32_t>(scratch_a_);
                tmp = std::span<std::uint32_t>(scratch_b_);
            }
            field_->k_add(acc, value_of(child), tmp);
            std::swap(scratch_a_, scratch_b_);
            acc = std::span<std::uint32_t>(scratch_a_);
            tmp = std::span<std::uint32_t>(scratch_b_);
            prev_e = e;
        }
        for (unsigned g = 0; g < prev_e; ++g) {
            field_->k_mul(acc, x, tmp);
            std::swap(scratch_a_, scratch_b_);
            acc = std::span<std::uint32_t>(scratch_a_);
            tmp = std::span<std::uint32_t>(scratch_b_);
        }
        auto slot = value_slot(id);
        std::copy(acc.begin(), acc.end(), slot.begin());
    }

    const FieldTable* field_;
    unsigned deg_;
    std::vector<Node> nodes_;
    std::vector<std::uint32_t> values_;
    std::vector<std::uint32_t> scratch_a_, scratch_b_, scratch_x_;
    int root_ = -1;
};

// Count of constraint-satisfying assignments with enumeration index in
// [begin, end). Each worker builds its own plans so caches stay private.
std::uint64_t count_range(const Stratum& s, const FieldTable& field, std::uint64_t begin,
                          std::uint64_t end, const std::vector<const IntPolynomial*>& eqs,
                          const std::vector<const IntPolynomial*>& neqs, const Deadline& deadline,
                          std::atomic<bool>& cancel) {
    const std::size_t m = s.vars.size();
    const std::uint64_t q = field.order();
    const unsigned deg = field.degree();

    std::vector<PolyPlan> eq_plans, neq_plans;
    eq_plans.reserve(eqs.size());
    neq_plans.reserve(neqs.size());
    for (const auto* p : eqs) eq_plans.emplace_back(*p, field);
    for (const auto* p : neqs) neq_plans.emplace_back(*p, field);

    std::vector<std::vector<std::uint32_t>> point(m, std::vector<std::uint32_t>(deg, 0));
    std::uint64_t idx = begin;
    {
        std::uint64_t rest = begin;
        for (std::size_t i = m; i-- > 0;) {
            field.k_from_index(rest % q, point[i]);
            rest /= q;
        }
    }

    std::uint64_t count = 0;
    int changed_from = 0;
    while (idx < end) {
        if (((idx - begin) & 0x1fff) == 0) {
            if (cancel.load(std::memory_order_relaxed)) throw Cancelled{};
            if (deadline.expired()) {
                cancel.store(true, std::memory_order_relaxed);
                throw Cancelled{};
            }
        }
        bool ok = true;
        for (auto& plan : eq_plans) {
            if (!field.k_is_zero(plan.eval(point, changed_from))) {
                ok = false;
                break;
            }
        }
        if (ok) {
            for (auto& plan : neq_plans) {
                if (field.k_is_zero(plan.eval(point, changed_from))) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) ++count;

        ++idx;
        if (idx >= end) break;
        // Advance the odometer; the last variable is the fastest digit.
        changed_from = static_cast<int>(m);
        for (std::size_t i = m; i-- > 0;) {
            changed_from = static_cast<int>(i);
            if (!field.k_increment(point[i])) break;
        }
    }
    return count;
}

std::uint64_t total_assignments(std::uint64_t q, std::size_t nvars, std::uint64_t cap) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < nvars; ++i) {
        if (q != 0 && total > cap / q + 1) return 0;
        total *= q;
        if (total > cap) return 0;
    }
    return total;
}

// Shape test for y^2 = f(x): two variables, one equation, no inequations,
// one term quadratic in the chosen variable and none of the others touch it.
struct CharPathInfo {
    bool applicable = false;
    std::size_t y = 0;                 // index of the squared variable
    std::uint32_t y_coeff = 0;         // coefficient of y^2, reduced mod p
    std::vector<std::pair<unsigned, std::uint32_t>> f_terms;  // g(x): (exp, coeff mod p)
};

CharPathInfo analyze_char_path(const Stratum& s, const FieldTable& field) {
    CharPathInfo info;
    if (field.characteristic() == 2) return info;
    if (s.vars.size() != 2 || s.equations.size() != 1 || !s.inequations.empty()) return info;
    const std::uint64_t p = field.characteristic();
    for (std::size_t y = 0; y < 2 && !info.applicable; ++y) {
        const std::size_t x = 1 - y;
        bool shape_ok = true;
        std::uint32_t y_coeff = 0;
        std::vector<std::pair<unsigned, std::uint32_t>> g;
        for (const auto& [e, c] : s.equations[0].terms()) {
            BigInt mc = c % static_cast<long long>(p);
            if (mc < 0) mc += static_cast<long long>(p);
            std::uint32_t red = mc.convert_to<std::uint32_t>();
            if (red == 0) continue;
            if (e[y] == 2 && e[x] == 0) {
                if (y_coeff != 0) shape_ok = false;  // two y^2 terms cannot appear in canonical form
                y_coeff = red;
            } else if (e[y] == 0) {
                g.push_back({e[x], red});
            } else {
                shape_ok = false;
            }
            if (!shape_ok) break;
        }
        if (shape_ok && y_coeff != 0) {
            info.applicable = true;
            info.y = y;
            info.y_coeff = y_coeff;
            info.f_terms = std::move(g);
        }
    }
    return info;
}

BigInt char_path_count(const CharPathInfo& info, const FieldTable& field, const Deadline& deadline) {
    const std::uint64_t q = field.order();
    const unsigned deg = field.degree();
    // f(x) = -g(x)/c where the equation reads c*y^2 + g(x) = 0.
    std::vector<std::uint32_t> c(deg, 0), cinv(deg, 0), minus_cinv(deg, 0);
    c[0] = info.y_coeff;
    field.k_inv(c, cinv);
    field.k_neg(cinv, minus_cinv);

    std::vector<std::pair<unsigned, std::uint32_t>> terms = info.f_terms;
    std::sort(terms.begin(), terms.end(), [](auto& a, auto& b) { return a.first > b.first; });

    std::vector<std::uint32_t> x(deg, 0), acc(deg, 0), tmp(deg, 0), coef(deg, 0), chi(deg, 0);
    const std::uint64_t half = (q - 1) / 2;
    BigInt count = 0;
    for (std::uint64_t i = 0; i < q; ++i) {
        if ((i & 0x3ff) == 0 && deadline.expired()) throw Cancelled{};
        // Horner for g(x).
        std::fill(acc.begin(), acc.end(), 0);
        if (!terms.empty()) {
            unsigned prev_e = terms.front().first;
            std::fill(coef.begin(), coef.end(), 0);
            coef[0] = terms.front().second;
            std::copy(coef.begin(), coef.end(), acc.begin());
            for (std::size_t t = 1; t < terms.size(); ++t) {
                for (unsigned g = 0; g < prev_e - terms[t].first; ++g) {
                    field.k_mul(acc, x, tmp);
                    std::swap(acc, tmp);
                }
                std::fill(coef.begin(), coef.end(), 0);
                coef[0] = terms[t].second;
                field.k_add(acc, coef, tmp);
                std::swap(acc, tmp);
                prev_e = terms[t].first;
            }
            for (unsigned g = 0; g < prev_e; ++g) {
                field.k_mul(acc, x, tmp);
                std::swap(acc, tmp);
            }
        }
        field.k_mul(acc, minus_cinv, tmp);  // f(x)
        if (field.k_is_zero(tmp)) {
            count += 1;
        } else {
            field.k_pow(tmp, half, chi);
            if (field.k_is_one(chi)) count += 2;
            // chi = -1 contributes nothing
        }
        field.k_increment(x);
    }
    return count;
}

}  // namespace

bool quadratic_character_applicable(const Stratum& s, const FieldTable& field) {
    return analyze_char_path(s, field).applicable;
}

BigInt quadratic_character_count(const Stratum& s, const FieldTable& field,
                                 const CountOptions& opts) {
    CharPathInfo info = analyze_char_path(s, field);
    if (!info.applicable)
        throw NotApplicableError("stratum '" + s.id + "' is not of the shape y^2 = f(x) in odd characteristic");
    Deadline deadline = make_deadline(opts);
    try {
        return char_path_count(info, field, deadline);
    } catch (Cancelled&) {
        throw TimedOutError("time budget exceeded while counting stratum '" + s.id + "'", 0);
    }
}

BigInt count_stratum(const Stratum& s, const FieldTable& field, const CountOptions& opts) {
    for (const auto& poly : s.equations)
        if (poly.vars() != s.vars)
            throw Error("Domain", "equation variable list does not match stratum '" + s.id + "'",
                        ErrorCategory::Input);
    for (const auto& poly : s.inequations)
        if (poly.vars() != s.vars)
            throw Error("Domain", "inequation variable list does not match stratum '" + s.id + "'",
                        ErrorCategory::Input);

    // Constant-fold constraints after reduction mod p.
    std::vector<const IntPolynomial*> eqs, neqs;
    for (const auto& poly : s.equations) {
        PolyPlan probe(poly, field);
        if (probe.is_constant()) {
            if (!probe.constant_is_zero()) return 0;  // unsatisfiable
        } else {
            eqs.push_back(&poly);
        }
    }
    for (const auto& poly : s.inequations) {
        PolyPlan probe(poly, field);
        if (probe.is_constant()) {
            if (probe.constant_is_zero()) return 0;  // vanishes identically
        } else {
            neqs.push_back(&poly);
        }
    }

    const std::uint64_t q = field.order();
    const std::size_t m = s.vars.size();

    // Constraint-free strata have exactly q^m points.
    if (eqs.empty() && neqs.empty()) return ipow(BigInt(q), m);

    Deadline deadline = make_deadline(opts);

    // Character-sum shortcut when the stratum is a y^2 = f(x) chart.
    if (eqs.size() == s.equations.size() && neqs.empty() && s.inequations.empty()) {
        CharPathInfo info = analyze_char_path(s, field);
        if (info.applicable) {
            try {
                return char_path_count(info, field, deadline);
            } catch (Cancelled&) {
                throw TimedOutError("time budget exceeded while counting stratum '" + s.id + "'", 0);
            }
        }
    }

    const std::uint64_t total = total_assignments(q, m, opts.enumeration_cap);
    if (total == 0)
        throw FieldTooLargeError("stratum '" + s.id + "' needs " + std::to_string(m) +
                                 " coordinates over a field of order " + std::to_string(q) +
                                 ", beyond the enumeration cap " + std::to_string(opts.enumeration_cap));

    unsigned workers = resolve_workers(opts);
    if (workers > 1 && total < 8192) workers = 1;
    workers = std::max(1u, std::min<unsigned>(workers, 256));

    std::atomic<bool> cancel{false};
    if (workers == 1) {
        try {
            return count_range(s, field, 0, total, eqs, neqs, deadline, cancel);
        } catch (Cancelled&) {
            throw TimedOutError("time budget exceeded while counting stratum '" + s.id + "'", 0);
        }
    }

    std::vector<BigInt> partial(workers, 0);
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::uint64_t chunk = total / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t begin = w * chunk;
        const std::uint64_t end = (w + 1 == workers) ? total : begin + chunk;
        pool.emplace_back([&, w, begin, end] {
            try {
                partial[w] = count_range(s, field, begin, end, eqs, neqs, deadline, cancel);
            } catch (...) {
                errors[w] = std::current_exception();
                cancel.store(true, std::memory_order_relaxed);
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& err : errors) {
        if (!err) continue;
        try {
            std::rethrow_exception(err);
        } catch (Cancelled&) {
            throw TimedOutError("time budget exceeded while counting stratum '" + s.id + "'", 0);
        }
    }
    BigInt sum = 0;
    for (const auto& c : partial) sum += c;
    return sum;
}

PointCount count_points(const StratifiedVariety& v, std::uint64_t p, unsigned r, unsigned k,
                        const CountOptions& opts) {
    if (k == 0 || r == 0)
        throw Error("Domain", "extension degrees must be at least 1", ErrorCategory::Input);
    PointCount result;
    if (v.good_primes_hint) {
        const auto& hint = *v.good_primes_hint;
        result.bad_prime_warning = std::find(hint.begin(), hint.end(), p) == hint.end();
    }
    const fields::FieldTable field = fields::build_field(p, r * k, opts.enumeration_cap);
    result.value = 0;
    for (const auto& s : v.strata) result.value += count_stratum(s, field, opts);
    return result;
}

CountSequence count_sequence(const StratifiedVariety& v, std::uint64_t p, unsigned r, unsigned K,
                             const CountOptions& opts) {
    CountSequence seq;
    seq.p = p;
    seq.r = r;
    seq.variety_name = v.name;
    for (unsigned k = 1; k <= K; ++k) {
        try {
            seq.counts.emplace_back(k, count_points(v, p, r, k, opts).value);
        } catch (const TimedOutError&) {
            throw TimedOutError("time budget exceeded at k = " + std::to_string(k), k);
        }
    }
    return seq;
}

StratifiedVariety projective_presentation(const std::vector<IntPolynomial>& equations, unsigned n,
                                          const std::string& name, VarietyClaims claims) {
    std::vector<std::string> ambient;
    if (!equations.empty()) {
        ambient = equations.front().vars();
        if (ambient.size() != n + 1)
            throw Error("Domain", "equations must use exactly n+1 homogeneous coordinates",
                        ErrorCategory::Input);
        for (const auto& f : equations) {
            if (f.vars() != ambient)
                throw Error("Domain", "all equations must share one variable list",
                            ErrorCategory::Input);
            if (!f.is_homogeneous())
                throw NotHomogeneousError("'" + f.to_string() + "' is not homogeneous");
        }
    } else {
        for (unsigned i = 0; i <= n; ++i) ambient.push_back("x" + std::to_string(i));
    }

    StratifiedVariety v;
    v.name = name;
    v.claims = claims;
    for (unsigned i = 0; i <= n; ++i) {
        Stratum s;
        s.id = "cell_" + std::to_string(i);
        s.vars.assign(ambient.begin() + i + 1, ambient.end());
        std::vector<BigInt> prefix(i, 0);
        prefix.push_back(1);
        for (const auto& f : equations) {
            IntPolynomial g = f.substitute_prefix(prefix);
            if (!g.is_zero()) s.equations.push_back(std::move(g));
        }
        v.strata.push_back(std::move(s));
    }
    return v;
}

}  // namespace zetakit::varieties
