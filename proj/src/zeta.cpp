#include "zetakit/zeta.hpp"

#include "zetakit/errors.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/Polynomials>

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace zetakit::zeta {

namespace {

using Complex = std::complex<double>;

void validate_sequence(const CountSequence& seq) {
    for (std::size_t i = 0; i < seq.counts.size(); ++i) {
        if (seq.counts[i].first != i + 1)
            throw Error("Domain", "count sequence terms must be k = 1..K consecutive",
                        ErrorCategory::Input);
    }
}

// Minimal connection polynomial C with C[0] = 1 and
// sum_{i=0..L} C[i] * s[k-i] = 0 for all k >= L.
std::vector<Rational> berlekamp_massey(const std::vector<Rational>& s) {
    std::vector<Rational> C{1}, B{1};
    std::size_t L = 0, m = 1;
    Rational b = 1;
    for (std::size_t n = 0; n < s.size(); ++n) {
        Rational d = s[n];
        for (std::size_t i = 1; i <= L && i <= n; ++i) d += C[i] * s[n - i];
        if (d == 0) {
            ++m;
            continue;
        }
        Rational coef = d / b;
        if (2 * L <= n) {
            std::vector<Rational> T = C;
            if (C.size() < B.size() + m) C.resize(B.size() + m, 0);
            for (std::size_t i = 0; i < B.size(); ++i) C[i + m] -= coef * B[i];
            L = n + 1 - L;
            B = std::move(T);
            b = d;
            m = 1;
        } else {
            if (C.size() < B.size() + m) C.resize(B.size() + m, 0);
            for (std::size_t i = 0; i < B.size(); ++i) C[i + m] -= coef * B[i];
            ++m;
        }
    }
    C.resize(L + 1);
    return C;
}

Complex horner(const std::vector<double>& coeffs, Complex t) {
    Complex acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * t + coeffs[i];
    return acc;
}

std::vector<double> to_doubles(const std::vector<Rational>& v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].convert_to<double>();
    return out;
}

std::vector<double> derivative(const std::vector<double>& v) {
    std::vector<double> out;
    for (std::size_t i = 1; i < v.size(); ++i) out.push_back(static_cast<double>(i) * v[i]);
    if (out.empty()) out.push_back(0.0);
    return out;
}

// exp of sum N_k t^k / k through order K, exact.
std::vector<Rational> exp_series(const CountSequence& seq) {
    const unsigned K = seq.terms();
    std::vector<Rational> E(K + 1, 0);
    E[0] = 1;
    for (unsigned n = 1; n <= K; ++n) {
        Rational acc = 0;
        for (unsigned j = 1; j <= n; ++j) acc += Rational(seq.at(j)) * E[n - j];
        E[n] = acc / n;
    }
    return E;
}

std::vector<BigInt> poly_mul_int(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
    std::vector<BigInt> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

}  // namespace

std::vector<Rational> LinearRecurrence::connection() const {
    std::vector<Rational> C(coeffs.size() + 1);
    C[0] = 1;
    for (std::size_t i = 0; i < coeffs.size(); ++i) C[i + 1] = -coeffs[i];
    return C;
}

bool LinearRecurrence::reproduces(const CountSequence& seq) const {
    const unsigned L = length();
    for (unsigned k = L + 1; k <= seq.terms(); ++k) {
        Rational acc = 0;
        for (unsigned i = 1; i <= L; ++i) acc += coeffs[i - 1] * Rational(seq.at(k - i));
        if (acc != Rational(seq.at(k))) return false;
    }
    return true;
}

LinearRecurrence fit_recurrence(const CountSequence& seq, std::optional<unsigned> length_hint) {
    validate_sequence(seq);
    const unsigned K = seq.terms();
    if (K < 2) throw InsufficientTermsError("at least two terms are required");

    std::vector<Rational> s;
    s.reserve(K);
    for (const auto& [k, n] : seq.counts) s.emplace_back(n);
    std::vector<Rational> C = berlekamp_massey(s);
    const unsigned L = static_cast<unsigned>(C.size()) - 1;

    if (2 * L > K) {
        const bool hinted_ok = length_hint && L <= *length_hint && K >= L + 1;
        if (!hinted_ok)
            throw InsufficientTermsError(
                "minimal recurrence length " + std::to_string(L) + " needs at least " +
                std::to_string(2 * L) + " terms, got " + std::to_string(K) +
                (length_hint ? " (exceeds the provided length hint)" : "; supply more terms or a length hint"));
    }

    LinearRecurrence rec;
    rec.coeffs.resize(L);
    for (unsigned i = 1; i <= L; ++i) rec.coeffs[i - 1] = -C[i];
    rec.charpoly.resize(L + 1);
    for (unsigned i = 0; i < L; ++i) rec.charpoly[i] = C[L - i];
    rec.charpoly[L] = 1;

    if (!rec.reproduces(seq))
        throw InconsistentSequenceError("fitted recurrence fails to reproduce the sequence");
    return rec;
}

ZetaFunction zeta_function(const LinearRecurrence& rec, const CountSequence& seq) {
    validate_sequence(seq);
    if (!rec.reproduces(seq))
        throw InconsistentSequenceError("recurrence does not fit the count sequence");
    const unsigned L = rec.length();
    const unsigned K = seq.terms();

    ZetaFunction z;
    z.numerator = {BigInt(1)};
    z.denominator = {BigInt(1)};
    if (L == 0) {
        for (const auto& [k, n] : seq.counts)
            if (n != 0) throw InconsistentSequenceError("empty recurrence with nonzero counts");
        return z;
    }

    const std::vector<Rational> C = rec.connection();
    for (const auto& c : C)
        if (boost::multiprecision::denominator(c) != 1)
            throw NonIntegerWeightsError(
                "recurrence characteristic polynomial is not integral; "
                "the sequence does not look like point counts");

    // Roots of C(t) (the reciprocals 1/w_i) via the companion matrix, then
    // Newton polish against the exact coefficients.
    const std::vector<double> Cd = to_doubles(C);
    const std::vector<double> Cdp = derivative(Cd);
    Eigen::VectorXd poly(L + 1);
    for (unsigned i = 0; i <= L; ++i) poly[i] = Cd[i];
    Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(poly);

    std::vector<Complex> roots;
    for (const auto& raw : solver.roots()) {
        Complex t(raw.real(), raw.imag());
        for (int it = 0; it < 60; ++it) {
            Complex f = horner(Cd, t);
            Complex df = horner(Cdp, t);
            if (std::abs(df) < 1e-300) break;
            Complex step = f / df;
            t -= step;
            if (std::abs(step) <= 1e-16 * (1.0 + std::abs(t))) break;
        }
        roots.push_back(t);
    }
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            if (std::abs(roots[i] - roots[j]) <=
                1e-9 * std::max(1.0, std::max(std::abs(roots[i]), std::abs(roots[j]))))
                throw NonIntegerWeightsError(
                    "characteristic polynomial has (nearly) repeated roots; "
                    "the sequence is not a plain exponential sum");

    // Exponents from residues of sum N_k t^k = A(t)/C(t):
    // m_i = -A(t_i) / (t_i * C'(t_i)).
    std::vector<Rational> A(L + 1, 0);
    for (unsigned i = 1; i <= L; ++i) {
        Rational acc = 0;
        for (unsigned j = 0; j < i; ++j) acc += C[j] * Rational(seq.at(i - j));
        A[i] = acc;
    }
    const std::vector<double> Ad = to_doubles(A);

    std::vector<long long> exponents(roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i) {
        const Complex t = roots[i];
        const Complex m_hat = -horner(Ad, t) / (t * horner(Cdp, t));
        const double rounded = std::round(m_hat.real());
        const double tol = 1e-6 * std::max(1.0, std::abs(rounded));
        if (std::abs(m_hat.imag()) > tol || std::abs(m_hat.real() - rounded) > tol ||
            std::abs(rounded) > 1e15)
            throw NonIntegerWeightsError(
                "zeta exponents do not round to integers; supply more terms or "
                "check that the input is a genuine count sequence");
        exponents[i] = static_cast<long long>(rounded);
        if (exponents[i] == 0)
            throw NonIntegerWeightsError("zeta exponent rounds to zero at a recurrence root");
    }

    // Group roots by exponent; each group must expand to an integer factor.
    std::vector<long long> distinct = exponents;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    std::map<long long, std::vector<BigInt>> group_poly;
    for (long long v : distinct) {
        std::vector<Complex> g{1.0};
        for (std::size_t i = 0; i < roots.size(); ++i) {
            if (exponents[i] != v) continue;
            const Complex w = 1.0 / roots[i];
            std::vector<Complex> next(g.size() + 1, 0.0);
            for (std::size_t j = 0; j < g.size(); ++j) {
                next[j] += g[j];
                next[j + 1] -= g[j] * w;
            }
            g = std::move(next);
        }
        std::vector<BigInt> gi(g.size());
        for (std::size_t j = 0; j < g.size(); ++j) {
            const double re = g[j].real();
            const double rounded = std::round(re);
            const double tol = 1e-6 * std::max(1.0, std::abs(rounded));
            if (std::abs(g[j].imag()) > tol || std::abs(re - rounded) > tol)
                throw NonIntegerWeightsError(
                    "root grouping by exponent does not yield integer factors");
            gi[j] = BigInt(static_cast<long long>(rounded));
        }
        group_poly[v] = std::move(gi);
    }

    // The grouped factors must multiply back to the connection polynomial.
    std::vector<BigInt> product{BigInt(1)};
    for (const auto& [v, g] : group_poly) product = poly_mul_int(product, g);
    if (product.size() != C.size())
        throw NonIntegerWeightsError("grouped factors do not recombine to the recurrence");
    for (std::size_t i = 0; i < C.size(); ++i)
        if (Rational(product[i]) != C[i])
            throw NonIntegerWeightsError("grouped factors do not recombine to the recurrence");

    for (const auto& [v, g] : group_poly) {
        for (long long rep = 0; rep < std::llabs(v); ++rep) {
            if (v > 0)
                z.denominator = poly_mul_int(z.denominator, g);
            else
                z.numerator = poly_mul_int(z.numerator, g);
        }
    }

    // Exact power-series witness: denominator * exp-series = numerator
    // through order K.
    const std::vector<Rational> E = exp_series(seq);
    for (unsigned n = 0; n <= K; ++n) {
        Rational lhs = 0;
        for (std::size_t j = 0; j < z.denominator.size() && j <= n; ++j)
            lhs += Rational(z.denominator[j]) * E[n - j];
        Rational rhs = n < z.numerator.size() ? Rational(z.numerator[n]) : Rational(0);
        if (lhs != rhs)
            throw NonIntegerWeightsError(
                "reconstructed zeta disagrees with the exponential of the count series");
    }

    for (std::size_t i = 0; i < roots.size(); ++i) {
        const Complex t = roots[i];
        const double denom = std::abs(horner(Cdp, t));
        const double resid = std::abs(horner(Cd, t));
        const double radius_t =
            denom > 0 ? static_cast<double>(L) * resid / denom + 1e-14 * (1.0 + std::abs(t)) : 1e-6;
        ZetaFactor f;
        f.root = 1.0 / t;
        f.radius = radius_t / std::norm(t) + 1e-14 * (1.0 + std::abs(f.root));
        f.exponent = exponents[i];
        z.factors.push_back(f);
    }
    std::sort(z.factors.begin(), z.factors.end(), [](const ZetaFactor& a, const ZetaFactor& b) {
        const double ma = std::abs(a.root), mb = std::abs(b.root);
        if (ma != mb) return ma < mb;
        if (a.root.real() != b.root.real()) return a.root.real() < b.root.real();
        return a.root.imag() < b.root.imag();
    });
    return z;
}

WeilDecomposition weil_structure(const ZetaFunction& z, std::uint64_t q, unsigned n,
                                 std::optional<varieties::VarietyClaims> claims) {
    WeilDecomposition w;
    w.n = n;
    w.betti.assign(2 * n + 1, 0);
    const double logq = std::log(static_cast<double>(q));
    for (const auto& f : z.factors) {
        const double mag = std::abs(f.root);
        if (!(mag > 0))
            throw WeightAmbiguousError("zero reciprocal root");
        const double j_real = 2.0 * std::log(mag) / logq;
        const long j = std::lround(j_real);
        if (std::abs(j_real - static_cast<double>(j)) > 1e-6)
            throw WeightAmbiguousError(
                "root magnitude " + std::to_string(mag) + " is not near any half-integral power of q = " +
                std::to_string(q) + "; non-smooth or non-proper input, or a bad prime");
        if (j < 0 || j > 2 * static_cast<long>(n))
            throw WeightAmbiguousError("weight " + std::to_string(j) +
                                       " outside [0, 2n] for claimed dimension " + std::to_string(n));
        const int sign = f.exponent > 0 ? 1 : -1;
        const int expected = (j % 2 == 0) ? 1 : -1;
        if (sign != expected)
            throw MixedSignsError("factor at weight " + std::to_string(j) +
                                  " appears on the wrong side of the zeta function");
        WeilRoot root;
        root.value = f.root;
        root.radius = f.radius;
        root.weight = static_cast<int>(j);
        root.multiplicity = static_cast<unsigned>(std::llabs(f.exponent));
        root.sign = sign;
        w.roots.push_back(root);
        w.betti[static_cast<std::size_t>(j)] += root.multiplicity;
    }
    w.euler = 0;
    for (std::size_t j = 0; j < w.betti.size(); ++j)
        w.euler += (j % 2 == 0 ? 1 : -1) * static_cast<long long>(w.betti[j]);
    w.purity_ok = true;
    if (claims && claims->smooth && claims->proper) {
        for (std::size_t j = 0; j <= 2 * n; ++j)
            if (w.betti[j] != w.betti[2 * n - j]) w.purity_ok = false;
    }
    return w;
}

namespace {

// Exact Gaussian elimination; the matrix is square and expected nonsingular.
std::vector<Rational> gauss_solve(std::vector<std::vector<Rational>> M,
                                  std::vector<Rational> rhs) {
    const std::size_t n = M.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && M[pivot][col] == 0) ++pivot;
        if (pivot == n) throw Error("Internal", "singular system in exact solve");
        std::swap(M[pivot], M[col]);
        std::swap(rhs[pivot], rhs[col]);
        for (std::size_t row = col + 1; row < n; ++row) {
            if (M[row][col] == 0) continue;
            const Rational f = M[row][col] / M[col][col];
            for (std::size_t j = col; j < n; ++j) M[row][j] -= f * M[col][j];
            rhs[row] -= f * rhs[col];
        }
    }
    std::vector<Rational> x(n, 0);
    for (std::size_t row = n; row-- > 0;) {
        Rational acc = rhs[row];
        for (std::size_t j = row + 1; j < n; ++j) acc -= M[row][j] * x[j];
        x[row] = acc / M[row][row];
    }
    return x;
}

}  // namespace

std::optional<CountingPolynomial> counting_polynomial(const CountSequence& seq,
                                                      unsigned degree_bound) {
    validate_sequence(seq);
    const unsigned K = seq.terms();
    const unsigned unknowns = degree_bound + 1;
    if (K < degree_bound + 2)
        throw InsufficientTermsError("need at least degree + 2 terms for a polynomial count fit");

    const BigInt q = ipow(BigInt(seq.p), seq.r);
    std::vector<std::vector<Rational>> M(unknowns, std::vector<Rational>(unknowns));
    std::vector<Rational> rhs(unknowns);
    for (unsigned k = 1; k <= unknowns; ++k) {
        for (unsigned m = 0; m <= degree_bound; ++m)
            M[k - 1][m] = Rational(ipow(q, static_cast<std::uint64_t>(m) * k));
        rhs[k - 1] = Rational(seq.at(k));
    }
    std::vector<Rational> a = gauss_solve(std::move(M), std::move(rhs));

    CountingPolynomial out;
    for (unsigned m = 0; m <= degree_bound; ++m) {
        if (boost::multiprecision::denominator(a[m]) != 1) return std::nullopt;
        BigInt ai = boost::multiprecision::numerator(a[m]);
        if (ai != 0) out.coeffs[m] = ai;
    }
    // Validate on the remaining terms.
    for (unsigned k = unknowns + 1; k <= K; ++k) {
        BigInt acc = 0;
        for (const auto& [m, c] : out.coeffs) acc += c * ipow(q, static_cast<std::uint64_t>(m) * k);
        if (acc != seq.at(k)) return std::nullopt;
    }
    return out;
}

const char* to_string(CompareVerdict v) {
    switch (v) {
        case CompareVerdict::Equal: return "Equal";
        case CompareVerdict::ALessEq: return "ALessEq";
        case CompareVerdict::BLessEq: return "BLessEq";
        case CompareVerdict::Incomparable: return "Incomparable";
    }
    return "?";
}

ComparisonReport compare(const CountSequence& a, const CountSequence& b) {
    validate_sequence(a);
    validate_sequence(b);
    if (a.p != b.p || a.r != b.r || a.terms() != b.terms())
        throw MismatchedFieldsError("count sequences use different fields or term counts");
    ComparisonReport report;
    bool a_le = true, b_le = true;
    for (unsigned k = 1; k <= a.terms(); ++k) {
        ComparisonRow row{k, a.at(k), b.at(k), a.at(k) - b.at(k)};
        if (row.diff > 0) a_le = false;
        if (row.diff < 0) b_le = false;
        report.rows.push_back(std::move(row));
    }
    if (a_le && b_le)
        report.verdict = CompareVerdict::Equal;
    else if (a_le)
        report.verdict = CompareVerdict::ALessEq;
    else if (b_le)
        report.verdict = CompareVerdict::BLessEq;
    else
        report.verdict = CompareVerdict::Incomparable;
    return report;
}

}  // namespace zetakit::zeta
