#pragma once

#include "zetakit/numeric.hpp"

#include <string>
#include <vector>

namespace zetakit::padic {

/// Exact element of Q(u) with u = q^(1/r), represented as a polynomial in u
/// of degree < r reduced modulo u^r = q. Arithmetic is exact; division
/// inverts through the extended Euclidean algorithm against x^r - q and
/// fails loudly (ZeroDivisor) if the operand shares a factor with it, which
/// can only happen when x^r - q is reducible over Q.
///
/// When q is a perfect r-th power the root is rational and every value is
/// normalized to degree zero on construction, keeping zero tests exact.
///
/// Comparisons evaluate at the positive real root of x^r - q: an exact
/// cancellation test first, then interval refinement with doubling precision
/// (capped at 64 rounds, PrecisionExceeded beyond that).
class ExtendedRational {
public:
    ExtendedRational() = default;  // zero in Q(1^(1/1)) = Q
    ExtendedRational(unsigned r, BigInt q);

    static ExtendedRational from_rational(const Rational& v, unsigned r, const BigInt& q);
    /// u^e for any integer e; negative powers use u^-1 = u^(r-1)/q.
    static ExtendedRational root_power(long long e, unsigned r, const BigInt& q);
    static ExtendedRational from_coeffs(std::vector<Rational> coeffs, unsigned r, const BigInt& q);

    /// True when x^r - q is irreducible over Q (q > 0).
    static bool index_irreducible(unsigned r, const BigInt& q);

    unsigned index() const { return r_; }
    const BigInt& base() const { return q_; }
    const std::vector<Rational>& coefficients() const { return coeffs_; }

    bool is_zero() const;
    bool is_rational() const;
    Rational rational_value() const;  // requires is_rational()

    ExtendedRational operator+(const ExtendedRational& rhs) const;
    ExtendedRational operator-(const ExtendedRational& rhs) const;
    ExtendedRational operator*(const ExtendedRational& rhs) const;
    ExtendedRational operator/(const ExtendedRational& rhs) const;
    ExtendedRational operator-() const;
    ExtendedRational inverse() const;

    ExtendedRational& operator+=(const ExtendedRational& rhs) { return *this = *this + rhs; }
    ExtendedRational& operator*=(const ExtendedRational& rhs) { return *this = *this * rhs; }

    /// Exact structural equality (same r, q and reduced coefficients).
    bool operator==(const ExtendedRational& rhs) const;
    bool operator!=(const ExtendedRational& rhs) const { return !(*this == rhs); }

    /// Sign of *this - rhs as real numbers: -1, 0, +1.
    int compare(const ExtendedRational& rhs) const;
    bool operator<(const ExtendedRational& rhs) const { return compare(rhs) < 0; }
    bool operator<=(const ExtendedRational& rhs) const { return compare(rhs) <= 0; }
    int sign() const;

    /// Re-expresses the value with index r_new (a multiple of r) over the
    /// same base, for comparisons across indices.
    ExtendedRational lift_to_index(unsigned r_new) const;

    /// Symbolic rendering like "3/4 + 1/2*u + u^2".
    std::string to_string() const;
    /// Decimal rendering with `sig` significant digits, truncated,
    /// deterministic across runs.
    std::string decimal_string(unsigned sig = 30) const;

private:
    void reduce_if_rational_root();

    unsigned r_ = 1;
    BigInt q_ = 1;
    std::vector<Rational> coeffs_ = {Rational(0)};
};

}  // namespace zetakit::padic
