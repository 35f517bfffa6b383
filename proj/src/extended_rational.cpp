#include "zetakit/extended_rational.hpp"

#include "zetakit/errors.hpp"

#include <algorithm>
#include <sstream>

namespace zetakit::padic {

namespace {

void require_same_context(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.index() != b.index() || a.base() != b.base())
        throw ExtensionMismatchError("values live in different extensions Q(q^(1/r))");
}

using Poly = std::vector<Rational>;

int degree_of(const Poly& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
        if (f[static_cast<std::size_t>(i)] != 0) return i;
    return -1;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

// Division with remainder in Q[x].
void poly_divmod(Poly num, const Poly& den, Poly& quot, Poly& rem) {
    const int dd = degree_of(den);
    if (dd < 0) throw DivisionByZeroError("polynomial division by zero");
    const int dn = degree_of(num);
    quot.assign(dn >= dd ? static_cast<std::size_t>(dn - dd + 1) : 1, 0);
    for (int i = dn; i >= dd; --i) {
        Rational c = num[static_cast<std::size_t>(i)] / den[static_cast<std::size_t>(dd)];
        if (c == 0) continue;
        quot[static_cast<std::size_t>(i - dd)] = c;
        for (int j = 0; j <= dd; ++j)
            num[static_cast<std::size_t>(i - dd + j)] -= c * den[static_cast<std::size_t>(j)];
    }
    rem = std::move(num);
    rem.resize(static_cast<std::size_t>(std::max(dd, 1)));
}

}  // namespace

ExtendedRational::ExtendedRational(unsigned r, BigInt q) : r_(r), q_(std::move(q)) {
    if (r_ == 0) throw Error("Domain", "index r must be positive", ErrorCategory::Input);
    if (q_ < 1) throw Error("Domain", "base q must be positive", ErrorCategory::Input);
    coeffs_.assign(r_, 0);
}

ExtendedRational ExtendedRational::from_rational(const Rational& v, unsigned r, const BigInt& q) {
    ExtendedRational out(r, q);
    out.coeffs_[0] = v;
    return out;
}

ExtendedRational ExtendedRational::from_coeffs(std::vector<Rational> coeffs, unsigned r,
                                               const BigInt& q) {
    ExtendedRational out(r, q);
    if (coeffs.size() != r)
        throw Error("Domain", "coefficient vector must have length r", ErrorCategory::Input);
    out.coeffs_ = std::move(coeffs);
    out.reduce_if_rational_root();
    return out;
}

ExtendedRational ExtendedRational::root_power(long long e, unsigned r, const BigInt& q) {
    ExtendedRational out(r, q);
    // u^e = q^(floor stuff) * u^(e mod r); fold whole powers of u^r = q into
    // a rational scalar (negative e gives negative powers of q).
    long long quo = e / static_cast<long long>(r);
    long long rem = e % static_cast<long long>(r);
    if (rem < 0) {
        rem += r;
        quo -= 1;
    }
    Rational scalar;
    if (quo >= 0)
        scalar = Rational(ipow(q, static_cast<std::uint64_t>(quo)));
    else
        scalar = Rational(1, ipow(q, static_cast<std::uint64_t>(-quo)));
    out.coeffs_[static_cast<std::size_t>(rem)] = scalar;
    out.reduce_if_rational_root();
    return out;
}

bool ExtendedRational::index_irreducible(unsigned r, const BigInt& q) {
    if (r == 0 || q < 1) return false;
    if (q == 1) return r == 1;
    for (unsigned p = 2; p <= r; ++p) {
        if (r % p != 0) continue;
        bool p_prime = true;
        for (unsigned d = 2; d * d <= p; ++d)
            if (p % d == 0) p_prime = false;
        if (!p_prime) continue;
        BigInt root = floor_nth_root(q, p);
        if (ipow(root, p) == q) return false;
    }
    // x^r - q with q > 0 cannot hit the -4*(fourth power) case.
    return true;
}

void ExtendedRational::reduce_if_rational_root() {
    if (r_ == 1) return;
    BigInt s = floor_nth_root(q_, r_);
    if (ipow(s, r_) != q_) return;
    Rational value = 0;
    BigInt power = 1;
    for (unsigned m = 0; m < r_; ++m) {
        value += coeffs_[m] * Rational(power);
        power *= s;
    }
    coeffs_.assign(r_, 0);
    coeffs_[0] = value;
}

bool ExtendedRational::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

bool ExtendedRational::is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

Rational ExtendedRational::rational_value() const {
    if (!is_rational()) throw Error("Domain", "value is not rational");
    return coeffs_[0];
}

ExtendedRational ExtendedRational::operator+(const ExtendedRational& rhs) const {
    require_same_context(*this, rhs);
    ExtendedRational out(r_, q_);
    for (unsigned i = 0; i < r_; ++i) out.coeffs_[i] = coeffs_[i] + rhs.coeffs_[i];
    return out;
}

ExtendedRational ExtendedRational::operator-(const ExtendedRational& rhs) const {
    require_same_context(*this, rhs);
    ExtendedRational out(r_, q_);
    for (unsigned i = 0; i < r_; ++i) out.coeffs_[i] = coeffs_[i] - rhs.coeffs_[i];
    return out;
}

ExtendedRational ExtendedRational::operator-() const {
    ExtendedRational out(r_, q_);
    for (unsigned i = 0; i < r_; ++i) out.coeffs_[i] = -coeffs_[i];
    return out;
}

ExtendedRational ExtendedRational::operator*(const ExtendedRational& rhs) const {
    require_same_context(*this, rhs);
    ExtendedRational out(r_, q_);
    std::vector<Rational> prod(2 * r_ - 1, 0);
    for (unsigned i = 0; i < r_; ++i) {
        if (coeffs_[i] == 0) continue;
        for (unsigned j = 0; j < r_; ++j) prod[i + j] += coeffs_[i] * rhs.coeffs_[j];
    }
    const Rational qr{q_};
    for (unsigned i = 2 * r_ - 1; i-- > r_;) {
        if (prod[i] == 0) continue;
        prod[i - r_] += prod[i] * qr;  // u^r = q
        prod[i] = 0;
    }
    for (unsigned i = 0; i < r_; ++i) out.coeffs_[i] = prod[i];
    return out;
}

ExtendedRational ExtendedRational::inverse() const {
    if (is_zero()) throw DivisionByZeroError("inverse of zero");
    if (is_rational()) return from_rational(Rational(1) / coeffs_[0], r_, q_);
    // Extended Euclid in Q[x] against m(x) = x^r - q.
    Poly m(r_ + 1, 0);
    m[0] = -Rational(q_);
    m[r_] = 1;
    Poly r0 = m;
    Poly r1(coeffs_.begin(), coeffs_.end());
    Poly t0{0}, t1{1};
    while (degree_of(r1) > 0) {
        Poly quot, rem;
        poly_divmod(r0, r1, quot, rem);
        Poly t = t0;
        Poly qt = poly_mul(quot, t1);
        if (t.size() < qt.size()) t.resize(qt.size(), 0);
        for (std::size_t i = 0; i < qt.size(); ++i) t[i] -= qt[i];
        r0 = std::move(r1);
        r1 = std::move(rem);
        t0 = std::move(t1);
        t1 = std::move(t);
    }
    if (degree_of(r1) < 0)
        throw ZeroDivisorError(
            "operand shares a factor with x^r - q; the index is reducible and this "
            "element is a zero divisor");
    const Rational g = r1[0];
    ExtendedRational out(r_, q_);
    for (std::size_t i = 0; i < t1.size() && i < r_; ++i) out.coeffs_[i] = t1[i] / g;
    // t1 may exceed degree r-1 when quotients ran long; reduce mod m.
    if (degree_of(t1) >= static_cast<int>(r_)) {
        Poly quot, rem;
        for (auto& c : t1) c /= g;
        poly_divmod(t1, m, quot, rem);
        for (unsigned i = 0; i < r_; ++i) out.coeffs_[i] = i < rem.size() ? rem[i] : Rational(0);
    }
    return out;
}

ExtendedRational ExtendedRational::operator/(const ExtendedRational& rhs) const {
    require_same_context(*this, rhs);
    return *this * rhs.inverse();
}

bool ExtendedRational::operator==(const ExtendedRational& rhs) const {
    return r_ == rhs.r_ && q_ == rhs.q_ && coeffs_ == rhs.coeffs_;
}

int ExtendedRational::sign() const {
    // Exact zero first: canonical coefficients make this a plain scan.
    if (is_zero()) return 0;
    if (is_rational()) return coeffs_[0] < 0 ? -1 : 1;

    // Interval evaluation at the positive real root u of x^r - q, splitting
    // the polynomial into positive and negative parts (monotone on u > 0).
    // Precision doubles every round; resolution is guaranteed for
    // irreducible indices since the value is then a nonzero algebraic
    // number, and capped at 64 rounds otherwise.
    unsigned bits = 32;
    for (int round = 0; round < 64; ++round) {
        const BigInt scale = BigInt(1) << bits;
        const BigInt root_floor = floor_nth_root(q_ * ipow(scale, r_), r_);
        const Rational lo(root_floor, scale);
        const Rational hi(root_floor + 1, scale);

        Rational upper = 0, lower = 0;
        Rational lo_pow = 1, hi_pow = 1;
        for (unsigned m = 0; m < r_; ++m) {
            const Rational& c = coeffs_[m];
            if (c > 0) {
                upper += c * hi_pow;
                lower += c * lo_pow;
            } else if (c < 0) {
                upper += c * lo_pow;
                lower += c * hi_pow;
            }
            lo_pow *= lo;
            hi_pow *= hi;
        }
        if (lower > 0) return 1;
        if (upper < 0) return -1;
        bits *= 2;
    }
    throw PrecisionExceededError(
        "sign undecided after 64 precision doublings; the value may be a nonzero "
        "representative of zero over a reducible index");
}

int ExtendedRational::compare(const ExtendedRational& rhs) const {
    require_same_context(*this, rhs);
    return (*this - rhs).sign();
}

ExtendedRational ExtendedRational::lift_to_index(unsigned r_new) const {
    if (r_new % r_ != 0)
        throw NotMultipleError("target index must be a multiple of the current index");
    ExtendedRational out(r_new, q_);
    const unsigned step = r_new / r_;
    for (unsigned m = 0; m < r_; ++m) out.coeffs_[m * step] = coeffs_[m];
    out.reduce_if_rational_root();
    return out;
}

std::string ExtendedRational::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (unsigned m = 0; m < r_; ++m) {
        const Rational& c = coeffs_[m];
        if (c == 0) continue;
        const bool neg = c < 0;
        Rational mag = neg ? Rational(-c) : c;
        if (first) {
            if (neg) out << "-";
            first = false;
        } else {
            out << (neg ? " - " : " + ");
        }
        const bool unit = (mag == 1);
        if (m == 0 || !unit) out << rational_to_string(mag);
        if (m > 0) {
            if (!unit) out << "*";
            out << "u";
            if (m > 1) out << "^" << m;
        }
    }
    return out.str();
}

std::string ExtendedRational::decimal_string(unsigned sig) const {
    if (is_rational()) return rational_to_decimal(coeffs_[0], sig);
    // Refine the enclosure of u until both interval ends agree on the first
    // `sig` significant digits of the value.
    unsigned bits = 64;
    for (int round = 0; round < 64; ++round) {
        const BigInt scale = BigInt(1) << bits;
        const BigInt root_floor = floor_nth_root(q_ * ipow(scale, r_), r_);
        const Rational lo(root_floor, scale);
        const Rational hi(root_floor + 1, scale);
        Rational upper = 0, lower = 0;
        Rational lo_pow = 1, hi_pow = 1;
        for (unsigned m = 0; m < r_; ++m) {
            const Rational& c = coeffs_[m];
            if (c > 0) {
                upper += c * hi_pow;
                lower += c * lo_pow;
            } else if (c < 0) {
                upper += c * lo_pow;
                lower += c * hi_pow;
            }
            lo_pow *= lo;
            hi_pow *= hi;
        }
        const std::string a = rational_to_decimal(lower, sig);
        const std::string b = rational_to_decimal(upper, sig);
        if (a == b) return a;
        bits *= 2;
    }
    throw PrecisionExceededError("decimal rendering did not stabilize after 64 precision doublings");
}

}  // namespace zetakit::padic
