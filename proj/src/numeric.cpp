#include "zetakit/numeric.hpp"

#include "zetakit/errors.hpp"

#include <array>
#include <cstdlib>

namespace zetakit {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod_u64(result, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return result;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This witness set is exact for all n < 3.3e24, in particular for 64 bits.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

BigInt ipow(const BigInt& base, std::uint64_t exp) {
    BigInt result = 1;
    BigInt b = base;
    while (exp > 0) {
        if (exp & 1) result *= b;
        b *= b;
        exp >>= 1;
    }
    return result;
}

std::uint64_t checked_pow_u64(std::uint64_t base, unsigned exp) {
    const std::uint64_t limit = std::uint64_t{1} << 63;
    std::uint64_t result = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && result > limit / base) return 0;
        result *= base;
        if (result >= limit) return 0;
    }
    return result;
}

BigInt floor_nth_root(const BigInt& x, unsigned n) {
    if (x < 0) throw Error("Domain", "floor_nth_root requires a non-negative argument");
    if (n == 0) throw Error("Domain", "floor_nth_root requires n >= 1");
    if (x == 0 || n == 1) return x;
    // Newton iteration from an upper bound; terminates because iterates decrease.
    unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(x)) + 1;
    BigInt guess = BigInt(1) << (bits / n + 1);
    while (true) {
        BigInt next = ((n - 1) * guess + x / ipow(guess, n - 1)) / n;
        if (next >= guess) break;
        guess = next;
    }
    while (ipow(guess, n) > x) --guess;
    while (ipow(guess + 1, n) <= x) ++guess;
    return guess;
}

std::string rational_to_string(const Rational& v) {
    const BigInt num = boost::multiprecision::numerator(v);
    const BigInt den = boost::multiprecision::denominator(v);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Rational rational_from_string(std::string_view s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string_view::npos) return Rational(BigInt(std::string(s)));
        BigInt num{std::string(s.substr(0, slash))};
        BigInt den{std::string(s.substr(slash + 1))};
        if (den == 0) throw DivisionByZeroError("zero denominator in rational literal");
        return Rational(num, den);
    } catch (const std::runtime_error& e) {
        throw BadFileError("malformed rational literal '" + std::string(s) + "'");
    }
}

std::string rational_to_decimal(const Rational& v, unsigned sig) {
    if (sig == 0) sig = 1;
    if (v == 0) return "0";
    const bool negative = v < 0;
    const BigInt num = boost::multiprecision::abs(boost::multiprecision::numerator(v));
    const BigInt den = boost::multiprecision::denominator(v);

    // Decimal exponent e with 10^e <= num/den < 10^{e+1}.
    long long e = 0;
    BigInt lo = num, hi = den;
    while (lo >= 10 * hi) {
        hi *= 10;
        ++e;
    }
    while (lo < hi) {
        lo *= 10;
        --e;
    }

    // First `sig` significant digits, truncated.
    BigInt scaled;
    if (e >= static_cast<long long>(sig) - 1) {
        scaled = num / (den * ipow(10, static_cast<std::uint64_t>(e - sig + 1)));
    } else {
        scaled = num * ipow(10, static_cast<std::uint64_t>(sig - 1 - e)) / den;
    }
    std::string digits = scaled.str();
    // Leading-digit carry from the division cannot occur with truncation, but the
    // estimate of e can be off by the scaling itself; re-derive from digit count.
    if (digits.size() != sig) {
        e += static_cast<long long>(digits.size()) - static_cast<long long>(sig);
        digits.resize(sig);
    }

    std::string out;
    if (negative) out += '-';
    if (e >= 0 && e < 30) {
        if (static_cast<std::size_t>(e) + 1 >= digits.size()) {
            out += digits;
            out.append(static_cast<std::size_t>(e) + 1 - digits.size(), '0');
        } else {
            out += digits.substr(0, static_cast<std::size_t>(e) + 1);
            std::string frac = digits.substr(static_cast<std::size_t>(e) + 1);
            while (!frac.empty() && frac.back() == '0') frac.pop_back();
            if (!frac.empty()) out += "." + frac;
        }
    } else if (e < 0 && e > -7) {
        out += "0.";
        out.append(static_cast<std::size_t>(-e - 1), '0');
        std::string frac = digits;
        while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
        out += frac;
    } else {
        out += digits.substr(0, 1);
        std::string frac = digits.substr(1);
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        if (!frac.empty()) out += "." + frac;
        out += "e" + std::to_string(e);
    }
    return out;
}

}  // namespace zetakit
