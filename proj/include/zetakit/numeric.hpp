#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace zetakit {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime_u64(std::uint64_t n);

BigInt ipow(const BigInt& base, std::uint64_t exp);

/// p^deg if it fits in 63 bits, otherwise 0.
std::uint64_t checked_pow_u64(std::uint64_t base, unsigned exp);

/// Largest m with m^n <= x (x >= 0, n >= 1).
BigInt floor_nth_root(const BigInt& x, unsigned n);

/// "num/den" with den omitted when 1; parse accepts both forms.
std::string rational_to_string(const Rational& v);
Rational rational_from_string(std::string_view s);

/// Plain decimal with `sig` significant digits, truncated toward zero.
/// Deterministic across runs and platforms.
std::string rational_to_decimal(const Rational& v, unsigned sig);

}  // namespace zetakit
