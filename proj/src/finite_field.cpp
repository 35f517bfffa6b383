#include "zetakit/finite_field.hpp"

#include "zetakit/errors.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>
#include <sstream>

namespace zetakit::fields {

namespace {

using Poly = std::vector<std::uint32_t>;  // ascending degree, coefficients in [0, p)

int poly_degree(const Poly& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
        if (f[static_cast<std::size_t>(i)] != 0) return i;
    return -1;
}

// Remainder of f by monic divisor g, both over Z_p.
Poly poly_mod(Poly f, const Poly& g, std::uint64_t p) {
    const int dg = poly_degree(g);
    assert(dg >= 0 && g[static_cast<std::size_t>(dg)] == 1);
    for (int i = poly_degree(f); i >= dg; --i) {
        const std::uint64_t lead = f[static_cast<std::size_t>(i)];
        if (lead == 0) continue;
        for (int j = 0; j <= dg; ++j) {
            std::uint64_t sub = (lead * g[static_cast<std::size_t>(j)]) % p;
            std::uint64_t cur = f[static_cast<std::size_t>(i - dg + j)];
            f[static_cast<std::size_t>(i - dg + j)] =
                static_cast<std::uint32_t>((cur + p - sub) % p);
        }
    }
    f.resize(static_cast<std::size_t>(dg));
    return f;
}

bool divides(const Poly& g, const Poly& f, std::uint64_t p) {
    return poly_degree(poly_mod(f, g, p)) < 0;
}

// Trial division by every monic polynomial of degree 1..deg/2.
bool is_irreducible(const Poly& f, std::uint64_t p) {
    const int df = poly_degree(f);
    if (df <= 0) return false;
    if (df == 1) return true;
    for (int d = 1; d <= df / 2; ++d) {
        Poly g(static_cast<std::size_t>(d) + 1, 0);
        g[static_cast<std::size_t>(d)] = 1;
        // Walk all p^d choices of the lower coefficients.
        while (true) {
            if (divides(g, f, p)) return false;
            int i = 0;
            for (; i < d; ++i) {
                if (++g[static_cast<std::size_t>(i)] < p) break;
                g[static_cast<std::size_t>(i)] = 0;
            }
            if (i == d) break;
        }
    }
    return true;
}

// Lexicographically smallest monic irreducible of the given degree, tuples
// (c_0, ..., c_{deg-1}) compared with c_0 most significant.
Poly smallest_irreducible(std::uint64_t p, unsigned deg) {
    Poly f(deg + 1, 0);
    f[deg] = 1;
    std::vector<std::uint32_t> c(deg, 0);
    while (true) {
        for (unsigned i = 0; i < deg; ++i) f[i] = c[i];
        if (is_irreducible(f, p)) return f;
        int i = static_cast<int>(deg) - 1;
        for (; i >= 0; --i) {
            if (++c[static_cast<std::size_t>(i)] < p) break;
            c[static_cast<std::size_t>(i)] = 0;
        }
        if (i < 0) break;
    }
    throw Error("Internal", "no irreducible polynomial found");  // unreachable
}

}  // namespace

FieldTable FieldTable::build(std::uint64_t p, unsigned deg, std::uint64_t enumeration_cap) {
    if (!is_prime_u64(p)) throw NotPrimeError("p = " + std::to_string(p) + " is not prime");
    if (deg == 0) throw Error("Domain", "extension degree must be at least 1", ErrorCategory::Input);
    const std::uint64_t order = checked_pow_u64(p, deg);
    if (order == 0 || order > enumeration_cap) {
        throw FieldTooLargeError("field of order " + std::to_string(p) + "^" +
                                 std::to_string(deg) + " exceeds the enumeration cap " +
                                 std::to_string(enumeration_cap));
    }

    // Deterministic construction is part of the contract; memoize by (p, deg)
    // so repeated extension builds don't redo the irreducibility search.
    static std::mutex cache_mutex;
    static std::map<std::pair<std::uint64_t, unsigned>, std::shared_ptr<const Data>> cache;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find({p, deg});
        if (it != cache.end() && it->second->cap == enumeration_cap)
            return FieldTable(it->second);
    }

    auto data = std::make_shared<Data>();
    data->p = p;
    data->deg = deg;
    data->order = order;
    data->cap = enumeration_cap;
    data->modulus = smallest_irreducible(p, deg);

    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        cache[{p, deg}] = data;
    }
    return FieldTable(std::move(data));
}

FieldTable FieldTable::extension(unsigned k) const {
    if (k == 0) throw Error("Domain", "extension degree must be at least 1", ErrorCategory::Input);
    return build(d_->p, d_->deg * k, d_->cap);
}

FieldElement FieldTable::zero() const {
    return FieldElement(*this, std::vector<std::uint32_t>(d_->deg, 0));
}

FieldElement FieldTable::one() const {
    std::vector<std::uint32_t> c(d_->deg, 0);
    c[0] = 1;
    return FieldElement(*this, std::move(c));
}

FieldElement FieldTable::element_from_index(std::uint64_t index) const {
    if (index >= d_->order)
        throw Error("Domain", "element index out of range", ErrorCategory::Input);
    std::vector<std::uint32_t> c(d_->deg, 0);
    k_from_index(index, c);
    return FieldElement(*this, std::move(c));
}

FieldElement FieldTable::element_from_integer(const BigInt& value) const {
    std::vector<std::uint32_t> c(d_->deg, 0);
    k_from_integer(value, c);
    return FieldElement(*this, std::move(c));
}

std::uint64_t FieldTable::index_of(const FieldElement& a) const {
    if (a.field() != *this) throw FieldMismatchError("element does not belong to this field");
    std::uint64_t index = 0;
    for (unsigned i = d_->deg; i-- > 0;) index = index * d_->p + a.coeffs()[i];
    return index;
}

void FieldTable::k_add(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                       std::span<std::uint32_t> out) const {
    const std::uint64_t p = d_->p;
    for (unsigned i = 0; i < d_->deg; ++i) {
        std::uint64_t s = static_cast<std::uint64_t>(a[i]) + b[i];
        out[i] = static_cast<std::uint32_t>(s >= p ? s - p : s);
    }
}

void FieldTable::k_sub(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                       std::span<std::uint32_t> out) const {
    const std::uint64_t p = d_->p;
    for (unsigned i = 0; i < d_->deg; ++i) {
        std::uint64_t s = static_cast<std::uint64_t>(a[i]) + p - b[i];
        out[i] = static_cast<std::uint32_t>(s >= p ? s - p : s);
    }
}

void FieldTable::k_neg(std::span<const std::uint32_t> a, std::span<std::uint32_t> out) const {
    const std::uint64_t p = d_->p;
    for (unsigned i = 0; i < d_->deg; ++i)
        out[i] = static_cast<std::uint32_t>(a[i] == 0 ? 0 : p - a[i]);
}

void FieldTable::k_mul(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                       std::span<std::uint32_t> out) const {
    const std::uint64_t p = d_->p;
    const unsigned deg = d_->deg;
    if (deg == 1) {
        out[0] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(a[0]) * b[0]) % p);
        return;
    }
    // Schoolbook product then reduction by the monic modulus.
    std::uint64_t prod[2 * 64];
    const unsigned plen = 2 * deg - 1;
    for (unsigned i = 0; i < plen; ++i) prod[i] = 0;
    for (unsigned i = 0; i < deg; ++i) {
        if (a[i] == 0) continue;
        const std::uint64_t ai = a[i];
        for (unsigned j = 0; j < deg; ++j) prod[i + j] += ai * b[j] % p;
    }
    const auto& m = d_->modulus;
    for (unsigned i = plen; i-- > deg;) {
        const std::uint64_t lead = prod[i] % p;
        if (lead == 0) continue;
        for (unsigned j = 0; j < deg; ++j) {
            // p^2 per product term, deg accumulations: stays below 2^63 for p < 2^26.
            prod[i - deg + j] += (p - (lead * m[j] % p));
        }
        prod[i] = 0;
    }
    for (unsigned i = 0; i < deg; ++i) out[i] = static_cast<std::uint32_t>(prod[i] % p);
}

bool FieldTable::k_is_zero(std::span<const std::uint32_t> a) const {
    for (unsigned i = 0; i < d_->deg; ++i)
        if (a[i] != 0) return false;
    return true;
}

bool FieldTable::k_is_one(std::span<const std::uint32_t> a) const {
    if (a[0] != 1) return false;
    for (unsigned i = 1; i < d_->deg; ++i)
        if (a[i] != 0) return false;
    return true;
}

void FieldTable::k_pow(std::span<const std::uint32_t> a, std::uint64_t e,
                       std::span<std::uint32_t> out) const {
    const unsigned deg = d_->deg;
    std::vector<std::uint32_t> base(a.begin(), a.end());
    std::vector<std::uint32_t> acc(deg, 0), tmp(deg, 0);
    acc[0] = 1;
    while (e > 0) {
        if (e & 1) {
            k_mul(acc, base, tmp);
            std::copy(tmp.begin(), tmp.end(), acc.begin());
        }
        e >>= 1;
        if (e > 0) {
            k_mul(base, base, tmp);
            std::copy(tmp.begin(), tmp.end(), base.begin());
        }
    }
    std::copy(acc.begin(), acc.end(), out.begin());
}

void FieldTable::k_inv(std::span<const std::uint32_t> a, std::span<std::uint32_t> out) const {
    if (k_is_zero(a)) throw DivisionByZeroError("inverse of zero");
    const std::uint64_t p = d_->p;
    const unsigned deg = d_->deg;
    if (deg == 1) {
        // Fermat in the prime field.
        std::uint64_t r = 1, b = a[0], e = p - 2;
        while (e > 0) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        out[0] = static_cast<std::uint32_t>(r);
        return;
    }
    // Extended Euclid over Z_p[x] against the modulus.
    auto scalar_inv = [p](std::uint64_t v) {
        std::uint64_t r = 1, b = v, e = p - 2;
        while (e > 0) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    Poly r0(d_->modulus.begin(), d_->modulus.end());
    Poly r1(a.begin(), a.end());
    Poly t0{0}, t1{1};
    while (poly_degree(r1) > 0) {
        // r0 = q*r1 + r; long division step by step.
        int d1 = poly_degree(r1);
        std::uint64_t lead_inv = scalar_inv(r1[static_cast<std::size_t>(d1)]);
        Poly q(static_cast<std::size_t>(std::max(poly_degree(r0) - d1 + 1, 1)), 0);
        Poly rem = r0;
        for (int i = poly_degree(rem); i >= d1; i = poly_degree(rem)) {
            std::uint64_t coef = rem[static_cast<std::size_t>(i)] * lead_inv % p;
            q[static_cast<std::size_t>(i - d1)] = static_cast<std::uint32_t>(coef);
            for (int j = 0; j <= d1; ++j) {
                std::uint64_t sub = coef * r1[static_cast<std::size_t>(j)] % p;
                std::uint64_t cur = rem[static_cast<std::size_t>(i - d1 + j)];
                rem[static_cast<std::size_t>(i - d1 + j)] =
                    static_cast<std::uint32_t>((cur + p - sub) % p);
            }
        }
        // t = t0 - q*t1
        Poly t(std::max(t0.size(), q.size() + t1.size()), 0);
        std::copy(t0.begin(), t0.end(), t.begin());
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            for (std::size_t j = 0; j < t1.size(); ++j) {
                std::uint64_t sub = static_cast<std::uint64_t>(q[i]) * t1[j] % p;
                std::uint64_t cur = t[i + j];
                t[i + j] = static_cast<std::uint32_t>((cur + p - sub) % p);
            }
        }
        r0 = std::move(r1);
        r1 = std::move(rem);
        t0 = std::move(t1);
        t1 = std::move(t);
    }
    // r1 is a nonzero constant: modulus is irreducible and a is nonzero.
    std::uint64_t c_inv = scalar_inv(r1[0]);
    std::fill(out.begin(), out.end(), 0);
    for (std::size_t i = 0; i < t1.size() && i < deg; ++i)
        out[i] = static_cast<std::uint32_t>(t1[i] * c_inv % p);
}

void FieldTable::k_from_index(std::uint64_t index, std::span<std::uint32_t> out) const {
    const std::uint64_t p = d_->p;
    for (unsigned i = 0; i < d_->deg; ++i) {
        out[i] = static_cast<std::uint32_t>(index % p);
        index /= p;
    }
}

void FieldTable::k_from_integer(const BigInt& value, std::span<std::uint32_t> out) const {
    BigInt m = value % static_cast<long long>(d_->p);
    if (m < 0) m += static_cast<long long>(d_->p);
    std::fill(out.begin(), out.end(), 0);
    out[0] = m.convert_to<std::uint32_t>();
}

bool FieldTable::k_increment(std::span<std::uint32_t> digits) const {
    const std::uint32_t pm1 = static_cast<std::uint32_t>(d_->p - 1);
    for (unsigned i = 0; i < d_->deg; ++i) {
        if (digits[i] < pm1) {
            ++digits[i];
            return false;
        }
        digits[i] = 0;
    }
    return true;
}

bool FieldElement::is_zero() const { return field_.k_is_zero(coeffs_); }
bool FieldElement::is_one() const { return field_.k_is_one(coeffs_); }

namespace {
void require_same_field(const FieldElement& a, const FieldElement& b) {
    if (a.field() != b.field())
        throw FieldMismatchError("operands belong to different fields");
}
}  // namespace

FieldElement FieldElement::operator+(const FieldElement& rhs) const {
    require_same_field(*this, rhs);
    std::vector<std::uint32_t> out(coeffs_.size());
    field_.k_add(coeffs_, rhs.coeffs_, out);
    return FieldElement(field_, std::move(out));
}

FieldElement FieldElement::operator-(const FieldElement& rhs) const {
    require_same_field(*this, rhs);
    std::vector<std::uint32_t> out(coeffs_.size());
    field_.k_sub(coeffs_, rhs.coeffs_, out);
    return FieldElement(field_, std::move(out));
}

FieldElement FieldElement::operator*(const FieldElement& rhs) const {
    require_same_field(*this, rhs);
    std::vector<std::uint32_t> out(coeffs_.size());
    field_.k_mul(coeffs_, rhs.coeffs_, out);
    return FieldElement(field_, std::move(out));
}

FieldElement FieldElement::operator/(const FieldElement& rhs) const {
    require_same_field(*this, rhs);
    return *this * rhs.inverse();
}

FieldElement FieldElement::operator-() const {
    std::vector<std::uint32_t> out(coeffs_.size());
    field_.k_neg(coeffs_, out);
    return FieldElement(field_, std::move(out));
}

FieldElement FieldElement::pow(std::uint64_t e) const {
    std::vector<std::uint32_t> out(coeffs_.size());
    field_.k_pow(coeffs_, e, out);
    return FieldElement(field_, std::move(out));
}

FieldElement FieldElement::inverse() const {
    std::vector<std::uint32_t> out(coeffs_.size());
    field_.k_inv(coeffs_, out);
    return FieldElement(field_, std::move(out));
}

bool FieldElement::operator==(const FieldElement& rhs) const {
    return field_ == rhs.field_ && coeffs_ == rhs.coeffs_;
}

std::string FieldElement::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (unsigned i = static_cast<unsigned>(coeffs_.size()); i-- > 0;) {
        if (coeffs_[i] == 0) continue;
        if (!first) out << "+";
        first = false;
        if (i == 0 || coeffs_[i] != 1) out << coeffs_[i];
        if (i > 0 && coeffs_[i] != 1) out << "*";
        if (i == 1) out << "x";
        if (i > 1) out << "x^" << i;
    }
    if (first) out << "0";
    return out.str();
}

FieldElement arith(const FieldElement& a, const FieldElement& b, FieldOp op) {
    switch (op) {
        case FieldOp::Add: return a + b;
        case FieldOp::Sub: return a - b;
        case FieldOp::Mul: return a * b;
        case FieldOp::Div: return a / b;
    }
    throw Error("Domain", "unknown field operation", ErrorCategory::Input);
}

}  // namespace zetakit::fields
