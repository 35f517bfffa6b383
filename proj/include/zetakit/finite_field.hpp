#pragma once

#include "zetakit/numeric.hpp"

#include <cstdint>
#include <iterator>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace zetakit::fields {

/// Default ceiling on the number of elements a single field may enumerate.
/// Exhaustive enumeration is the counting engine; the cap turns an infeasible
/// request into an explicit FieldTooLarge instead of an open-ended run.
inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 31;

class FieldElement;

/// F_{p^deg} presented as Z_p[x]/(modulus), with the lexicographically
/// smallest monic irreducible modulus (coefficients compared low degree
/// first). Construction is deterministic: equal (p, deg) always produce the
/// same table. Immutable after construction and safe to share across threads.
///
/// Elements are coefficient vectors of length deg with entries in [0, p).
/// The enumeration order is little-endian base-p digit order on those
/// vectors, i.e. element #i has digits of i; this order is part of the
/// public contract so counting work can be split into reproducible chunks.
class FieldTable {
public:
    static FieldTable build(std::uint64_t p, unsigned deg,
                            std::uint64_t enumeration_cap = kDefaultEnumerationCap);

    /// Degree-k extension of this field, sharing the prime subfield.
    /// Returns build(p, deg*k): inputs reduce into Z_p, so no embedding of
    /// the intermediate field is needed (or provided).
    FieldTable extension(unsigned k) const;

    std::uint64_t characteristic() const { return d_->p; }
    unsigned degree() const { return d_->deg; }
    std::uint64_t order() const { return d_->order; }
    std::uint64_t enumeration_cap() const { return d_->cap; }
    /// Modulus coefficients, ascending degree, length deg+1, monic.
    const std::vector<std::uint32_t>& modulus() const { return d_->modulus; }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement element_from_index(std::uint64_t index) const;
    /// Embeds an integer through Z -> Z_p.
    FieldElement element_from_integer(const BigInt& value) const;
    std::uint64_t index_of(const FieldElement& a) const;

    /// Tables are equal when they describe the same field presentation.
    bool operator==(const FieldTable& other) const {
        return d_ == other.d_ ||
               (d_->p == other.d_->p && d_->modulus == other.d_->modulus);
    }
    bool operator!=(const FieldTable& other) const { return !(*this == other); }

    // Kernel interface: elements as bare digit spans of length degree().
    // Used by the counting loops; no cross-field checks happen here.
    void k_add(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
               std::span<std::uint32_t> out) const;
    void k_sub(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
               std::span<std::uint32_t> out) const;
    void k_mul(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
               std::span<std::uint32_t> out) const;
    void k_neg(std::span<const std::uint32_t> a, std::span<std::uint32_t> out) const;
    /// a^e by square and multiply; a^0 = 1 for every a, including a = 0.
    void k_pow(std::span<const std::uint32_t> a, std::uint64_t e,
               std::span<std::uint32_t> out) const;
    /// Inverse by the extended Euclidean algorithm; throws DivisionByZero on 0.
    void k_inv(std::span<const std::uint32_t> a, std::span<std::uint32_t> out) const;
    bool k_is_zero(std::span<const std::uint32_t> a) const;
    bool k_is_one(std::span<const std::uint32_t> a) const;
    void k_from_index(std::uint64_t index, std::span<std::uint32_t> out) const;
    void k_from_integer(const BigInt& value, std::span<std::uint32_t> out) const;
    /// Base-p odometer step on a digit vector; true when it wrapped to zero.
    bool k_increment(std::span<std::uint32_t> digits) const;

private:
    struct Data {
        std::uint64_t p = 0;
        unsigned deg = 0;
        std::vector<std::uint32_t> modulus;
        std::uint64_t order = 0;
        std::uint64_t cap = 0;
    };
    explicit FieldTable(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    std::shared_ptr<const Data> d_;

    friend class FieldElement;
};

enum class FieldOp { Add, Sub, Mul, Div };

/// Value in a specific FieldTable. Operations between elements of different
/// tables throw FieldMismatch.
class FieldElement {
public:
    const std::vector<std::uint32_t>& coeffs() const { return coeffs_; }
    const FieldTable& field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;

    FieldElement operator+(const FieldElement& rhs) const;
    FieldElement operator-(const FieldElement& rhs) const;
    FieldElement operator*(const FieldElement& rhs) const;
    FieldElement operator/(const FieldElement& rhs) const;
    FieldElement operator-() const;
    FieldElement pow(std::uint64_t e) const;
    FieldElement inverse() const;

    bool operator==(const FieldElement& rhs) const;
    bool operator!=(const FieldElement& rhs) const { return !(*this == rhs); }

    /// Reads like "x^2+2*x+1"; the generator of the polynomial basis is "x".
    std::string to_string() const;

private:
    FieldElement(FieldTable field, std::vector<std::uint32_t> coeffs)
        : field_(std::move(field)), coeffs_(std::move(coeffs)) {}
    FieldTable field_;
    std::vector<std::uint32_t> coeffs_;

    friend class FieldTable;
};

FieldElement arith(const FieldElement& a, const FieldElement& b, FieldOp op);

/// Lazy range over all field elements in the canonical enumeration order.
class ElementRange {
public:
    explicit ElementRange(FieldTable field) : field_(std::move(field)) {}

    class iterator {
    public:
        using value_type = FieldElement;
        using difference_type = std::ptrdiff_t;
        using iterator_category = std::input_iterator_tag;

        iterator(const FieldTable* field, std::uint64_t index) : field_(field), index_(index) {}
        FieldElement operator*() const { return field_->element_from_index(index_); }
        iterator& operator++() {
            ++index_;
            return *this;
        }
        bool operator!=(const iterator& o) const { return index_ != o.index_; }
        bool operator==(const iterator& o) const { return index_ == o.index_; }

    private:
        const FieldTable* field_;
        std::uint64_t index_;
    };

    iterator begin() const { return iterator(&field_, 0); }
    iterator end() const { return iterator(&field_, field_.order()); }
    std::uint64_t size() const { return field_.order(); }

private:
    FieldTable field_;
};

inline FieldTable build_field(std::uint64_t p, unsigned deg,
                              std::uint64_t enumeration_cap = kDefaultEnumerationCap) {
    return FieldTable::build(p, deg, enumeration_cap);
}

inline FieldTable extension_field(const FieldTable& base, unsigned k) {
    return base.extension(k);
}

inline ElementRange enumerate(const FieldTable& field) { return ElementRange(field); }

}  // namespace zetakit::fields
