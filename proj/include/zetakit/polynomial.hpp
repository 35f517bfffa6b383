#pragma once

#include "zetakit/numeric.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace zetakit::varieties {

/// Multivariate polynomial with arbitrary-precision integer coefficients in
/// canonical expanded sparse form: no zero coefficients are stored and every
/// exponent vector has length |vars|.
class IntPolynomial {
public:
    using Exponents = std::vector<unsigned>;
    using TermMap = std::map<Exponents, BigInt>;

    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<std::string> vars) : vars_(std::move(vars)) {}
    IntPolynomial(std::vector<std::string> vars, TermMap terms);

    /// Grammar: integer literals, declared variable names, + - * ^ and
    /// parentheses; ^ takes a non-negative integer literal exponent.
    /// Whitespace is ignored. Multiplication is always explicit.
    static IntPolynomial parse(std::string_view text, const std::vector<std::string>& vars);

    static IntPolynomial constant(const BigInt& c, std::vector<std::string> vars);
    static IntPolynomial variable(std::size_t var_index, std::vector<std::string> vars);

    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Constant term (zero when absent).
    BigInt constant_value() const;

    IntPolynomial operator+(const IntPolynomial& rhs) const;
    IntPolynomial operator-(const IntPolynomial& rhs) const;
    IntPolynomial operator*(const IntPolynomial& rhs) const;
    IntPolynomial operator-() const;
    IntPolynomial pow(unsigned e) const;
    bool operator==(const IntPolynomial& rhs) const {
        return vars_ == rhs.vars_ && terms_ == rhs.terms_;
    }

    bool is_homogeneous() const;
    unsigned total_degree() const;

    /// Substitutes constants for the leading variables (by index) and drops
    /// them from the variable list. Used for cell decompositions.
    IntPolynomial substitute_prefix(const std::vector<BigInt>& values) const;

    /// Canonical, re-parseable rendering; terms in descending lexicographic
    /// exponent order.
    std::string to_string() const;

private:
    void add_term(const Exponents& e, const BigInt& c);

    std::vector<std::string> vars_;
    TermMap terms_;
};

}  // namespace zetakit::varieties
