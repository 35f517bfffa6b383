#include "zetakit/polynomial.hpp"

#include "zetakit/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace zetakit::varieties {

IntPolynomial::IntPolynomial(std::vector<std::string> vars, TermMap terms)
    : vars_(std::move(vars)), terms_(std::move(terms)) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second == 0)
            it = terms_.erase(it);
        else
            ++it;
    }
}

IntPolynomial IntPolynomial::constant(const BigInt& c, std::vector<std::string> vars) {
    IntPolynomial out(std::move(vars));
    if (c != 0) out.terms_[Exponents(out.vars_.size(), 0)] = c;
    return out;
}

IntPolynomial IntPolynomial::variable(std::size_t var_index, std::vector<std::string> vars) {
    IntPolynomial out(std::move(vars));
    Exponents e(out.vars_.size(), 0);
    e.at(var_index) = 1;
    out.terms_[std::move(e)] = 1;
    return out;
}

bool IntPolynomial::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](unsigned x) { return x == 0; });
}

BigInt IntPolynomial::constant_value() const {
    auto it = terms_.find(Exponents(vars_.size(), 0));
    return it == terms_.end() ? BigInt(0) : it->second;
}

void IntPolynomial::add_term(const Exponents& e, const BigInt& c) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        if (c != 0) terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& rhs) const {
    IntPolynomial out = *this;
    for (const auto& [e, c] : rhs.terms_) out.add_term(e, c);
    return out;
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& rhs) const {
    IntPolynomial out = *this;
    for (const auto& [e, c] : rhs.terms_) out.add_term(e, -c);
    return out;
}

IntPolynomial IntPolynomial::operator-() const {
    IntPolynomial out(vars_);
    for (const auto& [e, c] : terms_) out.terms_[e] = -c;
    return out;
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& rhs) const {
    IntPolynomial out(vars_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : rhs.terms_) {
            Exponents e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

IntPolynomial IntPolynomial::pow(unsigned e) const {
    IntPolynomial acc = constant(1, vars_);
    IntPolynomial base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return acc;
}

bool IntPolynomial::is_homogeneous() const {
    if (terms_.empty()) return true;
    unsigned d = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        unsigned total = 0;
        for (unsigned x : e) total += x;
        if (first) {
            d = total;
            first = false;
        } else if (total != d) {
            return false;
        }
    }
    return true;
}

unsigned IntPolynomial::total_degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) {
        unsigned total = 0;
        for (unsigned x : e) total += x;
        d = std::max(d, total);
    }
    return d;
}

IntPolynomial IntPolynomial::substitute_prefix(const std::vector<BigInt>& values) const {
    const std::size_t k = values.size();
    std::vector<std::string> rest(vars_.begin() + static_cast<std::ptrdiff_t>(k), vars_.end());
    IntPolynomial out(rest);
    for (const auto& [e, c] : terms_) {
        BigInt coeff = c;
        for (std::size_t i = 0; i < k && coeff != 0; ++i)
            coeff *= ipow(values[i], e[i]);
        if (coeff == 0) continue;
        Exponents re(e.begin() + static_cast<std::ptrdiff_t>(k), e.end());
        out.add_term(re, coeff);
    }
    return out;
}

std::string IntPolynomial::to_string() const {
    if (terms_.empty()) return "0";
    // Descending lexicographic exponent order puts leading terms first.
    std::vector<const TermMap::value_type*> ordered;
    ordered.reserve(terms_.size());
    for (const auto& t : terms_) ordered.push_back(&t);
    std::reverse(ordered.begin(), ordered.end());

    std::ostringstream out;
    bool first = true;
    for (const auto* t : ordered) {
        const auto& [e, c] = *t;
        BigInt mag = c < 0 ? BigInt(-c) : c;
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        bool any_var = std::any_of(e.begin(), e.end(), [](unsigned x) { return x != 0; });
        bool printed = false;
        if (mag != 1 || !any_var) {
            out << mag.str();
            printed = true;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (printed) out << "*";
            out << vars_[i];
            if (e[i] > 1) out << "^" << e[i];
            printed = true;
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Parser: recursive descent over
//   expr   := ['-'] term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' nat)*
//   atom   := nat | var | '(' expr ')'

namespace {

class Parser {
public:
    Parser(std::string_view text, const std::vector<std::string>& vars)
        : text_(text), vars_(vars) {}

    IntPolynomial run() {
        skip_ws();
        IntPolynomial result = parse_expr();
        skip_ws();
        if (pos_ != text_.size())
            throw SyntaxError("unexpected trailing input", pos_);
        return result;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool accept(char c) {
        if (peek(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    IntPolynomial parse_expr() {
        bool negate = false;
        if (accept('-'))
            negate = true;
        else
            accept('+');
        IntPolynomial acc = parse_term();
        if (negate) acc = -acc;
        while (true) {
            if (accept('+'))
                acc = acc + parse_term();
            else if (accept('-'))
                acc = acc - parse_term();
            else
                break;
        }
        return acc;
    }

    IntPolynomial parse_term() {
        IntPolynomial acc = parse_factor();
        while (accept('*')) acc = acc * parse_factor();
        return acc;
    }

    IntPolynomial parse_factor() {
        IntPolynomial base = parse_atom();
        while (accept('^')) {
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == '-')
                throw NegativeExponentError("negative exponent at position " + std::to_string(pos_));
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                throw SyntaxError("exponent must be a non-negative integer literal", pos_);
            unsigned e = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                e = e * 10 + static_cast<unsigned>(text_[pos_] - '0');
                if (e > 1u << 20) throw SyntaxError("exponent too large", pos_);
                ++pos_;
            }
            base = base.pow(e);
        }
        return base;
    }

    IntPolynomial parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) throw SyntaxError("unexpected end of input", pos_);
        char c = text_[pos_];
        if (c == '(') {
            std::size_t open = pos_++;
            IntPolynomial inner = parse_expr();
            if (!accept(')')) throw SyntaxError("unbalanced parenthesis", open);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            BigInt value{std::string(text_.substr(start, pos_ - start))};
            return IntPolynomial::constant(value, vars_);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            auto it = std::find(vars_.begin(), vars_.end(), name);
            if (it == vars_.end())
                throw UnknownVariableError("unknown variable '" + name + "'");
            return IntPolynomial::variable(static_cast<std::size_t>(it - vars_.begin()), vars_);
        }
        throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
    }

    std::string_view text_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;
};

}  // namespace

IntPolynomial IntPolynomial::parse(std::string_view text, const std::vector<std::string>& vars) {
    return Parser(text, vars).run();
}

}  // namespace zetakit::varieties
