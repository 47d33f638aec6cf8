#pragma once

/**
 * @file poly_text.hpp
 * @brief Text form of polynomials in F_q[T].
 *
 * Accepted input (whitespace ignored):
 *
 *     expr    := ['+'|'-'] term (('+'|'-') term)*
 *     term    := factor (['*'] factor)*
 *     factor  := primary ['^' integer]
 *     primary := integer | 'T' | '(' expr ')' | '{' integer '}'
 *
 * Integer literals are coefficients in the prime subfield; a literal >= p is
 * rejected unless ParseOptions::reduce is set. `{i}` denotes the field
 * element with packed index i, which is how elements outside F_p are
 * written when k > 1. Products and powers are expanded on parse.
 *
 * Canonical output lists terms by descending power, omits zero terms, omits
 * `*`, and elides unit coefficients: `T^3+T+4`, `2T^2+1`, `0`.
 */

#include "ffbias/field.hpp"
#include "ffbias/poly.hpp"

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ffbias {

class ParseError : public std::runtime_error {
public:
    ParseError(std::string const& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}

    [[nodiscard]] std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

struct ParseOptions {
    /// Reduce integer literals mod p instead of rejecting literals >= p.
    bool reduce = false;
};

namespace detail {

class PolyParser {
public:
    PolyParser(std::string_view text, Field const& F, ParseOptions opts) : s_(text), F_(F), opts_(opts) {}

    Poly parse() {
        skip_ws();
        if (pos_ == s_.size()) throw ParseError("empty polynomial", pos_);
        Poly r = expr();
        skip_ws();
        if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
        return r;
    }

private:
    static constexpr unsigned long long kMaxExponent = 1u << 20;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    [[nodiscard]] char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    Poly expr() {
        Poly acc;
        bool negate = false;
        char c = peek();
        if (c == '+' || c == '-') {
            negate = c == '-';
            ++pos_;
        }
        Poly t = term();
        acc = negate ? neg(F_, t) : t;
        for (;;) {
            c = peek();
            if (c != '+' && c != '-') break;
            ++pos_;
            t = term();
            acc = c == '+' ? add(F_, acc, t) : sub(F_, acc, t);
        }
        return acc;
    }

    static bool starts_factor(char c) {
        return std::isdigit(static_cast<unsigned char>(c)) || c == 'T' || c == '(' || c == '{' ||
               std::isalpha(static_cast<unsigned char>(c));
    }

    Poly term() {
        Poly acc = factor();
        for (;;) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                acc = mul(F_, acc, factor());
            } else if (starts_factor(c)) {
                acc = mul(F_, acc, factor());
            } else {
                break;
            }
        }
        return acc;
    }

    Poly factor() {
        Poly base = primary();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            std::size_t const at = pos_;
            unsigned long long e = integer();
            if (e > kMaxExponent) throw ParseError("exponent too large", at);
            Poly r = Poly::constant(F_.one());
            Poly b = base;
            while (e) {
                if (e & 1) r = mul(F_, r, b);
                e >>= 1;
                if (e) b = mul(F_, b, b);
            }
            return r;
        }
        return base;
    }

    unsigned long long integer() {
        std::size_t const start = pos_;
        unsigned long long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            if (v > (~0ull - 9) / 10) throw ParseError("integer literal too large", start);
            v = v * 10 + static_cast<unsigned>(s_[pos_] - '0');
            ++pos_;
        }
        if (pos_ == start) throw ParseError("expected integer", start);
        return v;
    }

    Poly primary() {
        char const c = peek();
        std::size_t const at = pos_;
        if (c == '\0') throw ParseError("unexpected end of input", at);
        if (std::isdigit(static_cast<unsigned char>(c))) {
            unsigned long long v = integer();
            if (v >= F_.p() && !opts_.reduce)
                throw ParseError("coefficient " + std::to_string(v) + " >= p = " + std::to_string(F_.p()), at);
            return Poly::constant(F_.from_int(static_cast<long long>(v % F_.p())));
        }
        if (c == 'T') {
            ++pos_;
            return poly_x();
        }
        if (c == '(') {
            ++pos_;
            Poly inner = expr();
            if (peek() != ')') throw ParseError("expected ')'", pos_);
            ++pos_;
            return inner;
        }
        if (c == '{') {
            ++pos_;
            skip_ws();
            std::size_t const vat = pos_;
            unsigned long long v = integer();
            if (v >= F_.q()) throw ParseError("field element index >= q", vat);
            if (peek() != '}') throw ParseError("expected '}'", pos_);
            ++pos_;
            return Poly::constant(F_.element(v));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) throw ParseError(std::string("unknown variable '") + c + "'", at);
        throw ParseError(std::string("unexpected '") + c + "'", at);
    }

    std::string_view s_;
    Field const& F_;
    ParseOptions opts_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline Poly parse_poly(std::string_view text, Field const& F, ParseOptions opts = {}) {
    return detail::PolyParser(text, F, opts).parse();
}

inline std::string format_coeff(Field const& F, Fe c) {
    if (F.in_prime_subfield(c)) return std::to_string(c.v);
    return "{" + std::to_string(c.v) + "}";
}

inline std::string format_poly(Field const& F, Poly const& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (std::size_t i = f.size(); i-- > 0;) {
        Fe const c = f[i];
        if (c.is_zero()) continue;
        if (!out.empty()) out += '+';
        if (i == 0) {
            out += format_coeff(F, c);
            continue;
        }
        if (c != F.one()) out += format_coeff(F, c);
        out += 'T';
        if (i > 1) out += '^' + std::to_string(i);
    }
    return out;
}

} // namespace ffbias
