#include "circgeo/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>

#include "circgeo/errors.hpp"

namespace circgeo {

namespace {

double ipow(double base, int exponent) {
    double result = 1.0;
    for (int k = 0; k < exponent; ++k) result *= base;
    return result;
}

}  // namespace

Polynomial::Polynomial(std::vector<Monomial> terms) {
    std::map<std::array<int, 3>, double> merged;
    for (const auto& t : terms) merged[t.exponents] += t.coefficient;
    for (const auto& [exps, coef] : merged) {
        if (coef != 0.0) terms_.push_back({coef, exps});
    }
}

Polynomial Polynomial::constant(double value) {
    return Polynomial(std::vector<Monomial>{{value, {0, 0, 0}}});
}

Polynomial Polynomial::linear(const Vec3& coefficients, double offset) {
    return Polynomial(std::vector<Monomial>{{coefficients[0], {1, 0, 0}},
                       {coefficients[1], {0, 1, 0}},
                       {coefficients[2], {0, 0, 1}},
                       {offset, {0, 0, 0}}});
}

double Polynomial::evaluate(const Vec3& p) const {
    double sum = 0.0;
    for (const auto& t : terms_) {
        sum += t.coefficient * ipow(p[0], t.exponents[0]) * ipow(p[1], t.exponents[1]) *
               ipow(p[2], t.exponents[2]);
    }
    return sum;
}

double Polynomial::partial(int axis, const Vec3& p) const {
    double sum = 0.0;
    for (const auto& t : terms_) {
        const int e = t.exponents[axis];
        if (e == 0) continue;
        double term = t.coefficient * e;
        for (int k = 0; k < 3; ++k) {
            term *= ipow(p[k], k == axis ? e - 1 : t.exponents[k]);
        }
        sum += term;
    }
    return sum;
}

Vec3 Polynomial::gradient(const Vec3& p) const {
    return {partial(0, p), partial(1, p), partial(2, p)};
}

int Polynomial::degree() const {
    int d = 0;
    for (const auto& t : terms_) {
        d = std::max(d, t.exponents[0] + t.exponents[1] + t.exponents[2]);
    }
    return d;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    out.precision(17);
    bool first = true;
    // Highest degree first reads more naturally.
    std::vector<Monomial> ordered(terms_.rbegin(), terms_.rend());
    for (const auto& t : ordered) {
        double c = t.coefficient;
        if (first) {
            if (c < 0) out << "-";
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        c = std::abs(c);
        const bool has_var = t.exponents[0] + t.exponents[1] + t.exponents[2] > 0;
        bool wrote = false;
        if (c != 1.0 || !has_var) {
            out << c;
            wrote = true;
        }
        for (int k = 0; k < 3; ++k) {
            if (t.exponents[k] == 0) continue;
            if (wrote) out << "*";
            out << "x" << (k + 1);
            if (t.exponents[k] != 1) out << "^" << t.exponents[k];
            wrote = true;
        }
        first = false;
    }
    return out.str();
}

namespace {

class PolyParser {
public:
    PolyParser(std::string_view text, std::size_t offset) : text_(text), offset_(offset) {}

    Polynomial parse() {
        std::vector<Monomial> terms;
        skip_ws();
        if (at_end()) fail("empty polynomial");
        double sign = 1.0;
        if (peek() == '+' || peek() == '-') {
            sign = peek() == '-' ? -1.0 : 1.0;
            ++pos_;
        }
        terms.push_back(term(sign));
        while (true) {
            skip_ws();
            if (at_end()) break;
            const char c = peek();
            if (c != '+' && c != '-') fail(std::string("unexpected character '") + c + "'");
            ++pos_;
            terms.push_back(term(c == '-' ? -1.0 : 1.0));
        }
        return Polynomial(std::move(terms));
    }

private:
    Monomial term(double sign) {
        skip_ws();
        Monomial m;
        m.coefficient = sign;
        if (at_end()) fail("expected term");
        bool need_factor = true;
        if (peek() != 'x') {
            m.coefficient *= coefficient();
            need_factor = false;
        }
        while (true) {
            skip_ws();
            if (need_factor) {
                variable(m);
                need_factor = false;
                continue;
            }
            if (at_end() || peek() != '*') break;
            ++pos_;
            need_factor = true;
        }
        return m;
    }

    double coefficient() {
        double value = number();
        skip_ws();
        if (!at_end() && peek() == '/') {
            ++pos_;
            skip_ws();
            const std::size_t at = pos_;
            const double den = number();
            if (den == 0.0) fail_at("division by zero in coefficient", at);
            value /= den;
        }
        return value;
    }

    double number() {
        const std::size_t start = pos_;
        while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.')) ++pos_;
        if (!at_end() && (peek() == 'e' || peek() == 'E') && pos_ > start) {
            std::size_t look = pos_ + 1;
            if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
            if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
                pos_ = look;
                while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            }
        }
        if (pos_ == start) fail_at("expected number", start);
        const std::string token(text_.substr(start, pos_ - start));
        char* end = nullptr;
        const double value = std::strtod(token.c_str(), &end);
        if (end != token.c_str() + token.size() || !std::isfinite(value)) {
            fail_at("malformed number '" + token + "'", start);
        }
        return value;
    }

    void variable(Monomial& m) {
        const std::size_t start = pos_;
        if (at_end() || peek() != 'x') fail("expected variable x1, x2 or x3");
        ++pos_;
        if (at_end() || peek() < '1' || peek() > '3') fail_at("expected variable x1, x2 or x3", start);
        const int axis = peek() - '1';
        ++pos_;
        int exponent = 1;
        skip_ws();
        if (!at_end() && peek() == '^') {
            ++pos_;
            skip_ws();
            const std::size_t at = pos_;
            while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            if (pos_ == at) fail_at("expected non-negative integer exponent", at);
            const auto digits = text_.substr(at, pos_ - at);
            const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), exponent);
            if (ec != std::errc() || exponent > 64) fail_at("exponent out of range", at);
        }
        m.exponents[axis] += exponent;
    }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    [[noreturn]] void fail(const std::string& message) const { fail_at(message, pos_); }
    [[noreturn]] void fail_at(const std::string& message, std::size_t at) const {
        throw ParseError(message, offset_ + at);
    }

    std::string_view text_;
    std::size_t offset_;
    std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::size_t offset) {
    return PolyParser(text, offset).parse();
}

}  // namespace circgeo
