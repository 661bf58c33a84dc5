#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "circgeo/types.hpp"

namespace circgeo {

struct Monomial {
    double coefficient = 0.0;
    std::array<int, 3> exponents{0, 0, 0};
};

/// Trivariate polynomial in x1, x2, x3 stored as a list of monomials.
/// Like terms are merged on construction and zero terms dropped.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Monomial> terms);

    static Polynomial constant(double value);
    /// Linear form c0*x1 + c1*x2 + c2*x3 + offset.
    static Polynomial linear(const Vec3& coefficients, double offset = 0.0);

    double evaluate(const Vec3& p) const;
    double partial(int axis, const Vec3& p) const;
    Vec3 gradient(const Vec3& p) const;

    const std::vector<Monomial>& terms() const { return terms_; }
    int degree() const;

    /// Rendering in the field-spec grammar, e.g. "4*x1 + 2*x2".
    std::string to_string() const;

private:
    std::vector<Monomial> terms_;
};

/// Parses one `<poly>` of the field-spec grammar:
///   poly := ['+'|'-'] term (('+'|'-') term)*
///   term := coef ['*' var]*  |  var ['*' var]*
///   coef := decimal ['/' decimal]     (decimal accepts exponent notation)
///   var  := 'x1' | 'x2' | 'x3'  ['^' non-negative integer]
/// Whitespace is ignored. `offset` is added to error positions so that callers
/// parsing a substring can report positions in the original text.
Polynomial parse_polynomial(std::string_view text, std::size_t offset = 0);

}  // namespace circgeo
