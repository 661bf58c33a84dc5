#include "circgeo/circulant.hpp"

#include <algorithm>
#include <cmath>

#include "circgeo/errors.hpp"

namespace circgeo {

Mat3 CirculantMatrix::dense() const {
    return {{{a, b, c}, {c, a, b}, {b, c, a}}};
}

double CirculantMatrix::max_abs_entry() const {
    return std::max({std::abs(a), std::abs(b), std::abs(c)});
}

CirculantMatrix multiply(const CirculantMatrix& m1, const CirculantMatrix& m2) {
    // First row of the product; the remaining rows follow by cyclic shift.
    // Written so that swapping the operands reproduces the same sums in the
    // same order, which keeps the product commutative in floating point too.
    return {
        m1.a * m2.a + (m1.b * m2.c + m1.c * m2.b),
        (m1.a * m2.b + m1.b * m2.a) + m1.c * m2.c,
        (m1.a * m2.c + m1.c * m2.a) + m1.b * m2.b,
    };
}

double determinant(const CirculantMatrix& m) {
    return m.a * m.a * m.a + m.b * m.b * m.b + m.c * m.c * m.c - 3.0 * m.a * m.b * m.c;
}

double singularity_epsilon(const CirculantMatrix& m) {
    const double e = m.max_abs_entry();
    return 1e-12 * (1.0 + e * e * e);
}

CirculantMatrix inverse(const CirculantMatrix& m) {
    const double det = determinant(m);
    if (!(std::abs(det) >= singularity_epsilon(m))) {
        throw SingularMatrix("circulant matrix is singular (det = " + std::to_string(det) + ")");
    }
    // Adjugate of a circulant is circulant with first row built from the
    // 2x2 cofactors of (a,b,c).
    return {
        (m.a * m.a - m.b * m.c) / det,
        (m.c * m.c - m.a * m.b) / det,
        (m.b * m.b - m.a * m.c) / det,
    };
}

Vec3 apply(const CirculantMatrix& m, const Vec3& v) {
    return {
        m.a * v[0] + m.b * v[1] + m.c * v[2],
        m.c * v[0] + m.a * v[1] + m.b * v[2],
        m.b * v[0] + m.c * v[1] + m.a * v[2],
    };
}

}  // namespace circgeo
