#pragma once

#include "circgeo/types.hpp"

namespace circgeo {

/// A 3x3 real circulant matrix with rows (a,b,c), (c,a,b), (b,c,a).
///
/// Circulant matrices commute and are closed under multiplication, so the
/// product and inverse are again stored as three scalars.
struct CirculantMatrix {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    friend bool operator==(const CirculantMatrix&, const CirculantMatrix&) = default;

    /// Row-major dense expansion.
    Mat3 dense() const;

    double max_abs_entry() const;
};

/// Matrix product; commutative.
CirculantMatrix multiply(const CirculantMatrix& m1, const CirculantMatrix& m2);

/// a^3 + b^3 + c^3 - 3abc, the determinant of the dense matrix.
double determinant(const CirculantMatrix& m);

/// Default singularity threshold: 1e-12 * (1 + max|entry|^3).
double singularity_epsilon(const CirculantMatrix& m);

/// Throws SingularMatrix when |det| < singularity_epsilon(m).
CirculantMatrix inverse(const CirculantMatrix& m);

/// Dense matrix times column vector.
Vec3 apply(const CirculantMatrix& m, const Vec3& v);

namespace structural {

/// Identity E.
inline constexpr CirculantMatrix identity{1.0, 0.0, 0.0};

/// Cyclic shift q; apply(q, x) = (x2, x3, x1) and q^3 = E.
inline constexpr CirculantMatrix q{0.0, 1.0, 0.0};

/// q^2 = q^{-1} = q^T.
inline constexpr CirculantMatrix q_squared{0.0, 0.0, 1.0};

/// Symmetric matrix with -1 on the diagonal and +1 elsewhere. As a circulant
/// it is (-1, 1, 1).
inline constexpr CirculantMatrix s{-1.0, 1.0, 1.0};

/// Dense entries of q, indexed [row][column].
inline constexpr int q_entry(int row, int col) { return (col == (row + 1) % 3) ? 1 : 0; }

/// Dense entries of S.
inline constexpr int s_entry(int row, int col) { return row == col ? -1 : 1; }

}  // namespace structural

}  // namespace circgeo
