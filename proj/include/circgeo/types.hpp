#pragma once

#include <algorithm>
#include <array>
#include <cmath>

namespace circgeo {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;
// Rank-3 and rank-4 component arrays over {0,1,2}; index order is documented
// by each owner type.
using Tensor3 = std::array<Mat3, 3>;
using Tensor4 = std::array<Tensor3, 3>;

inline double dot(const Vec3& x, const Vec3& y) {
    return x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
}

inline double norm(const Vec3& x) { return std::sqrt(dot(x, x)); }

inline double max_abs(const Vec3& x) {
    return std::max({std::abs(x[0]), std::abs(x[1]), std::abs(x[2])});
}

inline double max_abs(const Mat3& m) {
    return std::max({max_abs(m[0]), max_abs(m[1]), max_abs(m[2])});
}

inline double max_abs(const Tensor3& t) {
    return std::max({max_abs(t[0]), max_abs(t[1]), max_abs(t[2])});
}

inline double max_abs(const Tensor4& t) {
    return std::max({max_abs(t[0]), max_abs(t[1]), max_abs(t[2])});
}

inline Vec3 operator+(const Vec3& x, const Vec3& y) {
    return {x[0] + y[0], x[1] + y[1], x[2] + y[2]};
}

inline Vec3 operator-(const Vec3& x, const Vec3& y) {
    return {x[0] - y[0], x[1] - y[1], x[2] - y[2]};
}

inline Vec3 operator*(double s, const Vec3& x) {
    return {s * x[0], s * x[1], s * x[2]};
}

inline Vec3 mat_vec(const Mat3& m, const Vec3& v) {
    return {dot(m[0], v), dot(m[1], v), dot(m[2], v)};
}

}  // namespace circgeo
