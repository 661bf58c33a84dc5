#pragma once

#include <array>
#include <utility>

#include "circgeo/connection.hpp"
#include "circgeo/fields.hpp"
#include "circgeo/types.hpp"

namespace circgeo {

inline constexpr double kDefaultCurvatureStep = 1e-5;

/// Central-difference stencil for ∂Γ: 3-point (error O(h²)) or 5-point
/// (error O(h⁴)). The curvature symmetries that are not algebraic consequences
/// of the stencil (pair symmetry, last-pair antisymmetry) hold only to the
/// truncation error, so the 5-point stencil is the default.
enum class StencilOrder { second = 2, fourth = 4 };

/// Curvature of the Levi-Civita connection at one point.
///
/// r_up[s][k][j][i] = R^s_kji = ∂_k Γ^s_ji − ∂_j Γ^s_ki + Γ^s_ka Γ^a_ji − Γ^s_ja Γ^a_ki
/// r_down[k][j][i][s] = R_kjis = g_as R^a_kji, so that
/// R(x, y, z, u) = g(R(x, y)z, u) = R_kjis x^k y^j z^i u^s.
struct CurvatureAtPoint {
    Tensor4 r_up{};
    Tensor4 r_down{};
    Vec3 point{};
    Vec3 fd_step{};  // absolute step per coordinate
    MetricAtPoint metric;

    double max_abs() const { return circgeo::max_abs(r_down); }
    double max_abs_up() const { return circgeo::max_abs(r_up); }
};

/// ∂Γ by central differences of christoffel_general with per-coordinate step
/// step * (1 + |p_k|). Throws DegenerateMetric if p or a stencil point is
/// degenerate, StencilTooWide if the stencil crosses D = 0 (a stencil point
/// lies in a different sign region of A − B or A + 2B than p).
CurvatureAtPoint curvature_at(const FieldPair& f, const Vec3& p, double step = kDefaultCurvatureStep,
                              StencilOrder order = StencilOrder::fourth);

/// Assembles the tensor from Γ at p and its coordinate derivatives
/// dgamma[k] = ∂_k Γ. Exposed for testing and for callers with exact ∂Γ.
CurvatureAtPoint curvature_from_connection(const ChristoffelSymbols& gamma,
                                           const std::array<ChristoffelSymbols, 3>& dgamma,
                                           const MetricAtPoint& metric);

/// R(x, y, z, u).
double curvature_form(const CurvatureAtPoint& c, const Vec3& x, const Vec3& y, const Vec3& z,
                      const Vec3& u);

/// max|r_down| times the product of the Euclidean norms of the arguments.
double residual_scale(const CurvatureAtPoint& c, const Vec3& x, const Vec3& y, const Vec3& z,
                      const Vec3& u);

/// |R(x, y, q²z, u) − R(x, y, z, qu)| with no parallelism requirement.
double identity_31_residual(const CurvatureAtPoint& c, const Vec3& x, const Vec3& y, const Vec3& z,
                            const Vec3& u);

/// Same, from fields; throws ParallelismViolated unless q is parallel at p.
double identity_31_residual(const FieldPair& f, const Vec3& p, const Vec3& x, const Vec3& y,
                            const Vec3& z, const Vec3& u, double step = kDefaultCurvatureStep);

/// max over s,k,j,i of |R^s_kja q_i^a − R^a_kji q_a^s|.
double commutation_residual(const CurvatureAtPoint& c);

/// (|R(x,y,z,u) − R(x,y,qz,qu)|, |R(x,y,z,u) − R(x,y,q²z,q²u)|).
std::pair<double, double> q_invariance_residuals(const CurvatureAtPoint& c, const Vec3& x,
                                                 const Vec3& y, const Vec3& z, const Vec3& u);

/// max|R_kjis + R_jkis|.
double antisymmetry_residual(const CurvatureAtPoint& c);

/// max|R_kjis − R_iskj|.
double pair_symmetry_residual(const CurvatureAtPoint& c);

/// max componentwise |R^s_kji(h) − R^s_kji(h/2)|.
double half_step_difference(const FieldPair& f, const Vec3& p, double step = kDefaultCurvatureStep,
                            StencilOrder order = StencilOrder::fourth);

/// 3 x1 x2 x3 − x1³ − x2³ − x3³; nonzero iff x, qx, q²x are independent.
double orbit_independence(const Vec3& x);

/// g(u,u) g(v,v) − g(u,v)².
double gram_determinant(const CirculantMatrix& g, const Vec3& u, const Vec3& v);

struct SectionReport {
    Vec3 x{};
    /// E1 = {x, qx}, E2 = {qx, q²x}, E3 = {q²x, x}.
    std::array<std::pair<Vec3, Vec3>, 3> sections{};
    std::array<double, 3> mu{};
    double spread = 0.0;
    double independence = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

/// Builds the three q-orbit sections. Throws DependentOrbit when
/// |independence| ≤ 1e-12‖x‖³, IndefiniteMetric when g is not positive
/// definite at p (DegenerateMetric if it is degenerate).
SectionReport sections_of(const FieldPair& f, const Vec3& p, const Vec3& x);
SectionReport sections_of(const MetricAtPoint& metric, const Vec3& x);

/// μ = R(u,v,u,v) / (g(u,u)g(v,v) − g(u,v)²). Throws IndefiniteMetric or
/// DegenerateSection (Gram determinant ≤ 1e-12 g(u,u)g(v,v)).
double sectional_curvature(const CurvatureAtPoint& c, const Vec3& u, const Vec3& v);
double sectional_curvature(const FieldPair& f, const Vec3& p, const Vec3& u, const Vec3& v,
                           double step = kDefaultCurvatureStep);

struct Theorem3Tolerance {
    double relative = 1e-6;
    double absolute = 1e-9;
};

/// Fills μ for the three q-orbit sections; passes when
/// spread ≤ relative·max|μ| + absolute.
SectionReport theorem3_check(const CurvatureAtPoint& c, const Vec3& x, Theorem3Tolerance tol = {});

/// From fields; additionally throws ParallelismViolated unless q is parallel.
SectionReport theorem3_check(const FieldPair& f, const Vec3& p, const Vec3& x,
                             double step = kDefaultCurvatureStep, Theorem3Tolerance tol = {});

}  // namespace circgeo
