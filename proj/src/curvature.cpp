#include "circgeo/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "circgeo/circulant.hpp"
#include "circgeo/errors.hpp"

namespace circgeo {

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

Vec3 q_apply(const Vec3& v) { return apply(structural::q, v); }
Vec3 q2_apply(const Vec3& v) { return apply(structural::q_squared, v); }

}  // namespace

CurvatureAtPoint curvature_from_connection(const ChristoffelSymbols& gamma,
                                           const std::array<ChristoffelSymbols, 3>& dgamma,
                                           const MetricAtPoint& metric) {
    CurvatureAtPoint c;
    c.metric = metric;
    for (int s = 0; s < 3; ++s) {
        for (int k = 0; k < 3; ++k) {
            for (int j = 0; j < 3; ++j) {
                for (int i = 0; i < 3; ++i) {
                    double v = dgamma[k](s, j, i) - dgamma[j](s, k, i);
                    for (int a = 0; a < 3; ++a) {
                        v += gamma(s, k, a) * gamma(a, j, i) - gamma(s, j, a) * gamma(a, k, i);
                    }
                    c.r_up[s][k][j][i] = v;
                }
            }
        }
    }
    const Mat3 g = metric.g.dense();
    for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j)
            for (int i = 0; i < 3; ++i)
                for (int s = 0; s < 3; ++s) {
                    double v = 0.0;
                    for (int a = 0; a < 3; ++a) v += g[a][s] * c.r_up[a][k][j][i];
                    c.r_down[k][j][i][s] = v;
                }
    return c;
}

CurvatureAtPoint curvature_at(const FieldPair& f, const Vec3& p, double step, StencilOrder order) {
    if (!(step > 0.0)) throw ConfigError("curvature step must be positive");
    const auto [a0, b0] = field_eval(f, p);
    const auto metric = metric_from_values(a0, b0);
    const int sign_ab = sign_of(a0 - b0);
    const int sign_a2b = sign_of(a0 + 2.0 * b0);

    auto gamma_at = [&](const Vec3& q) {
        const auto [a, b] = field_eval(f, q);
        if (!domain_status(a, b).nondegenerate) {
            throw DegenerateMetric("degenerate metric at curvature stencil point");
        }
        if (sign_of(a - b) != sign_ab || sign_of(a + 2.0 * b) != sign_a2b) {
            throw StencilTooWide("curvature stencil crosses the degeneracy surface D = 0");
        }
        return christoffel_general(f, q);
    };
    auto shifted = [&p](int k, double offset) {
        Vec3 q = p;
        q[k] += offset;
        return q;
    };

    std::array<ChristoffelSymbols, 3> dgamma{};
    Vec3 steps{};
    for (int k = 0; k < 3; ++k) {
        const double h = step * (1.0 + std::abs(p[k]));
        // differences of the representable abscissae, not the nominal step
        const Vec3 p1 = shifted(k, h), m1 = shifted(k, -h);
        const double h_eff = 0.5 * (p1[k] - m1[k]);
        steps[k] = h_eff;
        const auto gp1 = gamma_at(p1);
        const auto gm1 = gamma_at(m1);
        if (order == StencilOrder::second) {
            for (int s = 0; s < 3; ++s)
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j)
                        dgamma[k].gamma[s][i][j] = (gp1(s, i, j) - gm1(s, i, j)) / (2.0 * h_eff);
        } else {
            const Vec3 p2 = shifted(k, 2.0 * h), m2 = shifted(k, -2.0 * h);
            const auto gp2 = gamma_at(p2);
            const auto gm2 = gamma_at(m2);
            for (int s = 0; s < 3; ++s)
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j)
                        dgamma[k].gamma[s][i][j] =
                            (8.0 * (gp1(s, i, j) - gm1(s, i, j)) - (gp2(s, i, j) - gm2(s, i, j))) /
                            (12.0 * h_eff);
        }
    }

    auto c = curvature_from_connection(christoffel_general(f, p), dgamma, metric);
    c.point = p;
    c.fd_step = steps;
    return c;
}

double curvature_form(const CurvatureAtPoint& c, const Vec3& x, const Vec3& y, const Vec3& z,
                      const Vec3& u) {
    double total = 0.0;
    for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j) {
            const double xy = x[k] * y[j];
            if (xy == 0.0) continue;
            for (int i = 0; i < 3; ++i) total += xy * z[i] * dot(c.r_down[k][j][i], u);
        }
    return total;
}

double residual_scale(const CurvatureAtPoint& c, const Vec3& x, const Vec3& y, const Vec3& z,
                      const Vec3& u) {
    return c.max_abs() * norm(x) * norm(y) * norm(z) * norm(u);
}

double identity_31_residual(const CurvatureAtPoint& c, const Vec3& x, const Vec3& y, const Vec3& z,
                            const Vec3& u) {
    return std::abs(curvature_form(c, x, y, q2_apply(z), u) - curvature_form(c, x, y, z, q_apply(u)));
}

double identity_31_residual(const FieldPair& f, const Vec3& p, const Vec3& x, const Vec3& y,
                            const Vec3& z, const Vec3& u, double step) {
    if (!is_parallel(field_jet(f, p))) {
        throw ParallelismViolated("identity requires q to be parallel at the point");
    }
    return identity_31_residual(curvature_at(f, p, step), x, y, z, u);
}

double commutation_residual(const CurvatureAtPoint& c) {
    double worst = 0.0;
    for (int s = 0; s < 3; ++s)
        for (int k = 0; k < 3; ++k)
            for (int j = 0; j < 3; ++j)
                for (int i = 0; i < 3; ++i) {
                    double v = 0.0;
                    for (int a = 0; a < 3; ++a) {
                        v += c.r_up[s][k][j][a] * structural::q_entry(i, a) -
                             c.r_up[a][k][j][i] * structural::q_entry(a, s);
                    }
                    worst = std::max(worst, std::abs(v));
                }
    return worst;
}

std::pair<double, double> q_invariance_residuals(const CurvatureAtPoint& c, const Vec3& x,
                                                 const Vec3& y, const Vec3& z, const Vec3& u) {
    const double base = curvature_form(c, x, y, z, u);
    return {std::abs(base - curvature_form(c, x, y, q_apply(z), q_apply(u))),
            std::abs(base - curvature_form(c, x, y, q2_apply(z), q2_apply(u)))};
}

double antisymmetry_residual(const CurvatureAtPoint& c) {
    double worst = 0.0;
    for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j)
            for (int i = 0; i < 3; ++i)
                for (int s = 0; s < 3; ++s)
                    worst = std::max(worst, std::abs(c.r_down[k][j][i][s] + c.r_down[j][k][i][s]));
    return worst;
}

double pair_symmetry_residual(const CurvatureAtPoint& c) {
    double worst = 0.0;
    for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j)
            for (int i = 0; i < 3; ++i)
                for (int s = 0; s < 3; ++s)
                    worst = std::max(worst, std::abs(c.r_down[k][j][i][s] - c.r_down[i][s][k][j]));
    return worst;
}

double half_step_difference(const FieldPair& f, const Vec3& p, double step, StencilOrder order) {
    const auto full = curvature_at(f, p, step, order);
    const auto half = curvature_at(f, p, 0.5 * step, order);
    double worst = 0.0;
    for (int s = 0; s < 3; ++s)
        for (int k = 0; k < 3; ++k)
            for (int j = 0; j < 3; ++j)
                for (int i = 0; i < 3; ++i)
                    worst = std::max(worst, std::abs(full.r_up[s][k][j][i] - half.r_up[s][k][j][i]));
    return worst;
}

double orbit_independence(const Vec3& x) {
    return 3.0 * x[0] * x[1] * x[2] - x[0] * x[0] * x[0] - x[1] * x[1] * x[1] - x[2] * x[2] * x[2];
}

double gram_determinant(const CirculantMatrix& g, const Vec3& u, const Vec3& v) {
    const double uv = metric_product(g, u, v);
    return metric_product(g, u, u) * metric_product(g, v, v) - uv * uv;
}

SectionReport sections_of(const MetricAtPoint& metric, const Vec3& x) {
    if (!metric.definite) throw IndefiniteMetric("metric is not positive definite at the point");
    SectionReport r;
    r.x = x;
    r.independence = orbit_independence(x);
    const double n = norm(x);
    if (!(std::abs(r.independence) > 1e-12 * n * n * n)) {
        throw DependentOrbit("x, qx, q^2x are linearly dependent");
    }
    const Vec3 qx = q_apply(x);
    const Vec3 q2x = q2_apply(x);
    r.sections = {{{x, qx}, {qx, q2x}, {q2x, x}}};
    r.mu.fill(std::nan(""));
    return r;
}

SectionReport sections_of(const FieldPair& f, const Vec3& p, const Vec3& x) {
    return sections_of(metric_at(f, p), x);
}

double sectional_curvature(const CurvatureAtPoint& c, const Vec3& u, const Vec3& v) {
    if (!c.metric.definite) throw IndefiniteMetric("metric is not positive definite at the point");
    const auto& g = c.metric.g;
    const double uu = metric_product(g, u, u);
    const double vv = metric_product(g, v, v);
    const double gram = gram_determinant(g, u, v);
    if (!(gram > 1e-12 * uu * vv)) {
        throw DegenerateSection("section vectors are linearly dependent (Gram determinant " +
                                std::to_string(gram) + ")");
    }
    return curvature_form(c, u, v, u, v) / gram;
}

double sectional_curvature(const FieldPair& f, const Vec3& p, const Vec3& u, const Vec3& v,
                           double step) {
    const auto metric = metric_at(f, p);
    if (!metric.definite) throw IndefiniteMetric("metric is not positive definite at the point");
    return sectional_curvature(curvature_at(f, p, step), u, v);
}

SectionReport theorem3_check(const CurvatureAtPoint& c, const Vec3& x, Theorem3Tolerance tol) {
    auto r = sections_of(c.metric, x);
    for (int e = 0; e < 3; ++e) {
        r.mu[e] = sectional_curvature(c, r.sections[e].first, r.sections[e].second);
    }
    r.spread = std::max({std::abs(r.mu[0] - r.mu[1]), std::abs(r.mu[1] - r.mu[2]),
                         std::abs(r.mu[2] - r.mu[0])});
    const double largest = std::max({std::abs(r.mu[0]), std::abs(r.mu[1]), std::abs(r.mu[2])});
    r.tolerance = tol.relative * largest + tol.absolute;
    r.passed = r.spread <= r.tolerance;
    return r;
}

SectionReport theorem3_check(const FieldPair& f, const Vec3& p, const Vec3& x, double step,
                             Theorem3Tolerance tol) {
    // Validate the orbit and definiteness before paying for the curvature.
    sections_of(f, p, x);
    if (!is_parallel(field_jet(f, p))) {
        throw ParallelismViolated("equal q-orbit sectional curvatures require q to be parallel");
    }
    return theorem3_check(curvature_at(f, p, step), x, tol);
}

}  // namespace circgeo
