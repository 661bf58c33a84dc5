#include "circgeo/connection.hpp"

#include <cmath>

#include "circgeo/circulant.hpp"
#include "circgeo/errors.hpp"

namespace circgeo {

const std::array<std::array<std::array<int, 3>, 6>, 3>& reduced_christoffel_groups() {
    static const std::array<std::array<std::array<int, 3>, 6>, 3> groups{{
        {{{0, 0, 0}, {1, 0, 1}, {2, 0, 2}, {2, 1, 1}, {0, 1, 2}, {1, 2, 2}}},
        {{{2, 0, 0}, {0, 0, 1}, {1, 0, 2}, {1, 1, 1}, {2, 1, 2}, {0, 2, 2}}},
        {{{1, 0, 0}, {2, 0, 1}, {0, 0, 2}, {0, 1, 1}, {1, 1, 2}, {2, 2, 2}}},
    }};
    return groups;
}

Tensor3 metric_derivatives(const FieldJet& jet) {
    Tensor3 dg{};
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) dg[k][i][j] = (i == j) ? jet.grad_a[k] : jet.grad_b[k];
    return dg;
}

ChristoffelSymbols christoffel_general(const FieldJet& jet) {
    const auto metric = metric_from_values(jet.a, jet.b);
    const Mat3 g_inv = metric.g_inv.dense();
    const Tensor3 dg = metric_derivatives(jet);

    ChristoffelSymbols out;
    for (int s = 0; s < 3; ++s) {
        for (int i = 0; i < 3; ++i) {
            for (int j = i; j < 3; ++j) {
                double sum = 0.0;
                for (int a = 0; a < 3; ++a) {
                    sum += g_inv[a][s] * (dg[i][a][j] + dg[j][a][i] - dg[a][i][j]);
                }
                out.gamma[s][i][j] = 0.5 * sum;
                out.gamma[s][j][i] = out.gamma[s][i][j];
            }
        }
    }
    return out;
}

ChristoffelSymbols christoffel_general(const FieldPair& f, const Vec3& p) {
    return christoffel_general(field_jet(f, p));
}

ChristoffelSymbols christoffel_closed(const FieldJet& jet) {
    const auto metric = metric_from_values(jet.a, jet.b);
    const double A = jet.a;
    const double B = jet.b;
    const double AB = A + B;
    const auto [A1, A2, A3] = jet.grad_a;
    const auto [B1, B2, B3] = jet.grad_b;
    const double k = 1.0 / (2.0 * metric.d);

    ChristoffelSymbols out;
    auto set = [&out](int s, int i, int j, double v) {
        out.gamma[s - 1][i - 1][j - 1] = v;
        out.gamma[s - 1][j - 1][i - 1] = v;
    };

    set(1, 1, 1, k * (AB * A1 - B * (2 * B1 - A2) - B * (2 * B1 - A3)));
    set(2, 1, 1, k * (-B * A1 + AB * (2 * B1 - A2) - B * (2 * B1 - A3)));
    set(3, 1, 1, k * (-B * A1 - B * (2 * B1 - A2) + AB * (2 * B1 - A3)));

    set(1, 1, 2, k * (AB * A2 - B * A1 - B * (B1 + B2 - B3)));
    set(2, 1, 2, k * (-B * A2 + AB * A1 - B * (B1 + B2 - B3)));
    set(3, 1, 2, k * (-B * A2 - B * A1 + AB * (B1 + B2 - B3)));

    set(1, 1, 3, k * (AB * A3 - B * (B1 - B2 + B3) - B * A1));
    set(2, 1, 3, k * (-B * A3 + AB * (B1 - B2 + B3) - B * A1));
    set(3, 1, 3, k * (-B * A3 - B * (B1 - B2 + B3) + AB * A1));

    set(1, 2, 2, k * (AB * (2 * B2 - A1) - B * A2 - B * (2 * B2 - A3)));
    set(2, 2, 2, k * (-B * (2 * B2 - A1) + AB * A2 - B * (2 * B2 - A3)));
    set(3, 2, 2, k * (-B * (2 * B2 - A1) - B * A2 + AB * (2 * B2 - A3)));

    set(1, 2, 3, k * (AB * (-B1 + B2 + B3) - B * A3 - B * A2));
    set(2, 2, 3, k * (-B * (-B1 + B2 + B3) + AB * A3 - B * A2));
    set(3, 2, 3, k * (-B * (-B1 + B2 + B3) - B * A3 + AB * A2));

    set(1, 3, 3, k * (AB * (2 * B3 - A1) - B * (2 * B3 - A2) - B * A3));
    set(2, 3, 3, k * (-B * (2 * B3 - A1) + AB * (2 * B3 - A2) - B * A3));
    set(3, 3, 3, k * (-B * (2 * B3 - A1) - B * (2 * B3 - A2) + AB * A3));
    return out;
}

ChristoffelSymbols christoffel_closed(const FieldPair& f, const Vec3& p) {
    return christoffel_closed(field_jet(f, p));
}

Vec3 parallel_defect(const FieldJet& jet) {
    // S is symmetric, so grad B · S = S · grad B.
    return jet.grad_a - apply(structural::s, jet.grad_b);
}

Vec3 parallel_defect(const FieldPair& f, const Vec3& p) {
    return parallel_defect(field_jet(f, p));
}

bool is_parallel(const FieldJet& jet, double tolerance) {
    return max_abs(parallel_defect(jet)) <= tolerance * (1.0 + max_abs(jet.grad_a));
}

NablaQ nabla_q(const ChristoffelSymbols& gamma) {
    NablaQ out;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            for (int s = 0; s < 3; ++s) {
                double v = 0.0;
                for (int a = 0; a < 3; ++a) {
                    v += gamma(s, i, a) * structural::q_entry(j, a) -
                         gamma(a, i, j) * structural::q_entry(a, s);
                }
                out.components[i][j][s] = v;
            }
        }
    }
    return out;
}

NablaQ nabla_q(const FieldPair& f, const Vec3& p) {
    return nabla_q(christoffel_general(f, p));
}

ReducedChristoffel reduced_christoffel(const FieldJet& jet, double tolerance) {
    if (!is_parallel(jet)) {
        const auto d = parallel_defect(jet);
        throw ParallelismViolated("grad A != grad B . S (defect max " +
                                  std::to_string(max_abs(d)) + ")");
    }
    const auto metric = metric_from_values(jet.a, jet.b);
    const double A = jet.a;
    const double B = jet.b;
    const auto [A1, A2, A3] = jet.grad_a;
    const auto [B1, B2, B3] = jet.grad_b;
    const double k = 1.0 / (2.0 * metric.d);

    ReducedChristoffel r;
    r.g1 = k * (A * A1 + B * (-3 * B1 + B2 + B3));
    r.g2 = k * (A * A2 + B * (B1 - 3 * B2 + B3));
    r.g3 = k * (A * A3 + B * (B1 + B2 - 3 * B3));

    const auto gamma = christoffel_general(jet);
    const double scale = 1.0 + gamma.max_abs();
    const std::array<double, 3> values{r.g1, r.g2, r.g3};
    for (int group = 0; group < 3; ++group) {
        for (const auto& [s, i, j] : reduced_christoffel_groups()[group]) {
            if (std::abs(gamma(s, i, j) - values[group]) > tolerance * scale) {
                throw ParallelismViolated("reduced Christoffel group " + std::to_string(group + 1) +
                                          " disagrees with the general formula");
            }
        }
    }
    return r;
}

ReducedChristoffel reduced_christoffel(const FieldPair& f, const Vec3& p, double tolerance) {
    return reduced_christoffel(field_jet(f, p), tolerance);
}

double metric_compatibility_residual(const FieldJet& jet, const ChristoffelSymbols& gamma) {
    const Mat3 g = CirculantMatrix{jet.a, jet.b, jet.b}.dense();
    const Tensor3 dg = metric_derivatives(jet);
    double worst = 0.0;
    for (int k = 0; k < 3; ++k) {
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                double r = dg[k][i][j];
                for (int a = 0; a < 3; ++a) {
                    r -= gamma(a, k, i) * g[a][j] + gamma(a, k, j) * g[i][a];
                }
                worst = std::max(worst, std::abs(r));
            }
        }
    }
    return worst;
}

const std::vector<ErratumNote>& closed_form_errata() {
    static const std::vector<ErratumNote> notes{
        {"Gamma^1_22", "(A+B)(2B-A_1)", "(A+B)(2B_2-A_1)"},
        {"Gamma^3_12", "-BA{1}", "-B*A_1"},
        {"Gamma^3_22", "-BA{2}", "-B*A_2"},
    };
    return notes;
}

}  // namespace circgeo
