#pragma once

#include <string>
#include <vector>

#include "circgeo/fields.hpp"
#include "circgeo/types.hpp"

namespace circgeo {

/// Christoffel symbols of the second kind, gamma[s][i][j] = Γ^s_ij
/// (upper index first). Symmetric in i, j.
struct ChristoffelSymbols {
    Tensor3 gamma{};

    double operator()(int s, int i, int j) const { return gamma[s][i][j]; }
    double max_abs() const { return circgeo::max_abs(gamma); }
};

/// Components of ∇q, stored as [i][j][s] for ∇_i q_j^s.
struct NablaQ {
    Tensor3 components{};

    double max_norm() const { return circgeo::max_abs(components); }
};

/// The three common values of the Christoffel symbols when q is parallel.
struct ReducedChristoffel {
    double g1 = 0.0;
    double g2 = 0.0;
    double g3 = 0.0;
};

/// Index triples (s, i, j), i <= j, sharing each reduced value under
/// parallelism; group k holds the six symbols equal to g(k+1).
const std::array<std::array<std::array<int, 3>, 6>, 3>& reduced_christoffel_groups();

/// ∂_k g_ij for the circulant metric: A_k on the diagonal, B_k off it.
Tensor3 metric_derivatives(const FieldJet& jet);

/// Γ^s_ij = ½ g^{as}(∂_i g_aj + ∂_j g_ai − ∂_a g_ij) contracted numerically.
ChristoffelSymbols christoffel_general(const FieldJet& jet);
ChristoffelSymbols christoffel_general(const FieldPair& f, const Vec3& p);

/// The 18 closed-form expressions written out term by term (see
/// docs/ERRATA.md for the corrected forms).
ChristoffelSymbols christoffel_closed(const FieldJet& jet);
ChristoffelSymbols christoffel_closed(const FieldPair& f, const Vec3& p);

/// grad A − (grad B)·S; zero exactly when q is parallel at p.
Vec3 parallel_defect(const FieldJet& jet);
Vec3 parallel_defect(const FieldPair& f, const Vec3& p);

/// Zero test used for the parallelism precondition:
/// ‖defect‖∞ ≤ tol·(1 + ‖grad A‖∞).
bool is_parallel(const FieldJet& jet, double tolerance = 1e-9);

/// ∇_i q_j^s = Γ^s_ia q_j^a − Γ^a_ij q_a^s (q is constant).
NablaQ nabla_q(const ChristoffelSymbols& gamma);
NablaQ nabla_q(const FieldPair& f, const Vec3& p);

/// Returns (G1, G2, G3) and checks the six-way equalities against
/// christoffel_general. Throws ParallelismViolated when the defect is nonzero
/// or when a group disagrees beyond `tolerance` (relative to max|Γ|).
ReducedChristoffel reduced_christoffel(const FieldJet& jet, double tolerance = 1e-10);
ReducedChristoffel reduced_christoffel(const FieldPair& f, const Vec3& p, double tolerance = 1e-10);

/// max |∂_k g_ij − Γ^a_ki g_aj − Γ^a_kj g_ia| over all k, i, j.
double metric_compatibility_residual(const FieldJet& jet, const ChristoffelSymbols& gamma);

/// One corrected entry of the printed closed-form list.
struct ErratumNote {
    std::string symbol;
    std::string printed;
    std::string corrected;
};

const std::vector<ErratumNote>& closed_form_errata();

}  // namespace circgeo
