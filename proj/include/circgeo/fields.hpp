#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "circgeo/circulant.hpp"
#include "circgeo/polynomial.hpp"
#include "circgeo/types.hpp"

namespace circgeo {

/// A scalar field on R^3: either a polynomial (exact gradient) or an
/// arbitrary callable, optionally with its own gradient.
class ScalarField {
public:
    using ValueFn = std::function<double(const Vec3&)>;
    using GradientFn = std::function<Vec3(const Vec3&)>;

    ScalarField() : repr_(Polynomial{}) {}
    ScalarField(Polynomial poly) : repr_(std::move(poly)) {}  // NOLINT(implicit)
    ScalarField(ValueFn value, GradientFn gradient = nullptr, std::string label = "<function>");

    double value(const Vec3& p) const;
    bool has_analytic_gradient() const;
    /// Requires has_analytic_gradient().
    Vec3 analytic_gradient(const Vec3& p) const;

    const Polynomial* polynomial() const { return std::get_if<Polynomial>(&repr_); }
    std::string to_string() const;

private:
    struct Callable {
        ValueFn value;
        GradientFn gradient;
        std::string label;
    };
    std::variant<Polynomial, Callable> repr_;
};

enum class GradMode { analytic, central_difference };

struct GradientSettings {
    GradMode mode = GradMode::analytic;
    /// Relative central-difference step: h_i = step * (1 + |x_i|).
    double step = 1e-6;
};

/// The scalar fields A and B defining the metric circ(A, B, B).
struct FieldPair {
    ScalarField a;
    ScalarField b;
    GradientSettings gradient{};
    std::string name;  // builtin name or the spec text it was parsed from
};

/// Values and first derivatives of A and B at one point. Everything the
/// connection needs is a function of this jet.
struct FieldJet {
    double a = 0.0;
    double b = 0.0;
    Vec3 grad_a{};
    Vec3 grad_b{};
};

struct DomainStatus {
    double a = 0.0;
    double b = 0.0;
    double d = 0.0;        // (A - B)(A + 2B)
    double epsilon = 0.0;  // degeneracy threshold used
    bool nondegenerate = false;
    bool definite = false;  // A - B > 0 and A + 2B > 0
};

struct MetricAtPoint {
    CirculantMatrix g;
    CirculantMatrix g_inv;
    double d = 0.0;
    bool definite = false;
};

/// Parses `A: <poly>; B: <poly>` or a builtin name. Builtins:
///   paper-example  A = 4x1 + 2x2, B = x1 + 2x2 + 3x3
///   flat           A = 2, B = 1
///   euclidean      A = 1, B = 0
/// Text starting with '@' is not handled here (see the CLI).
FieldPair parse_field_spec(std::string_view text);

FieldPair builtin_field_pair(std::string_view name);

std::pair<double, double> field_eval(const FieldPair& f, const Vec3& p);

/// (grad A, grad B). Analytic mode falls back to central differences for a
/// field that has no analytic gradient.
std::pair<Vec3, Vec3> field_grad(const FieldPair& f, const Vec3& p);

/// Central-difference gradient of a scalar field with relative step.
Vec3 central_difference_gradient(const ScalarField& field, const Vec3& p, double step);

FieldJet field_jet(const FieldPair& f, const Vec3& p);

/// |D| < 1e-10 * (1 + A^2 + B^2) counts as degenerate.
double degeneracy_epsilon(double a, double b);

DomainStatus domain_status(double a, double b);
DomainStatus domain_check(const FieldPair& f, const Vec3& p);

/// Metric and inverse from field values; throws DegenerateMetric.
MetricAtPoint metric_from_values(double a, double b);
MetricAtPoint metric_at(const FieldPair& f, const Vec3& p);

/// g(x, y) for the symmetric circulant circ(a, b, b). The three-term sums are
/// evaluated in an order that depends only on the multiset of terms, so the
/// result is bit-for-bit invariant under cyclic permutation of coordinates.
double metric_product(const CirculantMatrix& g, const Vec3& x, const Vec3& y);

}  // namespace circgeo
