#include "circgeo/fields.hpp"

#include <algorithm>
#include <cmath>

#include "circgeo/errors.hpp"

namespace circgeo {

ScalarField::ScalarField(ValueFn value, GradientFn gradient, std::string label)
    : repr_(Callable{std::move(value), std::move(gradient), std::move(label)}) {}

double ScalarField::value(const Vec3& p) const {
    if (const auto* poly = std::get_if<Polynomial>(&repr_)) return poly->evaluate(p);
    return std::get<Callable>(repr_).value(p);
}

bool ScalarField::has_analytic_gradient() const {
    if (std::holds_alternative<Polynomial>(repr_)) return true;
    return static_cast<bool>(std::get<Callable>(repr_).gradient);
}

Vec3 ScalarField::analytic_gradient(const Vec3& p) const {
    if (const auto* poly = std::get_if<Polynomial>(&repr_)) return poly->gradient(p);
    return std::get<Callable>(repr_).gradient(p);
}

std::string ScalarField::to_string() const {
    if (const auto* poly = std::get_if<Polynomial>(&repr_)) return poly->to_string();
    return std::get<Callable>(repr_).label;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

}  // namespace

FieldPair builtin_field_pair(std::string_view name) {
    FieldPair f;
    if (name == "paper-example") {
        f.a = Polynomial::linear({4.0, 2.0, 0.0});
        f.b = Polynomial::linear({1.0, 2.0, 3.0});
    } else if (name == "flat") {
        f.a = Polynomial::constant(2.0);
        f.b = Polynomial::constant(1.0);
    } else if (name == "euclidean") {
        f.a = Polynomial::constant(1.0);
        f.b = Polynomial::constant(0.0);
    } else {
        throw UnknownBuiltin("unknown builtin field pair '" + std::string(name) + "'");
    }
    f.name = std::string(name);
    return f;
}

FieldPair parse_field_spec(std::string_view text) {
    if (text.find(':') == std::string_view::npos) {
        const auto name = trim(text);
        if (name.empty()) throw ParseError("empty field specification", 0);
        return builtin_field_pair(name);
    }

    std::optional<Polynomial> a;
    std::optional<Polynomial> b;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find(';', start);
        if (end == std::string_view::npos) end = text.size();
        const auto clause = text.substr(start, end - start);
        if (!trim(clause).empty()) {
            const auto colon = clause.find(':');
            if (colon == std::string_view::npos) {
                throw ParseError("expected 'A:' or 'B:'", start);
            }
            const auto label = trim(clause.substr(0, colon));
            const std::size_t body_at = start + colon + 1;
            const auto body = text.substr(body_at, end - body_at);
            std::optional<Polynomial>* slot = nullptr;
            if (label == "A") slot = &a;
            else if (label == "B") slot = &b;
            else throw ParseError("unknown field label '" + std::string(label) + "'", start);
            if (slot->has_value()) {
                throw ParseError("field '" + std::string(label) + "' given twice", start);
            }
            *slot = parse_polynomial(body, body_at);
        }
        start = end + 1;
    }
    if (!a) throw ParseError("missing field 'A'", text.size());
    if (!b) throw ParseError("missing field 'B'", text.size());

    FieldPair f;
    f.a = std::move(*a);
    f.b = std::move(*b);
    f.name = std::string(trim(text));
    return f;
}

std::pair<double, double> field_eval(const FieldPair& f, const Vec3& p) {
    return {f.a.value(p), f.b.value(p)};
}

Vec3 central_difference_gradient(const ScalarField& field, const Vec3& p, double step) {
    Vec3 grad{};
    for (int k = 0; k < 3; ++k) {
        const double h = step * (1.0 + std::abs(p[k]));
        Vec3 plus = p;
        Vec3 minus = p;
        plus[k] += h;
        minus[k] -= h;
        grad[k] = (field.value(plus) - field.value(minus)) / (plus[k] - minus[k]);
    }
    return grad;
}

namespace {

Vec3 gradient_of(const ScalarField& field, const GradientSettings& settings, const Vec3& p) {
    if (settings.mode == GradMode::analytic && field.has_analytic_gradient()) {
        return field.analytic_gradient(p);
    }
    return central_difference_gradient(field, p, settings.step);
}

}  // namespace

std::pair<Vec3, Vec3> field_grad(const FieldPair& f, const Vec3& p) {
    return {gradient_of(f.a, f.gradient, p), gradient_of(f.b, f.gradient, p)};
}

FieldJet field_jet(const FieldPair& f, const Vec3& p) {
    const auto [a, b] = field_eval(f, p);
    const auto [ga, gb] = field_grad(f, p);
    return {a, b, ga, gb};
}

double degeneracy_epsilon(double a, double b) {
    return 1e-10 * (1.0 + a * a + b * b);
}

DomainStatus domain_status(double a, double b) {
    DomainStatus s;
    s.a = a;
    s.b = b;
    s.d = (a - b) * (a + 2.0 * b);
    s.epsilon = degeneracy_epsilon(a, b);
    s.nondegenerate = std::abs(s.d) >= s.epsilon;
    s.definite = (a - b) > 0.0 && (a + 2.0 * b) > 0.0 && s.nondegenerate;
    return s;
}

DomainStatus domain_check(const FieldPair& f, const Vec3& p) {
    const auto [a, b] = field_eval(f, p);
    return domain_status(a, b);
}

MetricAtPoint metric_from_values(double a, double b) {
    const auto status = domain_status(a, b);
    if (!status.nondegenerate) {
        throw DegenerateMetric("degenerate metric: D = " + std::to_string(status.d));
    }
    MetricAtPoint m;
    m.g = {a, b, b};
    m.g_inv = {(a + b) / status.d, -b / status.d, -b / status.d};
    m.d = status.d;
    m.definite = status.definite;
    return m;
}

MetricAtPoint metric_at(const FieldPair& f, const Vec3& p) {
    const auto [a, b] = field_eval(f, p);
    return metric_from_values(a, b);
}

namespace {

// Sum of three terms in ascending |value| order (ties broken by value), so
// any permutation of the same terms gives the identical rounded result.
double ordered_sum(double t0, double t1, double t2) {
    std::array<double, 3> t{t0, t1, t2};
    std::sort(t.begin(), t.end(), [](double x, double y) {
        const double ax = std::abs(x);
        const double ay = std::abs(y);
        return ax < ay || (ax == ay && x < y);
    });
    return (t[0] + t[1]) + t[2];
}

}  // namespace

double metric_product(const CirculantMatrix& g, const Vec3& x, const Vec3& y) {
    // x^T circ(a,b,b) y = (a - b) <x, y> + b (sum x)(sum y)
    const double inner = ordered_sum(x[0] * y[0], x[1] * y[1], x[2] * y[2]);
    const double sx = ordered_sum(x[0], x[1], x[2]);
    const double sy = ordered_sum(y[0], y[1], y[2]);
    return (g.a - g.b) * inner + g.b * (sx * sy);
}

}  // namespace circgeo
