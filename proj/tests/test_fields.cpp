#include <cmath>
#include <limits>

#include "circgeo/errors.hpp"
#include "circgeo/fields.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace circgeo;
using circgeo::testing::Rng;

TEST_CASE("parse_field_spec") {
    SUBCASE("builtin built-in example") {
        const auto f = parse_field_spec("paper-example");
        const Vec3 p{0.3, -1.2, 2.5};
        CHECK(f.a.value(p) == doctest::Approx(4 * 0.3 + 2 * -1.2));
        CHECK(f.b.value(p) == doctest::Approx(0.3 + 2 * -1.2 + 3 * 2.5));
    }
    SUBCASE("constant pairs") {
        const auto zero = parse_field_spec("A: 0; B: 0");
        CHECK_FALSE(domain_check(zero, {1, 2, 3}).nondegenerate);
        const auto c = parse_field_spec("A: 2; B: 1");
        CHECK(domain_check(c, {5, -7, 1}).d == 4.0);
    }
    SUBCASE("clause order and trailing separator are free") {
        const auto f = parse_field_spec("B: x3 ;A: 1/2*x1^2;");
        CHECK(field_eval(f, {2, 0, 7}) == std::pair<double, double>{2.0, 7.0});
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(parse_field_spec("no-such-field"), UnknownBuiltin);
        CHECK_THROWS_AS(parse_field_spec("A: 1"), ParseError);
        CHECK_THROWS_AS(parse_field_spec("A: 1; A: 2; B: 0"), ParseError);
        CHECK_THROWS_AS(parse_field_spec("C: 1; B: 0"), ParseError);
        try {
            parse_field_spec("A: 4*x1 +; B: 1");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.position() == 9);  // end of the A clause
        }
    }
}

TEST_CASE("field_eval and field_grad") {
    const auto f = builtin_field_pair("paper-example");
    CHECK(field_eval(f, {1, 0, 0}) == std::pair<double, double>{4.0, 1.0});
    CHECK(field_eval(f, {0, 0, 0}) == std::pair<double, double>{0.0, 0.0});
    CHECK(field_eval(builtin_field_pair("flat"), {9, 9, 9}) == std::pair<double, double>{2.0, 1.0});

    Rng rng(5);
    for (int n = 0; n < 20; ++n) {
        const auto [ga, gb] = field_grad(f, rng.vec(-5, 5));
        CHECK(ga == Vec3{4, 2, 0});
        CHECK(gb == Vec3{1, 2, 3});
    }
    const auto [ga0, gb0] = field_grad(builtin_field_pair("flat"), {1, 2, 3});
    CHECK(ga0 == Vec3{0, 0, 0});
    CHECK(gb0 == Vec3{0, 0, 0});

    auto fd = f;
    fd.gradient.mode = GradMode::central_difference;
    for (int n = 0; n < 20; ++n) {
        const auto [ga, gb] = field_grad(fd, rng.vec(-1, 1));
        for (int k = 0; k < 3; ++k) {
            CHECK(std::abs(ga[k] - Vec3{4, 2, 0}[k]) <= 1e-9);
            CHECK(std::abs(gb[k] - Vec3{1, 2, 3}[k]) <= 1e-9);
        }
    }
}

TEST_CASE("central differences converge at second order") {
    const ScalarField field([](const Vec3& p) { return std::sin(p[0]) * std::exp(0.5 * p[1]) + std::cos(p[2] * p[0]); });
    auto exact = [](const Vec3& p) {
        return Vec3{std::cos(p[0]) * std::exp(0.5 * p[1]) - p[2] * std::sin(p[2] * p[0]),
                    0.5 * std::sin(p[0]) * std::exp(0.5 * p[1]), -p[0] * std::sin(p[2] * p[0])};
    };
    CHECK_FALSE(field.has_analytic_gradient());
    const Vec3 p{0.7, -0.4, 1.3};
    const auto err = [&](double h) { return max_abs(central_difference_gradient(field, p, h) - exact(p)); };
    // steps large enough that truncation dominates rounding
    for (double h : {1e-2, 5e-3, 2.5e-3}) {
        const double ratio = err(h) / err(0.5 * h);
        CHECK(ratio == doctest::Approx(4.0).epsilon(0.05));
    }
}

TEST_CASE("domain_check") {
    const auto f = builtin_field_pair("paper-example");
    auto s = domain_check(f, {1, 0, 0});
    CHECK(s.d == 18.0);
    CHECK(s.nondegenerate);
    CHECK(s.definite);

    s = domain_check(f, {1, 1, 1});
    CHECK(s.d == 0.0);
    CHECK_FALSE(s.nondegenerate);
    CHECK_FALSE(s.definite);

    s = domain_check(parse_field_spec("A: 0; B: 1"), {0, 0, 0});
    CHECK(s.d == -2.0);
    CHECK(s.nondegenerate);
    CHECK_FALSE(s.definite);
}

TEST_CASE("metric_at") {
    const auto f = builtin_field_pair("paper-example");
    const auto m = metric_at(f, {1, 0, 0});
    CHECK(m.g == CirculantMatrix{4, 1, 1});
    CHECK(m.d == 18.0);
    CHECK(m.g_inv.a == doctest::Approx(5.0 / 18).epsilon(1e-15));
    CHECK(m.g_inv.b == doctest::Approx(-1.0 / 18).epsilon(1e-15));
    CHECK(m.g_inv.c == doctest::Approx(-1.0 / 18).epsilon(1e-15));

    const auto id = metric_at(builtin_field_pair("euclidean"), {3, 1, 4});
    CHECK(id.g == structural::identity);
    CHECK(id.g_inv == structural::identity);
    CHECK(id.d == 1.0);

    CHECK_THROWS_AS(metric_at(f, {1, 1, 1}), DegenerateMetric);
}

TEST_CASE("metric invariants at random points") {
    Rng rng(21);
    const auto f = builtin_field_pair("paper-example");
    int tested = 0;
    while (tested < 100) {
        const Vec3 p = rng.vec(-2, 2);
        const auto status = domain_check(f, p);
        if (!status.nondegenerate) continue;
        ++tested;
        const auto m = metric_at(f, p);

        // g_is g^js = delta_i^j, against the dense product
        const Mat3 prod = testing::dense_multiply(m.g.dense(), m.g_inv.dense());
        const double cond = std::max(1.0, m.g.max_abs_entry() * m.g_inv.max_abs_entry());
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) CHECK(std::abs(prod[i][j] - (i == j)) <= 1e-12 * cond);

        // g(qx, qy) = g(x, y), bit for bit
        for (int n = 0; n < 10; ++n) {
            const Vec3 x = rng.vec(), y = rng.vec();
            CHECK(metric_product(m.g, apply(structural::q, x), apply(structural::q, y)) ==
                  metric_product(m.g, x, y));
            const double dense = testing::dense_apply(m.g.dense(), y)[0] * x[0] +
                                 testing::dense_apply(m.g.dense(), y)[1] * x[1] +
                                 testing::dense_apply(m.g.dense(), y)[2] * x[2];
            CHECK(metric_product(m.g, x, y) == doctest::Approx(dense).epsilon(1e-12).scale(m.g.max_abs_entry()));
        }

        // definiteness flag matches the sign of the quadratic form
        bool all_positive = true;
        for (int n = 0; n < 100; ++n) {
            const Vec3 x = rng.vec();
            if (metric_product(m.g, x, x) <= 0.0) all_positive = false;
        }
        // positive along (1,1,1) iff A+2B > 0 and along (1,-1,0) iff A-B > 0
        const bool eigen_positive = metric_product(m.g, {1, 1, 1}, {1, 1, 1}) > 0 &&
                                    metric_product(m.g, {1, -1, 0}, {1, -1, 0}) > 0;
        CHECK(m.definite == eigen_positive);
        if (m.definite) CHECK(all_positive);
    }
}
