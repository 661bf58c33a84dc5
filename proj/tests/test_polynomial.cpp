#include "circgeo/errors.hpp"
#include "circgeo/polynomial.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace circgeo;

TEST_CASE("parse and evaluate") {
    const auto p = parse_polynomial("4*x1 + 2*x2");
    CHECK(p.evaluate({1, 0, 0}) == 4.0);
    CHECK(p.evaluate({0.5, 3, 9}) == 8.0);

    const auto q = parse_polynomial(" -3/4*x1^2*x3 + x2*x2 - 1.5e1 ");
    CHECK(q.evaluate({2, 3, 5}) == doctest::Approx(-0.75 * 4 * 5 + 9 - 15));
    CHECK(q.degree() == 3);

    CHECK(parse_polynomial("x1*x1").terms().size() == 1);
    CHECK(parse_polynomial("x1 - x1").terms().empty());
    CHECK(parse_polynomial("0").evaluate({1, 2, 3}) == 0.0);
    CHECK(parse_polynomial("7").degree() == 0);
}

TEST_CASE("gradient is exact for polynomials") {
    const auto p = parse_polynomial("x1^3*x2 - 2*x2*x3^2 + 5");
    const Vec3 at{1.5, -2, 0.5};
    const auto g = p.gradient(at);
    CHECK(g[0] == doctest::Approx(3 * 1.5 * 1.5 * -2));
    CHECK(g[1] == doctest::Approx(1.5 * 1.5 * 1.5 - 2 * 0.25));
    CHECK(g[2] == doctest::Approx(-4 * -2 * 0.5));
}

TEST_CASE("rendering reparses to the same polynomial") {
    testing::Rng rng(3);
    for (int n = 0; n < 50; ++n) {
        const auto p = testing::random_polynomial(rng, rng.uniform(-3, 3));
        const auto back = parse_polynomial(p.to_string());
        for (int k = 0; k < 5; ++k) {
            const Vec3 x = rng.vec(-2, 2);
            CHECK(back.evaluate(x) == doctest::Approx(p.evaluate(x)).epsilon(1e-14));
        }
    }
}

TEST_CASE("parse errors carry positions") {
    auto position_of = [](const char* text) -> long {
        try {
            parse_polynomial(text);
        } catch (const ParseError& e) {
            return static_cast<long>(e.position());
        }
        return -1;
    };
    CHECK(position_of("") == 0);
    CHECK(position_of("4*x1 +") == 6);
    CHECK(position_of("4*x4") == 2);
    CHECK(position_of("2x1") == 1);
    CHECK(position_of("1/0") == 2);
    CHECK(position_of("x1^") == 3);
    CHECK(position_of("3 * y") == 4);
}
