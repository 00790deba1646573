#include <cmath>

#include "doctest.h"
#include "generators.hpp"

#include "drs/exact_circle.hpp"

using namespace drs;

namespace {

BasisPtr beta_basis() {
    return std::make_shared<IrrationalBasis>(std::vector<std::pair<std::string, double>>{{"beta", 0.41421356237309503}});
}

} // namespace

TEST_CASE("angle addition") {
    auto b = beta_basis();
    ExactAngle beta = ExactAngle::generator(b, "beta");
    CHECK(is_zero(ExactAngle::from_ints(1, 3) + ExactAngle::from_ints(2, 3)));
    CHECK(is_zero(beta + (-beta)));
    ExactAngle s = (ExactAngle::from_ints(1, 4) + beta) + (ExactAngle::from_ints(3, 4) + beta);
    CHECK(s == beta.scaled(2));
    CHECK(std::fabs(s.approx() - std::fmod(2 * 0.41421356237309503, 1.0)) < 1e-12);
}

TEST_CASE("angle scaling") {
    auto b = beta_basis();
    ExactAngle beta = ExactAngle::generator(b, "beta");
    CHECK(is_zero(angle_scale(3, ExactAngle::from_ints(1, 3))));
    CHECK(is_zero(angle_scale(0, beta)));
    CHECK(angle_scale(2, ExactAngle::from_ints(1, 4) + beta) == ExactAngle::from_ints(1, 2) + beta.scaled(2));
}

TEST_CASE("zero test and approximation") {
    auto b = beta_basis();
    ExactAngle beta = ExactAngle::generator(b, "beta");
    CHECK(is_zero(ExactAngle()));
    CHECK_FALSE(is_zero(ExactAngle::from_ints(1, 2)));
    CHECK(is_zero(beta - beta));
    CHECK(approx(ExactAngle::from_ints(1, 4)) == doctest::Approx(0.25));
    CHECK(approx(ExactAngle()) == 0.0);
    CHECK(approx(beta + ExactAngle::from_ints(3, 4)) == doctest::Approx(0.16421356237309503).epsilon(1e-12));
}

TEST_CASE("rational part is reduced into [0,1)") {
    ExactAngle a = ExactAngle::from_ints(-7, 4);
    CHECK(a.rational_part() == Rational(1, 4));
    CHECK(ExactAngle::from_ints(6, 3).is_zero());
}

TEST_CASE("parse and format") {
    auto b = gen::basis2();
    CHECK(parse_angle("1/2", b) == ExactAngle::from_ints(1, 2));
    CHECK(parse_angle("-1/3", b) == ExactAngle::from_ints(2, 3));
    CHECK(parse_angle("b1", b) == ExactAngle::generator(b, "b1"));
    ExactAngle m = parse_angle("1/4 + 1/1*b1 + -2/3*b2", b);
    CHECK(m == ExactAngle::from_ints(1, 4) + ExactAngle::generator(b, "b1") + ExactAngle::generator(b, "b2", Rational(-2, 3)));
    CHECK(parse_angle(m.str(), b) == m);
    CHECK(ExactAngle::from_ints(1, 4).str() == "1/4");
    CHECK_THROWS_AS(parse_angle("1/0", b), AngleParseError);
    CHECK_THROWS_AS(parse_angle("1/2 + gamma", b), AngleParseError);
    CHECK_THROWS_AS(parse_angle("abc def", b), AngleParseError);
    CHECK_THROWS_AS(parse_angle("", b), AngleParseError);
}

TEST_CASE("basis validation") {
    using G = std::vector<std::pair<std::string, double>>;
    CHECK_THROWS_AS(IrrationalBasis(G{{"a", 0.1}, {"a", 0.2}}), Error);
    CHECK_THROWS_AS(IrrationalBasis(G{{"1x", 0.1}}), Error);
    auto b1 = beta_basis();
    auto b2 = std::make_shared<IrrationalBasis>(G{{"beta", 0.3}});
    CHECK_THROWS_AS(ExactAngle::generator(b1, "beta") + ExactAngle::generator(b2, "beta"), IncompatibleBasis);
}

TEST_CASE("group laws on random angles") {
    gen::Rng r(1);
    auto b = gen::basis2();
    for (int i = 0; i < 300; ++i) {
        ExactAngle x = gen::angle(r, b, 12, 2), y = gen::angle(r, b, 12, 2), z = gen::angle(r, b, 12, 2);
        CHECK((x + y) + z == x + (y + z));
        CHECK(x + y == y + x);
        CHECK(x + ExactAngle() == x);
        CHECK(is_zero(x + (-x)));
        double d = std::fabs((x + y).approx() - std::fmod(x.approx() + y.approx(), 1.0));
        CHECK(std::min(d, 1.0 - d) < 1e-9);
        CHECK(parse_angle(x.str(), b) == x);
    }
}

TEST_CASE("scaling is repeated addition") {
    gen::Rng r(2);
    auto b = gen::basis2();
    for (int i = 0; i < 200; ++i) {
        ExactAngle x = gen::angle(r, b, 12, 2);
        long long n = gen::uniform(r, -20, 20);
        ExactAngle sum;
        for (long long k = 0; k < std::llabs(n); ++k) sum += n > 0 ? x : -x;
        CHECK(angle_scale(n, x) == sum);
    }
}

TEST_CASE("nonzero angles stay away from zero numerically") {
    gen::Rng r(3);
    auto b = gen::basis2();
    for (int i = 0; i < 300; ++i) {
        ExactAngle x = gen::angle(r, b, 12, 2);
        if (x.is_zero()) continue;
        double v = x.approx();
        CHECK(std::min(v, 1.0 - v) > 1e-9);
    }
}
