#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "epade/ball.hpp"
#include "epade/errors.hpp"

using namespace epade;

namespace {

mpq_class q(const char* s) { return mpq_class(s); }

}  // namespace

TEST_CASE("exact constructors carry zero radius") {
    CHECK(Ball::from_si(-7).is_exact());
    CHECK(Ball::from_ui(42).is_exact());
    CHECK(Ball::from_z(mpz_class("123456789123456789")).is_exact());
    Ball tiny = Ball::from_q(mpq_class(1, 3), 64);
    CHECK(!tiny.is_exact());
    CHECK(tiny.contains(mpq_class(1, 3)));
}

TEST_CASE("arithmetic enclosures contain the exact rational results") {
    Ball a = Ball::from_q(q("1/3"), 128);
    Ball b = Ball::from_q(q("2/7"), 128);
    CHECK((a + b).contains(q("13/21")));
    CHECK((a - b).contains(q("1/21")));
    CHECK((a * b).contains(q("2/21")));
    CHECK((a / b).contains(q("7/6")));
    CHECK((-a).contains(q("-1/3")));
    CHECK(abs(-a).contains(q("1/3")));
    CHECK(pow_ui(a, 5).contains(q("1/243")));
}

TEST_CASE("e and log 2 match their known digits") {
    // truncations of the decimal expansions: value lies in [t, t + 10^-40]
    mpq_class te("27182818284590452353602874713526624977572/"
                 "10000000000000000000000000000000000000000");
    Ball e = e_ball(192);
    CHECK(certainly_less(Ball::from_q(te, 192), e));
    CHECK(certainly_less(e, Ball::from_q(te + q("1/10000000000000000000000000000000000000000"), 192)));
    mpq_class tl("6931471805599453094172321214581765680755/"
                 "10000000000000000000000000000000000000000");
    Ball l2 = log2_ball(192);
    CHECK(certainly_less(Ball::from_q(tl, 192), l2));
    CHECK(certainly_less(l2, Ball::from_q(tl + q("1/10000000000000000000000000000000000000000"), 192)));
    // round trip: log(exp(x)) contains x
    Ball x = Ball::from_q(q("17/5"), 128);
    CHECK(log(exp(x)).contains(q("17/5")));
}

TEST_CASE("certified comparisons are one-sided") {
    Ball a = Ball::from_q(q("1/3"), 128);
    Ball b = Ball::from_q(q("1/2"), 128);
    CHECK(certainly_less(a, b));
    CHECK(!certainly_less(b, a));
    CHECK(certainly_le(Ball::from_si(3), Ball::from_si(3)));  // exact balls
    CHECK(!certainly_le(a, a));  // inexact: upper end above lower end
    CHECK(certainly_ge(b, a));
    CHECK(Ball::from_si(3).is_positive());
    CHECK(Ball::from_si(-3).is_negative());
    CHECK((Ball::from_si(3) - Ball::from_si(3)).contains_zero());
}

TEST_CASE("division by a ball containing zero is rejected") {
    Ball z = Ball::from_si(1) - Ball::from_si(1);
    CHECK_THROWS_AS(Ball::from_si(1) / z, PrecisionError);
    CHECK_THROWS_AS(log(z), PrecisionError);
}

TEST_CASE("floor and ceil of enclosures") {
    Ball x = Ball::from_q(q("157/10"), 128);
    CHECK(floor_lower(x) == 15);
    CHECK(ceil_upper(x) == 16);
    CHECK(ceil_upper(exp(e_ball(128))) == 16);  // ceil(e^e) = 16
}

TEST_CASE("decimal parsing and printing") {
    Ball x = Ball::from_decimal("4.93", 128);
    CHECK(x.contains(q("493/100")));
    Ball om = Ball::from_si(2) + x / Ball::from_si(4);
    CHECK(om.contains(q("32325/10000")));
    std::string s = om.str();
    CHECK(s.substr(0, 6) == "3.2325");
    CHECK(Ball::from_endpoints(Ball::from_si(3), Ball::from_si(5)).contains(q("4")));
    CHECK_THROWS_AS(Ball::from_decimal("not-a-number", 64), PreconditionError);
}

TEST_CASE("widening never loses the true value through long chains") {
    // sum of 1/k for k=1..100, compared against the exact rational
    Ball acc = Ball::from_ui(0, 256);
    mpq_class exact(0);
    for (unsigned long k = 1; k <= 100; ++k) {
        acc = acc + Ball::from_ui(1, 256) / Ball::from_ui(k, 256);
        exact += mpq_class(1, k);
    }
    CHECK(acc.contains(exact));
}
