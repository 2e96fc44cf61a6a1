#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "epade/errors.hpp"
#include "epade/numtheory.hpp"

using namespace epade;

namespace {

bool is_prime_trial(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// valuation of n! computed from the explicit big integer
unsigned long factorial_valuation(unsigned long n, unsigned long p) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    if (f == 1) return 0;
    return vp(f, p);
}

}  // namespace

TEST_CASE("primes_upto basic values") {
    CHECK(primes_upto(0).primes.empty());
    CHECK(primes_upto(1).primes.empty());
    CHECK(primes_upto(2).primes == std::vector<unsigned long>{2});
    CHECK(primes_upto(10).primes == std::vector<unsigned long>{2, 3, 5, 7});
    CHECK(primes_upto(541).primes.size() == 100);
}

TEST_CASE("primes_upto agrees with trial division and is complete") {
    auto pl = primes_upto(2000);
    for (unsigned long p : pl.primes) CHECK(is_prime_trial(p));
    size_t idx = 0;
    for (unsigned long n = 2; n <= 2000; ++n) {
        if (!is_prime_trial(n)) continue;
        REQUIRE(idx < pl.primes.size());
        CHECK(pl.primes[idx] == n);
        ++idx;
    }
    CHECK(idx == pl.primes.size());
}

TEST_CASE("vp examples") {
    CHECK(vp(7ul, 2) == 0);
    CHECK(vp(8ul, 2) == 3);
    CHECK(vp(360ul, 3) == 2);
    CHECK(vp(mpz_class("-360"), 3) == 2);
    CHECK_THROWS_AS(vp(0ul, 2), PreconditionError);
}

TEST_CASE("vp_factorial examples and Legendre identity") {
    CHECK(vp_factorial(0, 2) == 0);
    CHECK(vp_factorial(10, 2) == 8);
    CHECK(vp_factorial(37, 2) == 34);  // 18 + 9 + 4 + 2 + 1
    // v_p(l!) = v_p(l) + v_p((l-1)!)
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul})
        for (unsigned long l = 1; l <= 200; ++l)
            CHECK(vp_factorial(l, p) == vp(l, p) + vp_factorial(l - 1, p));
}

TEST_CASE("vp_factorial matches the valuation of the explicit big integer n!") {
    auto ps = primes_upto(50).primes;
    mpz_class fact(1);
    for (unsigned long n = 0; n <= 2000; ++n) {
        if (n > 0) fact *= n;
        for (unsigned long p : ps) {
            unsigned long direct = fact == 1 ? 0 : vp(fact, p);
            CHECK(vp_factorial(n, p) == direct);
        }
    }
}

TEST_CASE("bounds sandwich the valuation across the full range") {
    auto ps = primes_upto(50).primes;
    for (unsigned long n = 2; n <= 2000; ++n)
        for (unsigned long p : ps) {
            auto b = vp_factorial_bounds(n, p);
            Ball t = Ball::from_ui(vp_factorial(n, p));
            CHECK(certainly_le(b.lower, t));
            CHECK(certainly_le(t, Ball::from_q(b.upper)));
            CHECK(certainly_le(b.lower, Ball::from_q(b.upper)));
        }
}

TEST_CASE("valuation bounds sandwich the true valuation") {
    auto vb = vp_factorial_bounds(10, 2);
    CHECK(certainly_le(vb.lower, Ball::from_ui(vp_factorial(10, 2))));
    CHECK(vb.upper == 9);
    CHECK(vb.lower.contains_zero() == false);
    // lower ~ 10 - log(10)/log(2) - 1 = 5.678...
    CHECK(certainly_less(Ball::from_decimal("5.67"), vb.lower));
    CHECK(certainly_less(vb.lower, Ball::from_decimal("5.68")));

    auto vb2 = vp_factorial_bounds(2, 2);
    CHECK(vb2.lower.contains(mpq_class(0)));
    CHECK(vb2.upper == 1);

    auto vb37 = vp_factorial_bounds(37, 2);
    Ball v = Ball::from_ui(vp_factorial(37, 2));
    CHECK(certainly_le(vb37.lower, v));
    CHECK(certainly_le(v, Ball::from_q(vb37.upper)));

    for (unsigned long p : {2ul, 3ul, 5ul, 47ul})
        for (unsigned long n = 2; n <= 800; n += 13) {
            auto b = vp_factorial_bounds(n, p);
            Ball t = Ball::from_ui(vp_factorial(n, p));
            CHECK(certainly_le(b.lower, t));
            CHECK(certainly_le(t, Ball::from_q(b.upper)));
        }
}
