#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "epade/errors.hpp"
#include "epade/factor.hpp"
#include "epade/numtheory.hpp"

using namespace epade;

TEST_CASE("guaranteed exponent examples") {
    CHECK(min_floor_pair_sum(3, 2) == 1);
    CHECK(min_floor_pair_sum(13, 2) == 6);
    CHECK(min_floor_pair_sum(13, 3) == 3);
    CHECK(nu_lower_exponent(3, 2, 38) == 34);  // 1 * v_2(37!)
    CHECK(nu_lower_exponent(5, 3, 10) == 4);   // 1 * v_3(9!)
    CHECK(nu_lower_exponent(5, 2, 10) == 2 * vp_factorial(9, 2));
    CHECK_THROWS_AS(nu_lower_exponent(2, 2, 10), PreconditionError);  // p > (m+1)/2
    CHECK(primes_upto((2 + 1) / 2).primes.empty());  // m = 2: no admissible prime
}

TEST_CASE("j = 0 column exponent examples") {
    CHECK(j0_factor_exponent(2, 2, 4) == 1);  // 1*v2(24) - v2(4) = 3 - 2
    CHECK(j0_factor_exponent(3, 3, 3) == 0);  // 1*1 - 1
    CHECK(j0_factor_exponent(4, 2, 2) == 1);  // 2*1 - 1
    CHECK_THROWS_AS(j0_factor_exponent(3, 5, 4), PreconditionError);
}

TEST_CASE("extract_common_factor on small systems") {
    // m = 2: empty prime set, division trivially by 1
    ApproxSystem s2 = build_system(2, 4);
    auto r2 = extract_common_factor(s2);
    CHECK(r2.d_exact == 1);
    CHECK(r2.d_lower == 1);
    CHECK(r2.nu_exact.empty());
    CHECK(s2.content_factor == 1);

    // m = 5, l = 6: both 2 and 3 admissible
    ApproxSystem s5 = build_system(5, 6);
    auto r5 = extract_common_factor(s5);
    CHECK(r5.nu_exact.at(2) >= r5.nu_lower.at(2));
    CHECK(r5.nu_exact.at(3) >= r5.nu_lower.at(3));
    CHECK(r5.nu_lower.at(2) == nu_lower_exponent(5, 2, 6));
    CHECK(mpz_divisible_p(r5.d_exact.get_mpz_t(), r5.d_lower.get_mpz_t()));
    CHECK(s5.content_factor == r5.d_exact);
    // post-division content at 2 is exactly zero
    unsigned long min2 = ~0ul;
    for (unsigned long k = 0; k <= 5; ++k)
        for (unsigned long j = 0; j <= 5; ++j)
            min2 = std::min(min2, s5.at(k, j).min_valuation(2));
    CHECK(min2 == 0);
}

TEST_CASE("divisibility by the guaranteed factor across a range") {
    for (unsigned long m = 3; m <= 6; ++m)
        for (unsigned long l = 2; l <= 12; ++l) {
            ApproxSystem sys = build_system(m, l);
            auto rep = extract_common_factor(sys);
            for (auto& [p, nu] : rep.nu_exact) CHECK(nu >= rep.nu_lower.at(p));
        }
}

TEST_CASE("spot check m = 3, l = 38: content valuation at 2 is at least 34") {
    ApproxSystem sys = build_system(3, 38);
    auto rep = extract_common_factor(sys);
    CHECK(rep.nu_lower.at(2) == 34);
    CHECK(rep.nu_exact.at(2) >= 34);
}

TEST_CASE("kappa_m reproduces the reference table within 1e-6") {
    for (unsigned long m = 2; m <= 14; ++m) {
        KappaValue kv = kappa_m(m, 192);
        CHECK(kv.value.rad_double() < 1e-30);
        Ball ref = Ball::from_decimal(kKappaReferenceTable[m - 2], 192);
        Ball slack = Ball::from_decimal("1e-6", 192);
        CHECK(certainly_ge(kv.value, ref - slack));
        // and the table is itself a lower bound: value < ref + 1e-6
        CHECK(certainly_le(kv.value, ref + slack));
    }
    CHECK(kappa_m(2).value.is_exact());
    CHECK(kappa_m(2).terms.empty());
    CHECK(kappa_m(5).terms.size() == 2);  // p = 2, 3
}

TEST_CASE("simplified lower bound stays below kappa_m for all m <= 200") {
    for (unsigned long m = 3; m <= 200; ++m) {
        Ball simple = kappa_simplified_lower(m, 160);
        Ball full = kappa_m(m, 160).value;
        CHECK(!certainly_greater(simple, full));
    }
    CHECK(kappa_simplified_lower(2).is_exact());  // empty sum
}

TEST_CASE("w_factor is strictly decreasing in n") {
    for (const char* xs : {"1e3", "1e6"}) {
        Ball x = Ball::from_decimal(xs, 128);
        Ball prev = w_factor(Ball::from_ui(2, 128), x);
        for (unsigned long n = 4; n <= 100; n += 2) {
            Ball cur = w_factor(Ball::from_ui(n, 128), x);
            CHECK(certainly_less(cur, prev));
            prev = cur;
        }
    }
}

TEST_CASE("kappa_limit encloses the prime-sum constant") {
    Ball lim = kappa_limit(1e-9);
    CHECK(lim.rad_double() <= 1e-9);
    Ball lo = Ball::from_decimal("0.75536661083", 192);
    Ball hi = Ball::from_decimal("0.75536661084", 192);
    CHECK(!certainly_less(lim, lo));
    CHECK(!certainly_greater(lim, hi));

    // wide tolerance goes through the elementary integer tail bound
    Ball wide = kappa_limit(0.5);
    CHECK(!certainly_less(wide, lo));
    CHECK(!certainly_greater(wide, Ball::from_decimal("1.26", 192)));

    // partial sums are monotone from below and all lie under the enclosure
    Ball prev = Ball::from_ui(0, 192);
    for (unsigned long cutoff : {10ul, 100ul, 1000ul, 10000ul}) {
        Ball part = kappa_limit_partial(cutoff);
        CHECK(certainly_ge(part, prev));
        CHECK(certainly_le(part, lim + Ball::from_decimal("1e-8", 192)));
        prev = part;
    }
    CHECK(certainly_less(kappa_limit_partial(100), Ball::from_decimal("0.7554", 192)));
    // partial plus certified tail covers the limit
    Ball covered = kappa_limit_partial(100000) + kappa_integer_tail_bound(100000);
    CHECK(certainly_ge(covered, lim));
}

TEST_CASE("kappa_m >= 1/2 for m in [13, 200] and the closed m >= 80 bound") {
    auto rep = check_kappa_half(13, 79);
    CHECK(rep.passed);
    auto rep80 = check_kappa_half(80, 200);
    CHECK(rep80.passed);
    auto rep13 = check_kappa_half(13, 13);
    CHECK(rep13.passed);
    CHECK_THROWS_AS(check_kappa_half(12, 20), PreconditionError);

    // the m >= 80 closed-form bound evaluates to 0.5491327..., i.e. it
    // clears 0.549132 but not the rounded-up 0.549133
    Ball s = s_of_m(80, 192);
    Ball x = s * exp(s);
    Ball w = w_factor(Ball::from_q(mpq_class(81, 2), 192), x);
    Ball sum = Ball::from_ui(0, 192);
    for (unsigned long p : {2ul, 3ul, 5ul})
        sum = sum + log(Ball::from_ui(p, 192)) / Ball::from_ui(p * (p - 1), 192);
    Ball bound = Ball::from_q(mpq_class(9, 10), 192) * w * sum;
    CHECK(certainly_ge(bound, Ball::from_decimal("0.549132", 192)));
    CHECK(certainly_less(bound, Ball::from_decimal("0.549133", 192)));
}
