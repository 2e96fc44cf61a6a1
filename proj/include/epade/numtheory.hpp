#pragma once

#include <gmpxx.h>

#include <vector>

#include "epade/ball.hpp"

namespace epade {

struct PrimeList {
    unsigned long limit = 0;
    std::vector<unsigned long> primes;  // strictly increasing, complete up to limit
};

// Sieve of Eratosthenes with odd-only storage.
PrimeList primes_upto(unsigned long limit);

// p-adic valuation of n >= 1.
unsigned long vp(unsigned long n, unsigned long p);
unsigned long vp(const mpz_class& n, unsigned long p);

// Legendre's formula: v_p(n!) = sum_i floor(n / p^i).
unsigned long vp_factorial(unsigned long n, unsigned long p);

struct ValuationBounds {
    Ball lower;        // n/(p-1) - log n / log p - 1, certified enclosure
    mpq_class upper;   // (n-1)/(p-1), exact
};

// Two-sided bound sandwiching v_p(n!), n >= 2.
ValuationBounds vp_factorial_bounds(unsigned long n, unsigned long p,
                                    mpfr_prec_t prec = kDefaultPrec);

}  // namespace epade
