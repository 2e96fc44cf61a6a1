#include "epade/numtheory.hpp"

#include "epade/errors.hpp"

namespace epade {

PrimeList primes_upto(unsigned long limit) {
    PrimeList out;
    out.limit = limit;
    if (limit < 2) return out;
    out.primes.push_back(2);
    if (limit < 3) return out;
    // odd-only sieve: bit i represents 2i + 3
    const unsigned long n_odd = (limit - 1) / 2;  // count of odd numbers in [3, limit]
    std::vector<bool> composite(n_odd, false);
    for (unsigned long i = 0; i < n_odd; ++i) {
        if (composite[i]) continue;
        const unsigned long p = 2 * i + 3;
        if (p > limit / p) break;
        for (unsigned long j = (p * p - 3) / 2; j < n_odd; j += p) composite[j] = true;
    }
    for (unsigned long i = 0; i < n_odd; ++i)
        if (!composite[i]) out.primes.push_back(2 * i + 3);
    return out;
}

unsigned long vp(unsigned long n, unsigned long p) {
    if (n == 0) throw PreconditionError("vp: n must be >= 1");
    if (p < 2) throw PreconditionError("vp: p must be prime");
    unsigned long k = 0;
    while (n % p == 0) {
        n /= p;
        ++k;
    }
    return k;
}

unsigned long vp(const mpz_class& n, unsigned long p) {
    if (n == 0) throw PreconditionError("vp: n must be nonzero");
    if (p < 2) throw PreconditionError("vp: p must be prime");
    mpz_class rest, pp(static_cast<unsigned long>(p));
    return mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t());
}

unsigned long vp_factorial(unsigned long n, unsigned long p) {
    if (p < 2) throw PreconditionError("vp_factorial: p must be prime");
    unsigned long total = 0;
    while (n >= p) {
        n /= p;
        total += n;
    }
    return total;
}

ValuationBounds vp_factorial_bounds(unsigned long n, unsigned long p, mpfr_prec_t prec) {
    if (n < 2) throw PreconditionError("vp_factorial_bounds: n must be >= 2");
    if (p < 2) throw PreconditionError("vp_factorial_bounds: p must be prime");
    ValuationBounds vb;
    Ball bn = Ball::from_ui(n, prec);
    Ball bp = Ball::from_ui(p, prec);
    vb.lower = bn / Ball::from_ui(p - 1, prec) - log(bn) / log(bp) - Ball::from_ui(1, prec);
    vb.upper = mpq_class(n - 1, p - 1);
    vb.upper.canonicalize();
    return vb;
}

}  // namespace epade
