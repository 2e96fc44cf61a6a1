#pragma once

#include <gmpxx.h>

#include <array>
#include <map>
#include <vector>

#include "epade/ball.hpp"
#include "epade/hermite_pade.hpp"

namespace epade {

// s(2) = e, s(m) = m (log m)^2 for m >= 3.
Ball s_of_m(unsigned long m, mpfr_prec_t prec = kDefaultPrec);

// w_n(x) = 1 - n/x - ((n-1)/log n) (log x / x).
Ball w_factor(const Ball& n, const Ball& x);

// min over 0 <= j <= m of floor(j/p) + floor((m-j)/p).
unsigned long min_floor_pair_sum(unsigned long m, unsigned long p);

// Guaranteed exponent of p in the common factor of the (m, l) system:
// min_j(floor(j/p) + floor((m-j)/p)) * v_p((l-1)!).  Requires 2p <= m+1.
unsigned long nu_lower_exponent(unsigned long m, unsigned long p, unsigned long l);

// Column j = 0 only: floor(m/p) v_p(l!) - v_p(l).  Requires p <= m.
long j0_factor_exponent(unsigned long m, unsigned long p, unsigned long l);

struct CommonFactorReport {
    unsigned long m = 0;
    unsigned long l = 0;
    std::map<unsigned long, unsigned long> nu_exact;
    std::map<unsigned long, unsigned long> nu_lower;
    mpz_class d_exact{1};
    mpz_class d_lower{1};
};

// Computes the exact content of the system over the primes p <= (m+1)/2,
// verifies it against the guaranteed exponents, divides every polynomial
// by d_exact and records it in system.content_factor.
CommonFactorReport extract_common_factor(ApproxSystem& system);

struct KappaTerm {
    unsigned long p = 0;
    unsigned long min_floor_sum = 0;
    Ball w;
};

struct KappaValue {
    unsigned long m = 0;
    Ball value;
    std::vector<KappaTerm> terms;
};

// kappa_m = (1/m) sum_{p <= (m+1)/2} min_j{...} (log p/(p-1)) w_p(s(m) e^{s(m)}).
KappaValue kappa_m(unsigned long m, mpfr_prec_t prec = kDefaultPrec);

// Simplified lower bound w_{(m+1)/2}(s e^s) (1/m) sum (floor((m+1)/p) - 1) log p/(p-1).
Ball kappa_simplified_lower(unsigned long m, mpfr_prec_t prec = kDefaultPrec);

// Enclosure of sum_{p prime} log p / (p (p-1)) = lim_m kappa_m, radius <= tolerance.
Ball kappa_limit(double tolerance, mpfr_prec_t prec = 192);

// Partial sum over p <= cutoff (monotone from below).
Ball kappa_limit_partial(unsigned long cutoff, mpfr_prec_t prec = 192);

// Certified bound on sum_{n > cutoff} log n / (n(n-1)): (log N + 1)/(N - 1).
Ball kappa_integer_tail_bound(unsigned long cutoff, mpfr_prec_t prec = 192);

struct KappaHalfReport {
    bool passed = false;
    unsigned long first_failing_m = 0;  // 0 when passed
};

// Verifies kappa_m >= 1/2 over [m_lo, m_hi] within [13, 10^4]: the
// simplified bound for m <= 79, the closed-form product bound for m >= 80.
KappaHalfReport check_kappa_half(unsigned long m_lo, unsigned long m_hi,
                                 mpfr_prec_t prec = kDefaultPrec);

// Published lower bounds for kappa_m, m = 2..14.
inline constexpr std::array<const char*, 13> kKappaReferenceTable = {
    "0",        "0.215544", "0.173121", "0.387118", "0.322600", "0.375535", "0.397256",
    "0.474840", "0.427356", "0.501455", "0.459667", "0.502575", "0.534653",
};

}  // namespace epade
