#pragma once

#include <gmpxx.h>

#include <map>
#include <vector>

#include "epade/polynomial.hpp"

namespace epade {

// Coefficient of w^i in Omega(w) = prod_j (beta_j - w)^{l_j}; requires beta[0] == 0.
mpz_class sigma(unsigned long i, const MultiIndex& lbar, const std::vector<long>& beta);

// prod_j (beta_j - w)^{l_j}, expanded.
IntPolynomial omega_poly(const MultiIndex& lbar, const std::vector<long>& beta);

// A_0(t) = sum_{i=l_0}^{L} t^{L-i} i! sigma_i(lbar, alpha); alpha distinct, alpha[0] == 0.
IntPolynomial build_A0(const MultiIndex& lbar, const std::vector<long>& alpha);

// A_j(t) = A_0(t, alpha - alpha_j), 1 <= j <= m; degree L - l_j.
IntPolynomial build_Aj(const MultiIndex& lbar, const std::vector<long>& alpha, unsigned long j);

// Exact series of e^{alpha_j t} A_0(t) - A_j(t) through t^order (order >= L+1).
// The first L+1 coefficients are checked to vanish.
RemainderSeries remainder_series(const MultiIndex& lbar, const std::vector<long>& alpha,
                                 unsigned long j, unsigned long order);

// Full normalized system for the lowered multi-indices at nodes alpha_j = j.
// polys[k][j] holds B_{k,j}(t) with the sign convention
//   B_{k,0} = +A_{k,0}/(l-1)!,   B_{k,j} = -A_{k,j}/(l-1)!  (j >= 1),
// so that B_{k,0}(t) e^{jt} + B_{k,j}(t) is the small remainder.
struct ApproxSystem {
    unsigned long m = 0;
    unsigned long l = 0;
    unsigned long L = 0;  // (m+1)l - 1
    std::vector<std::vector<IntPolynomial>> polys;
    mpz_class content_factor{1};

    const IntPolynomial& at(unsigned long k, unsigned long j) const { return polys[k][j]; }
};

inline constexpr unsigned long kDefaultOrderCap = 4096;

ApproxSystem build_system(unsigned long m, unsigned long l,
                          unsigned long order_cap = kDefaultOrderCap);

struct DeterminantShape {
    mpz_class c;
    unsigned long exponent = 0;
};

// Exact determinant of the (m+1)x(m+1) system; asserts it is a monomial
// c * t^{m(m+1)l} and returns c != 0 with the exponent.
DeterminantShape determinant_shape(unsigned long m, unsigned long l);

// Streaming evaluation at t = 1 with common-content extraction over the
// primes p <= (m+1)/2.  Never materialises the polynomials, so it scales
// to large (m, l).  b_values[k][j] = B_{k,j}(1) / d_exact (sign convention
// included); nu_exact[p] is the minimal p-adic valuation over every
// coefficient of every polynomial in the system.
struct SystemEvaluation {
    unsigned long m = 0;
    unsigned long l = 0;
    std::vector<std::vector<mpz_class>> b_values;
    std::map<unsigned long, unsigned long> nu_exact;
    mpz_class d_exact{1};
};

SystemEvaluation evaluate_system_at_one(unsigned long m, unsigned long l,
                                        unsigned long order_cap = kDefaultOrderCap,
                                        bool parallel = true);

}  // namespace epade
