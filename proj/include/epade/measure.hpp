#pragma once

#include <vector>

#include "epade/ball.hpp"

namespace epade {

// Parameters (a, b, c, d, s, kappa) of a linear-form system together with
// the derived quantities B = b + ad/c, C = a, D = a + b + a e^{-s},
// F = 1/(2 e^D), v = c - d/s, u = 1 + log(s)/s and n1 = ceil(e^s).
struct MeasureParams {
    unsigned long m = 0;
    Ball a, b, c, d, s, kappa;
    Ball B, C, D, F, v, u, n1;
};

// Inverse of y = z log z (z >= 1/e) for y > e, via the alternating nested
// iterates for a bracket and bisection refinement inside it.
Ball z_inverse(const Ball& y, double tolerance);
// Same, refined until the bracket width is below 2^{-rel_bits} * z.
Ball z_inverse_bits(const Ball& y, long rel_bits);

// Closed-form bound (1 + log(s)/s) y / log y, valid for y >= s e^s, s >= e.
Ball z_upper_bound(const Ball& y, const Ball& s);

// Parameter assignment for the e-system (a = m, c = 1).
MeasureParams params_for_e(unsigned long m, mpfr_prec_t prec = kDefaultPrec);

// Parameter assignment for the sparse system with m1+1 terms of degree m2.
MeasureParams params_for_sparse(unsigned long m1, unsigned long m2,
                                mpfr_prec_t prec = kDefaultPrec);

struct BoundParts {
    Ball epsilon;    // exponent excess over a/c
    Ball prefactor;  // multiplicative constant
    Ball log_bound;  // log of the certified lower bound on |Lambda|
};

// eps(H) log 2H = B z(log(2H)/v) + C log z(log(2H)/v); lower bound
// F (2H)^{-a/c-eps}.  Requires log(2H) >= v n1 log n1, certified.
BoundParts generic_lower_bound(const MeasureParams& params, const Ball& logH);

// Weakened closed form: prefactor (v^C / (2 e^D u^C)) (loglog 2H / log 2H)^C
// and exponent excess B u / (v loglog 2H).  Requires c <= 1 + d/s.
BoundParts corollary_bound(const MeasureParams& params, const Ball& logH);

// Piecewise upper bound for omega(m, H); requires log H >= s(m) e^{s(m)}.
Ball omega_upper(unsigned long m, const Ball& loglogH, mpfr_prec_t prec = kDefaultPrec);

struct FmRow {
    unsigned long m = 0;
    Ball f;
    Ball product;  // (1 - kappa/log m)(1 - 2 kappa/(log m)^2)
};

// Rows m = 5..14; asserts f(m) <= product for every row.
std::vector<FmRow> fm_table(mpfr_prec_t prec = kDefaultPrec);

// rho = 12.88 for 4 <= m2 <= 10 and rho = 2 for m2 >= 11.
Ball rho_for(unsigned long m2, mpfr_prec_t prec = kDefaultPrec);

// Exponent m1 + rho (m1^2+3m1+2) log m2 / loglog H for sparse polynomials;
// requires m2 >= max(4, m1+1) and log H >= m2(log m2)^2 e^{m2(log m2)^2}.
Ball sparse_bound(unsigned long m1, unsigned long m2, const Ball& loglogH,
                  mpfr_prec_t prec = kDefaultPrec);

// Measure exponent for |lambda_0 + lambda_1 e^d + ... + lambda_m e^{md}|:
// m + rho (m^2+3m+2) log(dm) / loglog H.
Ball power_measure(unsigned long dexp, unsigned long m, const Ball& loglogH,
                   mpfr_prec_t prec = kDefaultPrec);

}  // namespace epade
