#include "epade/factor.hpp"

#include <algorithm>

#include "epade/errors.hpp"
#include "epade/numtheory.hpp"

namespace epade {

Ball s_of_m(unsigned long m, mpfr_prec_t prec) {
    if (m < 2) throw PreconditionError("s_of_m: m must be >= 2");
    if (m == 2) return e_ball(prec);
    Ball lm = log(Ball::from_ui(m, prec));
    return Ball::from_ui(m, prec) * lm * lm;
}

Ball w_factor(const Ball& n, const Ball& x) {
    Ball one = Ball::from_ui(1, n.precision());
    return one - n / x - ((n - one) / log(n)) * (log(x) / x);
}

unsigned long min_floor_pair_sum(unsigned long m, unsigned long p) {
    unsigned long best = 0;
    bool first = true;
    for (unsigned long j = 0; j <= m; ++j) {
        unsigned long v = j / p + (m - j) / p;
        if (first || v < best) best = v;
        first = false;
    }
    return best;
}

unsigned long nu_lower_exponent(unsigned long m, unsigned long p, unsigned long l) {
    if (2 * p > m + 1) throw PreconditionError("nu_lower_exponent: requires p <= (m+1)/2");
    if (l < 2) throw PreconditionError("nu_lower_exponent: l must be >= 2");
    return min_floor_pair_sum(m, p) * vp_factorial(l - 1, p);
}

long j0_factor_exponent(unsigned long m, unsigned long p, unsigned long l) {
    if (p > m) throw PreconditionError("j0_factor_exponent: requires p <= m");
    if (l < 2) throw PreconditionError("j0_factor_exponent: l must be >= 2");
    return static_cast<long>((m / p) * vp_factorial(l, p)) - static_cast<long>(vp(l, p));
}

CommonFactorReport extract_common_factor(ApproxSystem& system) {
    if (system.l < 2) throw PreconditionError("extract_common_factor: system must have l >= 2");
    CommonFactorReport rep;
    rep.m = system.m;
    rep.l = system.l;
    for (unsigned long p : primes_upto((system.m + 1) / 2).primes) {
        unsigned long nu = 0;
        bool first = true;
        for (unsigned long k = 0; k <= system.m; ++k)
            for (unsigned long j = 0; j <= system.m; ++j) {
                unsigned long v = system.at(k, j).min_valuation(p);
                if (first || v < nu) nu = v;
                first = false;
            }
        rep.nu_exact[p] = nu;
        rep.nu_lower[p] = nu_lower_exponent(system.m, p, system.l);
        if (nu < rep.nu_lower[p])
            throw GuaranteeError("extract_common_factor: content below guaranteed exponent");
        mpz_class pk;
        mpz_ui_pow_ui(pk.get_mpz_t(), p, nu);
        rep.d_exact *= pk;
        mpz_ui_pow_ui(pk.get_mpz_t(), p, rep.nu_lower[p]);
        rep.d_lower *= pk;
    }
    if (rep.d_exact != 1)
        for (auto& row : system.polys)
            for (auto& poly : row) poly.divexact(rep.d_exact);
    system.content_factor *= rep.d_exact;
    return rep;
}

KappaValue kappa_m(unsigned long m, mpfr_prec_t prec) {
    if (m < 2) throw PreconditionError("kappa_m: m must be >= 2");
    KappaValue kv;
    kv.m = m;
    kv.value = Ball::from_ui(0, prec);
    Ball s = s_of_m(m, prec);
    Ball x = s * exp(s);
    for (unsigned long p : primes_upto((m + 1) / 2).primes) {
        KappaTerm term;
        term.p = p;
        term.min_floor_sum = min_floor_pair_sum(m, p);
        term.w = w_factor(Ball::from_ui(p, prec), x);
        Ball contrib = Ball::from_ui(term.min_floor_sum, prec) *
                       (log(Ball::from_ui(p, prec)) / Ball::from_ui(p - 1, prec)) * term.w;
        kv.value = kv.value + contrib;
        kv.terms.push_back(std::move(term));
    }
    kv.value = kv.value / Ball::from_ui(m, prec);
    return kv;
}

Ball kappa_simplified_lower(unsigned long m, mpfr_prec_t prec) {
    if (m < 2) throw PreconditionError("kappa_simplified_lower: m must be >= 2");
    auto primes = primes_upto((m + 1) / 2).primes;
    if (primes.empty()) return Ball::from_ui(0, prec);
    Ball acc = Ball::from_ui(0, prec);
    for (unsigned long p : primes) {
        unsigned long c = (m + 1) / p;
        if (c == 0) continue;
        c -= 1;
        acc = acc + Ball::from_ui(c, prec) * log(Ball::from_ui(p, prec)) /
                        Ball::from_ui(p - 1, prec);
    }
    Ball s = s_of_m(m, prec);
    Ball x = s * exp(s);
    Ball half_m1 = Ball::from_q(mpq_class(m + 1, 2), prec);
    return w_factor(half_m1, x) * acc / Ball::from_ui(m, prec);
}

namespace {

// Bernoulli numbers B_2 .. B_16.
const mpq_class kBernoulli[8] = {
    mpq_class(1, 6),   mpq_class(-1, 30),     mpq_class(1, 42), mpq_class(-1, 30),
    mpq_class(5, 66),  mpq_class(-691, 2730), mpq_class(7, 6),  mpq_class(-3617, 510),
};

Ball symmetric_error(const Ball& magnitude) {
    return Ball::from_endpoints(-magnitude, magnitude);
}

// Rising factorial (s)_k as an exact integer.
mpz_class rising(unsigned long s, unsigned long k) {
    mpz_class r(1);
    for (unsigned long i = 0; i < k; ++i) r *= s + i;
    return r;
}

// zeta(s) for integer s >= 2 by Euler-Maclaurin at N terms, 8 corrections.
Ball zeta_em(unsigned long s, mpfr_prec_t prec) {
    const unsigned long N = 32;
    const unsigned long J = 8;
    Ball sum = Ball::from_ui(0, prec);
    for (unsigned long n = 1; n < N; ++n) {
        mpz_class np;
        mpz_ui_pow_ui(np.get_mpz_t(), n, s);
        sum = sum + Ball::from_ui(1, prec) / Ball::from_z(np, prec);
    }
    mpz_class Ns, fact;
    mpz_ui_pow_ui(Ns.get_mpz_t(), N, s);
    Ball bNs = Ball::from_z(Ns, prec);
    // integral N^{1-s}/(s-1) and the half-term N^{-s}/2
    sum = sum + Ball::from_ui(N, prec) / (bNs * Ball::from_ui(s - 1, prec));
    sum = sum + Ball::from_q(mpq_class(1, 2), prec) / bNs;
    // correction terms (B_2j/(2j)!) (s)_{2j-1} N^{1-s-2j}
    fact = 2;  // (2j)! running
    for (unsigned long j = 1; j <= J; ++j) {
        if (j > 1)
            for (unsigned long t = 2 * j - 1; t <= 2 * j; ++t) fact *= t;
        mpz_class Npow;
        mpz_ui_pow_ui(Npow.get_mpz_t(), N, s + 2 * j - 1);
        mpq_class coeff = kBernoulli[j - 1] / mpq_class(fact);
        coeff *= mpq_class(rising(s, 2 * j - 1), Npow);
        coeff.canonicalize();
        sum = sum + Ball::from_q(coeff, prec);
    }
    // |R_J| <= 4 (2pi)^{-2J} (s)_{2J+1} N^{-s-2J-1} ... bounded via the first
    // omitted-scale derivative; use the standard integral form.
    mpz_class Npow;
    mpz_ui_pow_ui(Npow.get_mpz_t(), N, s + 2 * J - 1);
    Ball rb = Ball::from_q(mpq_class(rising(s, 2 * J - 1), Npow), prec);
    Ball twopi = Ball::from_decimal("6.283185307179586", prec);
    rb = rb * Ball::from_ui(4, prec) / pow_ui(twopi, 2 * J);
    return sum + symmetric_error(abs(rb));
}

// -zeta'(s) = sum_{n>=2} log n / n^s, same Euler-Maclaurin scheme.
Ball neg_zeta_prime_em(unsigned long s, mpfr_prec_t prec) {
    const unsigned long N = 32;
    const unsigned long J = 8;
    Ball sum = Ball::from_ui(0, prec);
    for (unsigned long n = 2; n < N; ++n) {
        mpz_class np;
        mpz_ui_pow_ui(np.get_mpz_t(), n, s);
        sum = sum + log(Ball::from_ui(n, prec)) / Ball::from_z(np, prec);
    }
    Ball logN = log(Ball::from_ui(N, prec));
    mpz_class Ns;
    mpz_ui_pow_ui(Ns.get_mpz_t(), N, s);
    Ball bNs = Ball::from_z(Ns, prec);
    Ball sm1 = Ball::from_ui(s - 1, prec);
    // integral: N^{1-s} (log N/(s-1) + 1/(s-1)^2)
    sum = sum + (Ball::from_ui(N, prec) / bNs) * (logN / sm1 + 1 / (sm1 * sm1));
    // half-term
    sum = sum + logN / (Ball::from_ui(2, prec) * bNs);
    // corrections: (B_2j/(2j)!) (s)_{2j-1} N^{1-s-2j} (log N - h_{2j-1})
    mpz_class fact(2);
    for (unsigned long j = 1; j <= J; ++j) {
        if (j > 1)
            for (unsigned long t = 2 * j - 1; t <= 2 * j; ++t) fact *= t;
        mpz_class Npow;
        mpz_ui_pow_ui(Npow.get_mpz_t(), N, s + 2 * j - 1);
        mpq_class coeff = kBernoulli[j - 1] / mpq_class(fact);
        coeff *= mpq_class(rising(s, 2 * j - 1), Npow);
        coeff.canonicalize();
        mpq_class h(0);
        for (unsigned long i = 0; i < 2 * j - 1; ++i) h += mpq_class(1, s + i);
        sum = sum + Ball::from_q(coeff, prec) * (logN - Ball::from_q(h, prec));
    }
    mpz_class Npow;
    mpz_ui_pow_ui(Npow.get_mpz_t(), N, s + 2 * J - 1);
    Ball rb = Ball::from_q(mpq_class(rising(s, 2 * J - 1), Npow), prec) * logN;
    Ball twopi = Ball::from_decimal("6.283185307179586", prec);
    rb = rb * Ball::from_ui(4, prec) / pow_ui(twopi, 2 * J);
    return sum + symmetric_error(abs(rb));
}

int moebius(unsigned long n) {
    int mu = 1;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

}  // namespace

Ball kappa_limit_partial(unsigned long cutoff, mpfr_prec_t prec) {
    Ball acc = Ball::from_ui(0, prec);
    for (unsigned long p : primes_upto(cutoff).primes)
        acc = acc + log(Ball::from_ui(p, prec)) /
                        Ball::from_z(mpz_class(p) * mpz_class(p - 1), prec);
    return acc;
}

Ball kappa_integer_tail_bound(unsigned long cutoff, mpfr_prec_t prec) {
    if (cutoff < 2) throw PreconditionError("kappa_integer_tail_bound: cutoff must be >= 2");
    Ball N = Ball::from_ui(cutoff, prec);
    return (log(N) + 1) / (N - 1);
}

Ball kappa_limit(double tolerance, mpfr_prec_t prec) {
    if (!(tolerance > 0)) throw PreconditionError("kappa_limit: tolerance must be positive");
    if (tolerance >= 1e-4) {
        // direct summation with the elementary all-integer tail bound
        unsigned long N = 16;
        while (N < (1ul << 24)) {
            Ball tail = kappa_integer_tail_bound(N, prec);
            if (tail.rad_double() + tail.mid_double() < tolerance / 2) break;
            N *= 2;
        }
        Ball partial = kappa_limit_partial(N, prec);
        Ball tail = kappa_integer_tail_bound(N, prec);
        return partial + Ball::from_endpoints(Ball::from_ui(0, prec), tail);
    }
    // sum_{k>=2} P(k), P(k) = sum_r mu(r) (-zeta'/zeta)(rk), both tails
    // certified against |(-zeta'/zeta)(s)| <= 2 log 2 * 2^{-s} for s >= 64
    const unsigned long kMax = 96;
    std::vector<Ball> Lmemo(kMax + 1, Ball::from_ui(0, prec));
    std::vector<bool> have(kMax + 1, false);
    auto L = [&](unsigned long s) -> const Ball& {
        if (!have[s]) {
            Lmemo[s] = neg_zeta_prime_em(s, prec) / zeta_em(s, prec);
            have[s] = true;
        }
        return Lmemo[s];
    };
    Ball total = Ball::from_ui(0, prec);
    for (unsigned long k = 2; k <= kMax; ++k) {
        for (unsigned long r = 1; r * k <= kMax; ++r) {
            int mu = moebius(r);
            if (mu == 0) continue;
            total = mu > 0 ? total + L(r * k) : total - L(r * k);
        }
    }
    // truncation tails: per-k Moebius tail plus the tail over k, each below
    // sum_{s > kMax} 2 log2 2^{-s} = 2 log2 2^{-kMax}; kMax-1 of the former
    Ball tail = Ball::from_ui(4 * 96, prec) * log2_ball(prec) /
                Ball::from_z(mpz_class(1) << kMax, prec);
    Ball result = total + symmetric_error(tail);
    if (result.rad_double() > tolerance)
        throw PrecisionError("kappa_limit: tolerance not reached");
    return result;
}

KappaHalfReport check_kappa_half(unsigned long m_lo, unsigned long m_hi, mpfr_prec_t prec) {
    if (m_lo < 13 || m_hi > 10000 || m_lo > m_hi)
        throw PreconditionError("check_kappa_half: range must lie within [13, 10^4]");
    Ball half = Ball::from_q(mpq_class(1, 2), prec);
    for (unsigned long m = m_lo; m <= m_hi; ++m) {
        bool ok;
        if (m <= 79) {
            ok = certainly_ge(kappa_simplified_lower(m, prec), half);
        } else {
            Ball s = s_of_m(m, prec);
            Ball x = s * exp(s);
            Ball w = w_factor(Ball::from_q(mpq_class(m + 1, 2), prec), x);
            Ball acc = Ball::from_ui(0, prec);
            for (unsigned long p : primes_upto(m / 20 + 1).primes)
                acc = acc + log(Ball::from_ui(p, prec)) /
                                Ball::from_z(mpz_class(p) * mpz_class(p - 1), prec);
            Ball bound = Ball::from_q(mpq_class(9, 10), prec) * w * acc;
            ok = certainly_ge(bound, half);
        }
        if (!ok) return KappaHalfReport{false, m};
    }
    return KappaHalfReport{true, 0};
}

}  // namespace epade
