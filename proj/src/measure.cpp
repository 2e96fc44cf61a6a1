#include "epade/measure.hpp"

#include <algorithm>

#include "epade/errors.hpp"
#include "epade/factor.hpp"

namespace epade {

namespace {

// Bracket [lo, hi] around z(y) from the alternating iterates, then bisect.
// `stop` decides, given (lo, hi), whether the bracket is tight enough.
template <typename StopFn>
Ball z_inverse_core(const Ball& y, StopFn stop) {
    const mpfr_prec_t prec = std::max<mpfr_prec_t>(y.precision(), 128);
    if (!certainly_greater(y, e_ball(prec + 16)))
        throw PreconditionError("z_inverse: requires y > e");

    // z_0 = y from above, z_1 = y / log y from below, then alternate
    Ball hi_it = y;
    Ball lo_it = y / log(y);
    for (int i = 0; i < 24; ++i) {
        Ball next_hi = y / log(lo_it);
        Ball next_lo = y / log(next_hi);
        if (!next_hi.is_positive() || !next_lo.is_positive()) break;
        hi_it = next_hi;
        lo_it = next_lo;
    }
    Ball lo = lo_it.lower();
    Ball hi = hi_it.upper();
    if (certainly_less(hi, lo)) throw PrecisionError("z_inverse: bracket collapsed");

    const int kMaxBisect = 20000;
    for (int it = 0; it < kMaxBisect && !stop(lo, hi); ++it) {
        Ball mid = ((lo + hi) / 2).lower();  // exact point
        if (!certainly_less(lo, mid) || !certainly_less(mid, hi))
            break;  // bracket at the working precision's resolution
        Ball f = mid * log(mid) - y;
        if (f.is_negative())
            lo = mid;
        else if (f.is_positive())
            hi = mid;
        else
            break;  // sign not certifiable at this precision
    }
    if (!stop(lo, hi))
        throw PrecisionError("z_inverse: bracket did not reach the tolerance");
    return Ball::from_endpoints(lo, hi);
}

}  // namespace

Ball z_inverse(const Ball& y, double tolerance) {
    if (!(tolerance > 0)) throw PreconditionError("z_inverse: tolerance must be positive");
    const mpfr_prec_t prec = std::max<mpfr_prec_t>(y.precision(), 128);
    Ball tol = Ball::from_double(tolerance, prec);
    return z_inverse_core(y, [&](const Ball& lo, const Ball& hi) {
        return certainly_le(hi - lo, tol);
    });
}

Ball z_inverse_bits(const Ball& y, long rel_bits) {
    return z_inverse_core(y, [&](const Ball& lo, const Ball& hi) {
        Ball width = hi - lo;
        Ball target = hi * Ball::from_q(mpq_class(1, mpz_class(1) << rel_bits), hi.precision());
        return certainly_le(width, target);
    });
}

Ball z_upper_bound(const Ball& y, const Ball& s) {
    Ball threshold = s * exp(s);
    if (certainly_less(y, threshold))
        throw PreconditionError("z_upper_bound: requires y >= s e^s");
    if (certainly_less(s, e_ball(s.precision())))
        throw PreconditionError("z_upper_bound: requires s >= e");
    return (1 + log(s) / s) * y / log(y);
}

namespace {

Ball ceil_interval(const Ball& x) {
    mpz_class lo = ceil_upper(x.lower());
    mpz_class hi = ceil_upper(x.upper());
    mpfr_prec_t prec = x.precision();
    return Ball::from_endpoints(Ball::from_z(lo, prec), Ball::from_z(hi, prec));
}

void finish_params(MeasureParams& p, mpfr_prec_t prec) {
    p.B = p.b + p.a * p.d / p.c;
    p.C = p.a;
    p.D = p.a + p.b + p.a * exp(-p.s);
    p.F = Ball::from_ui(1, prec) / (Ball::from_ui(2, prec) * exp(p.D));
    p.v = p.c - p.d / p.s;
    p.u = 1 + log(p.s) / p.s;
    p.n1 = ceil_interval(exp(p.s));
}

}  // namespace

MeasureParams params_for_e(unsigned long m, mpfr_prec_t prec) {
    if (m < 2) throw PreconditionError("params_for_e: m must be >= 2");
    MeasureParams p;
    p.m = m;
    p.a = Ball::from_ui(m, prec);
    p.c = Ball::from_ui(1, prec);
    p.s = s_of_m(m, prec);
    p.kappa = kappa_m(m, prec).value;
    if (m == 2) {
        p.b = Ball::from_decimal("1.6791", prec);
        p.d = Ball::from_decimal("0.3654", prec);
    } else if (m == 3) {
        p.b = Ball::from_decimal("2.1016", prec);
        p.d = Ball::from_decimal("0.5139", prec);
    } else if (m == 4) {
        p.b = Ball::from_decimal("3.3612", prec);
        p.d = Ball::from_decimal("1.6016", prec);
    } else {
        Ball delta = Ball::from_decimal("0.0000525", prec);
        Ball m1 = Ball::from_ui(m + 1, prec);
        Ball km = (1 + p.kappa) * Ball::from_ui(m, prec);
        p.b = m1 * log(m1) - km + delta;
        p.d = Ball::from_q(mpq_class(2 * m + 1, 2), prec) * log(Ball::from_ui(m, prec)) - km -
              Ball::from_decimal("0.02394", prec);
    }
    finish_params(p, prec);
    return p;
}

MeasureParams params_for_sparse(unsigned long m1, unsigned long m2, mpfr_prec_t prec) {
    if (m1 < 1) throw PreconditionError("params_for_sparse: m1 must be >= 1");
    if (m2 < std::max(4ul, m1 + 1))
        throw PreconditionError("params_for_sparse: requires m2 >= max(4, m1+1)");
    MeasureParams p;
    p.m = m1;
    p.a = Ball::from_ui(m1, prec);
    p.c = Ball::from_ui(1, prec);
    p.s = s_of_m(m2, prec);
    p.kappa = Ball::from_ui(0, prec);
    Ball m1b = Ball::from_ui(m1, prec);
    Ball m12 = Ball::from_ui(m1 + 2, prec);
    p.b = m12 * log(Ball::from_ui(m1 + 1, prec)) - m1b;
    p.d = m12 * log(Ball::from_ui(m2, prec));
    finish_params(p, prec);
    return p;
}

BoundParts generic_lower_bound(const MeasureParams& params, const Ball& logH) {
    const mpfr_prec_t prec = std::max(logH.precision(), params.B.precision());
    Ball log2H = logH + log2_ball(prec);
    Ball threshold = params.v * params.n1 * log(params.n1);
    if (!certainly_ge(log2H, threshold))
        throw PreconditionError(
            "generic_lower_bound: cannot certify log(2H) >= v n1 log n1");
    Ball z = z_inverse_bits(log2H / params.v, std::min<long>(prec / 2, 192));
    BoundParts out;
    out.epsilon = (params.B * z + params.C * log(z)) / log2H;
    out.prefactor = params.F;
    out.log_bound = log(params.F) - (params.a / params.c + out.epsilon) * log2H;
    return out;
}

BoundParts corollary_bound(const MeasureParams& params, const Ball& logH) {
    const mpfr_prec_t prec = std::max(logH.precision(), params.B.precision());
    if (!certainly_le(params.c, 1 + params.d / params.s))
        throw PreconditionError("corollary_bound: requires c <= 1 + d/s");
    Ball log2H = logH + log2_ball(prec);
    Ball threshold = params.v * params.n1 * log(params.n1);
    if (!certainly_ge(log2H, threshold))
        throw PreconditionError("corollary_bound: cannot certify log(2H) >= v n1 log n1");
    Ball ll = log(log2H);
    BoundParts out;
    out.epsilon = params.B * params.u / (params.v * ll);
    Ball ratio = pow_ui(ll / log2H, params.m);
    out.prefactor =
        pow_ui(params.v, params.m) /
        (Ball::from_ui(2, prec) * exp(params.D) * pow_ui(params.u, params.m)) * ratio;
    out.log_bound = log(out.prefactor) - (params.a / params.c + out.epsilon) * log2H;
    return out;
}

Ball omega_upper(unsigned long m, const Ball& loglogH, mpfr_prec_t prec) {
    if (m < 2) throw PreconditionError("omega_upper: m must be >= 2");
    Ball s = s_of_m(m, prec);
    if (!certainly_ge(loglogH, log(s) + s))
        throw PreconditionError("omega_upper: requires log H >= s(m) e^{s(m)}");
    Ball mb = Ball::from_ui(m, prec);
    if (m == 2) return mb + Ball::from_decimal("4.93", prec) / loglogH;
    if (m == 3) return mb + Ball::from_decimal("6.49", prec) / loglogH;
    if (m == 4) return mb + Ball::from_decimal("15.7", prec) / loglogH;
    Ball kappa = kappa_m(m, prec).value;
    Ball lm = log(mb);
    Ball first = m <= 14 ? 1 - 2 * kappa / (lm * lm) : 1 - (1 + kappa) / (lm * lm);
    Ball coeff = first * (1 - kappa / lm) * mb * mb * lm;
    return mb + coeff / loglogH;
}

std::vector<FmRow> fm_table(mpfr_prec_t prec) {
    std::vector<FmRow> rows;
    for (unsigned long m = 5; m <= 14; ++m) {
        Ball kappa = kappa_m(m, prec).value;
        Ball mb = Ball::from_ui(m, prec);
        Ball lm = log(mb);
        Ball lm2 = lm * lm;
        Ball eps = m == 5 ? Ball::from_decimal("0.0002069", prec)
                          : Ball::from_decimal("1e-6", prec);
        Ball num1 = 1 + 1 / (mb * lm) + 2 * log(lm) / (mb * lm2);
        Ball num2 = 1 - (1 + kappa) / lm +
                    Ball::from_ui(m + 1, prec) * log(Ball::from_ui(m + 1, prec)) /
                        (mb * mb * lm) +
                    1 / (2 * mb) - (Ball::from_decimal("1.02394", prec) + kappa) / (mb * lm) +
                    (Ball::from_decimal("0.0000525", prec) + eps) / (mb * mb * lm);
        Ball den = 1 - 1 / lm - 1 / (2 * mb * lm) + (1 + kappa) / lm2;
        FmRow row;
        row.m = m;
        row.f = num1 * num2 / den;
        row.product = (1 - kappa / lm) * (1 - 2 * kappa / lm2);
        if (!certainly_le(row.f, row.product)) {
            if (certainly_greater(row.f, row.product))
                throw GuaranteeError("fm_table: f(m) exceeds the comparison product");
            throw PrecisionError("fm_table: row comparison indeterminate");
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Ball rho_for(unsigned long m2, mpfr_prec_t prec) {
    if (m2 < 2) throw PreconditionError("rho_for: m2 must be >= 2");
    return m2 >= 11 ? Ball::from_ui(2, prec) : Ball::from_decimal("12.88", prec);
}

namespace {

Ball sparse_exponent(unsigned long m1, unsigned long m2, const Ball& loglogH,
                     mpfr_prec_t prec) {
    // threshold log H >= m2 (log m2)^2 e^{m2 (log m2)^2}, checked in log-log space
    Ball lm2 = log(Ball::from_ui(m2, prec));
    Ball s2 = Ball::from_ui(m2, prec) * lm2 * lm2;
    if (!certainly_ge(loglogH, log(s2) + s2))
        throw PreconditionError(
            "sparse bound: requires log H >= m2 (log m2)^2 e^{m2 (log m2)^2}");
    Ball rho = rho_for(m2, prec);
    unsigned long quad = m1 * m1 + 3 * m1 + 2;
    return Ball::from_ui(m1, prec) +
           rho * Ball::from_ui(quad, prec) * lm2 / loglogH;
}

}  // namespace

Ball sparse_bound(unsigned long m1, unsigned long m2, const Ball& loglogH, mpfr_prec_t prec) {
    if (m1 < 1) throw PreconditionError("sparse_bound: m1 must be >= 1");
    if (m2 < 4 || m2 < m1 + 1)
        throw PreconditionError("sparse_bound: requires m2 >= max(4, m1+1)");
    return sparse_exponent(m1, m2, loglogH, prec);
}

Ball power_measure(unsigned long dexp, unsigned long m, const Ball& loglogH,
                   mpfr_prec_t prec) {
    if (dexp < 2) throw PreconditionError("power_measure: d must be >= 2");
    if (m < 1) throw PreconditionError("power_measure: m must be >= 1");
    return sparse_exponent(m, dexp * m, loglogH, prec);
}

}  // namespace epade
