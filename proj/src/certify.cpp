#include "epade/certify.hpp"

#include <algorithm>
#include <cmath>

#include "epade/errors.hpp"
#include "epade/factor.hpp"
#include "epade/hermite_pade.hpp"
#include "epade/measure.hpp"

namespace epade {

Ball exp_enclosure(unsigned long j, mpfr_prec_t bits) {
    if (j > 64) throw PreconditionError("exp_enclosure: j must be <= 64");
    if (bits < 8 || bits > kCertifyBitsCap)
        throw PreconditionError("exp_enclosure: bits outside [8, cap]");
    return exp(Ball::from_ui(j, bits));
}

Ball eval_linear_form(const LinearForm& form, unsigned long target_bits) {
    if (form.lambda.empty() || form.all_zero())
        throw PreconditionError("eval_linear_form: form must be nonzero");
    mpfr_prec_t prec = std::max<mpfr_prec_t>(256, 2 * target_bits);
    for (; prec <= kCertifyBitsCap; prec *= 2) {
        Ball e = e_ball(prec);
        Ball acc = Ball::from_z(form.lambda[0], prec);
        Ball epow = Ball::from_ui(1, prec);
        for (size_t j = 1; j < form.lambda.size(); ++j) {
            epow = epow * e;
            if (form.lambda[j] != 0) acc = acc + Ball::from_z(form.lambda[j], prec) * epow;
        }
        Ball a = abs(acc);
        if (a.is_positive()) {
            Ball rel = a * Ball::from_q(mpq_class(1, mpz_class(1) << target_bits),
                                        prec);
            Ball rad = a.upper() - a.lower();
            if (certainly_le(rad, rel)) return a;
        }
    }
    throw PrecisionError("eval_linear_form: precision cap reached");
}

unsigned long qr_threshold(unsigned long m) {
    switch (m) {
        case 2: return 16;    // ceil(e^e)
        case 3: return 38;    // ceil(e^{3 (log 3)^2})
        case 4: return 2181;  // ceil(e^{4 (log 4)^2})
        default: throw PreconditionError("qr bounds are stated for m in {2, 3, 4}");
    }
}

namespace {

const char* q_slope(unsigned long m) {
    return m == 2 ? "1.6791" : (m == 3 ? "2.1016" : "3.3612");
}

const char* r_slope(unsigned long m) {
    return m == 2 ? "0.3654" : (m == 3 ? "0.5139" : "1.6016");
}

double margin_double(const Ball& bound_log, const Ball& measured_log) {
    return (bound_log - measured_log).mid_double();
}

QRPair run_qr(unsigned long m, unsigned long l, bool heavy_ok) {
    unsigned long threshold = qr_threshold(m);
    if (l < threshold)
        throw PreconditionError("qr bounds: l is below the validity threshold for this m");
    if (m == 4 && !heavy_ok)
        throw ResourceError("qr bounds: m = 4 requires the heavy opt-in");
    const unsigned long cap = heavy_ok ? 20000 : kDefaultOrderCap;
    SystemEvaluation ev = evaluate_system_at_one(m, l, cap);

    // working precision sized for the cancellation: |B| shrinks from
    // ~e^{m l log l} to ~e^{-l log l} in the remainder sums
    unsigned long maxbits = 0;
    for (unsigned long k = 0; k <= m; ++k)
        maxbits = std::max(maxbits,
                           static_cast<unsigned long>(
                               mpz_sizeinbase(ev.b_values[k][0].get_mpz_t(), 2)));
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(
        maxbits + static_cast<unsigned long>(double(l) * std::log2(double(l))) + 64);
    prec = std::min<mpfr_prec_t>(prec, kCertifyBitsCap);

    Ball lb = Ball::from_ui(l, prec);
    Ball llogl = lb * log(lb);

    QRPair out;
    out.q.m = out.r.m = m;
    out.q.l = out.r.l = l;

    // Q: log |B_{k,0}| <= m l log l + b_m l
    Ball q_log = Ball::from_ui(m, prec) * llogl + Ball::from_decimal(q_slope(m), prec) * lb;
    for (unsigned long k = 0; k <= m; ++k) {
        const mpz_class& b = ev.b_values[k][0];
        if (b == 0) {
            out.q.margins.push_back(std::numeric_limits<double>::infinity());
            continue;
        }
        Ball logb = log(Ball::from_z(abs(b), prec));
        if (!certainly_le(logb, q_log)) {
            if (certainly_greater(logb, q_log))
                throw GuaranteeError("check_Q_bound: |B_{k,0}| exceeds Q(l)");
            throw PrecisionError("check_Q_bound: comparison indeterminate");
        }
        out.q.margins.push_back(margin_double(q_log, logb));
    }
    out.q.passed = true;
    out.q.min_margin = *std::min_element(out.q.margins.begin(), out.q.margins.end());

    // R: sum_j |B_{k,0} e^j + B_{k,j}| <= exp(-l log l + d_m l)
    Ball r_bound = exp(-llogl + Ball::from_decimal(r_slope(m), prec) * lb);
    std::vector<Ball> epow;
    epow.reserve(m + 1);
    epow.push_back(Ball::from_ui(1, prec));
    Ball e = e_ball(prec);
    for (unsigned long j = 1; j <= m; ++j) epow.push_back(epow.back() * e);
    for (unsigned long k = 0; k <= m; ++k) {
        Ball sum = Ball::from_ui(0, prec);
        Ball b0 = Ball::from_z(ev.b_values[k][0], prec);
        for (unsigned long j = 1; j <= m; ++j)
            sum = sum + abs(b0 * epow[j] + Ball::from_z(ev.b_values[k][j], prec));
        if (!certainly_le(sum, r_bound)) {
            if (certainly_greater(sum, r_bound))
                throw GuaranteeError("check_R_bound: sum of |L_{k,j}| exceeds R(l)");
            throw PrecisionError("check_R_bound: comparison indeterminate");
        }
        double margin = sum.is_positive()
                            ? margin_double(log(r_bound), log(sum))
                            : std::numeric_limits<double>::infinity();
        out.r.margins.push_back(margin);
    }
    out.r.passed = true;
    out.r.min_margin = *std::min_element(out.r.margins.begin(), out.r.margins.end());
    return out;
}

}  // namespace

QRReport check_Q_bound(unsigned long m, unsigned long l, bool heavy_ok) {
    return run_qr(m, l, heavy_ok).q;
}

QRReport check_R_bound(unsigned long m, unsigned long l, bool heavy_ok) {
    return run_qr(m, l, heavy_ok).r;
}

QRPair check_qr_bounds(unsigned long m, unsigned long l, bool heavy_ok) {
    return run_qr(m, l, heavy_ok);
}

FormCertificate verify_measure(const LinearForm& form, const Ball& logH,
                               mpfr_prec_t start_bits) {
    if (form.lambda.size() < 3)
        throw PreconditionError("verify_measure: form must have m >= 2");
    if (form.all_zero()) throw PreconditionError("verify_measure: lambda must be nonzero");
    const unsigned long m = form.m();

    mpz_class height(0);
    for (size_t j = 1; j < form.lambda.size(); ++j) {
        mpz_class a = abs(form.lambda[j]);
        if (a > height) height = a;
    }

    for (mpfr_prec_t prec = std::max<mpfr_prec_t>(start_bits, 128); prec <= kCertifyBitsCap;
         prec *= 2) {
        Ball s = s_of_m(m, prec);
        if (!certainly_ge(logH, s * exp(s)))
            throw PreconditionError("verify_measure: requires log H >= s(m) e^{s(m)}");
        if (height > 1 && !certainly_le(log(Ball::from_z(height, prec)), logH))
            throw PreconditionError("verify_measure: requires max_j |lambda_j| <= H");

        MeasureParams params = params_for_e(m, prec);
        BoundParts bp = generic_lower_bound(params, logH);
        Ball value = eval_linear_form(form, 64);
        Ball logv = log(value);
        if (certainly_greater(logv, bp.log_bound)) {
            FormCertificate cert;
            cert.lambda = form.lambda;
            cert.m = m;
            cert.value = value;
            cert.bound = exp(bp.log_bound);
            cert.passed = true;
            cert.precision_used = prec;
            return cert;
        }
        if (certainly_less(logv, bp.log_bound)) {
            FormCertificate cert;
            cert.lambda = form.lambda;
            cert.m = m;
            cert.value = value;
            cert.bound = exp(bp.log_bound);
            cert.passed = false;
            cert.precision_used = prec;
            return cert;
        }
    }
    throw PrecisionError("verify_measure: comparison indeterminate at the precision cap");
}

SearchResult empirical_min_search(unsigned long m, long box) {
    if (m < 1 || m > 3) throw PreconditionError("empirical_min_search: m must be in [1, 3]");
    if (box < 1 || box > 50) throw PreconditionError("empirical_min_search: box must be in [1, 50]");
    double budget = std::pow(2.0 * double(box) + 1.0, double(m + 1));
    if (budget > 1e8) throw ResourceError("empirical_min_search: budget exceeded");

    const mpfr_prec_t prec = 128;
    std::vector<Ball> epow;
    epow.push_back(Ball::from_ui(1, prec));
    Ball e = e_ball(prec);
    for (unsigned long j = 1; j <= m; ++j) epow.push_back(epow.back() * e);

    std::vector<long> lam(m + 1, -box);
    std::vector<long> best_lambda;
    Ball best = Ball::from_ui(0, prec);
    bool have_best = false;

    // iterate lambda_1..lambda_m; the inner lambda_0 minimum is attained at
    // the integers adjacent to -S, clamped to the box
    std::vector<long> outer(m, -box);
    while (true) {
        Ball S = Ball::from_ui(0, prec);
        bool all_zero = true;
        for (unsigned long j = 1; j <= m; ++j) {
            if (outer[j - 1] != 0) {
                S = S + Ball::from_si(outer[j - 1], prec) * epow[j];
                all_zero = false;
            }
        }
        // lambda_0 is not height-constrained; the minimum over it sits at
        // the integers adjacent to -S
        long cands[3];
        int ncand = 0;
        if (all_zero) {
            cands[ncand++] = 1;
            cands[ncand++] = -1;
        } else {
            mpz_class f = floor_lower(-S);
            for (int d = 0; d <= 2; ++d) {
                mpz_class c = f + d;
                long cl = c.get_si();  // |S| <= m * box * e^m, far within range
                bool dup = false;
                for (int i = 0; i < ncand; ++i) dup = dup || cands[i] == cl;
                if (!dup) cands[ncand++] = cl;
            }
        }
        for (int i = 0; i < ncand; ++i) {
            Ball v = abs(S + Ball::from_si(cands[i], prec));
            if (!have_best || certainly_less(v, best)) {
                best = v;
                best_lambda.assign(1, cands[i]);
                for (unsigned long j = 0; j < m; ++j) best_lambda.push_back(outer[j]);
                have_best = true;
            }
        }
        // advance odometer
        unsigned long pos = 0;
        while (pos < m && outer[pos] == box) outer[pos++] = -box;
        if (pos == m) break;
        ++outer[pos];
    }

    // canonical representative: the sign with Lambda > 0
    Ball signed_value = Ball::from_si(best_lambda[0], prec);
    for (unsigned long j = 1; j <= m; ++j)
        signed_value = signed_value + Ball::from_si(best_lambda[j], prec) * epow[j];
    if (signed_value.is_negative())
        for (auto& c : best_lambda) c = -c;

    LinearForm form;
    for (long c : best_lambda) form.lambda.emplace_back(c);
    SearchResult out;
    out.lambda = std::move(best_lambda);
    out.min_value = eval_linear_form(form, 64);
    return out;
}

}  // namespace epade
