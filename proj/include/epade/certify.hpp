#pragma once

#include <gmpxx.h>

#include <vector>

#include "epade/ball.hpp"

namespace epade {

inline constexpr mpfr_prec_t kCertifyBitsCap = 1l << 22;

// Integer linear form lambda_0 + lambda_1 e + ... + lambda_m e^m.
struct LinearForm {
    std::vector<mpz_class> lambda;

    unsigned long m() const { return lambda.size() - 1; }
    bool all_zero() const {
        for (const auto& c : lambda)
            if (c != 0) return false;
        return true;
    }
};

// Enclosure of e^j with radius <= 2^{-bits+4} e^j.
Ball exp_enclosure(unsigned long j, mpfr_prec_t bits);

// Enclosure of |Lambda| refined by precision doubling until the relative
// width drops below 2^{-target_bits}.
Ball eval_linear_form(const LinearForm& form, unsigned long target_bits);

struct QRReport {
    unsigned long m = 0;
    unsigned long l = 0;
    bool passed = false;
    // log-margin per row k: log(bound) - log(measured); positive means slack
    std::vector<double> margins;
    double min_margin = 0;
};

struct QRPair {
    QRReport q;
    QRReport r;
};

// |B_{k,0}| <= exp(m l log l + b_m l) for m in {2,3,4}, l at or above the
// per-m threshold (16 / 38 / 2181), after the common factor is divided out.
QRReport check_Q_bound(unsigned long m, unsigned long l, bool heavy_ok = false);

// sum_j |L_{k,j}(1)| <= exp(-l log l + d_m l), same setting.
QRReport check_R_bound(unsigned long m, unsigned long l, bool heavy_ok = false);

// Both checks over a single system evaluation.
QRPair check_qr_bounds(unsigned long m, unsigned long l, bool heavy_ok = false);

unsigned long qr_threshold(unsigned long m);  // 16, 38, 2181

struct FormCertificate {
    std::vector<mpz_class> lambda;
    unsigned long m = 0;
    Ball value;   // enclosure of |Lambda|
    Ball bound;   // certified lower bound for |Lambda| at this height
    bool passed = false;
    mpfr_prec_t precision_used = 0;
};

// Certifies |Lambda| > (1/(2e^D)) (2H)^{-m-eps(H)} for the e-system;
// requires m >= 2, log H >= s(m) e^{s(m)} and log max_{j>=1}|lambda_j| <= log H.
FormCertificate verify_measure(const LinearForm& form, const Ball& logH,
                               mpfr_prec_t start_bits = 256);

struct SearchResult {
    std::vector<long> lambda;  // canonical representative with Lambda > 0
    Ball min_value;
};

// Exhaustive minimum of |Lambda| over the box |lambda_j| <= box, lambda != 0.
SearchResult empirical_min_search(unsigned long m, long box);

}  // namespace epade
