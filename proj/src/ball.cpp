#include "epade/ball.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <vector>

#include "epade/errors.hpp"

namespace epade {

namespace {

// RAII scratch register.
struct Tmp {
    explicit Tmp(mpfr_prec_t p) { mpfr_init2(v, p); }
    ~Tmp() { mpfr_clear(v); }
    mpfr_t v;
};

}  // namespace

Ball::Ball() : Ball(kDefaultPrec) {}

Ball::Ball(mpfr_prec_t prec) {
    mpfr_init2(mid_, prec);
    mpfr_set_zero(mid_, 1);
    mpfr_init2(rad_, kRadiusPrec);
    mpfr_set_zero(rad_, 1);
}

Ball::Ball(const Ball& other) {
    mpfr_init2(mid_, mpfr_get_prec(other.mid_));
    mpfr_set(mid_, other.mid_, MPFR_RNDN);
    mpfr_init2(rad_, kRadiusPrec);
    mpfr_set(rad_, other.rad_, MPFR_RNDU);
}

Ball::Ball(Ball&& other) noexcept {
    mpfr_init2(mid_, 2);
    mpfr_init2(rad_, 2);
    mpfr_swap(mid_, other.mid_);
    mpfr_swap(rad_, other.rad_);
}

Ball& Ball::operator=(const Ball& other) {
    if (this != &other) {
        mpfr_set_prec(mid_, mpfr_get_prec(other.mid_));
        mpfr_set(mid_, other.mid_, MPFR_RNDN);
        mpfr_set(rad_, other.rad_, MPFR_RNDU);
    }
    return *this;
}

Ball& Ball::operator=(Ball&& other) noexcept {
    if (this != &other) {
        mpfr_swap(mid_, other.mid_);
        mpfr_swap(rad_, other.rad_);
    }
    return *this;
}

Ball::~Ball() {
    mpfr_clear(mid_);
    mpfr_clear(rad_);
}

void Ball::bump_radius_ulp(int ternary) {
    if (ternary == 0) return;
    if (mpfr_zero_p(mid_)) return;  // cannot happen for inexact results in mpfr's exponent range
    // one ulp of the midpoint covers the half-ulp round-to-nearest error
    Tmp u(kRadiusPrec);
    mpfr_set_ui_2exp(u.v, 1, mpfr_get_exp(mid_) - mpfr_get_prec(mid_), MPFR_RNDU);
    mpfr_add(rad_, rad_, u.v, MPFR_RNDU);
}

Ball Ball::from_si(long v, mpfr_prec_t prec) {
    Ball b(prec);
    int t = mpfr_set_si(b.mid_, v, MPFR_RNDN);
    b.bump_radius_ulp(t);
    return b;
}

Ball Ball::from_ui(unsigned long v, mpfr_prec_t prec) {
    Ball b(prec);
    int t = mpfr_set_ui(b.mid_, v, MPFR_RNDN);
    b.bump_radius_ulp(t);
    return b;
}

Ball Ball::from_z(const mpz_class& v, mpfr_prec_t prec) {
    Ball b(prec);
    int t = mpfr_set_z(b.mid_, v.get_mpz_t(), MPFR_RNDN);
    b.bump_radius_ulp(t);
    return b;
}

Ball Ball::from_q(const mpq_class& v, mpfr_prec_t prec) {
    Ball b(prec);
    int t = mpfr_set_q(b.mid_, v.get_mpq_t(), MPFR_RNDN);
    b.bump_radius_ulp(t);
    return b;
}

Ball Ball::from_double(double v, mpfr_prec_t prec) {
    Ball b(prec);
    int t = mpfr_set_d(b.mid_, v, MPFR_RNDN);
    b.bump_radius_ulp(t);
    return b;
}

Ball Ball::from_decimal(std::string_view s, mpfr_prec_t prec) {
    Ball b(prec);
    std::string str(s);
    char* end = nullptr;
    int t = mpfr_strtofr(b.mid_, str.c_str(), &end, 10, MPFR_RNDN);
    if (str.empty() || end != str.c_str() + str.size() || mpfr_nan_p(b.mid_))
        throw PreconditionError("unparsable decimal: " + str);
    b.bump_radius_ulp(t);
    return b;
}

Ball Ball::from_endpoints(const Ball& lo, const Ball& hi) {
    mpfr_prec_t p = std::max(lo.precision(), hi.precision());
    Tmp L(p + 8), H(p + 8);
    mpfr_sub(L.v, lo.mid_, lo.rad_, MPFR_RNDD);
    mpfr_add(H.v, hi.mid_, hi.rad_, MPFR_RNDU);
    if (mpfr_greater_p(L.v, H.v)) throw PreconditionError("from_endpoints: lo > hi");
    Ball b(p);
    mpfr_add(b.mid_, L.v, H.v, MPFR_RNDN);
    mpfr_div_2ui(b.mid_, b.mid_, 1, MPFR_RNDN);
    Tmp r1(kRadiusPrec), r2(kRadiusPrec);
    mpfr_sub(r1.v, H.v, b.mid_, MPFR_RNDU);
    mpfr_sub(r2.v, b.mid_, L.v, MPFR_RNDU);
    mpfr_max(b.rad_, r1.v, r2.v, MPFR_RNDU);
    if (mpfr_sgn(b.rad_) < 0) mpfr_set_zero(b.rad_, 1);
    return b;
}

bool Ball::contains_zero() const { return mpfr_cmpabs(mid_, rad_) <= 0; }

bool Ball::is_positive() const { return mpfr_sgn(mid_) > 0 && mpfr_cmpabs(mid_, rad_) > 0; }

bool Ball::is_negative() const { return mpfr_sgn(mid_) < 0 && mpfr_cmpabs(mid_, rad_) > 0; }

bool Ball::contains(const mpq_class& v) const {
    // sufficient certified check: |mid - v| rounded up stays <= rad
    Tmp d(std::max<mpfr_prec_t>(precision(), 128) + 64);
    mpfr_set_q(d.v, v.get_mpq_t(), MPFR_RNDN);
    mpfr_sub(d.v, mid_, d.v, MPFR_RNDA);
    mpfr_abs(d.v, d.v, MPFR_RNDU);
    Tmp u(kRadiusPrec);
    mpfr_set(u.v, d.v, MPFR_RNDU);
    return mpfr_lessequal_p(u.v, rad_);
}

Ball Ball::lower() const {
    Ball b(precision());
    mpfr_sub(b.mid_, mid_, rad_, MPFR_RNDD);
    return b;
}

Ball Ball::upper() const {
    Ball b(precision());
    mpfr_add(b.mid_, mid_, rad_, MPFR_RNDU);
    return b;
}

Ball operator+(const Ball& a, const Ball& b) {
    Ball r(std::max(a.precision(), b.precision()));
    int t = mpfr_add(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
    mpfr_add(r.rad_, a.rad_, b.rad_, MPFR_RNDU);
    r.bump_radius_ulp(t);
    return r;
}

Ball operator-(const Ball& a, const Ball& b) {
    Ball r(std::max(a.precision(), b.precision()));
    int t = mpfr_sub(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
    mpfr_add(r.rad_, a.rad_, b.rad_, MPFR_RNDU);
    r.bump_radius_ulp(t);
    return r;
}

Ball operator-(const Ball& a) {
    Ball r(a);
    mpfr_neg(r.mid_, r.mid_, MPFR_RNDN);
    return r;
}

Ball operator*(const Ball& a, const Ball& b) {
    Ball r(std::max(a.precision(), b.precision()));
    int t = mpfr_mul(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
    // |a||rb| + |b||ra| + ra rb
    Tmp t1(kRadiusPrec), t2(kRadiusPrec), am(kRadiusPrec), bm(kRadiusPrec);
    mpfr_abs(am.v, a.mid_, MPFR_RNDU);
    mpfr_abs(bm.v, b.mid_, MPFR_RNDU);
    mpfr_mul(t1.v, am.v, b.rad_, MPFR_RNDU);
    mpfr_mul(t2.v, bm.v, a.rad_, MPFR_RNDU);
    mpfr_add(t1.v, t1.v, t2.v, MPFR_RNDU);
    mpfr_mul(t2.v, a.rad_, b.rad_, MPFR_RNDU);
    mpfr_add(r.rad_, t1.v, t2.v, MPFR_RNDU);
    r.bump_radius_ulp(t);
    return r;
}

Ball operator/(const Ball& a, const Ball& b) {
    if (!(b.is_positive() || b.is_negative()))
        throw PrecisionError("division by a ball containing zero");
    Ball r(std::max(a.precision(), b.precision()));
    int t = mpfr_div(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
    // (|b|ra + |a|rb) / (|b|(|b| - rb))
    Tmp num(kRadiusPrec), t2(kRadiusPrec), am(kRadiusPrec), bl(kRadiusPrec), den(kRadiusPrec);
    mpfr_abs(am.v, a.mid_, MPFR_RNDU);
    mpfr_abs(bl.v, b.mid_, MPFR_RNDU);
    mpfr_mul(num.v, bl.v, a.rad_, MPFR_RNDU);
    mpfr_mul(t2.v, am.v, b.rad_, MPFR_RNDU);
    mpfr_add(num.v, num.v, t2.v, MPFR_RNDU);
    mpfr_abs(bl.v, b.mid_, MPFR_RNDD);
    mpfr_sub(t2.v, bl.v, b.rad_, MPFR_RNDD);
    if (mpfr_sgn(t2.v) <= 0) throw PrecisionError("division by a ball containing zero");
    mpfr_mul(den.v, bl.v, t2.v, MPFR_RNDD);
    mpfr_div(num.v, num.v, den.v, MPFR_RNDU);
    mpfr_add(r.rad_, r.rad_, num.v, MPFR_RNDU);
    r.bump_radius_ulp(t);
    return r;
}

Ball abs(const Ball& a) {
    Ball r(a);
    mpfr_abs(r.mid_, r.mid_, MPFR_RNDN);
    return r;
}

Ball exp(const Ball& a) {
    Ball r(a.precision());
    int t = mpfr_exp(r.mid_, a.mid_, MPFR_RNDN);
    // |e^x - e^m| <= e^m (e^r - 1)
    Tmp eu(kRadiusPrec), em1(kRadiusPrec);
    mpfr_exp(eu.v, a.mid_, MPFR_RNDU);
    mpfr_expm1(em1.v, a.rad_, MPFR_RNDU);
    mpfr_mul(r.rad_, eu.v, em1.v, MPFR_RNDU);
    r.bump_radius_ulp(t);
    return r;
}

Ball log(const Ball& a) {
    if (!a.is_positive()) throw PrecisionError("log of a ball not certainly positive");
    Ball r(a.precision());
    int t = mpfr_log(r.mid_, a.mid_, MPFR_RNDN);
    // |log x - log m| <= -log(1 - r/m)
    Tmp ml(kRadiusPrec), q(kRadiusPrec);
    mpfr_set(ml.v, a.mid_, MPFR_RNDD);
    mpfr_div(q.v, a.rad_, ml.v, MPFR_RNDU);
    if (mpfr_cmp_ui(q.v, 1) >= 0) throw PrecisionError("log of a ball not certainly positive");
    mpfr_neg(q.v, q.v, MPFR_RNDD);
    mpfr_log1p(q.v, q.v, MPFR_RNDD);
    mpfr_neg(q.v, q.v, MPFR_RNDU);
    mpfr_add(r.rad_, r.rad_, q.v, MPFR_RNDU);
    r.bump_radius_ulp(t);
    return r;
}

Ball pow_ui(const Ball& a, unsigned long n) {
    Ball r = Ball::from_ui(1, a.precision());
    Ball base(a);
    while (n > 0) {
        if (n & 1) r = r * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return r;
}

bool certainly_less(const Ball& a, const Ball& b) {
    mpfr_prec_t p = std::max(a.precision(), b.precision()) + 8;
    Tmp au(p), bl(p);
    mpfr_add(au.v, a.mid_, a.rad_, MPFR_RNDU);
    mpfr_sub(bl.v, b.mid_, b.rad_, MPFR_RNDD);
    return mpfr_less_p(au.v, bl.v);
}

bool certainly_le(const Ball& a, const Ball& b) {
    mpfr_prec_t p = std::max(a.precision(), b.precision()) + 8;
    Tmp au(p), bl(p);
    mpfr_add(au.v, a.mid_, a.rad_, MPFR_RNDU);
    mpfr_sub(bl.v, b.mid_, b.rad_, MPFR_RNDD);
    return mpfr_lessequal_p(au.v, bl.v);
}

mpz_class floor_lower(const Ball& a) {
    Tmp lo(a.precision() + 8);
    mpfr_sub(lo.v, a.mid(), a.rad(), MPFR_RNDD);
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), lo.v, MPFR_RNDD);
    return z;
}

mpz_class ceil_upper(const Ball& a) {
    Tmp hi(a.precision() + 8);
    mpfr_add(hi.v, a.mid(), a.rad(), MPFR_RNDU);
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), hi.v, MPFR_RNDU);
    return z;
}

Ball e_ball(mpfr_prec_t prec) { return exp(Ball::from_ui(1, prec)); }

Ball log2_ball(mpfr_prec_t prec) { return log(Ball::from_ui(2, prec)); }

namespace {

std::string mpfr_to_sci(const mpfr_t v, int digits, mpfr_rnd_t rnd) {
    char fmt[32];
    const char* r = rnd == MPFR_RNDD ? "D" : (rnd == MPFR_RNDU ? "U" : "N");
    std::snprintf(fmt, sizeof fmt, "%%.%dR%se", digits, r);
    char buf[128];
    mpfr_snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

}  // namespace

std::string Ball::str() const {
    if (mpfr_zero_p(mid_) && mpfr_zero_p(rad_)) return "0";
    if (mpfr_zero_p(mid_)) return "0 ± " + mpfr_to_sci(rad_, 2, MPFR_RNDU);

    // k: decimals after the point certified by the radius, 10^{-k} >= 4 rad
    long k = 1l << 30;
    if (!mpfr_zero_p(rad_)) {
        Tmp lg(kRadiusPrec);
        mpfr_mul_ui(lg.v, rad_, 4, MPFR_RNDU);
        mpfr_log10(lg.v, lg.v, MPFR_RNDU);
        double d = mpfr_get_d(lg.v, MPFR_RNDU);
        k = std::abs(d) < 1e15 ? static_cast<long>(std::floor(-d)) : (d < 0 ? (1l << 30) : -(1l << 30));
    }
    // decimal exponent: mid = 0.ddd * 10^{e10}
    mpfr_exp_t e10;
    char* probe = mpfr_get_str(nullptr, &e10, 10, 2, mid_, MPFR_RNDN);
    mpfr_free_str(probe);
    const long sig = k + static_cast<long>(e10);
    if (sig < 1)
        return "~" + mpfr_to_sci(mid_, 2, MPFR_RNDN) + " ± " + mpfr_to_sci(rad_, 2, MPFR_RNDU);

    // displayed error: radius plus the ulp of the printed string (10^{-decimals})
    auto err_str = [&](long decimals) {
        if (mpfr_zero_p(rad_) && decimals >= 44) return std::string("0");
        Tmp err(kRadiusPrec), ulp(kRadiusPrec);
        mpfr_set_ui(ulp.v, 10, MPFR_RNDU);
        mpfr_pow_si(ulp.v, ulp.v, -decimals, MPFR_RNDU);
        mpfr_add(err.v, rad_, ulp.v, MPFR_RNDU);
        return mpfr_to_sci(err.v, 1, MPFR_RNDU);
    };

    if (e10 > 17 || e10 < -4) {
        const long s = std::min<long>(sig, 40);
        return mpfr_to_sci(mid_, static_cast<int>(s - 1), MPFR_RNDN) + " ± " +
               err_str(s - static_cast<long>(e10));
    }

    const long decimals = std::max<long>(0, std::min<long>(k, 44));
    char fmt[24];
    std::snprintf(fmt, sizeof fmt, "%%.%ldRNf", decimals);
    std::vector<char> buf(static_cast<size_t>(decimals) + 64);
    mpfr_snprintf(buf.data(), buf.size(), fmt, mid_);
    std::string out(buf.data());
    if (out.find('.') != std::string::npos) {
        while (out.back() == '0') out.pop_back();
        if (out.back() == '.') out.pop_back();
    }
    return out + " ± " + err_str(decimals);
}

std::string Ball::str_lower() const {
    Tmp lo(precision() + 8);
    mpfr_sub(lo.v, mid_, rad_, MPFR_RNDD);
    return mpfr_to_sci(lo.v, 19, MPFR_RNDD);
}

std::string Ball::str_upper() const {
    Tmp hi(precision() + 8);
    mpfr_add(hi.v, mid_, rad_, MPFR_RNDU);
    return mpfr_to_sci(hi.v, 19, MPFR_RNDU);
}

}  // namespace epade
