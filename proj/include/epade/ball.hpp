#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <string_view>

namespace epade {

inline constexpr mpfr_prec_t kDefaultPrec = 128;
inline constexpr mpfr_prec_t kRadiusPrec = 64;

// Real number with a certified error radius: the true value lies in
// [mid - rad, mid + rad].  Midpoints are rounded to nearest at the ball's
// precision; every radius computation rounds outward, so enclosures stay
// valid through arbitrary compositions.
class Ball {
  public:
    Ball();
    explicit Ball(mpfr_prec_t prec);
    Ball(const Ball& other);
    Ball(Ball&& other) noexcept;
    Ball& operator=(const Ball& other);
    Ball& operator=(Ball&& other) noexcept;
    ~Ball();

    static Ball from_si(long v, mpfr_prec_t prec = kDefaultPrec);
    static Ball from_ui(unsigned long v, mpfr_prec_t prec = kDefaultPrec);
    static Ball from_z(const mpz_class& v, mpfr_prec_t prec = kDefaultPrec);
    static Ball from_q(const mpq_class& v, mpfr_prec_t prec = kDefaultPrec);
    static Ball from_double(double v, mpfr_prec_t prec = kDefaultPrec);
    // Decimal string, rounded at `prec` with the rounding error absorbed
    // into the radius.  Accepts the usual mpfr formats ("1.25e-3", ...).
    static Ball from_decimal(std::string_view s, mpfr_prec_t prec = kDefaultPrec);
    // Interval [lo, hi] given by two already-certified balls.
    static Ball from_endpoints(const Ball& lo, const Ball& hi);

    mpfr_prec_t precision() const { return mpfr_get_prec(mid_); }
    const __mpfr_struct* mid() const { return mid_; }
    const __mpfr_struct* rad() const { return rad_; }

    bool is_exact() const { return mpfr_zero_p(rad_); }
    bool contains_zero() const;
    bool is_positive() const;  // certainly > 0
    bool is_negative() const;  // certainly < 0
    bool contains(const mpq_class& v) const;

    // Exact directed endpoints (radius zero).
    Ball lower() const;
    Ball upper() const;

    double mid_double() const { return mpfr_get_d(mid_, MPFR_RNDN); }
    double rad_double() const { return mpfr_get_d(rad_, MPFR_RNDU); }

    // Decimal rendering restricted to digits certified by the radius,
    // followed by " ± <radius>".  Deterministic for a fixed ball.
    std::string str() const;
    // Directed-rounded decimal endpoints (20 significant digits).
    std::string str_lower() const;
    std::string str_upper() const;

    friend Ball operator+(const Ball& a, const Ball& b);
    friend Ball operator-(const Ball& a, const Ball& b);
    friend Ball operator*(const Ball& a, const Ball& b);
    friend Ball operator/(const Ball& a, const Ball& b);
    friend Ball operator-(const Ball& a);

    friend Ball abs(const Ball& a);
    friend Ball exp(const Ball& a);
    friend Ball log(const Ball& a);
    friend Ball pow_ui(const Ball& a, unsigned long n);

    friend bool certainly_less(const Ball& a, const Ball& b);
    friend bool certainly_le(const Ball& a, const Ball& b);
    friend mpz_class floor_lower(const Ball& a);
    friend mpz_class ceil_upper(const Ball& a);

  private:
    Ball(mpfr_prec_t prec, bool);  // uninitialised-radius tag ctor helper
    void bump_radius_ulp(int ternary);

    mpfr_t mid_;
    mpfr_t rad_;
};

Ball operator+(const Ball& a, const Ball& b);
Ball operator-(const Ball& a, const Ball& b);
Ball operator*(const Ball& a, const Ball& b);
Ball operator/(const Ball& a, const Ball& b);
Ball operator-(const Ball& a);

Ball abs(const Ball& a);
Ball exp(const Ball& a);
Ball log(const Ball& a);
Ball pow_ui(const Ball& a, unsigned long n);

// a + b where b is small/exact.
inline Ball operator+(const Ball& a, long b) { return a + Ball::from_si(b, a.precision()); }
inline Ball operator-(const Ball& a, long b) { return a - Ball::from_si(b, a.precision()); }
inline Ball operator*(const Ball& a, long b) { return a * Ball::from_si(b, a.precision()); }
inline Ball operator/(const Ball& a, long b) { return a / Ball::from_si(b, a.precision()); }
inline Ball operator+(long a, const Ball& b) { return Ball::from_si(a, b.precision()) + b; }
inline Ball operator-(long a, const Ball& b) { return Ball::from_si(a, b.precision()) - b; }
inline Ball operator*(long a, const Ball& b) { return Ball::from_si(a, b.precision()) * b; }
inline Ball operator/(long a, const Ball& b) { return Ball::from_si(a, b.precision()) / b; }

// True iff sup(a) < inf(b) (resp. <=): a one-sided certified comparison.
bool certainly_less(const Ball& a, const Ball& b);
bool certainly_le(const Ball& a, const Ball& b);
inline bool certainly_greater(const Ball& a, const Ball& b) { return certainly_less(b, a); }
inline bool certainly_ge(const Ball& a, const Ball& b) { return certainly_le(b, a); }

mpz_class floor_lower(const Ball& a);  // floor of the lower endpoint
mpz_class ceil_upper(const Ball& a);   // ceil of the upper endpoint

Ball e_ball(mpfr_prec_t prec = kDefaultPrec);     // Euler's number
Ball log2_ball(mpfr_prec_t prec = kDefaultPrec);  // log 2

inline std::string to_string(const Ball& a) { return a.str(); }

}  // namespace epade
