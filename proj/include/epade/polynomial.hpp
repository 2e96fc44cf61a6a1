#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace epade {

// Vector of repetition orders (l_0, ..., l_m), all >= 1.  L = sum of entries.
class MultiIndex {
  public:
    explicit MultiIndex(std::vector<unsigned long> entries);
    // (l, ..., l, l-1, l, ..., l) with the k-th entry lowered; requires l >= 2.
    static MultiIndex lowered_at(unsigned long m, unsigned long l, unsigned long k);

    unsigned long m() const { return entries_.size() - 1; }
    unsigned long size() const { return entries_.size(); }
    unsigned long L() const { return sum_; }
    unsigned long operator[](unsigned long i) const { return entries_[i]; }
    const std::vector<unsigned long>& entries() const { return entries_; }

  private:
    std::vector<unsigned long> entries_;
    unsigned long sum_;
};

// Dense polynomial over arbitrary-precision integers, ascending degree.
// Empty coefficient vector encodes the zero polynomial; otherwise the
// leading coefficient is nonzero.
class IntPolynomial {
  public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<mpz_class> coeffs);
    static IntPolynomial constant(const mpz_class& c);

    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const mpz_class& coeff(size_t i) const;
    const std::vector<mpz_class>& coeffs() const { return c_; }

    mpz_class eval(const mpz_class& x) const;
    mpz_class eval_one() const;  // sum of coefficients

    // min over nonzero coefficients of v_p(coefficient); polynomial must be nonzero
    unsigned long min_valuation(unsigned long p) const;

    void negate();
    void divexact(const mpz_class& d);           // throws GuaranteeError if not divisible
    IntPolynomial divexact_linear(long c) const; // exact division by (c - w)

    std::vector<std::string> coeff_strings() const;  // decimal, ascending degree
    static IntPolynomial from_coeff_strings(const std::vector<std::string>& v);

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b);

  private:
    void normalize();
    std::vector<mpz_class> c_;
};

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
bool operator==(const IntPolynomial& a, const IntPolynomial& b);

// Exact power series coefficients r_0 .. r_{truncation_order}.
struct RemainderSeries {
    std::vector<mpq_class> coeffs;
    unsigned long truncation_order = 0;
};

}  // namespace epade
