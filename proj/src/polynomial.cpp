#include "epade/polynomial.hpp"

#include <numeric>

#include "epade/errors.hpp"

namespace epade {

MultiIndex::MultiIndex(std::vector<unsigned long> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw PreconditionError("MultiIndex: empty");
    for (unsigned long e : entries_)
        if (e == 0) throw PreconditionError("MultiIndex: entries must be >= 1");
    sum_ = std::accumulate(entries_.begin(), entries_.end(), 0ul);
}

MultiIndex MultiIndex::lowered_at(unsigned long m, unsigned long l, unsigned long k) {
    if (l < 2) throw PreconditionError("lowered_at: l must be >= 2");
    if (k > m) throw PreconditionError("lowered_at: k must be <= m");
    std::vector<unsigned long> e(m + 1, l);
    e[k] = l - 1;
    return MultiIndex(std::move(e));
}

IntPolynomial::IntPolynomial(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { normalize(); }

IntPolynomial IntPolynomial::constant(const mpz_class& c) {
    IntPolynomial p;
    if (c != 0) p.c_.push_back(c);
    return p;
}

void IntPolynomial::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const mpz_class& IntPolynomial::coeff(size_t i) const {
    static const mpz_class zero(0);
    return i < c_.size() ? c_[i] : zero;
}

mpz_class IntPolynomial::eval(const mpz_class& x) const {
    mpz_class acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

mpz_class IntPolynomial::eval_one() const {
    mpz_class acc(0);
    for (const auto& c : c_) acc += c;
    return acc;
}

unsigned long IntPolynomial::min_valuation(unsigned long p) const {
    if (is_zero()) throw PreconditionError("min_valuation of zero polynomial");
    bool first = true;
    unsigned long best = 0;
    mpz_class rest, pp(p);
    for (const auto& c : c_) {
        if (c == 0) continue;
        unsigned long v = p == 2 ? mpz_scan1(c.get_mpz_t(), 0)
                                 : mpz_remove(rest.get_mpz_t(), c.get_mpz_t(), pp.get_mpz_t());
        if (first || v < best) best = v;
        first = false;
        if (best == 0) break;
    }
    return best;
}

void IntPolynomial::negate() {
    for (auto& c : c_) c = -c;
}

void IntPolynomial::divexact(const mpz_class& d) {
    if (d == 0) throw PreconditionError("divexact by zero");
    if (d == 1) return;
    for (auto& c : c_) {
        if (c == 0) continue;
        if (!mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t()))
            throw GuaranteeError("divexact: coefficient not divisible");
        mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
    }
}

IntPolynomial IntPolynomial::divexact_linear(long cc) const {
    // P(w) = (c - w) G(w), solved for G by synthetic division from the top.
    if (is_zero()) return IntPolynomial();
    const long n = degree();
    if (n < 1) throw GuaranteeError("divexact_linear: degree too small");
    mpz_class c(cc);
    std::vector<mpz_class> g(static_cast<size_t>(n));
    if (cc == 0) {
        if (c_[0] != 0) throw GuaranteeError("divexact_linear: remainder nonzero");
        for (long r = 0; r < n; ++r) g[r] = -c_[static_cast<size_t>(r) + 1];
        return IntPolynomial(std::move(g));
    }
    g[static_cast<size_t>(n - 1)] = -c_[static_cast<size_t>(n)];
    for (long k = n - 1; k >= 1; --k)
        g[static_cast<size_t>(k - 1)] = c * g[static_cast<size_t>(k)] - c_[static_cast<size_t>(k)];
    if (c * g[0] != c_[0]) throw GuaranteeError("divexact_linear: remainder nonzero");
    return IntPolynomial(std::move(g));
}

std::vector<std::string> IntPolynomial::coeff_strings() const {
    std::vector<std::string> out;
    out.reserve(c_.size());
    for (const auto& c : c_) out.push_back(c.get_str());
    return out;
}

IntPolynomial IntPolynomial::from_coeff_strings(const std::vector<std::string>& v) {
    std::vector<mpz_class> c;
    c.reserve(v.size());
    for (const auto& s : v) c.emplace_back(s);
    return IntPolynomial(std::move(c));
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<mpz_class> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
    return IntPolynomial(std::move(c));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<mpz_class> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
    return IntPolynomial(std::move(c));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return IntPolynomial();
    std::vector<mpz_class> c(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return IntPolynomial(std::move(c));
}

bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.c_ == b.c_; }

}  // namespace epade
