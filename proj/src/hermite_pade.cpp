#include "epade/hermite_pade.hpp"

#include <algorithm>
#include <future>
#include <thread>

#include "epade/errors.hpp"
#include "epade/numtheory.hpp"

namespace epade {

namespace {

void check_nodes(const MultiIndex& lbar, const std::vector<long>& nodes) {
    if (nodes.size() != lbar.size())
        throw PreconditionError("node vector length must match multi-index length");
    for (size_t i = 0; i < nodes.size(); ++i)
        for (size_t j = i + 1; j < nodes.size(); ++j)
            if (nodes[i] == nodes[j]) throw PreconditionError("nodes must be distinct");
}

// (c - w)^l by the binomial theorem.
IntPolynomial linear_power(long c, unsigned long l) {
    std::vector<mpz_class> out(l + 1);
    mpz_class cz(c), cpow(1);
    // out[i] = C(l, i) (-1)^i c^{l-i}; fill from i = l down so c^j grows once
    for (unsigned long i = 0; i <= l; ++i) {
        unsigned long k = l - i;  // power of c is i at index k
        mpz_class bin;
        mpz_bin_uiui(bin.get_mpz_t(), l, k);
        out[k] = bin * cpow;
        if (k % 2 == 1) out[k] = -out[k];
        cpow *= cz;
    }
    return IntPolynomial(std::move(out));
}

// A(t) = sum_i t^{L-i} i! omega_i.
IntPolynomial assemble_raw(const IntPolynomial& omega, unsigned long L) {
    std::vector<mpz_class> out(L + 1);
    mpz_class fact(1);
    for (unsigned long i = 0; i <= L; ++i) {
        if (i > 0) fact *= i;
        if (omega.coeff(i) != 0) out[L - i] = fact * omega.coeff(i);
    }
    return IntPolynomial(std::move(out));
}

// Q(w)^l for Q with Q(0) != 0, by the P'Q = l Q'P coefficient recurrence.
std::vector<mpz_class> poly_pow(const std::vector<mpz_class>& q, unsigned long l) {
    const size_t dq = q.size() - 1;
    const size_t dout = dq * l;
    std::vector<mpz_class> p(dout + 1);
    mpz_pow_ui(p[0].get_mpz_t(), q[0].get_mpz_t(), l);
    mpz_class sum, quot, rem;
    for (size_t n1 = 1; n1 <= dout; ++n1) {
        sum = 0;
        const size_t smax = std::min(dq, n1);
        for (size_t s = 1; s <= smax; ++s) {
            long mult = static_cast<long>((l + 1) * s) - static_cast<long>(n1);
            if (mult == 0 || q[s] == 0) continue;
            sum += mult * q[s] * p[n1 - s];
        }
        mpz_class den = q[0] * static_cast<unsigned long>(n1);
        mpz_tdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), sum.get_mpz_t(), den.get_mpz_t());
        if (rem != 0) throw GuaranteeError("poly_pow: recurrence division not exact");
        p[n1] = quot;
    }
    return p;
}

// P_j(w) = prod_{i=0..m} (i - j - w)^l = (-w)^l * Q_j(w)^l.
IntPolynomial full_product(unsigned long m, unsigned long l, unsigned long j) {
    IntPolynomial q = IntPolynomial::constant(1);
    for (unsigned long i = 0; i <= m; ++i) {
        if (i == j) continue;
        q = q * IntPolynomial(
                    {mpz_class(static_cast<long>(i) - static_cast<long>(j)), mpz_class(-1)});
    }
    std::vector<mpz_class> r = poly_pow(q.coeffs(), l);
    std::vector<mpz_class> out(l + r.size());
    const bool neg = (l % 2 == 1);
    for (size_t n = 0; n < r.size(); ++n) out[l + n] = neg ? mpz_class(-r[n]) : r[n];
    return IntPolynomial(std::move(out));
}

// B_{k,j} coefficients from Omega_{k,j}: coeff at t^{L-i} is omega_i * i!/(l-1)!.
IntPolynomial assemble_normalized(const IntPolynomial& omega, unsigned long L, unsigned long l) {
    std::vector<mpz_class> out(L + 1);
    mpz_class ratio(1);
    for (unsigned long i = l - 1; i <= L; ++i) {
        if (i > l - 1) ratio *= i;
        if (omega.coeff(i) != 0) out[L - i] = ratio * omega.coeff(i);
    }
    return IntPolynomial(std::move(out));
}

}  // namespace

mpz_class sigma(unsigned long i, const MultiIndex& lbar, const std::vector<long>& beta) {
    if (beta.empty() || beta[0] != 0) throw PreconditionError("sigma: beta_0 must be 0");
    if (i > lbar.L()) throw PreconditionError("sigma: i must be <= L");
    return omega_poly(lbar, beta).coeff(i);
}

IntPolynomial omega_poly(const MultiIndex& lbar, const std::vector<long>& beta) {
    if (beta.size() != lbar.size())
        throw PreconditionError("omega_poly: beta length must match multi-index length");
    IntPolynomial acc = IntPolynomial::constant(1);
    for (size_t j = 0; j < beta.size(); ++j) acc = acc * linear_power(beta[j], lbar[j]);
    return acc;
}

IntPolynomial build_A0(const MultiIndex& lbar, const std::vector<long>& alpha) {
    check_nodes(lbar, alpha);
    if (alpha[0] != 0) throw PreconditionError("build_A0: alpha_0 must be 0");
    return assemble_raw(omega_poly(lbar, alpha), lbar.L());
}

IntPolynomial build_Aj(const MultiIndex& lbar, const std::vector<long>& alpha, unsigned long j) {
    check_nodes(lbar, alpha);
    if (alpha[0] != 0) throw PreconditionError("build_Aj: alpha_0 must be 0");
    if (j < 1 || j > lbar.m()) throw PreconditionError("build_Aj: j must be in [1, m]");
    std::vector<long> shifted(alpha.size());
    for (size_t i = 0; i < alpha.size(); ++i) shifted[i] = alpha[i] - alpha[j];
    return assemble_raw(omega_poly(lbar, shifted), lbar.L());
}

RemainderSeries remainder_series(const MultiIndex& lbar, const std::vector<long>& alpha,
                                 unsigned long j, unsigned long order) {
    const unsigned long L = lbar.L();
    if (order < L + 1) throw PreconditionError("remainder_series: order must be >= L+1");
    IntPolynomial a0 = build_A0(lbar, alpha);
    IntPolynomial aj = build_Aj(lbar, alpha, j);
    const mpz_class aje(alpha[j]);

    RemainderSeries rs;
    rs.truncation_order = order;
    rs.coeffs.resize(order + 1);
    // e^{alpha_j t} A_0(t): coefficient N is sum_h a0_h alpha_j^{N-h} / (N-h)!
    std::vector<mpz_class> pw(order + 1), fact(order + 1);
    pw[0] = 1;
    fact[0] = 1;
    for (unsigned long n = 1; n <= order; ++n) {
        pw[n] = pw[n - 1] * aje;
        fact[n] = fact[n - 1] * n;
    }
    const unsigned long d0 = static_cast<unsigned long>(a0.degree());
    for (unsigned long N = 0; N <= order; ++N) {
        mpq_class acc(0);
        for (unsigned long h = 0; h <= std::min(N, d0); ++h) {
            if (a0.coeff(h) == 0) continue;
            acc += mpq_class(a0.coeff(h) * pw[N - h], fact[N - h]);
        }
        acc -= mpq_class(aj.coeff(N));
        acc.canonicalize();
        if (N <= L && acc != 0)
            throw GuaranteeError("remainder_series: low-order coefficient nonzero");
        rs.coeffs[N] = acc;
    }
    return rs;
}

ApproxSystem build_system(unsigned long m, unsigned long l, unsigned long order_cap) {
    if (m < 1) throw PreconditionError("build_system: m must be >= 1");
    if (l < 2) throw PreconditionError("build_system: l must be >= 2");
    if ((m + 1) * l > order_cap)
        throw ResourceError("build_system: (m+1)l exceeds the configured cap");
    ApproxSystem sys;
    sys.m = m;
    sys.l = l;
    sys.L = (m + 1) * l - 1;
    sys.polys.assign(m + 1, std::vector<IntPolynomial>(m + 1));
    for (unsigned long j = 0; j <= m; ++j) {
        IntPolynomial pj = full_product(m, l, j);
        for (unsigned long k = 0; k <= m; ++k) {
            IntPolynomial omega =
                pj.divexact_linear(static_cast<long>(k) - static_cast<long>(j));
            IntPolynomial b = assemble_normalized(omega, sys.L, l);
            if (j >= 1) b.negate();
            sys.polys[k][j] = std::move(b);
        }
    }
    return sys;
}

namespace {

// Determinant of an n x n polynomial matrix by expansion over column subsets.
IntPolynomial poly_matrix_det(const std::vector<std::vector<IntPolynomial>>& a) {
    const size_t n = a.size();
    std::vector<IntPolynomial> d(size_t(1) << n);
    d[0] = IntPolynomial::constant(1);
    for (size_t mask = 1; mask < d.size(); ++mask) {
        const size_t r = static_cast<size_t>(__builtin_popcountll(mask)) - 1;
        IntPolynomial acc;
        int pos = 0;
        for (size_t c = 0; c < n; ++c) {
            if (!(mask & (size_t(1) << c))) continue;
            IntPolynomial term = a[r][c] * d[mask ^ (size_t(1) << c)];
            if (pos % 2 == 1) term.negate();
            acc = acc + term;
            ++pos;
        }
        d[mask] = std::move(acc);
    }
    return d.back();
}

}  // namespace

DeterminantShape determinant_shape(unsigned long m, unsigned long l) {
    if ((m + 1) * l > 512 || m > 6)
        throw ResourceError("determinant_shape: system too large for exact determinant");
    ApproxSystem sys = build_system(m, l);
    IntPolynomial det = poly_matrix_det(sys.polys);
    const unsigned long expect = m * (m + 1) * l;
    if (det.is_zero() || static_cast<unsigned long>(det.degree()) != expect)
        throw GuaranteeError("determinant_shape: degree differs from m(m+1)l");
    for (unsigned long i = 0; i < expect; ++i)
        if (det.coeff(i) != 0)
            throw GuaranteeError("determinant_shape: non-monomial term survives");
    return DeterminantShape{det.coeff(expect), expect};
}

namespace {

struct ColumnScan {
    std::vector<mpz_class> values;                 // raw +-A*/(l-1)! at t=1, indexed by k
    std::map<unsigned long, unsigned long> nu;     // min valuation over this column
};

ColumnScan scan_column(unsigned long m, unsigned long l, unsigned long j,
                       const std::vector<unsigned long>& primes) {
    const unsigned long L = (m + 1) * l - 1;
    ColumnScan out;
    out.values.resize(m + 1);
    IntPolynomial pj = full_product(m, l, j);
    for (unsigned long k = 0; k <= m; ++k) {
        IntPolynomial omega = pj.divexact_linear(static_cast<long>(k) - static_cast<long>(j));
        mpz_class value(0), ratio(1);
        std::map<unsigned long, unsigned long> vp_ratio;
        for (unsigned long p : primes) vp_ratio[p] = 0;
        for (unsigned long i = l - 1; i <= L; ++i) {
            if (i > l - 1) {
                ratio *= i;
                for (unsigned long p : primes) vp_ratio[p] += vp(i, p);
            }
            const mpz_class& w = omega.coeff(i);
            if (w == 0) continue;
            value += ratio * w;
            for (unsigned long p : primes) {
                unsigned long v = vp_ratio[p] + vp(w, p);
                auto it = out.nu.find(p);
                if (it == out.nu.end() || v < it->second) out.nu[p] = v;
            }
        }
        if (j >= 1) value = -value;
        out.values[k] = std::move(value);
    }
    return out;
}

}  // namespace

SystemEvaluation evaluate_system_at_one(unsigned long m, unsigned long l,
                                        unsigned long order_cap, bool parallel) {
    if (m < 1) throw PreconditionError("evaluate_system_at_one: m must be >= 1");
    if (l < 2) throw PreconditionError("evaluate_system_at_one: l must be >= 2");
    if ((m + 1) * l > order_cap)
        throw ResourceError("evaluate_system_at_one: (m+1)l exceeds the configured cap");

    std::vector<unsigned long> primes;
    for (unsigned long p : primes_upto((m + 1) / 2).primes) primes.push_back(p);

    SystemEvaluation ev;
    ev.m = m;
    ev.l = l;
    ev.b_values.assign(m + 1, std::vector<mpz_class>(m + 1));

    std::vector<ColumnScan> cols(m + 1);
    if (parallel && std::thread::hardware_concurrency() > 1) {
        std::vector<std::future<ColumnScan>> fut;
        fut.reserve(m + 1);
        for (unsigned long j = 0; j <= m; ++j)
            fut.push_back(std::async(std::launch::async, scan_column, m, l, j, primes));
        for (unsigned long j = 0; j <= m; ++j) cols[j] = fut[j].get();
    } else {
        for (unsigned long j = 0; j <= m; ++j) cols[j] = scan_column(m, l, j, primes);
    }

    for (unsigned long p : primes) {
        unsigned long best = 0;
        bool first = true;
        for (unsigned long j = 0; j <= m; ++j) {
            auto it = cols[j].nu.find(p);
            if (it == cols[j].nu.end()) continue;
            if (first || it->second < best) best = it->second;
            first = false;
        }
        ev.nu_exact[p] = first ? 0 : best;
        mpz_class pk;
        mpz_ui_pow_ui(pk.get_mpz_t(), p, ev.nu_exact[p]);
        ev.d_exact *= pk;
    }
    for (unsigned long k = 0; k <= m; ++k)
        for (unsigned long j = 0; j <= m; ++j) {
            mpz_class v = cols[j].values[k];
            if (ev.d_exact != 1) {
                if (!mpz_divisible_p(v.get_mpz_t(), ev.d_exact.get_mpz_t()))
                    throw GuaranteeError("evaluate_system_at_one: content does not divide value");
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), ev.d_exact.get_mpz_t());
            }
            ev.b_values[k][j] = std::move(v);
        }
    return ev;
}

}  // namespace epade
