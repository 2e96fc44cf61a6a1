#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "epade/certify.hpp"
#include "epade/errors.hpp"
#include "epade/factor.hpp"
#include "epade/hermite_pade.hpp"
#include "epade/measure.hpp"
#include "epade/numtheory.hpp"

using nlohmann::ordered_json;
using namespace epade;

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_field(fields[i]);
    }
    return out;
}

// fixed-point decimal of the lower endpoint, rounded down
std::string fixed_lower(const Ball& b, int decimals) {
    Ball lo = b.lower();
    char fmt[16];
    std::snprintf(fmt, sizeof fmt, "%%.%dRDf", decimals);
    char buf[128];
    mpfr_snprintf(buf, sizeof buf, fmt, lo.mid());
    std::string s(buf);
    if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') s.erase(0, 1);
    return s;
}

std::vector<mpz_class> parse_lambda(const std::string& s) {
    std::vector<mpz_class> out;
    std::string cur;
    for (char c : s + ",") {
        if (c == ',') {
            if (cur.empty()) throw PreconditionError("lambda: empty coefficient");
            out.emplace_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (out.empty()) throw PreconditionError("lambda: no coefficients given");
    return out;
}

struct Options {
    unsigned long m = 2, l = 2, m1 = 1, m2 = 4, dexp = 2, box = 10, m_max = 14;
    std::string loglogH, logH, lambda, variant = "generic";
    long precision_bits = 128;
    std::string format = "text";
    bool opt_in_heavy = false;
    double tolerance = 1e-9;
};

Ball parse_logslot(const std::string& s, long prec, const char* what) {
    if (s.empty()) throw PreconditionError(std::string(what) + " is required");
    return Ball::from_decimal(s, prec);
}

ordered_json poly_json(const IntPolynomial& p) { return ordered_json(p.coeff_strings()); }

int cmd_approx(const Options& o) {
    ApproxSystem sys = build_system(o.m, o.l, o.opt_in_heavy ? 20000 : kDefaultOrderCap);
    CommonFactorReport rep = extract_common_factor(sys);
    ordered_json out;
    out["m"] = o.m;
    out["l"] = o.l;
    out["content_factor"] = sys.content_factor.get_str();
    ordered_json rows = ordered_json::array();
    for (unsigned long k = 0; k <= o.m; ++k) {
        ordered_json row = ordered_json::array();
        for (unsigned long j = 0; j <= o.m; ++j) row.push_back(poly_json(sys.at(k, j)));
        rows.push_back(std::move(row));
    }
    out["polys"] = std::move(rows);
    ordered_json nu;
    for (auto& [p, v] : rep.nu_exact) nu[std::to_string(p)] = v;
    out["nu_exact"] = std::move(nu);
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_det(const Options& o) {
    DeterminantShape d = determinant_shape(o.m, o.l);
    if (o.format == "json") {
        ordered_json out;
        out["m"] = o.m;
        out["l"] = o.l;
        out["c"] = d.c.get_str();
        out["exponent"] = d.exponent;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "determinant = c * t^" << d.exponent << "\n";
        std::cout << "exponent = " << d.exponent << " (m(m+1)l = " << o.m * (o.m + 1) * o.l
                  << ")\n";
        std::cout << "c = " << d.c.get_str() << "\n";
        std::cout << "c_nonzero = " << (d.c != 0 ? "true" : "false") << "\n";
    }
    return 0;
}

int cmd_factor(const Options& o) {
    ApproxSystem sys = build_system(o.m, o.l, o.opt_in_heavy ? 20000 : kDefaultOrderCap);
    CommonFactorReport rep = extract_common_factor(sys);
    if (o.format == "json") {
        ordered_json out;
        out["m"] = rep.m;
        out["l"] = rep.l;
        ordered_json ne, nl;
        for (auto& [p, v] : rep.nu_exact) ne[std::to_string(p)] = v;
        for (auto& [p, v] : rep.nu_lower) nl[std::to_string(p)] = v;
        out["nu_exact"] = std::move(ne);
        out["nu_lower"] = std::move(nl);
        out["d_exact"] = rep.d_exact.get_str();
        out["d_lower"] = rep.d_lower.get_str();
        std::cout << out.dump(2) << "\n";
    } else if (o.format == "csv") {
        std::cout << "p,nu_exact,nu_lower\n";
        for (auto& [p, v] : rep.nu_exact)
            std::cout << csv_row({std::to_string(p), std::to_string(v),
                                  std::to_string(rep.nu_lower.at(p))})
                      << "\n";
    } else {
        std::cout << "m = " << rep.m << " l = " << rep.l << "\n";
        for (auto& [p, v] : rep.nu_exact)
            std::cout << "p = " << p << ": nu_exact = " << v
                      << " nu_lower = " << rep.nu_lower.at(p) << "\n";
        std::cout << "d_exact = " << rep.d_exact.get_str() << "\n";
        std::cout << "d_lower = " << rep.d_lower.get_str() << "\n";
    }
    return 0;
}

int cmd_kappa(const Options& o) {
    KappaValue kv = kappa_m(o.m, o.precision_bits < 192 ? 192 : o.precision_bits);
    if (o.format == "json") {
        ordered_json out;
        out["m"] = kv.m;
        out["value"] = kv.value.str();
        out["lower"] = kv.value.str_lower();
        out["upper"] = kv.value.str_upper();
        ordered_json terms = ordered_json::array();
        for (auto& t : kv.terms) {
            ordered_json jt;
            jt["p"] = t.p;
            jt["min_floor_sum"] = t.min_floor_sum;
            jt["w"] = t.w.str();
            terms.push_back(std::move(jt));
        }
        out["terms"] = std::move(terms);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "kappa_" << kv.m << " = " << kv.value.str() << "\n";
        for (auto& t : kv.terms)
            std::cout << "  p = " << t.p << " min_floor_sum = " << t.min_floor_sum
                      << " w = " << t.w.str() << "\n";
    }
    return 0;
}

int cmd_kappa_table(const Options& o) {
    if (o.m_max < 2 || o.m_max > 14)
        throw PreconditionError("kappa-table: --m-max must lie in [2, 14]");
    std::vector<std::vector<std::string>> rows;
    for (unsigned long m = 2; m <= o.m_max; ++m) {
        KappaValue kv = kappa_m(m, 192);
        Ball paper = Ball::from_decimal(kKappaReferenceTable[m - 2], 192);
        Ball margin = kv.value.lower() - paper;
        char mbuf[64];
        mpfr_snprintf(mbuf, sizeof mbuf, "%.3RDe", margin.lower().mid());
        std::string ms(mbuf);
        if (ms.find_first_not_of("-0.e+") == std::string::npos && ms[0] == '-') ms.erase(0, 1);
        rows.push_back({std::to_string(m), fixed_lower(kv.value, 9),
                        kKappaReferenceTable[m - 2], ms});
    }
    if (o.format == "json") {
        ordered_json out = ordered_json::array();
        for (auto& r : rows) {
            ordered_json jr;
            jr["m"] = std::stoul(r[0]);
            jr["kappa_lower"] = r[1];
            jr["paper_value"] = r[2];
            jr["margin"] = r[3];
            out.push_back(std::move(jr));
        }
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "m,kappa_lower,paper_value,margin\n";
        for (auto& r : rows) std::cout << csv_row(r) << "\n";
    }
    return 0;
}

int cmd_fm_table(const Options& o) {
    auto rows = fm_table(192);
    if (o.format == "json") {
        ordered_json out = ordered_json::array();
        for (auto& r : rows) {
            ordered_json jr;
            jr["m"] = r.m;
            jr["f"] = r.f.str();
            jr["product"] = r.product.str();
            out.push_back(std::move(jr));
        }
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "m,f,product,f_le_product\n";
        for (auto& r : rows)
            std::cout << csv_row({std::to_string(r.m), fixed_lower(r.f, 6),
                                  fixed_lower(r.product, 6), "true"})
                      << "\n";
    }
    return 0;
}

int cmd_bound(const Options& o) {
    Ball logH = parse_logslot(o.logH, o.precision_bits, "--logH");
    MeasureParams params = params_for_e(o.m, std::max<long>(192, o.precision_bits));
    BoundParts bp = o.variant == "corollary" ? corollary_bound(params, logH)
                                             : generic_lower_bound(params, logH);
    if (o.format == "json") {
        ordered_json out;
        out["m"] = o.m;
        out["log_h"] = o.logH;
        out["variant"] = o.variant;
        out["epsilon"] = bp.epsilon.str();
        out["prefactor"] = bp.prefactor.str();
        out["log_bound"] = bp.log_bound.str();
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "variant = " << o.variant << "\n";
        std::cout << "epsilon = " << bp.epsilon.str() << "\n";
        std::cout << "prefactor = " << bp.prefactor.str() << "\n";
        std::cout << "log_bound = " << bp.log_bound.str() << "\n";
    }
    return 0;
}

int cmd_omega(const Options& o) {
    Ball ll = parse_logslot(o.loglogH, o.precision_bits, "--loglogH");
    Ball om = omega_upper(o.m, ll, std::max<long>(192, o.precision_bits));
    if (o.format == "json") {
        ordered_json out;
        out["m"] = o.m;
        out["loglog_h"] = o.loglogH;
        out["omega_upper"] = om.str();
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << om.str() << "\n";
    }
    return 0;
}

int cmd_sparse(const Options& o) {
    mpfr_prec_t prec = std::max<long>(192, o.precision_bits);
    Ball ll = parse_logslot(o.loglogH, prec, "--loglogH");
    Ball exponent = sparse_bound(o.m1, o.m2, ll, prec);
    MeasureParams params = params_for_sparse(o.m1, o.m2, prec);
    BoundParts bp = generic_lower_bound(params, exp(ll));
    if (o.format == "json") {
        ordered_json out;
        out["m1"] = o.m1;
        out["m2"] = o.m2;
        out["loglog_h"] = o.loglogH;
        out["rho"] = rho_for(o.m2, prec).str();
        out["exponent"] = exponent.str();
        out["generic_epsilon"] = bp.epsilon.str();
        out["generic_log_bound"] = bp.log_bound.str();
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "exponent = " << exponent.str() << "\n";
        std::cout << "rho = " << rho_for(o.m2, prec).str() << "\n";
        std::cout << "generic_epsilon = " << bp.epsilon.str() << "\n";
        std::cout << "generic_log_bound = " << bp.log_bound.str() << "\n";
    }
    return 0;
}

int cmd_power(const Options& o) {
    mpfr_prec_t prec = std::max<long>(192, o.precision_bits);
    Ball ll = parse_logslot(o.loglogH, prec, "--loglogH");
    Ball exponent = power_measure(o.dexp, o.m, ll, prec);
    if (o.format == "json") {
        ordered_json out;
        out["d"] = o.dexp;
        out["m"] = o.m;
        out["loglog_h"] = o.loglogH;
        out["exponent"] = exponent.str();
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "exponent = " << exponent.str() << "\n";
    }
    return 0;
}

int cmd_verify(const Options& o) {
    LinearForm form;
    form.lambda = parse_lambda(o.lambda);
    Ball logH = parse_logslot(o.logH, std::max<long>(192, o.precision_bits), "--logH");
    FormCertificate cert =
        verify_measure(form, logH, std::max<long>(256, o.precision_bits));
    if (o.format == "json") {
        ordered_json out;
        ordered_json lam = ordered_json::array();
        for (auto& c : cert.lambda) lam.push_back(c.get_str());
        out["lambda"] = std::move(lam);
        out["m"] = cert.m;
        out["log_h"] = o.logH;
        out["value_lo"] = cert.value.str_lower();
        out["value_hi"] = cert.value.str_upper();
        out["bound_hi"] = cert.bound.str_upper();
        out["passed"] = cert.passed;
        out["bits"] = static_cast<long>(cert.precision_used);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << (cert.passed ? "PASS" : "FAIL") << "\n";
        std::cout << "value = " << cert.value.str() << "\n";
        std::cout << "bound = " << cert.bound.str() << "\n";
        std::cout << "bits = " << cert.precision_used << "\n";
    }
    return cert.passed ? 0 : 3;
}

int cmd_qr_check(const Options& o) {
    QRPair qr = check_qr_bounds(o.m, o.l, o.opt_in_heavy);
    if (o.format == "json") {
        ordered_json out;
        out["m"] = o.m;
        out["l"] = o.l;
        out["q_passed"] = qr.q.passed;
        out["q_min_margin"] = qr.q.min_margin;
        out["r_passed"] = qr.r.passed;
        out["r_min_margin"] = qr.r.min_margin;
        out["q_margins"] = qr.q.margins;
        out["r_margins"] = qr.r.margins;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "Q: " << (qr.q.passed ? "PASS" : "FAIL")
                  << " min log-margin = " << qr.q.min_margin << "\n";
        std::cout << "R: " << (qr.r.passed ? "PASS" : "FAIL")
                  << " min log-margin = " << qr.r.min_margin << "\n";
    }
    return 0;
}

int cmd_search(const Options& o) {
    SearchResult sr = empirical_min_search(o.m, static_cast<long>(o.box));
    if (o.format == "json") {
        ordered_json out;
        out["m"] = o.m;
        out["box"] = o.box;
        out["lambda"] = sr.lambda;
        out["min_value"] = sr.min_value.str();
        out["min_value_lo"] = sr.min_value.str_lower();
        out["min_value_hi"] = sr.min_value.str_upper();
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "lambda = (";
        for (size_t i = 0; i < sr.lambda.size(); ++i)
            std::cout << (i ? ", " : "") << sr.lambda[i];
        std::cout << ")\n";
        std::cout << "min |Lambda| = " << sr.min_value.str() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hermite-Pade systems for the exponential and certified "
                 "transcendence-measure bounds for e"};
    app.require_subcommand(1);

    Options o;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--precision-bits", o.precision_bits, "working precision in bits")
            ->check(CLI::Range(32l, 1l << 20));
        sub->add_option("--format", o.format, "output format")
            ->check(CLI::IsMember({"json", "csv", "text"}));
        sub->add_flag("--opt-in-heavy", o.opt_in_heavy,
                      "allow the large m = 4, l = 2181 construction");
    };

    auto* approx = app.add_subcommand("approx", "build the normalized system, extract the content");
    approx->add_option("--m", o.m)->required();
    approx->add_option("--l", o.l)->required();
    add_common(approx);

    auto* det = app.add_subcommand("det", "exact determinant shape c t^{m(m+1)l}");
    det->add_option("--m", o.m)->required();
    det->add_option("--l", o.l)->required();
    add_common(det);

    auto* factor = app.add_subcommand("factor", "common-factor report for a system");
    factor->add_option("--m", o.m)->required();
    factor->add_option("--l", o.l)->required();
    add_common(factor);

    auto* kappa = app.add_subcommand("kappa", "certified enclosure of kappa_m");
    kappa->add_option("--m", o.m)->required();
    add_common(kappa);

    auto* ktable = app.add_subcommand("kappa-table", "kappa_m against the published table");
    ktable->add_option("--m-max", o.m_max);
    add_common(ktable);

    auto* fmt_ = app.add_subcommand("fm-table", "f(m) against the comparison product, m = 5..14");
    add_common(fmt_);

    auto* bound = app.add_subcommand("bound", "lower-bound evaluation at a given log H");
    bound->add_option("--m", o.m)->required();
    bound->add_option("--logH", o.logH)->required();
    bound->add_option("--variant", o.variant)->check(CLI::IsMember({"generic", "corollary"}));
    add_common(bound);

    auto* omega = app.add_subcommand("omega", "piecewise upper bound for omega(m, H)");
    omega->add_option("--m", o.m)->required();
    omega->add_option("--loglogH", o.loglogH)->required();
    add_common(omega);

    auto* sparse = app.add_subcommand("sparse", "sparse-polynomial measure exponent");
    sparse->add_option("--m1", o.m1)->required();
    sparse->add_option("--m2", o.m2)->required();
    sparse->add_option("--loglogH", o.loglogH)->required();
    add_common(sparse);

    auto* power = app.add_subcommand("power", "measure exponent for powers of e");
    power->add_option("--dexp", o.dexp)->required();
    power->add_option("--m", o.m)->required();
    power->add_option("--loglogH", o.loglogH)->required();
    add_common(power);

    auto* verify = app.add_subcommand("verify", "certify a linear form against the bound");
    verify->add_option("--lambda", o.lambda, "comma-separated integer coefficients")->required();
    verify->add_option("--logH", o.logH)->required();
    add_common(verify);

    auto* qr = app.add_subcommand("qr-check", "coefficient and remainder size checks");
    qr->add_option("--m", o.m)->required();
    qr->add_option("--l", o.l)->required();
    add_common(qr);

    auto* search = app.add_subcommand("search", "exhaustive minimum of |Lambda| over a box");
    search->add_option("--m", o.m)->required();
    search->add_option("--box", o.box)->required();
    add_common(search);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(approx)) return cmd_approx(o);
        if (app.got_subcommand(det)) return cmd_det(o);
        if (app.got_subcommand(factor)) return cmd_factor(o);
        if (app.got_subcommand(kappa)) return cmd_kappa(o);
        if (app.got_subcommand(ktable)) return cmd_kappa_table(o);
        if (app.got_subcommand(fmt_)) return cmd_fm_table(o);
        if (app.got_subcommand(bound)) return cmd_bound(o);
        if (app.got_subcommand(omega)) return cmd_omega(o);
        if (app.got_subcommand(sparse)) return cmd_sparse(o);
        if (app.got_subcommand(power)) return cmd_power(o);
        if (app.got_subcommand(verify)) return cmd_verify(o);
        if (app.got_subcommand(qr)) return cmd_qr_check(o);
        if (app.got_subcommand(search)) return cmd_search(o);
    } catch (const GuaranteeError& e) {
        std::cerr << "guarantee violated: " << e.what() << "\n";
        return 3;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 2;
    } catch (const PrecisionError& e) {
        std::cerr << "precision limit: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
