#include "pnpv/criteria.hpp"

#include <json.hpp>

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace pnpv::criteria {

using intfact::pow_mpz;

const char* method_name(Method m) {
    switch (m) {
        case Method::Basic: return "BASIC";
        case Method::Sieve: return "SIEVE";
        case Method::Modified: return "MODIFIED";
        case Method::WbdScreen: return "WBD_SCREEN";
        case Method::Cond61: return "COND61";
        case Method::Lemma61: return "LEMMA61";
    }
    return "?";
}

unsigned SieveConfig::s() const {
    unsigned t = 0;
    for (auto& [d, c] : sieved_classes) t += c;
    return t;
}

mpz_class SieveConfig::d_value() const {
    mpz_class v = 1;
    for (auto& p : d_primes) v *= p;
    return v;
}

namespace {

std::string degrees_echo(const std::vector<std::pair<unsigned, unsigned>>& cls) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (auto& [d, c] : cls) {
        for (unsigned i = 0; i < c; ++i) {
            os << (first ? "" : ",") << d;
            first = false;
        }
    }
    os << "}";
    return os.str();
}

std::string primes_echo(const std::vector<mpz_class>& ps) {
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < ps.size(); ++i) os << (i ? "," : "") << ps[i];
    os << "}";
    return os.str();
}

}  // namespace

std::string SieveConfig::echo() const {
    std::ostringstream os;
    os << "d=" << d_value() << " sieved_primes=" << primes_echo(sieved_primes)
       << " g_degrees=" << degrees_echo(g_choice.degrees)
       << " sieved_degrees=" << degrees_echo(sieved_classes);
    return os.str();
}

std::string ModSieveConfig::echo() const {
    std::ostringstream os;
    os << "k=" << primes_echo(k_primes) << " P=" << primes_echo(P_primes)
       << " L=" << primes_echo(L_primes) << " g=" << degrees_echo(g_choice.degrees)
       << " G=" << degrees_echo(G_classes) << " H=" << degrees_echo(H_classes);
    return os.str();
}

CriterionReport basic_condition(const mpz_class& q, unsigned m, unsigned n, const mpz_class& w1,
                                const mpz_class& w2, bool w_is_bound) {
    if (m < 3) throw std::invalid_argument("basic_condition: m >= 3 required");
    if (n < 1 || w1 < 1 || w2 < 1) throw std::invalid_argument("basic_condition: n, W >= 1");
    CriterionReport rep;
    rep.method = Method::Basic;
    rep.q = q;
    rep.m = m;
    rep.n = n;
    rep.lhs_num = static_cast<long>(m) - 2;
    rep.lhs_den = 2;
    rep.rhs = mpq_class((2 * n + 1) * w1 * w1 * w2 * w2);
    rep.used_bounds = w_is_bound;
    rep.holds = intfact::compare_power(q, rep.lhs_num, rep.lhs_den, rep.rhs) ==
                intfact::Ordering::Greater;
    std::ostringstream os;
    os << "W1=" << w1 << " W2=" << w2;
    rep.config_echo = os.str();
    return rep;
}

SieveLambda prime_sieve_lambda(const mpz_class& q, const SieveConfig& config) {
    SieveLambda out;
    mpq_class lam = 1;
    for (const auto& p : config.sieved_primes) lam -= mpq_class(2, p);
    for (const auto& [deg, cnt] : config.sieved_classes)
        lam -= mpq_class(2 * cnt, pow_mpz(q, deg));
    lam.canonicalize();
    out.lambda = lam;
    if (lam > 0) {
        unsigned r = config.r(), s = config.s();
        mpq_class L = mpq_class(2 * static_cast<long>(r) + 2 * static_cast<long>(s) - 1) / lam + 2;
        L.canonicalize();
        out.Lambda = L;
    }
    return out;
}

CriterionReport prime_sieve_condition(const mpz_class& q, unsigned m, unsigned n,
                                      const SieveConfig& config, const mpz_class& wd,
                                      const mpz_class& wg, bool w_is_bound) {
    if (m < 3) throw std::invalid_argument("prime_sieve_condition: m >= 3 required");
    CriterionReport rep;
    rep.method = Method::Sieve;
    rep.q = q;
    rep.m = m;
    rep.n = n;
    rep.lhs_num = static_cast<long>(m) - 2;
    rep.lhs_den = 2;
    rep.used_bounds = w_is_bound;
    rep.config_echo = config.echo();
    SieveLambda sl = prime_sieve_lambda(q, config);
    rep.lambda = sl.lambda;
    if (!sl.Lambda) {
        rep.holds = false;
        rep.note = "NONPOSITIVE_LAMBDA";
        return rep;
    }
    rep.Lambda = *sl.Lambda;
    rep.rhs = mpq_class((2 * n + 1) * wd * wd * wg * wg) * *sl.Lambda;
    rep.rhs.canonicalize();
    rep.holds = intfact::compare_power(q, rep.lhs_num, rep.lhs_den, rep.rhs) ==
                intfact::Ordering::Greater;
    return rep;
}

CriterionReport modified_sieve_condition(const mpz_class& q, unsigned m, unsigned n,
                                         const ModSieveConfig& config, bool w_is_bound) {
    if (m < 3) throw std::invalid_argument("modified_sieve_condition: m >= 3 required");
    CriterionReport rep;
    rep.method = Method::Modified;
    rep.q = q;
    rep.m = m;
    rep.n = n;
    rep.lhs_num = static_cast<long>(m) - 2;
    rep.lhs_den = 2;
    rep.used_bounds = w_is_bound;
    rep.config_echo = config.echo();

    mpq_class th = intfact::theta(config.k_primes);
    auto [Th, wg] = polyfact::theta_w_of_choice(q, config.g_choice);
    mpz_class wk = pow_mpz(2, config.k_primes.size());

    SieveConfig inner;
    inner.sieved_primes = config.P_primes;
    inner.sieved_classes = config.G_classes;
    SieveLambda sl = prime_sieve_lambda(q, inner);
    rep.lambda = sl.lambda;
    if (sl.lambda <= 0) {
        rep.holds = false;
        rep.note = "NONPOSITIVE_LAMBDA";
        return rep;
    }
    rep.Lambda = sl.Lambda;

    unsigned r = static_cast<unsigned>(config.P_primes.size());
    unsigned s = 0;
    for (auto& [d, c] : config.G_classes) s += c;
    unsigned t = static_cast<unsigned>(config.L_primes.size());
    unsigned u = 0;
    for (auto& [d, c] : config.H_classes) u += c;

    mpq_class eps1 = 0, eps2 = 0;
    for (const auto& l : config.L_primes) eps1 += mpq_class(1, l);
    for (const auto& [deg, cnt] : config.H_classes) eps2 += mpq_class(cnt, pow_mpz(q, deg));
    eps1.canonicalize();
    eps2.canonicalize();
    rep.eps1 = eps1;
    rep.eps2 = eps2;

    mpq_class th2Th2 = th * th * Th * Th;
    mpq_class denom = sl.lambda * th2Th2 - 2 * (eps1 + eps2);
    denom.canonicalize();
    if (denom <= 0) {
        rep.holds = false;
        rep.note = "PRECONDITION_FAILED";
        return rep;
    }

    mpq_class a_term = th2Th2 * mpq_class(wk * wk * wg * wg) *
                       (mpq_class(2 * static_cast<long>(r) + 2 * static_cast<long>(s) - 1) +
                        2 * sl.lambda);
    mpq_class b_term = mpq_class(n + 2) * (mpq_class(t) - eps1) +
                       mpq_class(n + 3) * (mpq_class(u) - eps2);
    mpq_class c_term = mpq_class(n) * (mpq_class(t) + mpq_class(u) - 2 * (eps1 + eps2));

    // rhs (rational part) = [(2n+1)A + B] / D; the -C/q^{m/2} residual is
    // folded into the exact decision below.
    mpq_class v = mpq_class(2 * n + 1) * a_term + b_term;
    rep.rhs = v / denom;
    rep.rhs.canonicalize();
    rep.rhs_exact = (c_term == 0);

    // Condition: q^{m/2-1} > [v - c_term q^{-m/2}] / denom
    //   <=>  q^{m-1} denom + c_term > v q^{m/2}.
    mpq_class u_side = mpq_class(pow_mpz(q, m - 1)) * denom + c_term;
    u_side.canonicalize();
    if (u_side <= 0) {
        rep.holds = false;
        return rep;
    }
    // v >= 0 always (A > 0, B >= 0), so compare (m even) directly or square once.
    if (m % 2 == 0) {
        rep.holds = u_side > v * mpq_class(pow_mpz(q, m / 2));
    } else {
        rep.holds = u_side * u_side > v * v * mpq_class(pow_mpz(q, m));
    }
    return rep;
}

mpq_class lambda_closed_form(const mpz_class& q, unsigned m_prime) {
    if (m_prime == 0) throw std::invalid_argument("lambda_closed_form: m' >= 1");
    mpz_class qm1 = q - 1;
    if (!mpz_divisible_ui_p(qm1.get_mpz_t(), m_prime)) throw std::domain_error("DIVISOR_VIOLATION");
    mpz_class a = qm1 / m_prime;
    mpz_class den = (a - 2) * q + 2;
    if (den == 0) throw std::domain_error("SINGULAR");
    mpq_class r(2 * q * q + (a - 6) * q + 4, den);
    r.canonicalize();
    return r;
}

CriterionReport wbd_screen(const mpz_class& q, unsigned m, long e_num, unsigned long e_den,
                           const mpq_class& c, WBoundKind kind, long p2_num,
                           unsigned long p2_den) {
    CriterionReport rep;
    rep.method = Method::WbdScreen;
    rep.q = q;
    rep.m = m;
    rep.lhs_num = e_num;
    rep.lhs_den = e_den;
    rep.rhs = c;
    rep.rhs_exact = (p2_num == 0);
    rep.used_bounds = true;  // W(q^m-1) replaced by a proven upper bound
    rep.holds = intfact::power_exceeds(q, e_num, e_den, c, p2_num, p2_den);
    std::ostringstream os;
    os << "kind=" << (kind == WBoundKind::Eighth ? "EIGHTH" : "ELEVENTH") << " E=" << e_num << "/"
       << e_den;
    if (p2_num) os << " rhs_pow2=" << p2_num << "/" << p2_den;
    rep.config_echo = os.str();
    return rep;
}

CriterionReport cond61_check(const mpz_class& q, unsigned m, unsigned n, const mpz_class& w_qm,
                             const mpq_class& sigma, bool w_is_bound) {
    if (sigma <= 0 || sigma > mpq_class(1, 2))
        throw std::invalid_argument("cond61_check: sigma in (0, 1/2] required");
    CriterionReport rep;
    rep.method = Method::Cond61;
    rep.q = q;
    rep.m = m;
    rep.n = n;
    rep.lhs_num = static_cast<long>(m) - 2;
    rep.lhs_den = 2;
    rep.used_bounds = w_is_bound;
    // q^{m/2-1} > 2(2n+1) m W^2 2^{2m sigma}
    mpq_class base = mpq_class(2 * (2 * n + 1)) * m * mpq_class(w_qm * w_qm);
    rep.rhs = base;       // the 2^{2m sigma} part rides in the exact decision
    rep.rhs_exact = false;
    mpq_class two_exp = 2 * sigma * m;
    two_exp.canonicalize();
    long p2_num = static_cast<long>(mpz_get_si(two_exp.get_num().get_mpz_t()));
    unsigned long p2_den = mpz_get_ui(two_exp.get_den().get_mpz_t());
    rep.holds = intfact::power_exceeds(q, static_cast<long>(m) - 2, 2, base, p2_num, p2_den);
    std::ostringstream os;
    os << "W=" << w_qm << " sigma=" << sigma.get_num() << "/" << sigma.get_den();
    rep.config_echo = os.str();
    return rep;
}

// ---------------------------------------------------------------------------

std::string format_decimal(const mpq_class& x, unsigned places) {
    bool neg = x < 0;
    mpq_class ax = neg ? mpq_class(-x) : x;
    mpz_class scale = pow_mpz(10, places);
    mpq_class scaled = ax * scale;
    mpz_class qq;
    mpz_fdiv_q(qq.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
    // round half away from zero
    if ((scaled - mpq_class(qq)) * 2 >= 1) qq += 1;
    mpz_class ip = qq / scale, fp = qq % scale;
    std::string fs = fp.get_str();
    if (fs.size() < places) fs.insert(0, places - fs.size(), '0');
    std::string out = (neg && qq != 0 ? "-" : "") + ip.get_str();
    if (places) out += "." + fs;
    return out;
}

PrintedValue parse_printed(const std::string& raw) {
    // accepted forms: 1234, 1234.5678, 1.95e6, 5.52 x 10^8
    std::string s;
    for (char ch : raw)
        if (!isspace(static_cast<unsigned char>(ch))) s += ch;
    long exp10 = 0;
    auto epos = s.find_first_of("eE");
    auto xpos = s.find("x10^");
    if (xpos != std::string::npos) {
        exp10 = std::stol(s.substr(xpos + 4));
        s = s.substr(0, xpos);
    } else if (epos != std::string::npos) {
        exp10 = std::stol(s.substr(epos + 1));
        s = s.substr(0, epos);
    }
    auto dot = s.find('.');
    unsigned decimals = 0;
    if (dot != std::string::npos) {
        decimals = static_cast<unsigned>(s.size() - dot - 1);
        s.erase(dot, 1);
    }
    PrintedValue pv;
    mpz_class mant(s, 10);
    long net = exp10 - static_cast<long>(decimals);
    if (net >= 0) {
        pv.value = mpq_class(mant * pow_mpz(10, net));
        pv.ulp = mpq_class(pow_mpz(10, net));
    } else {
        pv.value = mpq_class(mant, pow_mpz(10, -net));
        pv.ulp = mpq_class(1, pow_mpz(10, -net));
    }
    pv.value.canonicalize();
    pv.ulp.canonicalize();
    return pv;
}

std::string CriterionReport::to_json() const {
    nlohmann::json j;
    j["method"] = method_name(method);
    j["q"] = q.get_str();
    j["m"] = m;
    j["n"] = n;
    auto put_rat = [&j](const char* key, const std::optional<mpq_class>& v) {
        if (!v) return;
        j[key] = v->get_num().get_str() + "/" + v->get_den().get_str();
        j[std::string(key) + "_dec"] = format_decimal(*v, 4);
    };
    put_rat("lambda", lambda);
    put_rat("Lambda", Lambda);
    put_rat("eps1", eps1);
    put_rat("eps2", eps2);
    j["lhs_exponent"] = std::to_string(lhs_num) + "/" + std::to_string(lhs_den);
    j["rhs"] = rhs.get_num().get_str() + "/" + rhs.get_den().get_str();
    j["rhs_dec"] = format_decimal(rhs, 4);
    j["rhs_exact"] = rhs_exact;
    j["holds"] = holds;
    j["used_bounds"] = used_bounds;
    if (!note.empty()) j["note"] = note;
    if (!config_echo.empty()) j["config"] = config_echo;
    return j.dump();
}

}  // namespace pnpv::criteria
