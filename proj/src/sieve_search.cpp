#include "pnpv/sieve_search.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cassert>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace pnpv::sieve {

using intfact::pow_mpz;

PrimePower make_prime_power(const mpz_class& p, unsigned k) {
    if (!intfact::is_probable_prime(p)) throw std::invalid_argument("make_prime_power: p not prime");
    return {p, k, pow_mpz(p, k)};
}

PrimePower parse_prime_power(const mpz_class& q) {
    auto [p, k] = polyfact::prime_power_split(q);
    return {p, k, q};
}

const char* pair_tag_name(PairTag t) {
    switch (t) {
        case PairTag::VerifiedBasic: return "VERIFIED_BASIC";
        case PairTag::VerifiedSieve: return "VERIFIED_SIEVE";
        case PairTag::VerifiedModified: return "VERIFIED_MODIFIED";
        case PairTag::VerifiedScreen: return "VERIFIED_SCREEN";
        case PairTag::PossibleException: return "POSSIBLE_EXCEPTION";
    }
    return "?";
}

std::string PairStatus::to_json(const PrimePower& q, unsigned m) const {
    nlohmann::json j;
    j["q"] = q.q.get_str();
    j["p"] = q.p.get_str();
    j["k"] = q.k;
    j["m"] = m;
    j["status"] = pair_tag_name(tag);
    j["bounds_used"] = bounds_used;
    if (certificate) j["certificate"] = nlohmann::json::parse(certificate->to_json());
    return j.dump();
}

// ---------------------------------------------------------------------------

namespace {

// All g-prefix choices over the profile: classes sorted by degree, a choice
// absorbs every class of degree < D plus j of the degree-D class.
std::vector<polyfact::GChoice> g_prefix_choices(const polyfact::XmProfile& prof) {
    std::vector<polyfact::GChoice> out;
    std::vector<std::vector<std::pair<unsigned, unsigned>>> seen;
    size_t nc = prof.classes.size();
    for (size_t i = 0; i <= nc; ++i) {
        unsigned maxj = i < nc ? prof.classes[i].second : 0;
        for (unsigned j = 0; j <= maxj; ++j) {
            polyfact::GChoice ch;
            for (size_t t = 0; t < i; ++t) ch.degrees.push_back(prof.classes[t]);
            if (i < nc && j > 0) ch.degrees.emplace_back(prof.classes[i].first, j);
            if (std::find(seen.begin(), seen.end(), ch.degrees) == seen.end()) {
                seen.push_back(ch.degrees);
                out.push_back(std::move(ch));
            }
        }
    }
    return out;
}

std::vector<std::pair<unsigned, unsigned>> remaining_classes(const polyfact::XmProfile& prof,
                                                             const polyfact::GChoice& choice) {
    std::vector<std::pair<unsigned, unsigned>> rem;
    for (auto [deg, cnt] : prof.classes) {
        unsigned absorbed = 0;
        for (auto [d2, c2] : choice.degrees)
            if (d2 == deg) absorbed = c2;
        if (absorbed > cnt) throw std::invalid_argument("g choice exceeds profile");
        if (cnt - absorbed) rem.emplace_back(deg, cnt - absorbed);
    }
    return rem;
}

const mpq_class& w8_sq() {
    static const mpq_class v = [] {
        mpq_class c(45147, 10);
        return mpq_class(c * c);
    }();
    return v;
}

const mpq_class& w11_sq() {
    static const mpq_class v = [] {
        mpq_class c(1110000000);
        return mpq_class(c * c);
    }();
    return v;
}

}  // namespace

std::vector<criteria::SieveConfig> enumerate_configs(const intfact::Factorization& fact,
                                                     const polyfact::XmProfile& profile,
                                                     unsigned cap) {
    std::vector<criteria::SieveConfig> out;
    auto gchoices = g_prefix_choices(profile);
    if (!fact.complete) {
        criteria::SieveConfig cfg;
        for (const auto& [p, e] : fact.factors) cfg.d_primes.push_back(p);
        for (auto [d, c] : profile.classes) cfg.g_choice.degrees.emplace_back(d, c);
        out.push_back(std::move(cfg));
        return out;
    }
    unsigned omega = fact.omega();
    for (unsigned i = 0; i <= std::min(omega, cap); ++i) {
        for (const auto& gch : gchoices) {
            criteria::SieveConfig cfg;
            for (unsigned t = 0; t < omega; ++t)
                (t < i ? cfg.d_primes : cfg.sieved_primes).push_back(fact.factors[t].first);
            cfg.g_choice = gch;
            cfg.sieved_classes = remaining_classes(profile, gch);
            out.push_back(std::move(cfg));
        }
    }
    return out;
}

PairStatus resolve_pair(const PrimePower& qq, unsigned m, unsigned n,
                        const intfact::FactorBudget& budget, FactorCache* cache) {
    if (m < 3) throw std::invalid_argument("resolve_pair: m >= 3 required");
    const mpz_class& q = qq.q;
    polyfact::XmProfile prof = polyfact::xm1_profile(q, m);

    // 1. W-bound screens: the prime-sieve criterion with d = q^m-1 fully
    //    absorbed and every g-prefix choice, W(q^m-1) replaced by the 1/8 or
    //    1/11 bound. No factoring of q^m-1 is needed, so arbitrarily large
    //    pairs resolve here.
    for (const auto& gch : g_prefix_choices(prof)) {
        criteria::SieveConfig cfg;
        cfg.g_choice = gch;
        cfg.sieved_classes = remaining_classes(prof, gch);
        auto sl = criteria::prime_sieve_lambda(q, cfg);
        if (!sl.Lambda) continue;
        mpz_class wg = gch.w();
        mpq_class base = mpq_class((2 * n + 1) * wg * wg) * *sl.Lambda;
        long m_l = static_cast<long>(m);
        criteria::WBoundKind kind = criteria::WBoundKind::Eighth;
        bool ok = intfact::power_exceeds(q, m_l - 4, 4, base * w8_sq());
        if (!ok && intfact::power_exceeds(q, 7 * m_l - 22, 22, base * w11_sq())) {
            ok = true;
            kind = criteria::WBoundKind::Eleventh;
        }
        if (ok) {
            bool eighth = kind == criteria::WBoundKind::Eighth;
            auto rep = criteria::wbd_screen(q, m, eighth ? m_l - 4 : 7 * m_l - 22,
                                            eighth ? 4 : 22, base * (eighth ? w8_sq() : w11_sq()),
                                            kind);
            rep.n = n;
            rep.lambda = sl.lambda;
            rep.Lambda = sl.Lambda;
            rep.config_echo += " " + cfg.echo();
            rep.note = "d = q^m-1 fully absorbed; W(q^m-1) bounded";
            PairStatus st;
            st.tag = PairTag::VerifiedScreen;
            st.certificate = std::move(rep);
            return st;
        }
    }

    // 2. factor q^m-1 and try the basic condition
    intfact::Factorization fact =
        cache ? cache->factor_qm(qq.p, qq.k, m, budget)
              : intfact::factor_q_power_minus_one(qq.p, qq.k, m, budget);
    intfact::OmegaBound ob = intfact::omega_and_w(fact);
    bool bounds = !fact.complete;
    mpz_class w1 = ob.w_upper();
    mpz_class w2 = prof.w();
    auto basic = criteria::basic_condition(q, m, n, w1, w2, bounds);
    if (basic.holds) {
        PairStatus st;
        st.tag = PairTag::VerifiedBasic;
        st.certificate = std::move(basic);
        st.bounds_used = bounds;
        return st;
    }

    // 3. prefix sieve search; keep the passing config with minimal rhs
    std::optional<criteria::CriterionReport> best;
    for (const auto& cfg : enumerate_configs(fact, prof)) {
        mpz_class wd = fact.complete ? pow_mpz(2, cfg.d_primes.size()) : w1;
        auto rep = criteria::prime_sieve_condition(q, m, n, cfg, wd, cfg.g_choice.w(), bounds);
        if (rep.holds && (!best || rep.rhs < best->rhs)) best = std::move(rep);
    }
    if (best) {
        PairStatus st;
        st.tag = PairTag::VerifiedSieve;
        st.certificate = std::move(*best);
        st.bounds_used = bounds;
        return st;
    }

    // 4. modified sieve over a fixed partition family: primes split at 1e3 and
    //    1e5, factor classes split at degree e = ord_{m'}(q)
    if (fact.complete) {
        unsigned e = prof.m_prime == 1 ? 1 : polyfact::ord_mod(q, prof.m_prime);
        struct PrimeSplit {
            mpz_class t1, t2;  // k < t1 <= P < t2 <= L; 0 = +infinity
        };
        const PrimeSplit psplits[] = {{1000, 100000}, {1000, 0}, {0, 0}};
        for (const auto& ps : psplits) {
            criteria::ModSieveConfig mc;
            for (const auto& [p, ee] : fact.factors) {
                if (ps.t1 == 0 || p < ps.t1)
                    mc.k_primes.push_back(p);
                else if (ps.t2 == 0 || p < ps.t2)
                    mc.P_primes.push_back(p);
                else
                    mc.L_primes.push_back(p);
            }
            for (int gmode = 0; gmode < 3; ++gmode) {
                criteria::ModSieveConfig cfg = mc;
                for (auto [deg, cnt] : prof.classes) {
                    if (gmode == 1 || deg < e)
                        cfg.g_choice.degrees.emplace_back(deg, cnt);
                    else if (gmode == 0)
                        cfg.G_classes.emplace_back(deg, cnt);
                    else
                        cfg.H_classes.emplace_back(deg, cnt);
                }
                auto rep = criteria::modified_sieve_condition(q, m, n, cfg, bounds);
                if (rep.holds) {
                    PairStatus st;
                    st.tag = PairTag::VerifiedModified;
                    st.certificate = std::move(rep);
                    st.bounds_used = bounds;
                    return st;
                }
            }
        }
    }

    PairStatus st;
    st.tag = PairTag::PossibleException;
    st.bounds_used = bounds;
    return st;
}

// ---------------------------------------------------------------------------
// scan

ScanReport scan(const ScanParams& params, FactorCache* cache) {
    ScanReport rep;
    rep.params = params;
    std::vector<std::pair<unsigned, unsigned>> todo;
    for (unsigned k = 1; k <= params.k_max; ++k)
        for (unsigned m = 5; m <= params.m_max; ++m) todo.emplace_back(k, m);
    rep.rows.resize(todo.size());

    FactorCache local_cache;  // share pieces across pairs even without a disk cache
    FactorCache* fc = cache ? cache : &local_cache;

    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= todo.size()) return;
            auto [k, m] = todo[i];
            PrimePower q = make_prime_power(params.characteristic, k);
            rep.rows[i] = {k, m, resolve_pair(q, m, params.n, params.budget, fc)};
        }
    };
    unsigned jobs = std::max(1u, params.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }

    for (const auto& row : rep.rows)
        if (row.status.tag == PairTag::PossibleException) rep.exceptions.emplace_back(row.k, row.m);
    std::sort(rep.exceptions.begin(), rep.exceptions.end());
    return rep;
}

// ---------------------------------------------------------------------------
// CSV / JSON

namespace {

std::string csv_header() { return "q,m,d,r,g_degrees,s,lambda,Lambda,lhs,rhs,holds"; }

std::string degrees_csv(const std::vector<std::pair<unsigned, unsigned>>& degs) {
    std::ostringstream os;
    bool first = true;
    for (auto [d, c] : degs)
        for (unsigned i = 0; i < c; ++i) {
            os << (first ? "" : "+") << d;
            first = false;
        }
    return first ? "-" : os.str();
}

std::string lhs_decimal(const mpz_class& q, unsigned m) {
    // q^{m/2-1} to 4 places via integer sqrt of a scaled square
    mpz_class scaled = pow_mpz(q, m - 2) * pow_mpz(10, 8);
    mpz_class root = sqrt(scaled);
    std::string s = root.get_str();
    if (s.size() <= 4) s.insert(0, 5 - s.size(), '0');
    return s.substr(0, s.size() - 4) + "." + s.substr(s.size() - 4);
}

}  // namespace

std::string ScanReport::to_csv() const {
    std::ostringstream os;
    os << "q,m,status,method,bounds_used,lambda,Lambda,rhs,holds\n";
    for (const auto& row : rows) {
        mpz_class q = pow_mpz(params.characteristic, row.k);
        os << q << "," << row.m << "," << pair_tag_name(row.status.tag) << ",";
        const auto* cert = row.status.certificate ? &*row.status.certificate : nullptr;
        os << (cert ? criteria::method_name(cert->method) : "-") << ","
           << (row.status.bounds_used ? 1 : 0) << ",";
        os << (cert && cert->lambda ? criteria::format_decimal(*cert->lambda, 4) : "-") << ",";
        os << (cert && cert->Lambda ? criteria::format_decimal(*cert->Lambda, 4) : "-") << ",";
        os << (cert ? criteria::format_decimal(cert->rhs, 4) : "-") << ",";
        os << (cert && cert->holds ? 1 : 0) << "\n";
    }
    return os.str();
}

std::string ScanReport::to_json() const {
    nlohmann::json j;
    j["characteristic"] = params.characteristic.get_str();
    j["k_max"] = params.k_max;
    j["m_max"] = params.m_max;
    j["n"] = params.n;
    j["pairs"] = nlohmann::json::array();
    for (const auto& row : rows) {
        PrimePower q = make_prime_power(params.characteristic, row.k);
        j["pairs"].push_back(nlohmann::json::parse(row.status.to_json(q, row.m)));
    }
    j["exceptions"] = nlohmann::json::array();
    for (auto [k, m] : exceptions) {
        nlohmann::json e;
        e["k"] = k;
        e["m"] = m;
        e["q"] = pow_mpz(params.characteristic, k).get_str();
        j["exceptions"].push_back(e);
    }
    return j.dump(2);
}

// ---------------------------------------------------------------------------
// tables

namespace {

std::vector<TableRowSpec> build_table_rows() {
    using V = std::vector<std::pair<unsigned, unsigned>>;
    std::vector<TableRowSpec> rows = {
        {1, 1, 1, 15, 2, 5, 2, "1", false, V{}, "0.2333", "57.7227", "34938.5622", "2078.0165"},
        {1, 2, 1, 20, 6, 6, 1, "x^3+x^2+x+1", false, V{{1, 3}}, "0.1834", "72.9108", "1.95e6", "671945.3645"},
        {1, 3, 1, 30, 42, 8, 3, "x+1", false, V{{1, 1}}, "0.1164", "182.3967", "6.11e9", "420242.0506"},
        {1, 4, 2, 10, 6, 6, 1, "x+1", false, V{{1, 1}}, "0.5034", "27.8281", "390625", "16028.9471"},
        {1, 5, 2, 12, 546, 4, 11, "x+1", false, V{{1, 1}}, "0.0458", "635.7250", "9.765e6", "5.859e6"},
        {1, 6, 3, 12, 6, 9, 8, "1", false, V{}, "0.2659", "126.0757", "3.05e10", "18154.9109"},
        {1, 7, 3, 5, 2, 5, 1, "1", false, V{}, "0.6973", "17.7752", "1397.5425", "639.9063"},
        {1, 8, 3, 6, 6, 5, 4, "1", false, V{}, "0.5095", "35.3693", "15625", "5093.1744"},
        {1, 9, 4, 5, 6, 6, 1, "1", false, V{}, "0.5802", "24.4089", "15625.00", "3514.8681"},
        {1, 10, 5, 5, 2, 6, 1, "1", false, V{}, "0.7566", "19.1818", "174692.8108", "690.5445"},
        {1, 11, 6, 5, 6, 9, 0, "x+4", false, V{{1, 1}}, "0.3907", "45.5122", "1.95e6", "26214.9767"},
        {1, 12, 5, 6, 6, 9, 4, "1", false, V{}, "0.3895", "66.1988", "9.76e6", "9532.6267"},
        {1, 13, 7, 6, 6, 10, 4, "1", false, V{}, "0.5083", "55.1086", "6.11e9", "7935.6342"},
        {1, 14, 3, 10, 6, 9, 1, "x+1", false, V{{1, 1}}, "0.3747", "52.7078", "2.44e8", "30359.6925"},
        {1, 15, 4, 6, 6, 6, 6, "1", false, V{}, "0.4671", "51.2505", "390625", "7380.0659"},
        {1, 16, 3, 8, 6, 6, 6, "1", false, V{}, "0.4219", "73.6782", "1.95e6", "10609.6639"},
        {1, 17, 5, 8, 6, 9, 6, "1", false, V{}, "0.5661", "53.2294", "3.05e10", "7665.0475"},
        {1, 18, 6, 6, 6, 9, 6, "1", false, V{}, "0.3297", "89.9560", "2.44e8", "12953.6563"},
        {2, 1, 1, 11, 2, 1, 2, "x+4", false, V{{1, 1}}, "0.9987", "7.0064", "1397.5425", "1008.9234"},
        {2, 2, 1, 13, 2, 1, 3, "x+4", false, V{{1, 1}}, "0.9903", "9.0679", "6987.7125", "1305.7706"},
        {2, 3, 1, 14, 6, 3, 3, "x+1", false, V{{1, 1}}, "0.5262", "22.9037", "15625", "13192.5516"},
        {2, 4, 1, 18, 6, 5, 4, "x^2+4", false, V{{1, 2}}, "0.3814", "46.5667", "390625", "107289.6537"},
        {2, 5, 1, 21, 2, 4, 4, "x+4", false, V{{1, 1}}, "0.8497", "19.6529", "4.36e6", "2830.0241"},
        {2, 6, 1, 22, 2, 5, 4, "x^2+4", false, V{{1, 2}}, "0.2136", "81.5928", "9.76e6", "46997.4470"},
        {2, 7, 1, 26, 6, 3, 6, "x^2+4", false, V{{1, 2}}, "0.9804", "19.3405", "2.44e8", "44560.4267"},
        {2, 8, 1, 28, 6, 5, 5, "x^3+x^2+x+1", false, V{{1, 3}}, "0.3721", "53.0589", "1.22e9", "488990.4206"},
        {2, 9, 1, 32, 6, 6, 7, "x^3+x^2+x+1", false, V{{1, 3}}, "0.1548", "163.5391", "3.05e10", "1.51e6"},
        {2, 10, 1, 36, 6, 9, 9, "x^3+x^2+x+1", false, V{{1, 3}}, "0.0099", "3513.7601", "7.62e11", "3.23e7"},
        {2, 11, 1, 42, 6, 10, 8, "x^2+4", false, V{{1, 2}}, "0.3477", "102.6685", "9.54e13", "236548.2720"},
        {2, 12, 1, 48, 6, 9, 0, "x^48-1", true, V{}, "0.3683", "48.1480", "1.19e16", "7.62e15"},
        {2, 13, 1, 16, 6, 4, 8, "1", false, V{}, "0.3891", "61.1042", "78125", "8799.0116"},
        {2, 14, 2, 7, 2, 4, 3, "1", false, V{}, "0.1796", "74.4012", "3125", "2678.4426"},
        {2, 15, 2, 9, 6, 5, 5, "1", false, V{}, "0.3015", "65.0286", "78125", "9364.1076"},
        {2, 16, 2, 11, 2, 5, 3, "1", false, V{}, "0.1361", "112.1752", "1.95e6", "4038.3076"},
        {2, 17, 2, 13, 2, 4, 7, "1", false, V{}, "0.2337", "91.8591", "4.88e7", "3306.9261"},
        {2, 18, 2, 14, 6, 5, 6, "1", false, V{}, "0.6121", "36.3071", "2.44e8", "5228.2112"},
        {2, 19, 2, 16, 6, 6, 12, "1", false, V{}, "0.06837", "513.9088", "6.10e9", "74002.8646"},
        {2, 20, 2, 18, 42, 8, 10, "1", false, V{}, "0.1357", "259.9584", "1.52e11", "149736.0317"},
        {2, 21, 2, 21, 6, 10, 9, "1", false, V{}, "0.2676", "140.2269", "1.90e13", "20192.6820"},
        {2, 22, 2, 36, 546, 12, 17, "x^3+x^2+x+1", false, V{{1, 3}}, "0.01522", "3747.2929", "5.82e23", "5.52e8"},
        {2, 23, 3, 7, 2, 4, 7, "1", false, V{}, "0.9137", "24.9830", "174692.8107", "899.3900"},
        {2, 24, 3, 9, 2, 7, 5, "1", false, V{}, "0.7850", "31.2985", "2.18e7", "1126.7472"},
        {2, 25, 4, 7, 2, 6, 3, "1", false, V{}, "0.1027", "167.4261", "9.76e6", "6027.3412"},
        {2, 26, 4, 9, 6, 9, 5, "1", false, V{}, "0.3208", "86.1439", "6.10e9", "12404.7359"},
    };
    return rows;
}

}  // namespace

const std::vector<TableRowSpec>& table_rows() {
    static const std::vector<TableRowSpec> rows = build_table_rows();
    return rows;
}

int cmp_half_power(const mpz_class& q, unsigned long e_half, const mpq_class& v) {
    if (v <= 0) return 1;
    if (e_half % 2 == 0) {
        mpq_class x(pow_mpz(q, e_half / 2));
        return cmp(x, v);
    }
    mpq_class lhs(pow_mpz(q, e_half));
    return cmp(lhs, v * v);
}

namespace {

// |q^{e/2} - printed| <= tol, or relative error < 1e-4.
bool half_power_matches(const mpz_class& q, unsigned long e_half, const criteria::PrintedValue& pv) {
    mpq_class lo = pv.value - pv.ulp, hi = pv.value + pv.ulp;
    if (cmp_half_power(q, e_half, hi) <= 0 && (lo <= 0 || cmp_half_power(q, e_half, lo) >= 0))
        return true;
    mpq_class rel(1, 10000);
    mpq_class lo2 = pv.value / (1 + rel), hi2 = pv.value / (1 - rel);
    return cmp_half_power(q, e_half, hi2) <= 0 && cmp_half_power(q, e_half, lo2) >= 0;
}

bool rational_matches(const mpq_class& x, const criteria::PrintedValue& pv) {
    mpq_class diff = x - pv.value;
    if (diff < 0) diff = -diff;
    if (diff <= pv.ulp) return true;
    mpq_class ax = x < 0 ? mpq_class(-x) : x;
    return diff * 10000 < ax;
}

}  // namespace

std::vector<TableRowResult> reproduce_tables(int which, FactorCache* cache,
                                             const intfact::FactorBudget& budget) {
    FactorCache local;
    FactorCache* fc = cache ? cache : &local;
    std::vector<TableRowResult> out;
    for (const auto& spec : table_rows()) {
        if (which != 0 && spec.table != which) continue;
        TableRowResult res;
        res.spec = &spec;
        mpz_class p = 5;
        mpz_class q = pow_mpz(p, spec.k);
        auto fact = fc->factor_qm(p, spec.k, spec.m, budget);
        if (!fact.complete) throw std::runtime_error("table row factorization incomplete");
        polyfact::XmProfile prof = polyfact::xm1_profile(q, spec.m);

        criteria::SieveConfig cfg;
        for (const auto& [pr, e] : fact.factors)
            (mpz_divisible_p(mpz_class(spec.d_value).get_mpz_t(), pr.get_mpz_t()) ? cfg.d_primes
                                                                                  : cfg.sieved_primes)
                .push_back(pr);
        if (spec.g_full)
            for (auto [d, c] : prof.classes) cfg.g_choice.degrees.emplace_back(d, c);
        else
            cfg.g_choice.degrees = spec.g_degrees;
        cfg.sieved_classes = remaining_classes(prof, cfg.g_choice);

        res.shape_ok = cfg.d_value() == spec.d_value && cfg.r() == spec.r && cfg.s() == spec.s;
        auto rep = criteria::prime_sieve_condition(q, spec.m, 4, cfg,
                                                   pow_mpz(2, cfg.d_primes.size()),
                                                   cfg.g_choice.w());
        res.holds = rep.holds;

        auto lam_pv = criteria::parse_printed(spec.lambda_str);
        auto Lam_pv = criteria::parse_printed(spec.Lambda_str);
        auto lhs_pv = criteria::parse_printed(spec.lhs_str);
        auto rhs_pv = criteria::parse_printed(spec.rhs_str);
        if (rep.lambda) res.lambda_ok = *rep.lambda >= lam_pv.value - lam_pv.ulp;
        if (rep.Lambda) res.Lambda_ok = *rep.Lambda <= Lam_pv.value + Lam_pv.ulp;
        // q^{m/2-1} = 5^{k(m-2)/2}
        res.lhs_ok =
            half_power_matches(p, static_cast<unsigned long>(spec.k) * (spec.m - 2), lhs_pv);
        if (rep.Lambda) res.rhs_ok = rational_matches(rep.rhs, rhs_pv);
        res.report = std::move(rep);
        out.push_back(std::move(res));
    }
    return out;
}

std::string table_results_to_csv(const std::vector<TableRowResult>& rows) {
    std::ostringstream os;
    os << csv_header() << "\n";
    for (const auto& r : rows) {
        const auto& spec = *r.spec;
        mpz_class q = pow_mpz(5, spec.k);
        os << q << "," << spec.m << "," << spec.d_value << "," << spec.r << ","
           << (spec.g_full ? std::string("full") : degrees_csv(spec.g_degrees)) << "," << spec.s
           << ",";
        os << (r.report.lambda ? criteria::format_decimal(*r.report.lambda, 4) : "-") << ",";
        os << (r.report.Lambda ? criteria::format_decimal(*r.report.Lambda, 4) : "-") << ",";
        os << lhs_decimal(q, spec.m) << "," << criteria::format_decimal(r.report.rhs, 4) << ","
           << (r.holds ? 1 : 0) << "\n";
    }
    return os.str();
}

std::string table_results_to_json(const std::vector<TableRowResult>& rows) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json e = nlohmann::json::parse(r.report.to_json());
        e["table"] = r.spec->table;
        e["row"] = r.spec->row;
        e["g"] = r.spec->g_str;
        e["d"] = r.spec->d_value;
        e["matches_printed"] = r.matches_printed();
        e["shape_ok"] = r.shape_ok;
        j.push_back(e);
    }
    return j.dump(2);
}

}  // namespace pnpv::sieve
