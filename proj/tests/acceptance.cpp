// Acceptance suite: one criterion per invocation (1..9), printing a PASS/FAIL
// line with details. Exit code 0 iff the criterion passes as stated.
//
// Three criteria document genuine defects in the published tables they check
// against (see README): criterion 1 fails on Table 1 row 16's printed rhs,
// criterion 2 on Table 2 rows 10/13 (lambda < 0 under the printed config),
// and criterion 3 reports (5,16) as a 12th possible exception. The checks are
// implemented as stated and left red rather than weakened.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <random>
#include <set>
#include <vector>

#include "pnpv/charsum.hpp"
#include "pnpv/criteria.hpp"
#include "pnpv/factor_cache.hpp"
#include "pnpv/ffield.hpp"
#include "pnpv/sieve_search.hpp"

using namespace pnpv;
using Clock = std::chrono::steady_clock;

namespace {

double elapsed_s(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

int report(int crit, const Outcome& out, double secs, double limit_s) {
    bool time_ok = secs < limit_s;
    std::printf("CRITERION %d: %s (%.1fs%s)%s%s\n", crit,
                out.pass && time_ok ? "PASS" : "FAIL", secs,
                time_ok ? "" : " OVER TIME LIMIT",
                out.detail.empty() ? "" : " -- ", out.detail.c_str());
    return out.pass && time_ok ? 0 : 1;
}

Outcome check_table(int which) {
    Outcome out;
    FactorCache cache;
    auto rows = sieve::reproduce_tables(which, &cache);
    int full = 0;
    for (const auto& r : rows) {
        if (r.matches_printed()) {
            ++full;
            continue;
        }
        char buf[256];
        if (!r.holds) {
            std::snprintf(buf, sizeof buf,
                          "row %d (5^%u,%u) FAILS: lambda = %s <= 0 under the printed config "
                          "[published-table defect]",
                          r.spec->row, r.spec->k, r.spec->m,
                          r.report.lambda ? criteria::format_decimal(*r.report.lambda, 4).c_str()
                                          : "?");
        } else if (!r.rhs_ok) {
            std::snprintf(buf, sizeof buf,
                          "row %d (5^%u,%u): holds, but computed rhs %s != printed %s "
                          "[published Lambda/rhs typo; computed certificate is stronger]",
                          r.spec->row, r.spec->k, r.spec->m,
                          criteria::format_decimal(r.report.rhs, 4).c_str(), r.spec->rhs_str);
        } else {
            std::snprintf(buf, sizeof buf, "row %d (5^%u,%u): column mismatch", r.spec->row,
                          r.spec->k, r.spec->m);
        }
        out.fail(buf);
    }
    char head[128];
    std::snprintf(head, sizeof head, "%d/%zu rows reproduce all printed columns", full,
                  rows.size());
    out.note(head);
    return out;
}

Outcome criterion3() {
    Outcome out;
    sieve::ScanParams params;
    params.k_max = 7;
    params.m_max = 48;
    params.n = 4;
    params.jobs = 4;
    FactorCache cache;
    auto rep = sieve::scan(params, &cache);

    const std::set<std::pair<unsigned, unsigned>> expected = {
        {1, 5}, {2, 5}, {1, 10}, {2, 6}, {2, 8}, {1, 6},
        {1, 7}, {1, 9}, {1, 8},  {1, 12}, {1, 24}};
    std::set<std::pair<unsigned, unsigned>> got(rep.exceptions.begin(), rep.exceptions.end());
    if (got != expected) {
        std::string diff = "exception set differs from the published 11:";
        for (auto& e : got)
            if (!expected.count(e))
                diff += " +(5^" + std::to_string(e.first) + "," + std::to_string(e.second) + ")";
        for (auto& e : expected)
            if (!got.count(e))
                diff += " -(5^" + std::to_string(e.first) + "," + std::to_string(e.second) + ")";
        diff += " [the extra pair is unverifiable by every criterion: exhaustive config search "
                "fails; published Table 2 row 13 rests on a wrong x^16-1 profile]";
        out.fail(diff);
    }

    // every pair appearing in the published tables must verify
    int table_ok = 0, table_bad = 0;
    for (const auto& spec : sieve::table_rows()) {
        bool found = false;
        for (const auto& row : rep.rows) {
            if (row.k == spec.k && row.m == spec.m) {
                found = true;
                if (row.status.verified())
                    ++table_ok;
                else {
                    ++table_bad;
                    out.fail("table pair (5^" + std::to_string(spec.k) + "," +
                             std::to_string(spec.m) + ") not verified");
                }
            }
        }
        if (!found) out.fail("table pair missing from scan");
    }
    out.note(std::to_string(table_ok) + " table pairs verified");

    // soundness: every factorization in range completed (no bounded W data)
    for (const auto& row : rep.rows)
        if (row.status.bounds_used) out.fail("bounds used at (5^" + std::to_string(row.k) + "," +
                                             std::to_string(row.m) + ")");

    // the three screen instances quoted in the case analysis
    mpq_class c8 = mpq_class(9) * mpq_class(45147, 10) * mpq_class(45147, 10);
    if (!criteria::wbd_screen(5, 125, 121, 4, c8, criteria::WBoundKind::Eighth).holds)
        out.fail("screen instance q=5, E=125/4-1 must hold");
    if (criteria::wbd_screen(5, 25, 21, 4, c8, criteria::WBoundKind::Eighth).holds)
        out.fail("screen instance q=5, E=25/4-1 must fail");
    mpq_class c11 = mpq_class(18) * 2606 * mpq_class(1110000000) * mpq_class(1110000000);
    if (!criteria::wbd_screen(5, 2606, 3 * 2606L - 10, 10, c11, criteria::WBoundKind::Eleventh,
                              2 * 2606L, 3)
             .holds)
        out.fail("screen instance m=2606 must hold");
    // outside the desk range the pipeline must resolve by screen
    auto big = sieve::resolve_pair(sieve::make_prime_power(5, 1), 3125, 4);
    if (big.tag != sieve::PairTag::VerifiedScreen) out.fail("(5, 5^5) not screen-verified");
    return out;
}

Outcome criterion4() {
    Outcome out;
    for (auto [p, m] : std::vector<std::pair<int, int>>{{3, 4}, {5, 3}}) {
        auto ctx = ffield::build_field(p, 1, m);
        mpz_class n = ctx.order - 1;
        double worst = 0;
        for (mpz_class e = 1; e <= n; ++e)
            if (mpz_divisible_p(n.get_mpz_t(), e.get_mpz_t()))
                worst = std::max(worst, charsum::rho_identity_check(ctx, e));
        // every divisor g of x^m-1 (exponent vectors)
        std::vector<ffield::PolyDivisor> divisors{ffield::PolyDivisor(ctx.xm1_base.size(), 0)};
        for (size_t i = 0; i < ctx.xm1_base.size(); ++i) {
            std::vector<ffield::PolyDivisor> next;
            for (auto& d : divisors)
                for (unsigned e = 0; e <= ctx.p_mult; ++e) {
                    auto dd = d;
                    dd[i] = e;
                    next.push_back(dd);
                }
            divisors = std::move(next);
        }
        for (const auto& g : divisors)
            worst = std::max(worst, charsum::eta_identity_check(ctx, g));
        for (std::uint64_t a = 0; a < ctx.base->size(); ++a)
            worst = std::max(worst, charsum::tau_identity_check(ctx, a));
        char buf[96];
        std::snprintf(buf, sizeof buf, "F_%d^%d worst deviation %.2e", p, m, worst);
        out.note(buf);
        if (worst >= 1e-9) out.fail("deviation over 1e-9");
    }
    return out;
}

Outcome criterion5() {
    Outcome out;
    for (auto [p, m] : std::vector<std::pair<int, int>>{{3, 4}, {5, 3}}) {
        auto ctx = ffield::build_field(p, 1, m);
        mpz_class n = ctx.order - 1;
        std::vector<mpz_class> sqfree_orders;
        for (mpz_class d = 2; d <= n; ++d) {
            if (!mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) continue;
            auto fac = intfact::factor_integer(d);
            bool sf = true;
            for (auto& [pr, e] : fac.factors) sf &= (e == 1);
            if (sf) sqfree_orders.push_back(d);
        }
        std::mt19937_64 rng(1234 + p);
        int admissible = 0, mult_checks = 0, mixed_checks = 0;
        while (admissible < 20) {
            unsigned nd = 1 + rng() % 3;
            unsigned nn = (nd >= 4 ? 0 : 1 + rng() % (4 - nd));
            std::vector<std::uint64_t> nc(nn + 1), dc(nd + 1);
            for (auto& c : nc) c = rng() % ctx.big->size();
            for (auto& c : dc) c = rng() % ctx.big->size();
            nc.back() = 1 + rng() % (ctx.big->size() - 1);
            dc.back() = 1;
            ffield::RationalFunc f{gf::Poly(*ctx.big, nc), gf::Poly(*ctx.big, dc)};
            if (!gf::Poly::gcd(f.num, f.den).is_one()) continue;
            if (f.num.is_zero()) continue;
            bool used = false;
            for (const auto& d : sqfree_orders) {
                try {
                    auto res = charsum::weil_mult_check(ctx, f, d);
                    ++mult_checks;
                    used = true;
                    if (!res.holds) out.fail("mult bound failed for " + f.str());
                } catch (const std::domain_error&) {
                    // excluded d-th power shape
                }
            }
            // mixed: f with a random additive argument and characters of each order
            ffield::RationalFunc g{gf::Poly(*ctx.big, {rng() % ctx.big->size(),
                                                       1 + rng() % (ctx.big->size() - 1)}),
                                   gf::Poly::constant(*ctx.big, 1)};
            for (const auto& d : sqfree_orders) {
                charsum::MultChar chi{d, 1};
                auto res = charsum::weil_mixed_check(ctx, f, g, chi,
                                                     1 + rng() % (ctx.big->size() - 1));
                ++mixed_checks;
                if (!res.holds) out.fail("mixed bound failed for " + f.str());
            }
            if (used) ++admissible;
        }
        char buf[128];
        std::snprintf(buf, sizeof buf, "F_%d^%d: %d admissible f, %d mult + %d mixed checks", p,
                      m, admissible, mult_checks, mixed_checks);
        out.note(buf);
    }
    return out;
}

Outcome criterion6() {
    Outcome out;
    for (auto [p, m] : std::vector<std::pair<int, int>>{{3, 4}, {5, 3}}) {
        auto ctx = ffield::build_field(p, 1, m);
        auto f = ffield::parse_rational(ctx, "x^3+x+1 / x");
        mpz_class n = ctx.order - 1;
        // radical divisors of q^m-1
        std::vector<mpz_class> edivs;
        for (mpz_class d = 1; d <= n; ++d) {
            if (!mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) continue;
            auto fac = intfact::factor_integer(d);
            bool sf = true;
            for (auto& [pr, e] : fac.factors) sf &= (e == 1);
            if (sf) edivs.push_back(d);
        }
        std::vector<ffield::PolyDivisor> gdivs{ffield::PolyDivisor(ctx.xm1_base.size(), 0)};
        for (size_t i = 0; i < ctx.xm1_base.size(); ++i) {
            std::vector<ffield::PolyDivisor> next;
            for (auto& d : gdivs)
                for (unsigned e : {0u, ctx.p_mult}) {
                    auto dd = d;
                    dd[i] = e;
                    next.push_back(dd);
                }
            gdivs = std::move(next);
        }
        long lattice = 0;
        for (std::uint64_t a = 0; a < 2; ++a) {
            for (const auto& e1 : edivs)
                for (const auto& e2 : edivs)
                    for (const auto& g1 : gdivs)
                        for (const auto& g2 : gdivs) {
                            auto c = charsum::brute_count_n(ctx, f, a, e1, e2, g1, g2);
                            double lb =
                                charsum::lower_bound_proof_form(ctx, 4, e1, e2, g1, g2);
                            ++lattice;
                            if (static_cast<double>(c) < lb)
                                out.fail("lower bound exceeded count at a lattice point");
                        }
        }
        // sieving inequality over all (d, g) partitions
        std::vector<mpz_class> primes;
        for (auto& [pr, e] : ctx.group_fac().factors) primes.push_back(pr);
        size_t nf = ctx.xm1_base.size();
        auto full = ctx.full_divisor();
        long partitions = 0;
        for (std::uint64_t a = 0; a < 2; ++a) {
            std::uint64_t lhs = charsum::brute_count_n(ctx, f, a, n, n, full, full);
            for (size_t pmask = 0; pmask < (1ULL << primes.size()); ++pmask) {
                mpz_class d = 1;
                std::vector<mpz_class> sieved_p;
                for (size_t i = 0; i < primes.size(); ++i) {
                    if (pmask >> i & 1)
                        d *= primes[i];
                    else
                        sieved_p.push_back(primes[i]);
                }
                for (size_t gmask = 0; gmask < (1ULL << nf); ++gmask) {
                    ffield::PolyDivisor g(nf, 0);
                    std::vector<size_t> sieved_g;
                    for (size_t i = 0; i < nf; ++i) {
                        if (gmask >> i & 1)
                            g[i] = ctx.p_mult;
                        else
                            sieved_g.push_back(i);
                    }
                    long r = static_cast<long>(sieved_p.size());
                    long s = static_cast<long>(sieved_g.size());
                    double rhs = 0;
                    std::uint64_t base = charsum::brute_count_n(ctx, f, a, d, d, g, g);
                    for (const auto& pr : sieved_p) {
                        rhs += charsum::brute_count_n(ctx, f, a, d * pr, d, g, g);
                        rhs += charsum::brute_count_n(ctx, f, a, d, d * pr, g, g);
                    }
                    for (size_t i : sieved_g) {
                        auto gi = g;
                        gi[i] = ctx.p_mult;
                        rhs += charsum::brute_count_n(ctx, f, a, d, d, gi, g);
                        rhs += charsum::brute_count_n(ctx, f, a, d, d, g, gi);
                    }
                    rhs -= static_cast<double>(2 * r + 2 * s - 1) * base;
                    ++partitions;
                    if (static_cast<double>(lhs) < rhs - 1e-9)
                        out.fail("sieving inequality failed at a partition");
                }
            }
        }
        char buf[128];
        std::snprintf(buf, sizeof buf, "F_%d^%d: %ld lattice points, %ld partitions", p, m,
                      lattice, partitions);
        out.note(buf);
    }
    return out;
}

Outcome criterion7() {
    Outcome out;
    auto ctx = ffield::build_field(5, 1, 2);
    int primitive = 0;
    for (std::uint64_t a = 1; a < 25; ++a) {
        if (!ffield::is_primitive(ctx, a)) continue;
        ++primitive;
        if (ffield::trace_rel(ctx, ctx.big->inv(a)) == 0)
            out.fail("primitive element with zero inverse-trace found in F_25");
    }
    out.note(std::to_string(primitive) + " primitive elements checked exhaustively");
    return out;
}

Outcome criterion8() {
    Outcome out;
    // (5,15) and (5,11) from first principles: factored primes + profile
    struct Expect {
        unsigned m;
        const char* lambda5;
        const char* Lambda4a;  // as worked in the derivation
        const char* Lambda4b;  // as printed in the table
    };
    for (auto [m, lam5, LamA, LamB] : {Expect{15, "0.23330", "57.7226", "57.7227"},
                                       Expect{11, "0.99872", "7.0064", "7.0064"}}) {
        auto fact = intfact::factor_q_power_minus_one(5, 1, m);
        auto prof = polyfact::xm1_profile(5, m);
        criteria::SieveConfig cfg;
        for (auto& [pr, e] : fact.factors) (pr == 2 ? cfg.d_primes : cfg.sieved_primes).push_back(pr);
        if (m == 11) cfg.g_choice.degrees = {{1, 1}};
        for (auto [deg, cnt] : prof.classes) {
            unsigned absorbed = (m == 11 && deg == 1) ? 1 : 0;
            if (cnt > absorbed) cfg.sieved_classes.emplace_back(deg, cnt - absorbed);
        }
        auto sl = criteria::prime_sieve_lambda(5, cfg);
        std::string got_l = criteria::format_decimal(sl.lambda, 5);
        std::string got_L = criteria::format_decimal(*sl.Lambda, 4);
        if (got_l != lam5) out.fail(std::string("lambda ") + got_l + " != " + lam5);
        // agree with the worked value to one unit in the last place
        auto pa = criteria::parse_printed(LamA);
        auto pb = criteria::parse_printed(LamB);
        if (!(*sl.Lambda >= pa.value - pa.ulp && *sl.Lambda <= pa.value + pa.ulp))
            out.fail(std::string("Lambda ") + got_L + " not within 1 ulp of " + LamA);
        if (!(*sl.Lambda >= pb.value - pb.ulp && *sl.Lambda <= pb.value + pb.ulp))
            out.fail(std::string("Lambda ") + got_L + " not within 1 ulp of table " + LamB);
        out.note("(5," + std::to_string(m) + ") lambda=" + got_l + " Lambda=" + got_L);
    }
    return out;
}

Outcome criterion9() {
    Outcome out;
    // empty-config sieve == basic, exact rhs equality
    for (unsigned m : {5u, 6u, 8u, 12u, 15u, 20u}) {
        auto fact = intfact::factor_q_power_minus_one(5, 1, m);
        auto prof = polyfact::xm1_profile(5, m);
        criteria::SieveConfig cfg;
        for (auto& [pr, e] : fact.factors) cfg.d_primes.push_back(pr);
        cfg.g_choice.degrees = prof.classes;
        mpz_class wd = intfact::pow_mpz(2, cfg.d_primes.size());
        auto s = criteria::prime_sieve_condition(5, m, 4, cfg, wd, prof.w());
        auto b = criteria::basic_condition(5, m, 4, wd, prof.w());
        if (s.rhs != b.rhs || s.holds != b.holds) out.fail("empty-config reduction violated");
    }
    // modified with empty L,H == prime sieve, 100 random configs
    std::mt19937_64 rng(55);
    int verified = 0;
    for (int trial = 0; verified < 100 && trial < 1000; ++trial) {
        unsigned m = 5 + rng() % 32;
        auto fact = intfact::factor_q_power_minus_one(5, 1, m);
        auto prof = polyfact::xm1_profile(5, m);
        criteria::ModSieveConfig mc;
        for (auto& [pr, e] : fact.factors) (rng() & 1 ? mc.k_primes : mc.P_primes).push_back(pr);
        for (auto [deg, cnt] : prof.classes) {
            unsigned take = deg == 1 ? cnt - rng() % 2 : rng() % (cnt + 1);
            if (take) mc.g_choice.degrees.emplace_back(deg, take);
            if (cnt - take) mc.G_classes.emplace_back(deg, cnt - take);
        }
        auto mrep = criteria::modified_sieve_condition(5, m, 4, mc);
        criteria::SieveConfig sc;
        sc.d_primes = mc.k_primes;
        sc.sieved_primes = mc.P_primes;
        sc.g_choice = mc.g_choice;
        sc.sieved_classes = mc.G_classes;
        auto srep = criteria::prime_sieve_condition(5, m, 4, sc,
                                                    intfact::pow_mpz(2, mc.k_primes.size()),
                                                    mc.g_choice.w());
        if (mrep.note == "NONPOSITIVE_LAMBDA") continue;
        ++verified;
        if (!mrep.rhs_exact || mrep.rhs != srep.rhs || mrep.holds != srep.holds)
            out.fail("modified/sieve equality violated");
    }
    if (verified < 100) out.fail("too few usable random configs");
    out.note(std::to_string(verified) + " random configs verified exactly");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: acceptance <criterion 1-9>\n");
        return 2;
    }
    int crit = std::atoi(argv[1]);
    auto t0 = Clock::now();
    Outcome out;
    double limit = 3600;
    switch (crit) {
        case 1: out = check_table(1); limit = 120; break;
        case 2: out = check_table(2); limit = 300; break;
        case 3: out = criterion3(); limit = 1800; break;
        case 4: out = criterion4(); limit = 60; break;
        case 5: out = criterion5(); limit = 300; break;
        case 6: out = criterion6(); limit = 600; break;
        case 7: out = criterion7(); limit = 60; break;
        case 8: out = criterion8(); limit = 60; break;
        case 9: out = criterion9(); limit = 120; break;
        default:
            std::fprintf(stderr, "unknown criterion %d\n", crit);
            return 2;
    }
    return report(crit, out, elapsed_s(t0), limit);
}
