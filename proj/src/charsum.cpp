#include "pnpv/charsum.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace pnpv::charsum {

using ffield::FieldCtx;
using ffield::PolyDivisor;
using ffield::RationalFunc;
using gf::Poly;

namespace {

std::complex<double> unit(double frac) {
    double a = 2.0 * std::numbers::pi * frac;
    return {std::cos(a), std::sin(a)};
}

void require_tables(const FieldCtx& ctx) {
    if (!ctx.big->has_tables())
        throw std::logic_error("charsum: field oracle requires log tables");
}

// squarefree divisors of e as prime subsets, with mu and phi
struct IntDivisor {
    mpz_class d = 1;
    int mu = 1;
    mpz_class phi = 1;
};

std::vector<IntDivisor> squarefree_divisors(const FieldCtx& ctx, const mpz_class& e) {
    std::vector<mpz_class> primes;
    for (const auto& [p, mult] : ctx.group_fac().factors)
        if (mpz_divisible_p(e.get_mpz_t(), p.get_mpz_t())) primes.push_back(p);
    std::vector<IntDivisor> out;
    size_t np = primes.size();
    for (size_t mask = 0; mask < (1ULL << np); ++mask) {
        IntDivisor dv;
        for (size_t i = 0; i < np; ++i)
            if (mask >> i & 1) {
                dv.d *= primes[i];
                dv.mu = -dv.mu;
                dv.phi *= primes[i] - 1;
            }
        out.push_back(std::move(dv));
    }
    return out;
}

// reciprocal permutation: factor i of x^m-1 maps to the index of its monic
// reciprocal
std::vector<size_t> reciprocal_perm(const FieldCtx& ctx) {
    std::vector<size_t> perm(ctx.xm1_base.size());
    for (size_t i = 0; i < ctx.xm1_base.size(); ++i) {
        const Poly& f = ctx.xm1_base[i];
        std::vector<std::uint64_t> rev(f.coeffs().rbegin(), f.coeffs().rend());
        Poly rec = Poly(*ctx.base, std::move(rev)).make_monic();
        auto it = std::find(ctx.xm1_base.begin(), ctx.xm1_base.end(), rec);
        if (it == ctx.xm1_base.end()) throw std::logic_error("reciprocal not a factor");
        perm[i] = static_cast<size_t>(it - ctx.xm1_base.begin());
    }
    return perm;
}

mpz_class poly_phi_of_squarefree(const FieldCtx& ctx, const std::vector<size_t>& idxs) {
    mpz_class r = 1;
    for (size_t i : idxs)
        r *= intfact::pow_mpz(ctx.q, ctx.xm1_base[i].degree()) - 1;
    return r;
}

}  // namespace

std::vector<MultChar> characters_of_order(const FieldCtx& ctx, const mpz_class& d) {
    mpz_class n = ctx.order - 1;
    if (!mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()))
        throw std::domain_error("characters_of_order: d must divide q^m-1");
    std::vector<MultChar> out;
    for (mpz_class u = 1; u <= d; ++u) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), d.get_mpz_t());
        if (g == 1) out.push_back({d, u});
    }
    return out;
}

std::complex<double> eval_mult(const FieldCtx& ctx, const MultChar& chi, std::uint64_t alpha) {
    if (alpha == 0) return chi.order == 1 ? std::complex<double>(1, 0) : std::complex<double>(0, 0);
    require_tables(ctx);
    mpz_class n = ctx.order - 1;
    mpz_class t(static_cast<unsigned long>(ctx.big->log(alpha)));
    mpz_class ang = t * (n / chi.order) % n * chi.index % n;
    return unit(mpq_class(ang, n).get_d());
}

std::complex<double> eval_add(const FieldCtx& ctx, std::uint64_t u, std::uint64_t x) {
    std::uint32_t tr = ctx.big->abs_trace(ctx.big->mul(u, x));
    return unit(static_cast<double>(tr) / ctx.big->p());
}

PolyDivisor add_char_order(const FieldCtx& ctx, std::uint64_t u) {
    PolyDivisor ord = ffield::fq_order(ctx, u);
    auto perm = reciprocal_perm(ctx);
    PolyDivisor out(ord.size(), 0);
    for (size_t i = 0; i < ord.size(); ++i) out[perm[i]] = ord[i];
    return out;
}

double rho_identity_check(const FieldCtx& ctx, const mpz_class& e) {
    require_tables(ctx);
    mpz_class n = ctx.order - 1;
    if (!mpz_divisible_p(n.get_mpz_t(), e.get_mpz_t()))
        throw std::domain_error("rho_identity_check: e must divide q^m-1");
    auto divisors = squarefree_divisors(ctx, e);
    mpq_class th = theta_of_divisor_int(ctx, e);
    double theta_d = th.get_d();
    double maxdev = 0;
    for (std::uint64_t a = 1; a < ctx.big->size(); ++a) {
        std::complex<double> sum = 0;
        for (const auto& dv : divisors) {
            std::complex<double> inner = 0;
            for (const auto& chi : characters_of_order(ctx, dv.d)) inner += eval_mult(ctx, chi, a);
            sum += (static_cast<double>(dv.mu) / dv.phi.get_d()) * inner;
        }
        double rho = (theta_d * sum).real();
        double imag = std::abs((theta_d * sum).imag());
        double ind = ffield::is_e_free(ctx, a, e) ? 1.0 : 0.0;
        maxdev = std::max({maxdev, std::abs(rho - ind), imag});
    }
    return maxdev;
}

double eta_identity_check(const FieldCtx& ctx, const PolyDivisor& g) {
    require_tables(ctx);
    const size_t nf = ctx.xm1_base.size();
    if (g.size() != nf) throw std::invalid_argument("eta_identity_check: bad divisor");
    std::vector<size_t> support;
    for (size_t i = 0; i < nf; ++i)
        if (g[i] >= 1) support.push_back(i);

    // group additive characters by F_q-order
    std::map<PolyDivisor, std::vector<std::uint64_t>> by_order;
    for (std::uint64_t u = 0; u < ctx.big->size(); ++u) by_order[add_char_order(ctx, u)].push_back(u);

    mpq_class Th = theta_of_divisor_poly(ctx, g);
    double theta_d = Th.get_d();

    double maxdev = 0;
    for (std::uint64_t a = 0; a < ctx.big->size(); ++a) {
        std::complex<double> sum = 0;
        for (size_t mask = 0; mask < (1ULL << support.size()); ++mask) {
            PolyDivisor f(nf, 0);
            std::vector<size_t> idxs;
            int mu = 1;
            for (size_t i = 0; i < support.size(); ++i)
                if (mask >> i & 1) {
                    f[support[i]] = 1;
                    idxs.push_back(support[i]);
                    mu = -mu;
                }
            auto it = by_order.find(f);
            if (it == by_order.end()) continue;
            std::complex<double> inner = 0;
            for (std::uint64_t u : it->second) inner += eval_add(ctx, u, a);
            sum += (static_cast<double>(mu) / poly_phi_of_squarefree(ctx, idxs).get_d()) * inner;
        }
        double eta = (theta_d * sum).real();
        double imag = std::abs((theta_d * sum).imag());
        double ind = ffield::is_g_free(ctx, a, g) ? 1.0 : 0.0;
        maxdev = std::max({maxdev, std::abs(eta - ind), imag});
    }
    return maxdev;
}

double tau_identity_check(const FieldCtx& ctx, std::uint64_t a_small) {
    require_tables(ctx);
    double q_d = ctx.base->size();
    double maxdev = 0;
    for (std::uint64_t x = 0; x < ctx.big->size(); ++x) {
        std::complex<double> sum = 0;
        for (std::uint64_t u = 0; u < ctx.base->size(); ++u) {
            // psi_hat_1(u x) psi_1(-u a), the latter in the base field
            std::complex<double> big_part = eval_add(ctx, ctx.emb[u], x);
            std::uint64_t ua = ctx.base->mul(u, a_small);
            std::uint32_t tr = ctx.base->abs_trace(ctx.base->neg(ua));
            sum += big_part * unit(static_cast<double>(tr) / ctx.base->p());
        }
        double tau = (sum / q_d).real();
        double imag = std::abs((sum / q_d).imag());
        double ind = ffield::trace_rel(ctx, x) == a_small ? 1.0 : 0.0;
        maxdev = std::max({maxdev, std::abs(tau - ind), imag});
    }
    return maxdev;
}

// ---------------------------------------------------------------------------

namespace {

// degree of the radical (product of distinct irreducible factors)
int radical_degree(const Poly& f) {
    int d = 0;
    for (const auto& [s, e] : f.squarefree_decomposition()) d += s.degree();
    return d;
}

Poly radical(const Poly& f) {
    Poly r = Poly::constant(f.field(), 1);
    for (const auto& [s, e] : f.squarefree_decomposition()) r = r * s;
    return r;
}

}  // namespace

WeilResult weil_mult_check(const FieldCtx& ctx, const RationalFunc& f, const mpz_class& d) {
    require_tables(ctx);
    if (d <= 1) throw std::invalid_argument("weil_mult_check: d > 1 required");
    {
        // square-free d dividing q^m-1
        mpz_class n = ctx.order - 1;
        if (!mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()))
            throw std::domain_error("weil_mult_check: d must divide q^m-1");
        auto fac = intfact::factor_integer(d);
        for (const auto& [p, e] : fac.factors)
            if (e > 1) throw std::invalid_argument("weil_mult_check: d must be square-free");
    }
    // reject the excluded shape f = c g^d: d divides every multiplicity
    // (including x's)
    mpz_class gcd_all = 0;
    for (const Poly* part : {&f.num, &f.den})
        for (const auto& [s, e] : part->squarefree_decomposition())
            if (s.degree() >= 1) {
                mpz_class mu(e);
                mpz_gcd(gcd_all.get_mpz_t(), gcd_all.get_mpz_t(), mu.get_mpz_t());
            }
    if (gcd_all == 0 || mpz_divisible_p(gcd_all.get_mpz_t(), d.get_mpz_t()))
        throw std::domain_error("SHAPE_VIOLATION");

    int raddeg = radical_degree(f.num) + radical_degree(f.den);
    WeilResult out;
    out.bound = (raddeg - 1) * std::sqrt(ctx.order.get_d());
    for (const auto& chi : characters_of_order(ctx, d)) {
        std::complex<double> sum = 0;
        for (std::uint64_t a = 0; a < ctx.big->size(); ++a) {
            std::uint64_t den = f.den.eval(a);
            if (den == 0) continue;
            std::uint64_t val = ctx.big->mul(f.num.eval(a), ctx.big->inv(den));
            if (val == 0) continue;
            sum += eval_mult(ctx, chi, val);
        }
        out.lhs = std::max(out.lhs, std::abs(sum));
    }
    out.holds = out.lhs <= out.bound + 1e-6;
    return out;
}

WeilResult weil_mixed_check(const FieldCtx& ctx, const RationalFunc& f, const RationalFunc& g,
                            const MultChar& chi, std::uint64_t u) {
    require_tables(ctx);
    if (u == 0) throw std::invalid_argument("weil_mixed_check: psi must be nontrivial");
    int d1 = radical_degree(f.num) + radical_degree(f.den);
    int d2 = std::max(g.num.degree() - g.den.degree(), 0);
    int d3 = g.den.degree();
    Poly rad_gden = radical(g.den);
    Poly rad_f = radical(f.num) * radical(f.den);
    int d4 = rad_gden.degree() - Poly::gcd(rad_gden, rad_f).degree();

    WeilResult out;
    out.bound = (d1 + d2 + d3 + d4 - 1) * std::sqrt(ctx.order.get_d());
    // The additive side only excludes poles: psi(0) is a fine value, and the
    // bound is tight for complete sums (f = 1, g = x gives bound 0).
    std::complex<double> sum = 0;
    for (std::uint64_t a = 0; a < ctx.big->size(); ++a) {
        std::uint64_t fden = f.den.eval(a);
        if (fden == 0) continue;
        std::uint64_t fval = ctx.big->mul(f.num.eval(a), ctx.big->inv(fden));
        if (fval == 0) continue;
        std::uint64_t gden = g.den.eval(a);
        if (gden == 0) continue;
        std::uint64_t gval = ctx.big->mul(g.num.eval(a), ctx.big->inv(gden));
        sum += eval_mult(ctx, chi, fval) * eval_add(ctx, u, gval);
    }
    out.lhs = std::abs(sum);
    out.holds = out.lhs <= out.bound + 1e-6;
    return out;
}

// ---------------------------------------------------------------------------

mpq_class theta_of_divisor_int(const FieldCtx& ctx, const mpz_class& e) {
    std::vector<mpz_class> primes;
    for (const auto& [p, mult] : ctx.group_fac().factors)
        if (mpz_divisible_p(e.get_mpz_t(), p.get_mpz_t())) primes.push_back(p);
    return intfact::theta(primes);
}

mpq_class theta_of_divisor_poly(const FieldCtx& ctx, const PolyDivisor& g) {
    mpq_class r = 1;
    for (size_t i = 0; i < g.size(); ++i) {
        if (g[i] == 0) continue;
        mpz_class qd = intfact::pow_mpz(ctx.q, ctx.xm1_base[i].degree());
        r *= mpq_class(qd - 1, qd);
    }
    r.canonicalize();
    return r;
}

mpz_class w_of_divisor_int(const FieldCtx& ctx, const mpz_class& e) {
    unsigned cnt = 0;
    for (const auto& [p, mult] : ctx.group_fac().factors)
        if (mpz_divisible_p(e.get_mpz_t(), p.get_mpz_t())) ++cnt;
    return intfact::pow_mpz(2, cnt);
}

mpz_class w_of_divisor_poly(const PolyDivisor& g) {
    unsigned cnt = 0;
    for (unsigned e : g)
        if (e >= 1) ++cnt;
    return intfact::pow_mpz(2, cnt);
}

std::uint64_t brute_count_n(const FieldCtx& ctx, const RationalFunc& f, std::uint64_t a_small,
                            const mpz_class& e1, const mpz_class& e2, const PolyDivisor& g1,
                            const PolyDivisor& g2) {
    std::uint64_t count = 0;
    for (std::uint64_t a = 1; a < ctx.big->size(); ++a) {
        std::uint64_t den = f.den.eval(a);
        if (den == 0) continue;
        std::uint64_t val = ctx.big->mul(f.num.eval(a), ctx.big->inv(den));
        if (val == 0) continue;
        if (!ffield::is_e_free(ctx, a, e1)) continue;
        if (!ffield::is_g_free(ctx, a, g1)) continue;
        if (!ffield::is_e_free(ctx, val, e2)) continue;
        if (!ffield::is_g_free(ctx, val, g2)) continue;
        if (ffield::trace_rel(ctx, ctx.big->inv(a)) != a_small) continue;
        ++count;
    }
    return count;
}

double lower_bound_proof_form(const FieldCtx& ctx, unsigned n, const mpz_class& e1,
                              const mpz_class& e2, const PolyDivisor& g1, const PolyDivisor& g2) {
    double th = theta_of_divisor_int(ctx, e1).get_d() * theta_of_divisor_int(ctx, e2).get_d() *
                theta_of_divisor_poly(ctx, g1).get_d() * theta_of_divisor_poly(ctx, g2).get_d();
    double w = w_of_divisor_int(ctx, e1).get_d() * w_of_divisor_int(ctx, e2).get_d() *
               w_of_divisor_poly(g1).get_d() * w_of_divisor_poly(g2).get_d();
    double qm = ctx.order.get_d();
    // theta(e1)theta(e2)Theta(g1)Theta(g2) (q^{m-1} - (2n+1) q^{m/2} W(e1)W(e2)W(g1)W(g2))
    return th * (qm / ctx.q.get_d() - (2.0 * n + 1) * std::sqrt(qm) * w);
}

}  // namespace pnpv::charsum
