#include "pnpv/ffield.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace pnpv::ffield {

using gf::Poly;

namespace {

// Minimal polynomial of the base-field generator over F_p; coefficients land
// in F_p.
std::vector<std::uint32_t> generator_min_poly(const gf::Gf& base) {
    const unsigned k = base.degree();
    Poly mu = Poly::constant(base, 1);
    std::uint64_t conj = base.generator();
    for (unsigned i = 0; i < k; ++i) {
        mu = mu * Poly(base, {base.neg(conj), 1});
        conj = base.pow(conj, base.p());
    }
    std::vector<std::uint32_t> out(k + 1);
    for (unsigned i = 0; i <= k; ++i) {
        std::uint64_t c = mu.coeff(i);
        if (c >= base.p()) throw std::logic_error("generator_min_poly: coefficient not in F_p");
        out[i] = static_cast<std::uint32_t>(c);
    }
    return out;
}

Poly embed_poly(const FieldCtx& ctx, const Poly& over_base) {
    std::vector<std::uint64_t> c(over_base.coeffs().size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = ctx.emb[over_base.coeff(i)];
    return Poly(*ctx.big, std::move(c));
}

// O(x) = prod xm1_big[i]^{exps[i]}
Poly divisor_poly_big(const FieldCtx& ctx, const PolyDivisor& exps) {
    Poly o = Poly::constant(*ctx.big, 1);
    for (size_t i = 0; i < exps.size(); ++i)
        for (unsigned e = 0; e < exps[i]; ++e) o = o * ctx.xm1_big[i];
    return o;
}

// h "circ" alpha = sum h_j alpha^{q^j}
std::uint64_t apply_fq_poly(const FieldCtx& ctx, const Poly& h,
                            const std::vector<std::uint64_t>& frob_powers) {
    std::uint64_t acc = 0;
    for (size_t j = 0; j < h.coeffs().size(); ++j) {
        if (!h.coeff(j)) continue;
        acc = ctx.big->add(acc, ctx.big->mul(h.coeff(j), frob_powers[j]));
    }
    return acc;
}

std::vector<std::uint64_t> frobenius_powers(const FieldCtx& ctx, std::uint64_t alpha,
                                            unsigned upto) {
    std::vector<std::uint64_t> fp(upto + 1);
    fp[0] = alpha;
    for (unsigned i = 1; i <= upto; ++i) fp[i] = ctx.q_frobenius(fp[i - 1]);
    return fp;
}

}  // namespace

FieldCtx build_field(const mpz_class& p, unsigned k, unsigned m, const BuildOptions& opts) {
    if (!intfact::is_probable_prime(p)) throw std::invalid_argument("build_field: p must be prime");
    if (k == 0 || m == 0) throw std::invalid_argument("build_field: k, m >= 1");
    mpz_class order = intfact::pow_mpz(p, static_cast<unsigned long>(k) * m);
    if (order > opts.hard_limit) throw std::domain_error("LIMIT_EXCEEDED");
    FieldCtx ctx;
    ctx.p = p;
    ctx.k = k;
    ctx.m = m;
    ctx.q = intfact::pow_mpz(p, k);
    ctx.order = order;
    std::uint32_t pu = static_cast<std::uint32_t>(p.get_ui());
    ctx.base = std::make_shared<gf::Gf>(pu, k, opts.table_limit);
    ctx.big = m == 1 ? ctx.base : std::make_shared<gf::Gf>(pu, k * m, opts.table_limit);

    // subfield embedding F_q -> F_{q^m}: send the base generator to the least
    // root of its minimal polynomial; extend multiplicatively.
    ctx.emb.assign(ctx.base->size(), 0);
    if (k == 1) {
        for (std::uint64_t c = 0; c < ctx.base->size(); ++c) ctx.emb[c] = c;
    } else if (m == 1) {
        for (std::uint64_t c = 0; c < ctx.base->size(); ++c) ctx.emb[c] = c;
    } else {
        auto mu = generator_min_poly(*ctx.base);
        std::vector<std::uint64_t> mu_big(mu.begin(), mu.end());
        Poly mu_poly(*ctx.big, std::move(mu_big));
        auto factors = mu_poly.factor();
        std::uint64_t root = 0;
        bool found = false;
        for (const auto& [irr, e] : factors) {
            if (irr.degree() != 1) continue;
            std::uint64_t r = ctx.big->neg(irr.coeff(0));  // irr = x + c -> root -c
            if (!found || r < root) {
                root = r;
                found = true;
            }
        }
        if (!found) throw std::logic_error("build_field: subfield embedding root not found");
        std::uint64_t cur_s = 1, cur_b = 1;
        for (std::uint64_t t = 0; t + 1 < ctx.base->size(); ++t) {
            ctx.emb[cur_s] = cur_b;
            cur_s = ctx.base->mul(cur_s, ctx.base->generator());
            cur_b = ctx.big->mul(cur_b, root);
        }
        // spot-check additivity of the embedding
        for (std::uint64_t a = 0; a < std::min<std::uint64_t>(ctx.base->size(), 8); ++a)
            for (std::uint64_t b = 0; b < std::min<std::uint64_t>(ctx.base->size(), 8); ++b)
                assert(ctx.emb[ctx.base->add(a, b)] == ctx.big->add(ctx.emb[a], ctx.emb[b]));
    }
    for (std::uint64_t c = 0; c < ctx.base->size(); ++c) ctx.emb_inv[ctx.emb[c]] = c;

    ctx.profile = polyfact::xm1_profile(ctx.q, m);
    ctx.p_mult = ctx.profile.p_mult;
    ctx.xm1_base = polyfact::explicit_xm1_factors(*ctx.base, m);
    for (const auto& f : ctx.xm1_base) ctx.xm1_big.push_back(embed_poly(ctx, f));
    return ctx;
}

std::uint64_t trace_rel(const FieldCtx& ctx, std::uint64_t alpha) {
    std::uint64_t acc = 0, cur = alpha;
    for (unsigned i = 0; i < ctx.m; ++i) {
        acc = ctx.big->add(acc, cur);
        cur = ctx.q_frobenius(cur);
    }
    auto it = ctx.emb_inv.find(acc);
    if (it == ctx.emb_inv.end()) throw std::logic_error("trace_rel: trace not in subfield");
    return it->second;
}

bool is_e_free(const FieldCtx& ctx, std::uint64_t alpha, const mpz_class& e) {
    if (alpha == 0) throw std::invalid_argument("is_e_free: alpha != 0 required");
    mpz_class n = ctx.order - 1;
    if (!mpz_divisible_p(n.get_mpz_t(), e.get_mpz_t())) throw std::domain_error("E_NOT_DIVISOR");
    // alpha is an l-th power iff alpha^{(q^m-1)/l} = 1; e-free iff no prime
    // l | e has alpha an l-th power.
    for (const auto& [pr, mult] : ctx.group_fac().factors) {
        if (!mpz_divisible_p(e.get_mpz_t(), pr.get_mpz_t())) continue;
        if (ctx.big->pow(alpha, n / pr) == 1) return false;
    }
    return true;
}

bool is_primitive(const FieldCtx& ctx, std::uint64_t alpha) {
    if (alpha == 0) return false;
    return is_e_free(ctx, alpha, ctx.order - 1);
}

PolyDivisor fq_order(const FieldCtx& ctx, std::uint64_t alpha) {
    const size_t nf = ctx.xm1_base.size();
    PolyDivisor exps(nf, ctx.p_mult);
    auto frob = frobenius_powers(ctx, alpha, ctx.m);
    for (size_t i = 0; i < nf; ++i) {
        while (exps[i] > 0) {
            PolyDivisor trial = exps;
            --trial[i];
            Poly o = divisor_poly_big(ctx, trial);
            if (apply_fq_poly(ctx, o, frob) == 0)
                exps[i] = trial[i];
            else
                break;
        }
    }
    return exps;
}

bool is_g_free(const FieldCtx& ctx, std::uint64_t alpha, const PolyDivisor& g) {
    if (g.size() != ctx.xm1_base.size()) throw std::invalid_argument("is_g_free: bad divisor");
    PolyDivisor ord = fq_order(ctx, alpha);
    for (size_t i = 0; i < g.size(); ++i) {
        if (g[i] > ctx.p_mult) throw std::domain_error("G_NOT_DIVISOR");
        if (g[i] >= 1 && ord[i] != ctx.p_mult) return false;
    }
    return true;
}

bool is_normal(const FieldCtx& ctx, std::uint64_t alpha) {
    PolyDivisor ord = fq_order(ctx, alpha);
    for (size_t i = 0; i < ord.size(); ++i)
        if (ord[i] != ctx.p_mult) return false;
    return true;
}

PolyDivisor divisor_from_poly(const FieldCtx& ctx, const Poly& g_over_base) {
    if (g_over_base.is_zero()) throw std::domain_error("G_NOT_DIVISOR");
    Poly g = g_over_base.make_monic();
    PolyDivisor exps(ctx.xm1_base.size(), 0);
    for (size_t i = 0; i < ctx.xm1_base.size(); ++i) {
        while (exps[i] < ctx.p_mult) {
            Poly quo, rem;
            Poly::divrem(g, ctx.xm1_base[i], quo, rem);
            if (!rem.is_zero()) break;
            g = quo;
            ++exps[i];
        }
    }
    if (!g.is_one()) throw std::domain_error("G_NOT_DIVISOR");
    return exps;
}

bool is_in_en(const FieldCtx& ctx, const RationalFunc& f, unsigned n) {
    if (f.num.is_zero()) return false;
    if (!Poly::gcd(f.num, f.den).is_one()) throw std::domain_error("NOT_COPRIME");
    if (!f.den.monic()) return false;
    if (f.den.degree() < 1) return false;  // forces n2 >= 1
    if (f.num.degree() + f.den.degree() != static_cast<int>(n)) return false;

    // multiplicity gcd over the non-x irreducible factors of f1*f2
    mpz_class gcd_e = 0;
    auto absorb = [&](const Poly& poly) {
        for (auto& [sqf, mult] : poly.squarefree_decomposition()) {
            Poly s = sqf;
            if (s.eval(0) == 0) {
                Poly quo, rem;
                Poly::divrem(s, Poly::x(*ctx.big), quo, rem);
                s = quo;  // drop the factor x; its exponent is unconstrained
            }
            if (s.degree() >= 1) {
                mpz_class mu(mult);
                mpz_gcd(gcd_e.get_mpz_t(), gcd_e.get_mpz_t(), mu.get_mpz_t());
            }
        }
    };
    absorb(f.num);
    absorb(f.den);
    // gcd_e == 0 means f = c x^i, which is degenerate for every d | q^m-1
    mpz_class qm1 = ctx.order - 1, g;
    mpz_gcd(g.get_mpz_t(), gcd_e.get_mpz_t(), qm1.get_mpz_t());
    return g == 1;
}

std::optional<std::uint64_t> eval_rational(const FieldCtx& ctx, const RationalFunc& f,
                                           std::uint64_t alpha) {
    std::uint64_t d = f.den.eval(alpha);
    if (d == 0) return std::nullopt;
    return ctx.big->mul(f.num.eval(alpha), ctx.big->inv(d));
}

std::optional<std::uint64_t> find_alpha(const FieldCtx& ctx, const RationalFunc& f,
                                        std::uint64_t a_small) {
    for (std::uint64_t alpha = 1; alpha < ctx.big->size(); ++alpha) {
        std::uint64_t den = f.den.eval(alpha);
        if (den == 0) continue;
        std::uint64_t beta = ctx.big->mul(f.num.eval(alpha), ctx.big->inv(den));
        if (beta == 0) continue;
        if (!is_primitive(ctx, alpha) || !is_primitive(ctx, beta)) continue;
        if (!is_normal(ctx, alpha) || !is_normal(ctx, beta)) continue;
        if (trace_rel(ctx, ctx.big->inv(alpha)) != a_small) continue;
        return alpha;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// parsing

Poly parse_poly(const gf::Gf& field, const std::string& text) {
    // terms like "x^3", "4*x^2", "3x", "-x", "7"; '{' '}' and spaces ignored
    std::string s;
    for (char ch : text)
        if (!isspace(static_cast<unsigned char>(ch)) && ch != '{' && ch != '}') s += ch;
    if (s.empty()) throw std::invalid_argument("parse_poly: empty");
    std::vector<std::pair<long, unsigned>> terms;  // (signed coeff, exponent)
    size_t i = 0;
    while (i < s.size()) {
        long sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        }
        long coef = 1;
        bool have_coef = false;
        size_t j = i;
        while (j < s.size() && isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) {
            coef = std::stol(s.substr(i, j - i));
            have_coef = true;
            i = j;
        }
        if (i < s.size() && s[i] == '*') ++i;
        unsigned exp = 0;
        if (i < s.size() && s[i] == 'x') {
            ++i;
            exp = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                j = i;
                while (j < s.size() && isdigit(static_cast<unsigned char>(s[j]))) ++j;
                if (j == i) throw std::invalid_argument("parse_poly: bad exponent");
                exp = std::stoul(s.substr(i, j - i));
                i = j;
            }
        } else if (!have_coef) {
            throw std::invalid_argument("parse_poly: bad term near '" + s.substr(i) + "'");
        }
        terms.emplace_back(sign * coef, exp);
    }
    unsigned maxe = 0;
    for (auto [c, e] : terms) maxe = std::max(maxe, e);
    std::vector<std::uint64_t> coeffs(maxe + 1, 0);
    long p = static_cast<long>(field.p());
    for (auto [c, e] : terms) {
        long cc = ((c % p) + p) % p;
        coeffs[e] = field.add(coeffs[e], static_cast<std::uint64_t>(cc));
    }
    return Poly(field, std::move(coeffs));
}

RationalFunc parse_rational(const FieldCtx& ctx, const std::string& text) {
    auto slash = text.find('/');
    RationalFunc f;
    if (slash == std::string::npos) {
        f.num = parse_poly(*ctx.big, text);
        f.den = Poly::constant(*ctx.big, 1);
    } else {
        f.num = parse_poly(*ctx.big, text.substr(0, slash));
        f.den = parse_poly(*ctx.big, text.substr(slash + 1));
    }
    if (f.den.is_zero()) throw std::invalid_argument("parse_rational: zero denominator");
    Poly g = Poly::gcd(f.num, f.den);
    if (!g.is_one()) {
        f.num = f.num / g;
        f.den = f.den / g;
    }
    if (!f.den.monic()) {
        std::uint64_t li = ctx.big->inv(f.den.lead());
        f.num = f.num * Poly::constant(*ctx.big, li);
        f.den = f.den.make_monic();
    }
    return f;
}

mpz_class count_primitive(const FieldCtx& ctx) {
    mpz_class c = 0;
    for (std::uint64_t a = 1; a < ctx.big->size(); ++a)
        if (is_primitive(ctx, a)) ++c;
    return c;
}

mpz_class count_normal(const FieldCtx& ctx) {
    mpz_class c = 0;
    for (std::uint64_t a = 0; a < ctx.big->size(); ++a)
        if (is_normal(ctx, a)) ++c;
    return c;
}

}  // namespace pnpv::ffield
