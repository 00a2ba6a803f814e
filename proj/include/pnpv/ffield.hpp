// Concrete small finite fields F_{q^m} = F_{p^{k m}} over F_q = F_{p^k} with
// deterministic construction, primitivity / normality / e-free / g-free /
// trace predicates, rational-function evaluation, degeneracy-class membership
// for the verified family of rational functions, and direct existence search.
// This is the ground-truth oracle the criteria are checked against.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pnpv/gf.hpp"
#include "pnpv/intfact.hpp"
#include "pnpv/polyfact.hpp"

namespace pnpv::ffield {

// Exponent vector over the distinct irreducible factors of x^{m'}-1; entry i
// is the exponent of factor i, at most p^{v_p(m)}.
using PolyDivisor = std::vector<unsigned>;

struct FieldCtx {
    mpz_class p;
    unsigned k = 1, m = 1;
    mpz_class q;      // p^k
    mpz_class order;  // p^{km}

    std::shared_ptr<gf::Gf> base;  // F_q
    std::shared_ptr<gf::Gf> big;   // F_{q^m}

    polyfact::XmProfile profile;
    std::vector<gf::Poly> xm1_base;  // distinct irreducible factors over F_q
    std::vector<gf::Poly> xm1_big;   // same factors, coefficients embedded
    unsigned p_mult = 1;             // multiplicity of each factor in x^m-1

    std::vector<std::uint64_t> emb;  // F_q code -> F_{q^m} code
    std::unordered_map<std::uint64_t, std::uint64_t> emb_inv;

    const intfact::Factorization& group_fac() const { return big->group_order_factors(); }

    std::uint64_t embed(std::uint64_t a_small) const { return emb[a_small]; }
    std::uint64_t q_frobenius(std::uint64_t a) const { return big->pow(a, q); }

    PolyDivisor full_divisor() const { return PolyDivisor(xm1_base.size(), p_mult); }
};

struct RationalFunc {
    gf::Poly num, den;  // over the big field; den monic; gcd(num, den) = 1

    int degree_sum() const { return num.degree() + den.degree(); }
    std::string str() const { return num.str() + " / " + den.str(); }
};

struct BuildOptions {
    std::uint64_t table_limit = gf::Gf::kDefaultTableLimit;
    std::uint64_t hard_limit = 1ULL << 40;
};

// Modulus = lexicographically least monic irreducible of degree k*m over F_p,
// generator = least full-order element; deterministic. Throws
// std::domain_error("LIMIT_EXCEEDED") above hard_limit.
FieldCtx build_field(const mpz_class& p, unsigned k, unsigned m, const BuildOptions& = {});

// Relative trace to F_q; returns a base-field code.
std::uint64_t trace_rel(const FieldCtx& ctx, std::uint64_t alpha);

bool is_e_free(const FieldCtx& ctx, std::uint64_t alpha, const mpz_class& e);
bool is_primitive(const FieldCtx& ctx, std::uint64_t alpha);

// F_q-order of alpha as an exponent vector over ctx.xm1_base.
PolyDivisor fq_order(const FieldCtx& ctx, std::uint64_t alpha);

bool is_g_free(const FieldCtx& ctx, std::uint64_t alpha, const PolyDivisor& g);
bool is_normal(const FieldCtx& ctx, std::uint64_t alpha);

// Divisor of x^m-1 from an explicit polynomial over F_q; throws
// std::domain_error("G_NOT_DIVISOR") when it does not divide x^m-1.
PolyDivisor divisor_from_poly(const FieldCtx& ctx, const gf::Poly& g_over_base);

// Degree-sum-n membership in the verified family: degree sum n, monic
// denominator of degree >= 1, and the multiplicity gcd of the non-x
// irreducible factors of f1*f2 shares no divisor > 1 with q^m-1. Throws
// std::domain_error("NOT_COPRIME") when gcd(f1, f2) != 1.
bool is_in_en(const FieldCtx& ctx, const RationalFunc& f, unsigned n);

std::optional<std::uint64_t> eval_rational(const FieldCtx& ctx, const RationalFunc& f,
                                           std::uint64_t alpha);  // nullopt = pole

// First alpha in code order with alpha and f(alpha) both primitive and normal
// and Tr(alpha^{-1}) = a; NONE after exhausting the field.
std::optional<std::uint64_t> find_alpha(const FieldCtx& ctx, const RationalFunc& f,
                                        std::uint64_t a_small);

// "c3*x^3+c1*x+c0 / x"-style parser, integer coefficients reduced mod p.
RationalFunc parse_rational(const FieldCtx& ctx, const std::string& text);
gf::Poly parse_poly(const gf::Gf& field, const std::string& text);

mpz_class count_primitive(const FieldCtx& ctx);
mpz_class count_normal(const FieldCtx& ctx);

}  // namespace pnpv::ffield
