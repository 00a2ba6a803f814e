// Multiplicative and additive characters on oracle fields, numerical
// verification of the characteristic-function identities (rho_e, eta_g,
// tau_a), the character-sum bounds, the proof-form lower bound, and the
// sieving inequality, all by brute force over small fields.
#pragma once

#include <complex>
#include <vector>

#include "pnpv/ffield.hpp"

namespace pnpv::charsum {

// One of the phi(d) multiplicative characters of exact order d: with g the
// field generator, chi(g^t) = e^{2 pi i u t (Q-1)/d / (Q-1)}, gcd(u, d) = 1.
struct MultChar {
    mpz_class order;
    mpz_class index;  // u
};

std::vector<MultChar> characters_of_order(const ffield::FieldCtx& ctx, const mpz_class& d);

std::complex<double> eval_mult(const ffield::FieldCtx& ctx, const MultChar& chi,
                               std::uint64_t alpha);

// Additive character psi_u(x) = psi_hat_1(u x), psi_hat_1 the canonical
// character e^{2 pi i AbsTr(.)/p}.
std::complex<double> eval_add(const ffield::FieldCtx& ctx, std::uint64_t u, std::uint64_t x);

// F_q-order of the additive character psi_u: the monic reciprocal of the
// F_q-order of the element u.
ffield::PolyDivisor add_char_order(const ffield::FieldCtx& ctx, std::uint64_t u);

// Max |rho_e(alpha) - [alpha e-free]| over all alpha != 0.
double rho_identity_check(const ffield::FieldCtx& ctx, const mpz_class& e);

// Max |eta_g(alpha) - [alpha g-free]| over all alpha.
double eta_identity_check(const ffield::FieldCtx& ctx, const ffield::PolyDivisor& g);

// Max |tau_a(alpha) - [Tr(alpha) = a]| over all alpha.
double tau_identity_check(const ffield::FieldCtx& ctx, std::uint64_t a_small);

struct WeilResult {
    double lhs = 0;    // max |sum| over the characters tested
    double bound = 0;
    bool holds = false;
};

// |sum chi(f(alpha))| <= (sum deg f_j - 1) sqrt(Q) for every character of
// exact square-free order d > 1. Throws std::domain_error("SHAPE_VIOLATION")
// when f is a d-th power shape c*g^d.
WeilResult weil_mult_check(const ffield::FieldCtx& ctx, const ffield::RationalFunc& f,
                           const mpz_class& d);

// |sum chi(f(alpha)) psi_u(g(alpha))| <= (D1+D2+D3+D4-1) sqrt(Q), psi_u
// nontrivial (u != 0).
WeilResult weil_mixed_check(const ffield::FieldCtx& ctx, const ffield::RationalFunc& f,
                            const ffield::RationalFunc& g, const MultChar& chi, std::uint64_t u);

// Exact count of alpha outside P with alpha e1-free and g1-free, f(alpha)
// e2-free and g2-free, and Tr(alpha^{-1}) = a.
std::uint64_t brute_count_n(const ffield::FieldCtx& ctx, const ffield::RationalFunc& f,
                            std::uint64_t a_small, const mpz_class& e1, const mpz_class& e2,
                            const ffield::PolyDivisor& g1, const ffield::PolyDivisor& g2);

// theta(e1) theta(e2) Theta(g1) Theta(g2) q^{m/2} (q^{m/2} - (2n+1) W...) as a
// double; the proof-form lower bound checked against brute_count_n.
double lower_bound_proof_form(const ffield::FieldCtx& ctx, unsigned n, const mpz_class& e1,
                              const mpz_class& e2, const ffield::PolyDivisor& g1,
                              const ffield::PolyDivisor& g2);

mpq_class theta_of_divisor_int(const ffield::FieldCtx& ctx, const mpz_class& e);
mpq_class theta_of_divisor_poly(const ffield::FieldCtx& ctx, const ffield::PolyDivisor& g);
mpz_class w_of_divisor_int(const ffield::FieldCtx& ctx, const mpz_class& e);
mpz_class w_of_divisor_poly(const ffield::PolyDivisor& g);

}  // namespace pnpv::charsum
