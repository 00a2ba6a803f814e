// Structure of x^m-1 over F_q: the irreducible-factor degree profile computed
// arithmetically, the polynomial Euler function / Theta / W, the sigma(q,m')
// ratio, and explicit factor lists for small q.
#pragma once

#include <gmpxx.h>

#include <utility>
#include <vector>

#include "pnpv/gf.hpp"

namespace pnpv::polyfact {

struct XmProfile {
    mpz_class q;
    unsigned m = 0;
    unsigned m_prime = 0;  // p-free part of m
    unsigned p_mult = 1;   // p^{v_p(m)}: multiplicity of every distinct factor in x^m-1
    std::vector<std::pair<unsigned, unsigned>> classes;  // (degree, count), sorted by degree

    unsigned total_factors() const;          // omega(x^m-1)
    mpz_class w() const;                     // W(x^m-1) = 2^omega
    unsigned count_degree_below(unsigned e) const;
};

// Multiset of degrees of the irreducible factors absorbed into g.
struct GChoice {
    std::vector<std::pair<unsigned, unsigned>> degrees;  // (degree, count)

    unsigned count() const;
    mpz_class w() const;  // 2^count
};

struct SigmaRatio {
    mpq_class value;          // closed-form value, or the 1/3 upper bound
    bool exact = false;       // true for the 2m1/4m1/6m1 closed-form cases
    mpq_class profile_ratio;  // M/m' computed directly from the profile
    bool consistent = true;   // exact implies value == profile_ratio; surfaced, not assumed
};

// Least e >= 1 with q^e = 1 (mod d); throws when gcd(q, d) != 1.
unsigned ord_mod(const mpz_class& q, unsigned d);

// Splits a prime power; throws std::invalid_argument otherwise.
std::pair<mpz_class, unsigned> prime_power_split(const mpz_class& q);

// Profile of x^{m'}-1 over F_q: for each d | m' the class of degree ord_d(q)
// receives phi(d)/ord_d(q) factors. Purely arithmetic.
XmProfile xm1_profile(const mpz_class& q, unsigned m);

// Theta = prod (1 - q^{-d_i}) over the chosen degrees; W = 2^{#chosen}.
std::pair<mpq_class, mpz_class> theta_w_of_choice(const mpz_class& q, const GChoice& choice);

// sigma(q, m') for m' > 4 with gcd(m', char) = 1: 1/2, 3/8, 13/36 in the
// m' = 2m1 / 4m1 / 6m1 cases (m1 = gcd(q-1, m')), else the 1/3 upper bound;
// also computes M/m' from the profile for cross-checking the claimed value.
SigmaRatio sigma_ratio(const mpz_class& q, unsigned m_prime);

// Distinct monic irreducible factors of x^{m'}-1 over F_q, sorted by
// (degree, coefficient codes). Deterministic.
std::vector<gf::Poly> explicit_xm1_factors(const gf::Gf& fq, unsigned m);

// Phi_d reduced mod the field characteristic, as a polynomial over fq.
gf::Poly cyclotomic_poly_mod_p(const gf::Gf& fq, unsigned d);

}  // namespace pnpv::polyfact
