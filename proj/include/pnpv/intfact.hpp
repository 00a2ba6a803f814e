// Exact big-integer arithmetic: factorization of q^m-1 via cyclotomic
// splitting, multiplicative number-theoretic functions, and exact comparison
// of expressions containing fractional powers of q.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pnpv::intfact {

// Effort limits for factor_integer. Results are deterministic for a fixed
// budget: trial division by all primes below trial_bound, then Brent-variant
// Pollard rho with polynomial x^2+c, x0=2, for c = 1..rho_seeds, at most
// rho_max_iters squarings per seed.
struct FactorBudget {
    unsigned long trial_bound = 1'000'000;
    unsigned long long rho_max_iters = 64'000'000ULL;
    unsigned rho_seeds = 6;
};

struct Factorization {
    mpz_class value;
    std::vector<std::pair<mpz_class, unsigned>> factors;  // (prime, multiplicity), primes ascending
    mpz_class cofactor{1};
    bool complete = true;
    unsigned long trial_bound = 0;   // recorded when cofactor > 1: cofactor has no prime below it
    bool probable_only = false;      // some listed prime certified only by Baillie-PSW

    mpz_class recompose() const;
    bool valid(bool check_primality = true) const;
    unsigned omega() const { return static_cast<unsigned>(factors.size()); }
};

struct OmegaBound {
    unsigned omega_lower = 0;
    unsigned omega_upper = 0;
    bool exact = true;

    mpz_class w_lower() const;  // 2^omega_lower
    mpz_class w_upper() const;  // 2^omega_upper
};

enum class Ordering { Less, Equal, Greater };

// Deterministic Miller-Rabin with the 13-prime base set (valid below
// 3.317e24); Baillie-PSW above that, reported via *deterministic = false.
bool is_probable_prime(const mpz_class& n, bool* deterministic = nullptr);

Factorization factor_integer(const mpz_class& n, const FactorBudget& budget = {});

// Phi_d(q) via the Moebius product prod_{e|d} (q^{d/e}-1)^{mu(e)}, evaluated
// as an exact quotient of two integer products.
mpz_class cyclotomic_value(unsigned d, const mpz_class& q);

// Factors q^m-1 for q = p^k by factoring each Phi_D(p), D | k*m, independently.
Factorization factor_q_power_minus_one(const mpz_class& p, unsigned k, unsigned m,
                                       const FactorBudget& budget = {});

OmegaBound omega_and_w(const Factorization& f);

mpz_class p_free_part(mpz_class r, const mpz_class& p);

// Exact ordering of q^{num/den} versus rhs > 0 by cross-powering; no floating
// point in the decision path.
Ordering compare_power(const mpz_class& q, long num, unsigned long den, const mpq_class& rhs);

// Exact decision of q^{e_num/e_den} > c * 2^{p2_num/p2_den}. Used by the
// W-bound screens, whose right-hand sides carry a fractional power of two.
bool power_exceeds(const mpz_class& q, long e_num, unsigned long e_den, const mpq_class& c,
                   long p2_num = 0, unsigned long p2_den = 1);

mpz_class euler_phi(const Factorization& f);
int moebius(const Factorization& f);

// theta(e) = phi(e)/e = prod (1 - 1/p) over the distinct primes of e.
mpq_class theta(const std::vector<mpz_class>& primes);

// Wire format: "value = p1^e1 * p2^e2 * ... [* C?]" ('?' marks an unfactored
// cofactor); ASCII decimal.
std::string to_wire(const Factorization& f);
std::optional<Factorization> parse_wire(const std::string& line);

mpz_class pow_mpz(const mpz_class& base, unsigned long e);

}  // namespace pnpv::intfact
