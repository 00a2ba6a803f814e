// Exact evaluation of the sufficient conditions: the basic condition, the
// prime sieve, the modified prime sieve, the closed-form Lambda for m' | q-1,
// the W-bound screens, and the sigma-based condition with exponent 2m*sigma.
// Every decisive inequality is decided in exact rational arithmetic;
// fractional exponents are cleared by cross-powering.
#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "pnpv/intfact.hpp"
#include "pnpv/polyfact.hpp"

namespace pnpv::criteria {

enum class Method { Basic, Sieve, Modified, WbdScreen, Cond61, Lemma61 };

const char* method_name(Method m);

// Partition of the prime set of q^m-1 and of the factor classes of x^m-1 into
// absorbed (d, g) and sieved (p_i, g_i) parts.
struct SieveConfig {
    std::vector<mpz_class> d_primes;
    std::vector<mpz_class> sieved_primes;
    polyfact::GChoice g_choice;
    std::vector<std::pair<unsigned, unsigned>> sieved_classes;  // (degree, count)

    unsigned r() const { return static_cast<unsigned>(sieved_primes.size()); }
    unsigned s() const;
    mpz_class d_value() const;
    std::string echo() const;
};

// Three-way partitions for the modified sieve: Rad(q^m-1) = kPL and
// Rad(x^m-1) = gGH.
struct ModSieveConfig {
    std::vector<mpz_class> k_primes, P_primes, L_primes;
    polyfact::GChoice g_choice;
    std::vector<std::pair<unsigned, unsigned>> G_classes, H_classes;

    std::string echo() const;
};

struct CriterionReport {
    Method method = Method::Basic;
    mpz_class q;
    unsigned m = 0;
    unsigned n = 0;
    std::optional<mpq_class> lambda, Lambda, eps1, eps2;
    long lhs_num = 0;            // lhs is q^{lhs_num/lhs_den}
    unsigned long lhs_den = 1;
    mpq_class rhs;               // exact; for Modified, the rational part (see rhs_exact)
    bool rhs_exact = true;
    bool holds = false;
    bool used_bounds = false;    // some W entering rhs is an upper bound
    std::string note;
    std::string config_echo;

    std::string to_json() const;
};

struct SieveLambda {
    mpq_class lambda;
    std::optional<mpq_class> Lambda;  // absent when lambda <= 0
};

// q^{m/2-1} > (2n+1) W1^2 W2^2, decided exactly. Throws when m < 3.
CriterionReport basic_condition(const mpz_class& q, unsigned m, unsigned n, const mpz_class& w1,
                                const mpz_class& w2, bool w_is_bound = false);

// lambda = 1 - 2 sum 1/p_i - 2 sum q^{-deg g_i}; Lambda = (2r+2s-1)/lambda + 2.
SieveLambda prime_sieve_lambda(const mpz_class& q, const SieveConfig& config);

CriterionReport prime_sieve_condition(const mpz_class& q, unsigned m, unsigned n,
                                      const SieveConfig& config, const mpz_class& wd,
                                      const mpz_class& wg, bool w_is_bound = false);

CriterionReport modified_sieve_condition(const mpz_class& q, unsigned m, unsigned n,
                                         const ModSieveConfig& config, bool w_is_bound = false);

// Lambda = (2q^2 + (a-6)q + 4) / ((a-2)q + 2) with a = (q-1)/m'. Throws
// std::domain_error("DIVISOR_VIOLATION") when m' does not divide q-1 and
// std::domain_error("SINGULAR") when the denominator vanishes.
mpq_class lambda_closed_form(const mpz_class& q, unsigned m_prime);

enum class WBoundKind { Eighth, Eleventh };

// Exact decision of q^{e} > c * 2^{p2} with rational exponents e, p2; the
// caller assembles e and c from the case analysis.
CriterionReport wbd_screen(const mpz_class& q, unsigned m, long e_num, unsigned long e_den,
                           const mpq_class& c, WBoundKind kind, long p2_num = 0,
                           unsigned long p2_den = 1);

// q^{m/2-1} > 2(2n+1) m W(q^m-1)^2 2^{2m sigma}, cleared by cross-powering
// with sigma's denominator.
CriterionReport cond61_check(const mpz_class& q, unsigned m, unsigned n, const mpz_class& w_qm,
                             const mpq_class& sigma, bool w_is_bound = false);

// Decimal formatting of exact rationals at a fixed number of places
// (round half away from zero), e.g. "57.7227".
std::string format_decimal(const mpq_class& x, unsigned places);

// Parses a printed decimal like "34938.5622", "9.765e6", "5.52 x 10^8"
// into its exact value and one unit in the last printed digit.
struct PrintedValue {
    mpq_class value;
    mpq_class ulp;
};
PrintedValue parse_printed(const std::string& s);

}  // namespace pnpv::criteria
