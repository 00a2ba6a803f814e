// Small finite fields F_{p^d} with deterministic construction, and polynomial
// arithmetic over them. Elements are integer codes in [0, p^d): the base-p
// digits of a code are the coefficients of the residue polynomial, low degree
// first. Multiplication uses exp/log tables when the field fits the table
// limit, schoolbook reduction otherwise.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "pnpv/intfact.hpp"

namespace pnpv::gf {

class Gf {
  public:
    static constexpr std::uint64_t kDefaultTableLimit = 1ULL << 24;

    // Modulus = lexicographically least monic irreducible of degree d over F_p
    // (coefficients compared low-degree-first as integers); generator = least
    // element code with full multiplicative order.
    Gf(std::uint32_t p, std::uint32_t d, std::uint64_t table_limit = kDefaultTableLimit);

    std::uint32_t p() const { return p_; }
    std::uint32_t degree() const { return d_; }
    std::uint64_t size() const { return size_; }
    bool has_tables() const { return !exp_.empty(); }
    std::uint64_t generator() const { return gen_; }
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }
    const intfact::Factorization& group_order_factors() const { return order_fac_; }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t neg(std::uint64_t a) const;
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t inv(std::uint64_t a) const;
    std::uint64_t pow(std::uint64_t a, const mpz_class& e) const;
    std::uint64_t scalar_mul(std::uint32_t c, std::uint64_t a) const;  // c in F_p

    // Discrete log base generator; requires tables.
    std::uint64_t log(std::uint64_t a) const;
    std::uint64_t exp(std::uint64_t t) const { return exp_[t % (size_ - 1)]; }

    // Multiplicative order via the factored group order.
    mpz_class element_order(std::uint64_t a) const;

    std::uint64_t frobenius(std::uint64_t a) const { return pow(a, p_); }

    // Absolute trace to F_p (returns a code < p).
    std::uint32_t abs_trace(std::uint64_t a) const;

    std::vector<std::uint32_t> unpack(std::uint64_t code) const;
    std::uint64_t pack(const std::vector<std::uint32_t>& digits) const;

    std::string format_element(std::uint64_t a) const;  // [c0,c1,...] base-p

  private:
    std::uint32_t p_, d_;
    std::uint64_t size_;
    std::vector<std::uint32_t> modulus_;  // c0..cd, cd = 1
    std::vector<std::uint32_t> red_;      // x^d = red_ (degree < d), as digits
    std::uint64_t gen_ = 0;
    std::vector<std::uint64_t> exp_;
    std::vector<std::uint64_t> log_;
    intfact::Factorization order_fac_;

    std::uint64_t mul_nomod_tables(std::uint64_t a, std::uint64_t b) const;
};

// Dense polynomial over a Gf; coefficient codes, low degree first. The zero
// polynomial has an empty coefficient vector and degree() == -1.
class Poly {
  public:
    Poly() : f_(nullptr) {}
    explicit Poly(const Gf& f) : f_(&f) {}
    Poly(const Gf& f, std::vector<std::uint64_t> coeffs);

    static Poly x(const Gf& f);
    static Poly constant(const Gf& f, std::uint64_t c);
    static Poly x_pow_minus_one(const Gf& f, unsigned m);  // x^m - 1

    const Gf& field() const { return *f_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    std::uint64_t coeff(size_t i) const { return i < c_.size() ? c_[i] : 0; }
    std::uint64_t lead() const { return c_.back(); }
    const std::vector<std::uint64_t>& coeffs() const { return c_; }

    bool monic() const { return !c_.empty() && c_.back() == 1; }
    Poly make_monic() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    bool operator==(const Poly& o) const { return c_ == o.c_; }

    static void divrem(const Poly& a, const Poly& b, Poly& q, Poly& r);
    Poly operator%(const Poly& o) const;
    Poly operator/(const Poly& o) const;

    Poly derivative() const;
    std::uint64_t eval(std::uint64_t x) const;

    static Poly gcd(Poly a, Poly b);  // monic
    static Poly powmod(const Poly& base, const mpz_class& e, const Poly& mod);

    // Squarefree decomposition in characteristic p: returns (S_i, i) with
    // f = lead * prod S_i^i, S_i squarefree, pairwise coprime, monic.
    std::vector<std::pair<Poly, unsigned>> squarefree_decomposition() const;

    bool irreducible() const;

    // Splits a monic squarefree product of degree-e irreducibles into its
    // factors. Deterministic: splitting elements are enumerated in a fixed
    // order, so results are reproducible run to run.
    static std::vector<Poly> equal_degree_factor(const Poly& f, unsigned e);

    // Full deterministic factorization: (irreducible monic factor, multiplicity),
    // sorted by (degree, coefficient codes). Intended for small degrees.
    std::vector<std::pair<Poly, unsigned>> factor() const;

    // Sparse descending print, coefficients reduced to {0,...,p-1} when they
    // lie in the prime field, e.g. "x^3+x^2+x+1".
    std::string str() const;

  private:
    const Gf* f_;
    std::vector<std::uint64_t> c_;

    void normalize();
};

// Distinct-degree splitting step used by factor(); exposed for tests.
std::vector<std::pair<Poly, unsigned>> distinct_degree(const Poly& monic_squarefree);

}  // namespace pnpv::gf
