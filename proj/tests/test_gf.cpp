#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pnpv/gf.hpp"

using namespace pnpv;
using gf::Gf;
using gf::Poly;

TEST_CASE("F_25 construction is deterministic") {
    Gf f(5, 2);
    CHECK(f.size() == 25);
    // least monic irreducible over F_5 of degree 2 is x^2+2
    CHECK(f.modulus() == std::vector<std::uint32_t>{2, 0, 1});
    CHECK(f.has_tables());
    CHECK(f.element_order(f.generator()) == 24);
    for (std::uint64_t a = 0; a < 25; ++a) {
        for (std::uint64_t b = 0; b < 25; ++b) {
            CHECK(f.mul(a, b) == f.mul(b, a));
            CHECK(f.add(a, b) == f.add(b, a));
            CHECK(f.sub(f.add(a, b), b) == a);
            if (b != 0) CHECK(f.mul(f.mul(a, b), f.inv(b)) == a);
        }
    }
    for (std::uint64_t a = 0; a < 25; ++a)
        for (std::uint64_t b = 0; b < 25; ++b)
            CHECK(f.mul(3, f.add(a, b)) == f.add(f.mul(3, a), f.mul(3, b)));
}

TEST_CASE("fields without tables agree with table arithmetic") {
    Gf with(3, 4);
    Gf without(3, 4, /*table_limit=*/2);
    CHECK(with.modulus() == without.modulus());
    for (std::uint64_t a = 0; a < with.size(); a += 7)
        for (std::uint64_t b = 0; b < with.size(); b += 5) {
            CHECK(with.mul(a, b) == without.mul(a, b));
            if (a) CHECK(with.inv(a) == without.inv(a));
        }
    CHECK(with.pow(5, mpz_class(1234567)) == without.pow(5, mpz_class(1234567)));
}

TEST_CASE("absolute trace is Frobenius-stable with equal fibers") {
    Gf f(5, 3);
    for (std::uint64_t a = 0; a < f.size(); ++a) {
        CHECK(f.abs_trace(a) < 5);
        CHECK(f.abs_trace(f.pow(a, 5)) == f.abs_trace(a));
    }
    std::vector<unsigned> fiber(5, 0);
    for (std::uint64_t a = 0; a < f.size(); ++a) ++fiber[f.abs_trace(a)];
    for (unsigned c : fiber) CHECK(c == 25);
}

TEST_CASE("polynomial divrem gcd powmod") {
    Gf f(5, 1);
    Poly a(f, {1, 0, 3, 1});
    Poly b(f, {2, 1});
    Poly q, r;
    Poly::divrem(a, b, q, r);
    CHECK((q * b + r) == a);
    CHECK(r.degree() < b.degree());

    Poly g = Poly::gcd(a * b, b);
    CHECK(g == b.make_monic());

    Poly x = Poly::x(f);
    Poly mod(f, {4, 0, 0, 0, 1});  // x^4 - 1
    CHECK(Poly::powmod(x, mpz_class(5), mod) == x);
}

TEST_CASE("squarefree decomposition handles p-th powers") {
    Gf f(3, 1);
    Poly a = Poly(f, {1, 1});
    Poly b = Poly(f, {2, 1});
    Poly prod = a * a * a * b;  // derivative-zero component exercised
    auto sf = prod.squarefree_decomposition();
    REQUIRE(sf.size() == 2);
    CHECK(sf[0].second == 1);
    CHECK(sf[0].first == b);
    CHECK(sf[1].second == 3);
    CHECK(sf[1].first == a);
}

TEST_CASE("factor over extension field recomposes") {
    Gf f(5, 2);
    Poly p1 = Poly(f, {3, 1});
    Poly p2 = Poly(f, {7, 1});
    Poly p3 = Poly(f, {1, 2, 1}).make_monic();
    Poly prod = p1 * p1 * p2 * p3;
    auto fac = prod.factor();
    Poly recomposed = Poly::constant(f, prod.lead());
    int total = 0;
    for (auto& [irr, e] : fac) {
        CHECK(irr.irreducible());
        for (unsigned i = 0; i < e; ++i) recomposed = recomposed * irr;
        total += irr.degree() * static_cast<int>(e);
    }
    CHECK(recomposed == prod);
    CHECK(total == prod.degree());
}

TEST_CASE("equal degree factorization deterministic") {
    Gf f(5, 1);
    Poly xm1 = Poly::x_pow_minus_one(f, 4);
    auto parts = Poly::equal_degree_factor(xm1, 1);
    REQUIRE(parts.size() == 4);
    for (std::uint64_t i = 0; i < 4; ++i) CHECK(parts[i] == Poly(f, {i + 1, 1}));
    CHECK(parts == Poly::equal_degree_factor(xm1, 1));
}

TEST_CASE("char-2 factorization") {
    Gf f(2, 2);
    Poly xm1 = Poly::x_pow_minus_one(f, 3);  // x^3+1 over F_4 splits into linears
    auto fac = xm1.factor();
    REQUIRE(fac.size() == 3);
    for (auto& [irr, e] : fac) {
        CHECK(irr.degree() == 1);
        CHECK(e == 1);
    }
}

TEST_CASE("poly printing") {
    Gf f(5, 1);
    CHECK(Poly(f, {1, 1, 1, 1}).str() == "x^3+x^2+x+1");
    CHECK(Poly(f, {4, 1}).str() == "x+4");
    CHECK(Poly(f, {4, 0, 1}).str() == "x^2+4");
    CHECK(Poly(f, {0, 3}).str() == "3*x");
    CHECK(Poly(f).str() == "0");
}
