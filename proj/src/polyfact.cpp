#include "pnpv/polyfact.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>

#include "pnpv/intfact.hpp"

namespace pnpv::polyfact {

namespace {

std::vector<unsigned> divisors_of(unsigned n) {
    std::vector<unsigned> ds;
    for (unsigned d = 1; d <= n; ++d)
        if (n % d == 0) ds.push_back(d);
    return ds;
}

unsigned totient_small(unsigned n) {
    unsigned r = n;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        r -= r / p;
    }
    if (n > 1) r -= r / n;
    return r;
}

int moebius_small(unsigned n) {
    int mu = 1;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

}  // namespace

unsigned XmProfile::total_factors() const {
    unsigned t = 0;
    for (auto& [d, c] : classes) t += c;
    return t;
}

mpz_class XmProfile::w() const { return intfact::pow_mpz(2, total_factors()); }

unsigned XmProfile::count_degree_below(unsigned e) const {
    unsigned t = 0;
    for (auto& [d, c] : classes)
        if (d < e) t += c;
    return t;
}

unsigned GChoice::count() const {
    unsigned t = 0;
    for (auto& [d, c] : degrees) t += c;
    return t;
}

mpz_class GChoice::w() const { return intfact::pow_mpz(2, count()); }

unsigned ord_mod(const mpz_class& q, unsigned d) {
    if (d == 1) return 1;
    mpz_class dd(d), g;
    mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), dd.get_mpz_t());
    if (g != 1) throw std::invalid_argument("ord_mod: gcd(q, d) != 1");
    mpz_class x = q % dd;
    unsigned e = 1;
    while (x != 1) {
        x = x * q % dd;
        ++e;
    }
    return e;
}

std::pair<mpz_class, unsigned> prime_power_split(const mpz_class& q) {
    if (q < 2) throw std::invalid_argument("prime_power_split: q >= 2 required");
    mpz_class p = q;
    // smallest prime factor by trial division; q is expected small or a prime power
    for (mpz_class t = 2; t * t <= q; ++t) {
        if (mpz_divisible_p(q.get_mpz_t(), t.get_mpz_t())) {
            p = t;
            break;
        }
        if (t > 1'000'000) break;  // q prime far beyond trial range
    }
    unsigned k = 0;
    mpz_class rest = q;
    while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
        rest /= p;
        ++k;
    }
    if (rest != 1) throw std::invalid_argument("prime_power_split: q is not a prime power");
    return {p, k};
}

XmProfile xm1_profile(const mpz_class& q, unsigned m) {
    if (m == 0) throw std::invalid_argument("xm1_profile: m >= 1");
    auto [p, k] = prime_power_split(q);
    XmProfile prof;
    prof.q = q;
    prof.m = m;
    unsigned mp = m;
    unsigned pmul = 1;
    while (p <= mp && mp % mpz_get_ui(p.get_mpz_t()) == 0) {
        mp /= static_cast<unsigned>(mpz_get_ui(p.get_mpz_t()));
        pmul *= static_cast<unsigned>(mpz_get_ui(p.get_mpz_t()));
    }
    prof.m_prime = mp;
    prof.p_mult = pmul;
    std::map<unsigned, unsigned> cls;
    for (unsigned d : divisors_of(mp)) {
        unsigned e = ord_mod(q, d);
        cls[e] += totient_small(d) / e;
    }
    for (auto& [d, c] : cls) prof.classes.emplace_back(d, c);
    return prof;
}

std::pair<mpq_class, mpz_class> theta_w_of_choice(const mpz_class& q, const GChoice& choice) {
    mpq_class th = 1;
    for (auto& [deg, cnt] : choice.degrees) {
        mpz_class qd = intfact::pow_mpz(q, deg);
        mpq_class one_minus(qd - 1, qd);
        for (unsigned i = 0; i < cnt; ++i) th *= one_minus;
    }
    th.canonicalize();
    return {th, choice.w()};
}

SigmaRatio sigma_ratio(const mpz_class& q, unsigned m_prime) {
    if (m_prime <= 4) throw std::invalid_argument("sigma_ratio: requires m' > 4");
    auto [p, k] = prime_power_split(q);
    if (mpz_divisible_p(mpz_class(m_prime).get_mpz_t(), p.get_mpz_t()))
        throw std::invalid_argument("sigma_ratio: gcd(m', char) != 1");
    mpz_class m1z, mpz_mp(m_prime), qm1 = q - 1;
    mpz_gcd(m1z.get_mpz_t(), qm1.get_mpz_t(), mpz_mp.get_mpz_t());
    unsigned long m1 = mpz_get_ui(m1z.get_mpz_t());

    SigmaRatio out;
    if (m_prime == 2 * m1) {
        out.value = mpq_class(1, 2);
        out.exact = true;
    } else if (m_prime == 4 * m1) {
        out.value = mpq_class(3, 8);
        out.exact = true;
    } else if (m_prime == 6 * m1) {
        out.value = mpq_class(13, 36);
        out.exact = true;
    } else {
        out.value = mpq_class(1, 3);
        out.exact = false;
    }

    XmProfile prof = xm1_profile(q, m_prime);
    unsigned e = ord_mod(q, m_prime);
    out.profile_ratio = mpq_class(prof.count_degree_below(e), m_prime);
    out.profile_ratio.canonicalize();
    out.consistent = !out.exact || out.value == out.profile_ratio;
    return out;
}

gf::Poly cyclotomic_poly_mod_p(const gf::Gf& fq, unsigned d) {
    // prod_{e|d} (x^{d/e}-1)^{mu(e)} by exact polynomial division over F_q.
    gf::Poly num = gf::Poly::constant(fq, 1), den = num;
    for (unsigned e : divisors_of(d)) {
        int mu = moebius_small(e);
        if (mu == 0) continue;
        gf::Poly term = gf::Poly::x_pow_minus_one(fq, d / e);
        (mu > 0 ? num : den) = (mu > 0 ? num : den) * term;
    }
    gf::Poly quo, rem;
    gf::Poly::divrem(num, den, quo, rem);
    assert(rem.is_zero());
    return quo;
}

std::vector<gf::Poly> explicit_xm1_factors(const gf::Gf& fq, unsigned m) {
    if (m == 0 || m > 10000) throw std::invalid_argument("explicit_xm1_factors: m out of range");
    mpz_class q = fq.size();
    unsigned mp = m;
    while (mp % fq.p() == 0) mp /= fq.p();
    std::vector<gf::Poly> out;
    for (unsigned d : divisors_of(mp)) {
        gf::Poly phi = cyclotomic_poly_mod_p(fq, d);
        unsigned e = ord_mod(q, d);
        auto parts = gf::Poly::equal_degree_factor(phi, e);
        out.insert(out.end(), parts.begin(), parts.end());
    }
    std::sort(out.begin(), out.end(), [](const gf::Poly& a, const gf::Poly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a.coeffs() < b.coeffs();
    });
    return out;
}

}  // namespace pnpv::polyfact
