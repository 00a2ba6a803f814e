#include "pnpv/intfact.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pnpv::intfact {

mpz_class pow_mpz(const mpz_class& base, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

mpz_class Factorization::recompose() const {
    mpz_class r = cofactor;
    for (const auto& [p, e] : factors) r *= pow_mpz(p, e);
    return r;
}

bool Factorization::valid(bool check_primality) const {
    if (value < 1 || cofactor < 1) return false;
    if (recompose() != value) return false;
    if (complete != (cofactor == 1)) return false;
    for (size_t i = 0; i + 1 < factors.size(); ++i)
        if (factors[i].first >= factors[i + 1].first) return false;
    for (const auto& [p, e] : factors) {
        if (e < 1) return false;
        if (check_primality && !is_probable_prime(p)) return false;
    }
    return true;
}

mpz_class OmegaBound::w_lower() const { return pow_mpz(2, omega_lower); }
mpz_class OmegaBound::w_upper() const { return pow_mpz(2, omega_upper); }

// ---------------------------------------------------------------------------
// primality

namespace {

bool miller_rabin(const mpz_class& n, const mpz_class& base) {
    mpz_class nm1 = n - 1;
    unsigned long r = mpz_scan1(nm1.get_mpz_t(), 0);
    mpz_class d = nm1 >> r;
    mpz_class a = base % n;
    if (a == 0) return true;
    mpz_class x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == nm1) return true;
    for (unsigned long i = 1; i < r; ++i) {
        x = x * x % n;
        if (x == nm1) return true;
    }
    return false;
}

// Strong Lucas test with Selfridge's parameter choice.
bool strong_lucas(const mpz_class& n) {
    long d_abs = 5;
    int sign = 1;
    mpz_class D;
    while (true) {
        D = sign * d_abs;
        int j = mpz_jacobi(D.get_mpz_t(), n.get_mpz_t());
        if (j == -1) break;
        if (j == 0) return false;  // gcd(D, n) > 1 with |D| < n: composite
        d_abs += 2;
        sign = -sign;
    }
    mpz_class P = 1, Q = (1 - D) / 4;
    mpz_class nm1 = n + 1;
    unsigned long s = mpz_scan1(nm1.get_mpz_t(), 0);
    mpz_class t = nm1 >> s;

    // Lucas sequence by binary ladder on (U, V, Q^k).
    mpz_class U = 0, V = 2, Qk = 1;
    long bits = mpz_sizeinbase(t.get_mpz_t(), 2);
    for (long i = bits - 1; i >= 0; --i) {
        U = U * V % n;
        V = (V * V - 2 * Qk) % n;
        Qk = Qk * Qk % n;
        if (mpz_tstbit(t.get_mpz_t(), i)) {
            mpz_class U2 = U + V;
            if (mpz_odd_p(U2.get_mpz_t())) U2 += n;
            U2 = U2 / 2 % n;
            mpz_class V2 = D * U + V;
            if (mpz_odd_p(V2.get_mpz_t())) V2 += n;
            V2 = V2 / 2 % n;
            U = U2;
            V = V2;
            Qk = Qk * Q % n;
        }
    }
    if (U == 0 || V == 0) return true;
    for (unsigned long i = 1; i < s; ++i) {
        V = (V * V - 2 * Qk) % n;
        if (V == 0) return true;
        Qk = Qk * Qk % n;
    }
    return false;
}

const mpz_class kMr13Limit("3317044064679887385961981");

}  // namespace

bool is_probable_prime(const mpz_class& n, bool* deterministic) {
    if (deterministic) *deterministic = true;
    if (n < 2) return false;
    static const int small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
    for (int p : small) {
        if (n == p) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    if (n < kMr13Limit) {
        for (int p : small)
            if (!miller_rabin(n, p)) return false;
        return true;
    }
    if (deterministic) *deterministic = false;
    if (mpz_perfect_square_p(n.get_mpz_t())) return false;
    return miller_rabin(n, 2) && strong_lucas(n);
}

// ---------------------------------------------------------------------------
// factoring

namespace {

const std::vector<unsigned long>& small_primes(unsigned long bound) {
    static std::vector<unsigned long> primes;
    static unsigned long sieved_to = 0;
    if (bound > sieved_to) {
        primes.clear();
        std::vector<bool> comp(bound + 1, false);
        for (unsigned long i = 2; i <= bound; ++i) {
            if (comp[i]) continue;
            primes.push_back(i);
            for (unsigned long j = i * i; j <= bound; j += i) comp[j] = true;
        }
        sieved_to = bound;
    }
    return primes;
}

// Brent's variant, batched gcd. Deterministic for fixed (c, max_iters).
mpz_class brent_rho(const mpz_class& n, unsigned long c, unsigned long long max_iters) {
    const unsigned long batch = 512;
    mpz_class y = 2, x, ys, q = 1, g = 1;
    unsigned long long r = 1, it = 0;
    while (g == 1) {
        x = y;
        for (unsigned long long i = 0; i < r; ++i) y = (y * y + c) % n;
        unsigned long long k = 0;
        while (k < r && g == 1) {
            ys = y;
            unsigned long long lim = std::min<unsigned long long>(batch, r - k);
            for (unsigned long long i = 0; i < lim; ++i) {
                y = (y * y + c) % n;
                mpz_class diff = x - y;
                mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
                q = q * diff % n;
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += lim;
            it += lim;
            if (it > max_iters) return 1;
        }
        r <<= 1;
    }
    if (g == n) {
        g = 1;
        while (g == 1) {
            ys = (ys * ys + c) % n;
            mpz_class diff = x - ys;
            mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
            mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
    }
    if (g == n) return 1;
    return g;
}

void add_factor(std::map<mpz_class, unsigned>& fac, const mpz_class& p, unsigned e) {
    fac[p] += e;
}

}  // namespace

Factorization factor_integer(const mpz_class& n, const FactorBudget& budget) {
    if (n < 1) throw std::invalid_argument("factor_integer: n must be >= 1");
    Factorization out;
    out.value = n;
    if (n == 1) return out;

    std::map<mpz_class, unsigned> fac;
    mpz_class rem = n;
    for (unsigned long p : small_primes(budget.trial_bound)) {
        // the shared sieve may extend past this budget's bound
        if (p >= budget.trial_bound) break;
        if (mpz_class(p) * p > rem) break;
        while (mpz_divisible_ui_p(rem.get_mpz_t(), p)) {
            add_factor(fac, p, 1);
            rem /= p;
        }
    }

    bool all_deterministic = true;
    std::vector<std::pair<mpz_class, unsigned>> stack;
    if (rem > 1) stack.emplace_back(rem, 1);
    mpz_class cof = 1;
    while (!stack.empty()) {
        auto [v, mult] = stack.back();
        stack.pop_back();
        bool det = true;
        if (is_probable_prime(v, &det)) {
            add_factor(fac, v, mult);
            all_deterministic &= det;
            continue;
        }
        if (mpz_perfect_power_p(v.get_mpz_t())) {
            for (unsigned long e = 2; e <= mpz_sizeinbase(v.get_mpz_t(), 2); ++e) {
                mpz_class root;
                if (mpz_root(root.get_mpz_t(), v.get_mpz_t(), e)) {
                    stack.emplace_back(root, mult * e);
                    break;
                }
            }
            continue;
        }
        mpz_class g = 1;
        for (unsigned c = 1; c <= budget.rho_seeds && g == 1; ++c)
            g = brent_rho(v, c, budget.rho_max_iters);
        if (g == 1) {
            for (unsigned i = 0; i < mult; ++i) cof *= v;
            continue;
        }
        stack.emplace_back(g, mult);
        stack.emplace_back(v / g, mult);
    }

    for (auto& [p, e] : fac) out.factors.emplace_back(p, e);
    out.cofactor = cof;
    out.complete = (cof == 1);
    out.probable_only = !all_deterministic;
    if (!out.complete) out.trial_bound = budget.trial_bound;
    return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<unsigned> divisors_of(unsigned n) {
    std::vector<unsigned> ds;
    for (unsigned d = 1; d <= n; ++d)
        if (n % d == 0) ds.push_back(d);
    return ds;
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

mpz_class cyclotomic_value(unsigned d, const mpz_class& q) {
    if (d == 0) throw std::invalid_argument("cyclotomic_value: d must be >= 1");
    mpz_class num = 1, den = 1;
    for (unsigned e : divisors_of(d)) {
        int mu = moebius_small(e);
        if (mu == 0) continue;
        mpz_class term = pow_mpz(q, d / e) - 1;
        (mu > 0 ? num : den) *= term;
    }
    mpz_class r, rem;
    mpz_tdiv_qr(r.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    assert(rem == 0);
    return r;
}

Factorization factor_q_power_minus_one(const mpz_class& p, unsigned k, unsigned m,
                                       const FactorBudget& budget) {
    if (k == 0 || m == 0) throw std::invalid_argument("factor_q_power_minus_one: k, m >= 1");
    std::map<mpz_class, unsigned> fac;
    mpz_class cof = 1;
    bool complete = true, probable = false;
    for (unsigned D : divisors_of(k * m)) {
        Factorization part = factor_integer(cyclotomic_value(D, p), budget);
        for (const auto& [pr, e] : part.factors) add_factor(fac, pr, e);
        cof *= part.cofactor;
        complete &= part.complete;
        probable |= part.probable_only;
    }
    Factorization out;
    out.value = pow_mpz(p, static_cast<unsigned long>(k) * m) - 1;
    for (auto& [pr, e] : fac) out.factors.emplace_back(pr, e);
    out.cofactor = cof;
    out.complete = complete;
    out.probable_only = probable;
    if (!complete) out.trial_bound = budget.trial_bound;
    return out;
}

OmegaBound omega_and_w(const Factorization& f) {
    OmegaBound b;
    b.omega_lower = f.omega();
    if (f.complete) {
        b.omega_upper = b.omega_lower;
        b.exact = true;
        return b;
    }
    // Every prime hidden in the cofactor exceeds the trial bound B, so the
    // cofactor holds at most floor(log_B cofactor) of them.
    b.exact = false;
    mpz_class B = f.trial_bound ? mpz_class(f.trial_bound) : mpz_class(2);
    mpz_class c = f.cofactor;
    unsigned extra = 0;
    mpz_class power = B;
    while (power <= c) {
        ++extra;
        power *= B;
    }
    b.omega_upper = b.omega_lower + std::max(extra, 1u);
    return b;
}

mpz_class p_free_part(mpz_class r, const mpz_class& p) {
    if (r < 1 || p < 2) throw std::invalid_argument("p_free_part: r >= 1, p >= 2");
    while (mpz_divisible_p(r.get_mpz_t(), p.get_mpz_t())) r /= p;
    return r;
}

Ordering compare_power(const mpz_class& q, long num, unsigned long den, const mpq_class& rhs) {
    if (rhs <= 0) throw std::invalid_argument("compare_power: rhs must be > 0");
    if (q < 2) throw std::invalid_argument("compare_power: q must be >= 2");
    mpq_class r = rhs;
    r.canonicalize();
    mpz_class lhs = pow_mpz(r.get_den(), den);
    mpz_class rside = pow_mpz(r.get_num(), den);
    if (num >= 0)
        lhs *= pow_mpz(q, static_cast<unsigned long>(num));
    else
        rside *= pow_mpz(q, static_cast<unsigned long>(-num));
    int c = cmp(lhs, rside);
    return c < 0 ? Ordering::Less : c > 0 ? Ordering::Greater : Ordering::Equal;
}

bool power_exceeds(const mpz_class& q, long e_num, unsigned long e_den, const mpq_class& c,
                   long p2_num, unsigned long p2_den) {
    // q^{e_num/e_den} > c * 2^{p2_num/p2_den}: raise both sides to lcm(e_den, p2_den).
    unsigned long L = std::lcm(e_den, p2_den);
    long qe = e_num * static_cast<long>(L / e_den);
    long te = p2_num * static_cast<long>(L / p2_den);
    mpq_class cl = c;
    cl.canonicalize();
    mpz_class lhs = pow_mpz(cl.get_den(), L);
    mpz_class rhs = pow_mpz(cl.get_num(), L);
    if (qe >= 0)
        lhs *= pow_mpz(q, static_cast<unsigned long>(qe));
    else
        rhs *= pow_mpz(q, static_cast<unsigned long>(-qe));
    if (te >= 0)
        rhs <<= static_cast<unsigned long>(te);
    else
        lhs <<= static_cast<unsigned long>(-te);
    return lhs > rhs;
}

mpz_class euler_phi(const Factorization& f) {
    if (!f.complete) throw std::invalid_argument("euler_phi: factorization must be complete");
    mpz_class r = 1;
    for (const auto& [p, e] : f.factors) r *= pow_mpz(p, e - 1) * (p - 1);
    return r;
}

int moebius(const Factorization& f) {
    if (!f.complete) throw std::invalid_argument("moebius: factorization must be complete");
    for (const auto& [p, e] : f.factors)
        if (e > 1) return 0;
    return f.factors.size() % 2 ? -1 : 1;
}

mpq_class theta(const std::vector<mpz_class>& primes) {
    mpq_class r = 1;
    for (const auto& p : primes) {
        r *= mpq_class(p - 1, p);
    }
    r.canonicalize();
    return r;
}

std::string to_wire(const Factorization& f) {
    std::ostringstream os;
    os << f.value << " =";
    bool first = true;
    for (const auto& [p, e] : f.factors) {
        os << (first ? " " : " * ") << p;
        if (e > 1) os << "^" << e;
        first = false;
    }
    if (f.cofactor > 1) {
        os << (first ? " " : " * ") << f.cofactor << "?";
        first = false;
    }
    if (first) os << " 1";
    return os.str();
}

std::optional<Factorization> parse_wire(const std::string& line) {
    auto eq = line.find('=');
    if (eq == std::string::npos) return std::nullopt;
    Factorization f;
    try {
        f.value = mpz_class(line.substr(0, eq));
    } catch (...) {
        return std::nullopt;
    }
    std::string rest = line.substr(eq + 1);
    std::istringstream is(rest);
    std::string tok;
    f.complete = true;
    while (is >> tok) {
        if (tok == "*") continue;
        bool cof = false;
        if (!tok.empty() && tok.back() == '?') {
            cof = true;
            tok.pop_back();
        }
        unsigned e = 1;
        auto caret = tok.find('^');
        std::string base = tok;
        if (caret != std::string::npos) {
            base = tok.substr(0, caret);
            e = std::stoul(tok.substr(caret + 1));
        }
        mpz_class b;
        try {
            b = mpz_class(base);
        } catch (...) {
            return std::nullopt;
        }
        if (cof) {
            f.cofactor = b;
            f.complete = false;
        } else if (b > 1) {
            f.factors.emplace_back(b, e);
        }
    }
    std::sort(f.factors.begin(), f.factors.end());
    if (!f.valid(false)) return std::nullopt;
    return f;
}

}  // namespace pnpv::intfact
