#include "pnpv/gf.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace pnpv::gf {

namespace {

// Polynomial helpers over F_p with plain digit vectors (construction only).
using Digits = std::vector<std::uint32_t>;

void dig_normalize(Digits& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Digits dig_mulmod(const Digits& a, const Digits& b, const Digits& mod, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) acc[i + j] = (acc[i + j] + std::uint64_t(a[i]) * b[j]) % p;
    // reduce by monic mod
    size_t d = mod.size() - 1;
    for (size_t i = acc.size(); i-- > d;) {
        std::uint64_t c = acc[i] % p;
        if (c == 0) continue;
        for (size_t j = 0; j < d; ++j) {
            std::uint64_t s = acc[i - d + j] + std::uint64_t(p - mod[j] % p) * c;
            acc[i - d + j] = s % p;
        }
        acc[i] = 0;
    }
    Digits r(d);
    for (size_t i = 0; i < d && i < acc.size(); ++i) r[i] = static_cast<std::uint32_t>(acc[i] % p);
    dig_normalize(r);
    return r;
}

Digits dig_powmod(Digits base, mpz_class e, const Digits& mod, std::uint32_t p) {
    Digits r{1};
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = dig_mulmod(r, base, mod, p);
        base = dig_mulmod(base, base, mod, p);
        e >>= 1;
    }
    return r;
}

std::uint32_t inv_mod_p(std::uint32_t x, std::uint32_t p) {
    std::int64_t t = 0, nt = 1, r = p, nr = x % p;
    while (nr) {
        std::int64_t qq = r / nr;
        std::int64_t tmp = t - qq * nt;
        t = nt;
        nt = tmp;
        tmp = r - qq * nr;
        r = nr;
        nr = tmp;
    }
    return static_cast<std::uint32_t>(((t % p) + p) % p);
}

Digits dig_gcd(Digits a, Digits b, std::uint32_t p) {
    dig_normalize(a);
    dig_normalize(b);
    while (!b.empty()) {
        std::uint32_t li = inv_mod_p(b.back(), p);
        while (a.size() >= b.size() && !a.empty()) {
            std::uint64_t c = std::uint64_t(a.back()) * li % p;
            size_t off = a.size() - b.size();
            for (size_t j = 0; j < b.size(); ++j) {
                std::uint64_t s = a[off + j] + (p - b[j] % p) * c % p;
                a[off + j] = static_cast<std::uint32_t>(s % p);
            }
            dig_normalize(a);
        }
        std::swap(a, b);
    }
    return a;
}

bool dig_irreducible(const Digits& f, std::uint32_t p) {
    // f monic, degree d >= 1 over F_p: x^{p^d} == x mod f and
    // gcd(x^{p^{d/l}} - x, f) == 1 for every prime l | d.
    size_t d = f.size() - 1;
    if (d == 1) return true;
    Digits x{0, 1};
    Digits t = x;
    for (size_t i = 0; i < d; ++i) t = dig_powmod(t, p, f, p);
    // t == x ?
    if (t != x) return false;
    std::vector<unsigned> prime_divs;
    {
        size_t dd = d;
        for (size_t q = 2; q * q <= dd; ++q)
            while (dd % q == 0) {
                if (prime_divs.empty() || prime_divs.back() != q) prime_divs.push_back(q);
                dd /= q;
            }
        if (dd > 1) prime_divs.push_back(static_cast<unsigned>(dd));
    }
    for (unsigned l : prime_divs) {
        Digits s = x;
        for (size_t i = 0; i < d / l; ++i) s = dig_powmod(s, p, f, p);
        // s - x
        Digits diff = s;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + p - 1) % p;
        dig_normalize(diff);
        Digits g = dig_gcd(diff, f, p);
        if (!(g.size() == 1)) return false;
    }
    return true;
}

}  // namespace

Gf::Gf(std::uint32_t p, std::uint32_t d, std::uint64_t table_limit) : p_(p), d_(d) {
    if (p < 2 || d < 1) throw std::invalid_argument("Gf: need p >= 2, d >= 1");
    size_ = 1;
    for (std::uint32_t i = 0; i < d; ++i) {
        if (size_ > (1ULL << 48) / p) throw std::invalid_argument("Gf: field too large");
        size_ *= p;
    }
    if (d == 1) {
        modulus_ = {0, 1};  // x
        red_ = {};
    } else {
        // lexicographically least monic irreducible: enumerate constant-first
        // digit vectors as base-p counters.
        std::uint64_t lim = size_;  // p^d combinations of low coefficients
        bool found = false;
        for (std::uint64_t code = 1; code < lim; ++code) {
            Digits f(d + 1, 0);
            std::uint64_t t = code;
            for (std::uint32_t i = 0; i < d; ++i) {
                f[i] = static_cast<std::uint32_t>(t % p);
                t /= p;
            }
            f[d] = 1;
            if (dig_irreducible(f, p)) {
                modulus_ = f;
                found = true;
                break;
            }
        }
        if (!found) throw std::logic_error("Gf: no irreducible found");
        red_.assign(d, 0);
        for (std::uint32_t i = 0; i < d; ++i) red_[i] = (p - modulus_[i] % p) % p;
    }

    order_fac_ = intfact::factor_integer(mpz_class(size_ - 1));

    if (size_ <= table_limit && size_ > 2) {
        // least generator in code order
        std::vector<mpz_class> prime_divs;
        for (const auto& [pr, e] : order_fac_.factors) prime_divs.push_back(pr);
        std::uint64_t g = 0;
        for (std::uint64_t a = 1; a < size_; ++a) {
            bool ok = true;
            for (const auto& ell : prime_divs) {
                mpz_class e = mpz_class(size_ - 1) / ell;
                if (pow(a, e) == 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                g = a;
                break;
            }
        }
        gen_ = g;
        exp_.resize(size_ - 1);
        log_.assign(size_, 0);
        std::uint64_t cur = 1;
        for (std::uint64_t t = 0; t + 1 < size_; ++t) {
            exp_[t] = cur;
            log_[cur] = t;
            cur = mul_nomod_tables(cur, g);
        }
        assert(cur == 1);
    } else if (size_ == 2) {
        gen_ = 1;
        exp_ = {1};
        log_ = {0, 0};
    }
}

std::vector<std::uint32_t> Gf::unpack(std::uint64_t code) const {
    std::vector<std::uint32_t> r(d_);
    for (std::uint32_t i = 0; i < d_; ++i) {
        r[i] = static_cast<std::uint32_t>(code % p_);
        code /= p_;
    }
    return r;
}

std::uint64_t Gf::pack(const std::vector<std::uint32_t>& digits) const {
    std::uint64_t code = 0;
    for (std::uint32_t i = d_; i-- > 0;) code = code * p_ + (i < digits.size() ? digits[i] % p_ : 0);
    return code;
}

std::uint64_t Gf::add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t r = 0, mul = 1;
    for (std::uint32_t i = 0; i < d_; ++i) {
        std::uint64_t da = a % p_, db = b % p_;
        a /= p_;
        b /= p_;
        std::uint64_t s = da + db;
        if (s >= p_) s -= p_;
        r += s * mul;
        mul *= p_;
    }
    return r;
}

std::uint64_t Gf::neg(std::uint64_t a) const {
    std::uint64_t r = 0, mul = 1;
    for (std::uint32_t i = 0; i < d_; ++i) {
        std::uint64_t da = a % p_;
        a /= p_;
        r += (da ? p_ - da : 0) * mul;
        mul *= p_;
    }
    return r;
}

std::uint64_t Gf::sub(std::uint64_t a, std::uint64_t b) const { return add(a, neg(b)); }

std::uint64_t Gf::mul_nomod_tables(std::uint64_t a, std::uint64_t b) const {
    if (a == 0 || b == 0) return 0;
    auto da = unpack(a), db = unpack(b);
    std::vector<std::uint64_t> acc(2 * d_ - 1, 0);
    for (std::uint32_t i = 0; i < d_; ++i) {
        if (!da[i]) continue;
        for (std::uint32_t j = 0; j < d_; ++j) acc[i + j] += std::uint64_t(da[i]) * db[j];
    }
    for (std::uint32_t i = 2 * d_ - 1; i-- > d_;) {
        std::uint64_t c = acc[i] % p_;
        if (c)
            for (std::uint32_t j = 0; j < d_; ++j) acc[i - d_ + j] += c * red_[j];
        acc[i] = 0;
    }
    std::vector<std::uint32_t> out(d_);
    for (std::uint32_t i = 0; i < d_; ++i) out[i] = static_cast<std::uint32_t>(acc[i] % p_);
    return pack(out);
}

std::uint64_t Gf::mul(std::uint64_t a, std::uint64_t b) const {
    if (a == 0 || b == 0) return 0;
    if (has_tables()) {
        std::uint64_t t = log_[a] + log_[b];
        std::uint64_t n = size_ - 1;
        if (t >= n) t -= n;
        return exp_[t];
    }
    return mul_nomod_tables(a, b);
}

std::uint64_t Gf::inv(std::uint64_t a) const {
    if (a == 0) throw std::domain_error("Gf::inv(0)");
    if (has_tables()) {
        std::uint64_t t = log_[a];
        return exp_[t == 0 ? 0 : size_ - 1 - t];
    }
    return pow(a, mpz_class(size_ - 2));
}

std::uint64_t Gf::pow(std::uint64_t a, const mpz_class& e) const {
    mpz_class n = size_ - 1;
    if (a == 0) {
        if (e == 0) return 1;
        if (e < 0) throw std::domain_error("Gf::pow(0, negative)");
        return 0;
    }
    mpz_class r = e % n;
    if (r < 0) r += n;
    if (has_tables()) {
        mpz_class t = mpz_class(log_[a]) * r % n;
        return exp_[t.get_ui()];
    }
    std::uint64_t base = a, acc = 1;
    mpz_class ee = r;
    while (ee > 0) {
        if (mpz_odd_p(ee.get_mpz_t())) acc = mul_nomod_tables(acc, base);
        base = mul_nomod_tables(base, base);
        ee >>= 1;
    }
    return acc;
}

std::uint64_t Gf::scalar_mul(std::uint32_t c, std::uint64_t a) const {
    c %= p_;
    std::uint64_t r = 0, mul = 1;
    for (std::uint32_t i = 0; i < d_; ++i) {
        std::uint64_t da = a % p_;
        a /= p_;
        r += (da * c % p_) * mul;
        mul *= p_;
    }
    return r;
}

std::uint64_t Gf::log(std::uint64_t a) const {
    if (!has_tables()) throw std::logic_error("Gf::log: no tables");
    if (a == 0) throw std::domain_error("Gf::log(0)");
    return log_[a];
}

mpz_class Gf::element_order(std::uint64_t a) const {
    if (a == 0) throw std::domain_error("Gf::element_order(0)");
    mpz_class ord = size_ - 1;
    for (const auto& [pr, e] : order_fac_.factors) {
        for (unsigned i = 0; i < e; ++i) {
            mpz_class cand = ord / pr;
            if (pow(a, cand) == 1)
                ord = cand;
            else
                break;
        }
    }
    return ord;
}

std::uint32_t Gf::abs_trace(std::uint64_t a) const {
    std::uint64_t acc = 0, cur = a;
    for (std::uint32_t i = 0; i < d_; ++i) {
        acc = add(acc, cur);
        cur = pow(cur, p_);
    }
    assert(acc < p_);
    return static_cast<std::uint32_t>(acc);
}

std::string Gf::format_element(std::uint64_t a) const {
    auto d = unpack(a);
    std::ostringstream os;
    os << "[";
    for (std::uint32_t i = 0; i < d_; ++i) os << (i ? "," : "") << d[i];
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(const Gf& f, std::vector<std::uint64_t> coeffs) : f_(&f), c_(std::move(coeffs)) {
    normalize();
}

void Poly::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::x(const Gf& f) { return Poly(f, {0, 1}); }
Poly Poly::constant(const Gf& f, std::uint64_t c) { return Poly(f, {c}); }

Poly Poly::x_pow_minus_one(const Gf& f, unsigned m) {
    std::vector<std::uint64_t> c(m + 1, 0);
    c[0] = f.neg(1);
    c[m] = 1;
    return Poly(f, std::move(c));
}

Poly Poly::make_monic() const {
    if (is_zero() || monic()) return *this;
    std::uint64_t li = f_->inv(c_.back());
    std::vector<std::uint64_t> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = f_->mul(c_[i], li);
    return Poly(*f_, std::move(r));
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<std::uint64_t> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = f_->add(coeff(i), o.coeff(i));
    return Poly(*f_, std::move(r));
}

Poly Poly::operator-(const Poly& o) const {
    std::vector<std::uint64_t> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = f_->sub(coeff(i), o.coeff(i));
    return Poly(*f_, std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly(*f_);
    std::vector<std::uint64_t> r(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            r[i + j] = f_->add(r[i + j], f_->mul(c_[i], o.c_[j]));
    }
    return Poly(*f_, std::move(r));
}

void Poly::divrem(const Poly& a, const Poly& b, Poly& q, Poly& r) {
    if (b.is_zero()) throw std::domain_error("Poly::divrem by zero");
    const Gf& F = *a.f_;
    std::vector<std::uint64_t> rem = a.c_, quo;
    int db = b.degree();
    if (a.degree() >= db) quo.assign(a.degree() - db + 1, 0);
    std::uint64_t li = F.inv(b.lead());
    for (int i = a.degree(); i >= db; --i) {
        std::uint64_t c = F.mul(rem[i], li);
        if (c) {
            quo[i - db] = c;
            for (int j = 0; j <= db; ++j) rem[i - db + j] = F.sub(rem[i - db + j], F.mul(c, b.c_[j]));
        }
    }
    q = Poly(F, std::move(quo));
    r = Poly(F, std::move(rem));
}

Poly Poly::operator%(const Poly& o) const {
    Poly q, r;
    divrem(*this, o, q, r);
    return r;
}

Poly Poly::operator/(const Poly& o) const {
    Poly q, r;
    divrem(*this, o, q, r);
    return q;
}

Poly Poly::derivative() const {
    if (degree() < 1) return Poly(*f_);
    std::vector<std::uint64_t> r(c_.size() - 1, 0);
    for (size_t i = 1; i < c_.size(); ++i)
        r[i - 1] = f_->scalar_mul(static_cast<std::uint32_t>(i % f_->p()), c_[i]);
    return Poly(*f_, std::move(r));
}

std::uint64_t Poly::eval(std::uint64_t x) const {
    std::uint64_t acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = f_->add(f_->mul(acc, x), c_[i]);
    return acc;
}

Poly Poly::gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = b;
        b = r;
    }
    return a.is_zero() ? a : a.make_monic();
}

Poly Poly::powmod(const Poly& base, const mpz_class& e, const Poly& mod) {
    const Gf& F = base.field();
    Poly r = Poly::constant(F, 1), b = base % mod;
    mpz_class ee = e;
    while (ee > 0) {
        if (mpz_odd_p(ee.get_mpz_t())) r = r * b % mod;
        b = b * b % mod;
        ee >>= 1;
    }
    return r;
}

std::vector<std::pair<Poly, unsigned>> Poly::squarefree_decomposition() const {
    const Gf& F = *f_;
    const std::uint32_t p = F.p();
    std::vector<std::pair<Poly, unsigned>> out;
    Poly f = make_monic();
    if (f.degree() < 1) return out;

    unsigned pmult = 1;  // multiplicity scale from p-th power descents
    while (true) {
        Poly d = f.derivative();
        if (d.is_zero()) {
            // f = g(x^p): take p-th root of coefficients.
            std::vector<std::uint64_t> g((f.degree() / p) + 1, 0);
            mpz_class root_exp = 1;
            for (std::uint32_t i = 0; i + 1 < F.degree(); ++i) root_exp *= p;
            for (size_t i = 0; i < g.size(); ++i) g[i] = F.pow(f.coeff(i * p), root_exp);
            f = Poly(F, std::move(g));
            pmult *= p;
            continue;
        }
        Poly c = Poly::gcd(f, d);
        Poly w = f / c;
        unsigned i = 1;
        while (!w.is_one()) {
            Poly y = Poly::gcd(w, c);
            Poly factor = w / y;
            if (factor.degree() >= 1) out.emplace_back(factor, i * pmult);
            w = y;
            c = c / y;
            ++i;
        }
        if (c.degree() >= 1) {
            // remaining part is a p-th power; recurse on it.
            for (auto& [s, e] : Poly(c).squarefree_decomposition()) out.emplace_back(s, e * pmult);
        }
        break;
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
    // merge equal multiplicities
    std::vector<std::pair<Poly, unsigned>> merged;
    for (auto& [s, e] : out) {
        if (!merged.empty() && merged.back().second == e)
            merged.back().first = merged.back().first * s;
        else
            merged.emplace_back(s, e);
    }
    return merged;
}

std::vector<std::pair<Poly, unsigned>> distinct_degree(const Poly& f0) {
    const Gf& F = f0.field();
    std::vector<std::pair<Poly, unsigned>> out;
    Poly f = f0.make_monic();
    mpz_class q = F.size();
    Poly h = Poly::x(F) % f;  // x^{q^i} mod f, iterated
    unsigned i = 0;
    while (f.degree() > 0) {
        ++i;
        if (2 * i > static_cast<unsigned>(f.degree())) {
            out.emplace_back(f, static_cast<unsigned>(f.degree()));
            break;
        }
        h = Poly::powmod(h, q, f);
        Poly g = Poly::gcd(h - Poly::x(F), f);
        if (g.degree() > 0) {
            out.emplace_back(g, i);
            f = f / g;
            h = h % f;
        }
    }
    return out;
}

std::vector<Poly> Poly::equal_degree_factor(const Poly& f0, unsigned e) {
    const Gf& F = f0.field();
    std::vector<Poly> done;
    std::vector<Poly> work{f0.make_monic()};
    if (f0.degree() == static_cast<int>(e)) return work;
    mpz_class q = F.size();
    mpz_class qe = 1;
    for (unsigned i = 0; i < e; ++i) qe *= q;

    // deterministic enumeration of splitting elements: monic-free polynomials
    // of increasing degree with coefficient codes counting up
    auto nth_trial = [&F](std::uint64_t idx) {
        unsigned deg = 1;
        std::uint64_t span = F.size();  // trials of this degree: size^deg (lead varies too)
        std::uint64_t base = 0;
        while (idx - base >= span * (F.size() - 1)) {
            base += span * (F.size() - 1);
            ++deg;
            span *= F.size();
        }
        std::uint64_t off = idx - base;
        std::vector<std::uint64_t> c(deg + 1, 0);
        for (unsigned i = 0; i < deg; ++i) {
            c[i] = off % F.size();
            off /= F.size();
        }
        c[deg] = 1 + off;  // nonzero lead
        return Poly(F, std::move(c));
    };

    std::uint64_t trial = 0;
    while (!work.empty()) {
        Poly f = work.back();
        work.pop_back();
        if (f.degree() == static_cast<int>(e)) {
            done.push_back(f);
            continue;
        }
        bool split = false;
        while (!split) {
            Poly u = nth_trial(trial++);
            Poly g;
            if (F.p() == 2) {
                // trace map sum_{i<e*k2} u^{2^i} mod f, k2 = log2(field size)
                Poly t = u % f, acc = t;
                unsigned bits = F.degree() * e;
                for (unsigned i = 1; i < bits; ++i) {
                    t = t * t % f;
                    acc = acc + t;
                }
                g = Poly::gcd(acc, f);
            } else {
                Poly w = Poly::powmod(u, (qe - 1) / 2, f);
                g = Poly::gcd(w - Poly::constant(F, 1), f);
            }
            if (g.degree() > 0 && g.degree() < f.degree()) {
                work.push_back(g);
                work.push_back(f / g);
                split = true;
            }
        }
    }
    std::sort(done.begin(), done.end(),
              [](const Poly& a, const Poly& b) { return a.coeffs() < b.coeffs(); });
    return done;
}

bool Poly::irreducible() const {
    Poly f = make_monic();
    if (f.degree() < 1) return false;
    if (f.degree() == 1) return true;
    auto sf = f.squarefree_decomposition();
    if (sf.size() != 1 || sf[0].second != 1) return false;
    auto dd = distinct_degree(f);
    return dd.size() == 1 && dd[0].second == static_cast<unsigned>(f.degree());
}

std::vector<std::pair<Poly, unsigned>> Poly::factor() const {
    std::vector<std::pair<Poly, unsigned>> out;
    for (const auto& [sqf, mult] : squarefree_decomposition()) {
        for (const auto& [part, deg] : distinct_degree(sqf)) {
            for (const auto& irr : equal_degree_factor(part, deg)) out.emplace_back(irr, mult);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        return a.first.coeffs() < b.first.coeffs();
    });
    return out;
}

std::string Poly::str() const {
    if (is_zero()) return "0";
    const Gf& F = *f_;
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        std::uint64_t c = coeff(i);
        if (!c) continue;
        if (!first) os << "+";
        first = false;
        std::string cs = c < F.p() ? std::to_string(c) : F.format_element(c);
        if (i == 0) {
            os << cs;
        } else {
            if (c != 1) os << cs << "*";
            os << "x";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

}  // namespace pnpv::gf
