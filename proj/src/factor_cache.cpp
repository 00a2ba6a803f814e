#include "pnpv/factor_cache.hpp"

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

namespace pnpv {

namespace {

std::string iso_now() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

}  // namespace

FactorCache::FactorCache(std::string path) : path_(std::move(path)) {
    if (!path_.empty()) load();
}

FactorCache::~FactorCache() {
    if (dirty_) save();
}

std::string FactorCache::default_path() {
    if (const char* env = std::getenv("PNPV_CACHE")) return env;
    return "pnpv.cache";
}

intfact::Factorization FactorCache::factor_piece(const mpz_class& p, unsigned d,
                                                 const intfact::FactorBudget& budget) {
    Key key{p.get_str(), d};
    std::shared_future<intfact::Factorization> fut;
    bool owner = false;
    std::promise<intfact::Factorization> prom;
    {
        std::lock_guard lk(mu_);
        auto it = pieces_.find(key);
        if (it == pieces_.end()) {
            fut = prom.get_future().share();
            pieces_.emplace(key, fut);
            owner = true;
        } else {
            fut = it->second;
        }
    }
    if (owner) {
        try {
            prom.set_value(intfact::factor_integer(intfact::cyclotomic_value(d, p), budget));
        } catch (...) {
            prom.set_exception(std::current_exception());
        }
    }
    return fut.get();
}

intfact::Factorization FactorCache::factor_qm(const mpz_class& p, unsigned k, unsigned m,
                                              const intfact::FactorBudget& budget) {
    mpz_class q = intfact::pow_mpz(p, k);
    mpz_class target = intfact::pow_mpz(p, static_cast<unsigned long>(k) * m) - 1;
    Key key{q.get_str(), m};
    {
        std::lock_guard lk(mu_);
        auto it = qm_.find(key);
        if (it != qm_.end() && it->second.fac.complete && it->second.fac.valid(false) &&
            it->second.fac.value == target) {
            return it->second.fac;
        }
    }
    // assemble from cyclotomic pieces of the base prime
    std::map<mpz_class, unsigned> merged;
    mpz_class cof = 1;
    bool complete = true, probable = false;
    unsigned km = k * m;
    for (unsigned d = 1; d <= km; ++d) {
        if (km % d) continue;
        intfact::Factorization part = factor_piece(p, d, budget);
        for (const auto& [pr, e] : part.factors) merged[pr] += e;
        cof *= part.cofactor;
        complete &= part.complete;
        probable |= part.probable_only;
    }
    intfact::Factorization out;
    out.value = target;
    for (auto& [pr, e] : merged) out.factors.emplace_back(pr, e);
    out.cofactor = cof;
    out.complete = complete;
    out.probable_only = probable;
    if (!complete) out.trial_bound = budget.trial_bound;
    if (complete) {
        std::lock_guard lk(mu_);
        qm_[key] = {out, iso_now(), kToolVersion};
        dirty_ = true;
    }
    return out;
}

void FactorCache::load() {
    std::ifstream in(path_);
    if (!in) return;
    std::string line;
    std::lock_guard lk(mu_);
    while (std::getline(in, line)) {
        // q <q> m <m> ts <iso> ver <version> ; <wire>
        std::istringstream is(line);
        std::string tq, q, tm, mstr, tts, ts, tver, verword, verno, semi;
        if (!(is >> tq >> q >> tm >> mstr >> tts >> ts >> tver >> verword >> verno >> semi))
            continue;
        if (tq != "q" || tm != "m" || semi != ";") continue;
        std::string wire;
        std::getline(is, wire);
        if (!wire.empty() && wire.front() == ' ') wire.erase(0, 1);
        auto fac = intfact::parse_wire(wire);
        if (!fac) continue;
        unsigned m = 0;
        try {
            m = std::stoul(mstr);
        } catch (...) {
            continue;
        }
        qm_[{q, m}] = {*fac, ts, verword + " " + verno};
    }
}

void FactorCache::save() {
    if (path_.empty()) return;
    std::lock_guard lk(mu_);
    std::ofstream out(path_, std::ios::trunc);
    if (!out) return;
    for (const auto& [key, entry] : qm_) {
        out << "q " << key.first << " m " << key.second << " ts " << entry.timestamp << " ver "
            << entry.version << " ; " << intfact::to_wire(entry.fac) << "\n";
    }
    dirty_ = false;
}

size_t FactorCache::disk_entries() const {
    std::lock_guard lk(mu_);
    return qm_.size();
}

}  // namespace pnpv
