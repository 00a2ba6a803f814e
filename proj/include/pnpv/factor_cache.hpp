// Persistent cache of q^m-1 factorizations plus an in-memory memo of
// cyclotomic pieces Phi_D(p). The cache only affects speed: entries failing
// the recomposition check are recomputed.
#pragma once

#include <gmpxx.h>

#include <future>
#include <map>
#include <mutex>
#include <string>

#include "pnpv/intfact.hpp"

namespace pnpv {

inline constexpr const char* kToolVersion = "pnpv 0.1.0";

class FactorCache {
  public:
    // Empty path = in-memory only.
    explicit FactorCache(std::string path = "");
    ~FactorCache();

    static std::string default_path();  // $PNPV_CACHE or "pnpv.cache"

    intfact::Factorization factor_qm(const mpz_class& p, unsigned k, unsigned m,
                                     const intfact::FactorBudget& budget = {});

    intfact::Factorization factor_piece(const mpz_class& p, unsigned d,
                                        const intfact::FactorBudget& budget = {});

    void load();
    void save();

    size_t disk_entries() const;

  private:
    using Key = std::pair<std::string, unsigned>;

    mutable std::mutex mu_;
    std::map<Key, std::shared_future<intfact::Factorization>> pieces_;  // (p, D)
    struct QmEntry {
        intfact::Factorization fac;
        std::string timestamp;
        std::string version;
    };
    std::map<Key, QmEntry> qm_;  // (q, m)
    std::string path_;
    bool dirty_ = false;
};

}  // namespace pnpv
