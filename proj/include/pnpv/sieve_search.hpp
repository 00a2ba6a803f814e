// Automated selection of sieve configurations, the per-pair resolution
// pipeline (W-bound screens, basic condition, prefix prime-sieve search,
// modified-sieve heuristics), the characteristic-5 scan, and reproduction of
// the two published tables of passing configurations.
#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "pnpv/criteria.hpp"
#include "pnpv/factor_cache.hpp"
#include "pnpv/intfact.hpp"
#include "pnpv/polyfact.hpp"

namespace pnpv::sieve {

struct PrimePower {
    mpz_class p;
    unsigned k = 1;
    mpz_class q;  // p^k
};

PrimePower make_prime_power(const mpz_class& p, unsigned k);
PrimePower parse_prime_power(const mpz_class& q);  // throws if q is not a prime power

enum class PairTag {
    VerifiedBasic,
    VerifiedSieve,
    VerifiedModified,
    VerifiedScreen,
    PossibleException,
};

const char* pair_tag_name(PairTag t);

struct PairStatus {
    PairTag tag = PairTag::PossibleException;
    std::optional<criteria::CriterionReport> certificate;
    // True when an incomplete factorization's omega upper bound entered a
    // decision; a POSSIBLE_EXCEPTION with bounds_used is inconclusive, not a
    // definitive failure of every criterion.
    bool bounds_used = false;

    bool verified() const { return tag != PairTag::PossibleException; }
    std::string to_json(const PrimePower& q, unsigned m) const;
};

// Prefix-based config family: d = first i primes (ascending), g = all factor
// classes of degree < D plus j of degree D, Cartesian product, deterministic
// order. For an incomplete factorization only the all-absorbed config is
// emitted (its W values must then come from omega upper bounds).
std::vector<criteria::SieveConfig> enumerate_configs(const intfact::Factorization& fact,
                                                     const polyfact::XmProfile& profile,
                                                     unsigned cap = 64);

PairStatus resolve_pair(const PrimePower& q, unsigned m, unsigned n,
                        const intfact::FactorBudget& budget = {}, FactorCache* cache = nullptr);

struct ScanParams {
    mpz_class characteristic = 5;
    unsigned k_max = 1;
    unsigned m_max = 5;
    unsigned n = 4;
    unsigned jobs = 1;
    intfact::FactorBudget budget;
};

struct ScanRow {
    unsigned k = 1;
    unsigned m = 5;
    PairStatus status;
};

struct ScanReport {
    ScanParams params;
    std::vector<ScanRow> rows;                           // sorted by (k, m)
    std::vector<std::pair<unsigned, unsigned>> exceptions;  // (k, m), sorted

    std::string to_csv() const;
    std::string to_json() const;
};

ScanReport scan(const ScanParams& params, FactorCache* cache = nullptr);

// ---------------------------------------------------------------------------
// Table reproduction

struct TableRowSpec {
    int table;              // 1 or 2
    int row;                // 1-based as printed
    unsigned k, m;          // q = 5^k
    unsigned long d_value;  // product of absorbed primes
    unsigned r, s;          // printed sieved counts
    const char* g_str;      // printed absorbed polynomial ("1" = none)
    bool g_full;            // absorb the entire profile (printed as x^m-1)
    std::vector<std::pair<unsigned, unsigned>> g_degrees;  // (degree, count)
    const char* lambda_str;
    const char* Lambda_str;
    const char* lhs_str;
    const char* rhs_str;
};

struct TableRowResult {
    const TableRowSpec* spec = nullptr;
    criteria::CriterionReport report;
    bool shape_ok = false;   // derived (r, s) match the printed row
    bool lambda_ok = false;  // computed lambda >= printed - 1 printed-ulp
    bool Lambda_ok = false;  // computed Lambda <= printed + 1 printed-ulp
    bool lhs_ok = false;     // within 1 printed-ulp or relative 1e-4
    bool rhs_ok = false;
    bool holds = false;

    bool row_ok() const { return holds; }  // FAILED_ROW criterion
    bool matches_printed() const {
        return shape_ok && lambda_ok && Lambda_ok && lhs_ok && rhs_ok && holds;
    }
};

const std::vector<TableRowSpec>& table_rows();

// Evaluates every row's exact (d, g) config; which = 0 for both tables.
std::vector<TableRowResult> reproduce_tables(int which = 0, FactorCache* cache = nullptr,
                                             const intfact::FactorBudget& budget = {});

std::string table_results_to_csv(const std::vector<TableRowResult>& rows);
std::string table_results_to_json(const std::vector<TableRowResult>& rows);

// Sign of q^{e_half/2} - v for rational v > 0, decided exactly.
int cmp_half_power(const mpz_class& q, unsigned long e_half, const mpq_class& v);

}  // namespace pnpv::sieve
