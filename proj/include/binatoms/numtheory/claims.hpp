#pragma once

// Desk-scale verification of the prime-distribution facts behind the rank
// argument: Bertrand, composite-run witnesses, Grimm assignments, Catalan and
// difference-two prime-power scans, the Laishram-Shorey product bound, the
// Schoenfeld gap bound and the large-n claim that ties them together.

#include <cstdint>
#include <utility>
#include <vector>

#include "binatoms/numtheory/primes.hpp"
#include "binatoms/numtheory/witness_report.hpp"

namespace binatoms::numtheory {

/// Threshold above which the large-n argument takes over.
inline constexpr std::int64_t kLargeNThreshold = 4021520;
/// Lower end of the Schoenfeld gap bound.
inline constexpr std::int64_t kSchoenfeldThreshold = 2010760;
/// Grimm's conjecture is known for runs starting at or below this value.
inline constexpr std::int64_t kGrimmKnownBound = 19'000'000'000;

/// Largest prime p with n/2 < p < n.
std::int64_t bertrand_witness(std::int64_t n, const PrimeTable& table);
WitnessReport bertrand_sweep(std::int64_t n_max, const PrimeTable& table);

/// Largest prime p > 2k dividing one of n, n-1, ..., n-k+1. Requires n > 10
/// and 2 <= k <= n - P where P is the largest prime <= n.
std::int64_t theorem2_witness(std::int64_t n, std::int64_t k, const PrimeTable& table);

/// Every 10 < n <= n_max and every admissible k has a witness.
WitnessReport theorem2_sweep(std::int64_t n_max, const PrimeTable& table,
                             unsigned threads = 1);

/// Pairwise distinct primes p_i | n - i for i < k, the lexicographically
/// smallest such list. n, ..., n-k+1 must all be composite.
std::vector<std::int64_t> grimm_assignment(std::int64_t n, std::int64_t k,
                                           const PrimeTable& table);

enum class EnumerationOrder { by_base, by_exponent };

/// All p^e <= limit with p prime and e >= 2, ascending. The order of
/// generation only affects intermediate work, never the result.
std::vector<std::int64_t> proper_prime_powers(std::int64_t limit, const PrimeTable& table,
                                              EnumerationOrder order = EnumerationOrder::by_base);

using PowerPair = std::pair<std::int64_t, std::int64_t>;

/// Pairs (a, a+1), both proper prime powers, a+1 <= limit.
std::vector<PowerPair> catalan_scan(std::int64_t limit, const PrimeTable& table,
                                    EnumerationOrder order = EnumerationOrder::by_base);
/// Pairs (a, a+2), both proper prime powers, a+2 <= limit.
std::vector<PowerPair> pillai_scan(std::int64_t limit, const PrimeTable& table,
                                   EnumerationOrder order = EnumerationOrder::by_base);

WitnessReport catalan_report(std::int64_t limit, const PrimeTable& table);
WitnessReport pillai_report(std::int64_t limit, const PrimeTable& table);

/// m(m+1)...(m+k-1) has a prime factor > 2k, for m > max{k+13, 279k/262}.
/// The witness is the largest prime factor of the product.
WitnessReport mkbound_check(std::int64_t m, std::int64_t k, const PrimeTable& table);
bool mkbound_admissible(std::int64_t m, std::int64_t k);
WitnessReport mkbound_sweep(std::int64_t m_max, std::int64_t k_max, const PrimeTable& table);

/// For every m in [lo, hi], next_prime(m) < (1 + 1/16597) m.
WitnessReport schoenfeld_window_check(std::int64_t lo, std::int64_t hi,
                                      const PrimeTable& table);

/// P + 1 > max{(n-P)+13, 279/262 (n-P)} with P the largest prime <= n.
/// n below the large-n threshold is evaluated but flagged "exploratory".
WitnessReport prop_nthlargen_claim_check(std::int64_t n, const PrimeTable& table);
WitnessReport nthlargen_window_check(std::int64_t lo, std::int64_t hi,
                                     const PrimeTable& table);

/// The k-th prime exceeds 2k for all 5 <= k <= k_max.
WitnessReport kth_prime_check(std::int64_t k_max, const PrimeTable& table);

}  // namespace binatoms::numtheory
