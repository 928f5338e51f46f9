#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "binatoms/bigint.hpp"

namespace binatoms::numtheory {

struct PrimeFactor {
  std::int64_t prime;
  int exponent;
  friend bool operator==(const PrimeFactor&, const PrimeFactor&) = default;
};

/// Smallest-prime-factor table over [0, limit].
///
/// Immutable after construction; safe to share between threads.
class PrimeTable {
 public:
  /// Bytes the table may occupy before construction is refused.
  static constexpr std::size_t kDefaultMemoryBudget = std::size_t{1} << 31;

  explicit PrimeTable(std::int64_t limit,
                      std::size_t memory_budget = kDefaultMemoryBudget);

  /// Rebuilds a table from a cached ascending prime list. The list must be
  /// exactly the primes up to `limit`; anything else throws UsageError.
  static PrimeTable from_prime_list(std::int64_t limit,
                                    std::span<const std::int64_t> primes,
                                    std::size_t memory_budget = kDefaultMemoryBudget);

  std::int64_t limit() const noexcept { return limit_; }

  std::int64_t smallest_prime_factor(std::int64_t i) const;
  bool is_prime(std::int64_t i) const;

  /// All primes up to limit(), ascending.
  const std::vector<std::int64_t>& primes() const noexcept { return primes_; }
  std::vector<std::int64_t> primes_up_to(std::int64_t n) const;

  /// Factorization by table lookup when m <= limit(), by trial division with
  /// tabulated primes when m <= limit()^2. Larger m throw ResourceError.
  std::vector<PrimeFactor> factor(std::int64_t m) const;
  std::vector<std::int64_t> distinct_prime_factors(std::int64_t m) const;
  std::int64_t largest_prime_factor(std::int64_t m) const;

  /// Largest argument factor() accepts.
  std::int64_t factor_limit() const noexcept;

 private:
  PrimeTable() = default;
  void sieve(std::size_t memory_budget);

  std::int64_t limit_ = 0;
  std::vector<std::uint32_t> spf_;
  std::vector<std::int64_t> primes_;
};

/// Primality flags for the closed interval [lo, hi], sieved with the primes
/// of a base table (segmented sieve).
class PrimeWindow {
 public:
  PrimeWindow(std::int64_t lo, std::int64_t hi, const PrimeTable& base);

  std::int64_t lo() const noexcept { return lo_; }
  std::int64_t hi() const noexcept { return hi_; }
  bool is_prime(std::int64_t x) const;

 private:
  std::int64_t lo_;
  std::int64_t hi_;
  std::vector<char> flags_;
};

/// Deterministic Miller-Rabin for 64-bit arguments.
bool is_prime_u64(std::uint64_t n);

/// Exponent of p in w. Integer overloads expect |w| > 0; throws DomainError
/// for w = 0 and UsageError for non-prime p.
int p_adic_valuation(std::int64_t w, std::int64_t p);
int p_adic_valuation(const BigInt& w, std::int64_t p);
int p_adic_valuation(const BigRational& w, std::int64_t p);

/// Unchecked valuation of a nonzero integer; the hot path of matrix
/// construction.
inline int valuation(std::int64_t w, std::int64_t p) noexcept {
  int v = 0;
  if (w < 0) w = -w;
  while (w % p == 0) {
    w /= p;
    ++v;
  }
  return v;
}

std::int64_t largest_prime_leq(std::int64_t n, const PrimeTable& table);
std::int64_t next_prime(std::int64_t n, const PrimeTable& table);

struct PrimePower {
  std::int64_t base;
  int exponent;
  std::int64_t value;
  /// Exponent at least two; Catalan/Pillai scans consider only these.
  bool proper() const noexcept { return exponent >= 2; }
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// n = p^e with p prime, or empty.
std::optional<PrimePower> prime_power_decompose(std::int64_t n);

/// floor(n^(1/e)) for n >= 0, e >= 1.
std::int64_t integer_root(std::int64_t n, int e);

}  // namespace binatoms::numtheory
