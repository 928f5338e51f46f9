#include "binatoms/numtheory/primes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "binatoms/error.hpp"

namespace binatoms::numtheory {

PrimeTable::PrimeTable(std::int64_t limit, std::size_t memory_budget)
    : limit_(limit) {
  sieve(memory_budget);
}

void PrimeTable::sieve(std::size_t memory_budget) {
  if (limit_ < 2) throw UsageError("prime table limit must be at least 2");
  if (limit_ >= std::numeric_limits<std::uint32_t>::max())
    throw ResourceError("prime table limit " + std::to_string(limit_) +
                        " exceeds 32-bit factor storage");
  const auto bytes = static_cast<std::size_t>(limit_ + 1) * sizeof(std::uint32_t);
  if (bytes > memory_budget)
    throw ResourceError("prime table limit " + std::to_string(limit_) + " needs " +
                        std::to_string(bytes) + " bytes, budget is " +
                        std::to_string(memory_budget));

  spf_.assign(static_cast<std::size_t>(limit_) + 1, 0);
  primes_.clear();
  // Linear sieve: every composite is struck exactly once by its least prime.
  for (std::int64_t i = 2; i <= limit_; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes_.push_back(i);
    }
    const std::int64_t lp = spf_[i];
    for (std::int64_t p : primes_) {
      if (p > lp || p * i > limit_) break;
      spf_[p * i] = static_cast<std::uint32_t>(p);
    }
  }
}

PrimeTable PrimeTable::from_prime_list(std::int64_t limit,
                                       std::span<const std::int64_t> primes,
                                       std::size_t memory_budget) {
  PrimeTable table;
  table.limit_ = limit;
  table.sieve(memory_budget);
  if (!std::equal(primes.begin(), primes.end(), table.primes_.begin(),
                  table.primes_.end()))
    throw UsageError("cached prime list does not match the primes up to " +
                     std::to_string(limit));
  return table;
}

std::int64_t PrimeTable::smallest_prime_factor(std::int64_t i) const {
  if (i < 2 || i > limit_)
    throw UsageError("smallest_prime_factor argument " + std::to_string(i) +
                     " outside [2, " + std::to_string(limit_) + "]");
  return spf_[i];
}

bool PrimeTable::is_prime(std::int64_t i) const {
  if (i < 0 || i > limit_)
    throw UsageError("is_prime argument " + std::to_string(i) + " outside table");
  return i >= 2 && spf_[i] == i;
}

std::vector<std::int64_t> PrimeTable::primes_up_to(std::int64_t n) const {
  if (n > limit_)
    throw UsageError("primes_up_to(" + std::to_string(n) + ") beyond table limit");
  auto end = std::upper_bound(primes_.begin(), primes_.end(), n);
  return {primes_.begin(), end};
}

std::int64_t PrimeTable::factor_limit() const noexcept {
  // limit_ < 2^32, so the square fits.
  return limit_ * limit_;
}

std::vector<PrimeFactor> PrimeTable::factor(std::int64_t m) const {
  if (m < 1) throw DomainError("cannot factor " + std::to_string(m));
  std::vector<PrimeFactor> out;
  auto push = [&out](std::int64_t p) {
    if (!out.empty() && out.back().prime == p)
      ++out.back().exponent;
    else
      out.push_back({p, 1});
  };
  if (m <= limit_) {
    while (m > 1) {
      const std::int64_t p = spf_[m];
      push(p);
      m /= p;
    }
    return out;
  }
  if (m > factor_limit())
    throw ResourceError("cannot factor " + std::to_string(m) +
                        " with a prime table up to " + std::to_string(limit_));
  for (std::int64_t p : primes_) {
    if (p * p > m) break;
    while (m % p == 0) {
      push(p);
      m /= p;
    }
    if (m <= limit_) {
      while (m > 1) {
        const std::int64_t q = spf_[m];
        push(q);
        m /= q;
      }
      return out;
    }
  }
  if (m > 1) push(m);
  return out;
}

std::vector<std::int64_t> PrimeTable::distinct_prime_factors(std::int64_t m) const {
  std::vector<std::int64_t> out;
  for (const auto& f : factor(m)) out.push_back(f.prime);
  return out;
}

std::int64_t PrimeTable::largest_prime_factor(std::int64_t m) const {
  const auto fs = factor(m);
  return fs.empty() ? 1 : fs.back().prime;
}

PrimeWindow::PrimeWindow(std::int64_t lo, std::int64_t hi, const PrimeTable& base)
    : lo_(std::max<std::int64_t>(lo, 0)), hi_(hi) {
  if (hi_ < lo_) throw UsageError("empty prime window");
  if (hi_ > base.factor_limit())
    throw ResourceError("prime window up to " + std::to_string(hi_) +
                        " needs base primes beyond " + std::to_string(base.limit()));
  flags_.assign(static_cast<std::size_t>(hi_ - lo_ + 1), 1);
  for (std::int64_t x = lo_; x <= std::min<std::int64_t>(hi_, 1); ++x)
    flags_[x - lo_] = 0;
  for (std::int64_t p : base.primes()) {
    if (p * p > hi_) break;
    std::int64_t start = std::max(p * p, (lo_ + p - 1) / p * p);
    for (std::int64_t x = start; x <= hi_; x += p) flags_[x - lo_] = 0;
  }
}

bool PrimeWindow::is_prime(std::int64_t x) const {
  if (x < lo_ || x > hi_) throw UsageError("argument outside prime window");
  return flags_[x - lo_] != 0;
}

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  b %= m;
  while (e > 0) {
    if (e & 1) r = mul_mod(r, b, m);
    b = mul_mod(b, b, m);
    e >>= 1;
  }
  return r;
}

void require_prime(std::int64_t p) {
  if (p < 2 || !is_prime_u64(static_cast<std::uint64_t>(p)))
    throw UsageError("p-adic valuation needs a prime, got " + std::to_string(p));
}

// Window length stepped by largest_prime_leq / next_prime beyond the table.
constexpr std::int64_t kScanWindow = 4096;

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are deterministic for all n < 3.3 * 10^24.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

int p_adic_valuation(std::int64_t w, std::int64_t p) {
  if (w == 0) throw DomainError("p-adic valuation of 0 is undefined");
  require_prime(p);
  return valuation(w, p);
}

int p_adic_valuation(const BigInt& w, std::int64_t p) {
  if (w == 0) throw DomainError("p-adic valuation of 0 is undefined");
  require_prime(p);
  BigInt x = abs(w);
  const BigInt bp = p;
  int v = 0;
  while (x % bp == 0) {
    x /= bp;
    ++v;
  }
  return v;
}

int p_adic_valuation(const BigRational& w, std::int64_t p) {
  if (w == 0) throw DomainError("p-adic valuation of 0 is undefined");
  return p_adic_valuation(numerator_of(w), p) - p_adic_valuation(denominator_of(w), p);
}

std::int64_t largest_prime_leq(std::int64_t n, const PrimeTable& table) {
  if (n < 2) throw UsageError("largest_prime_leq needs n >= 2");
  if (n <= table.limit()) {
    const auto& ps = table.primes();
    return *(std::upper_bound(ps.begin(), ps.end(), n) - 1);
  }
  for (std::int64_t hi = n;; hi -= kScanWindow) {
    const std::int64_t lo = std::max<std::int64_t>(2, hi - kScanWindow + 1);
    if (hi <= table.limit()) return largest_prime_leq(hi, table);
    PrimeWindow w(lo, hi, table);
    for (std::int64_t x = hi; x >= lo; --x)
      if (w.is_prime(x)) return x;
  }
}

std::int64_t next_prime(std::int64_t n, const PrimeTable& table) {
  if (n < 2) throw UsageError("next_prime needs n >= 2");
  if (n < table.primes().back()) {
    const auto& ps = table.primes();
    return *std::upper_bound(ps.begin(), ps.end(), n);
  }
  for (std::int64_t lo = n + 1;; lo += kScanWindow) {
    PrimeWindow w(lo, lo + kScanWindow - 1, table);
    for (std::int64_t x = lo; x < lo + kScanWindow; ++x)
      if (w.is_prime(x)) return x;
  }
}

std::int64_t integer_root(std::int64_t n, int e) {
  if (n < 0 || e < 1) throw UsageError("integer_root needs n >= 0, e >= 1");
  if (e == 1 || n < 2) return n;
  auto pow_leq = [n, e](std::int64_t r) {
    // true iff r^e <= n, without overflow
    __int128 acc = 1;
    for (int i = 0; i < e; ++i) {
      acc *= r;
      if (acc > n) return false;
    }
    return true;
  };
  auto r = static_cast<std::int64_t>(std::pow(static_cast<double>(n), 1.0 / e));
  while (r > 0 && !pow_leq(r)) --r;
  while (pow_leq(r + 1)) ++r;
  return r;
}

std::optional<PrimePower> prime_power_decompose(std::int64_t n) {
  if (n < 2) return std::nullopt;
  // Try the largest exponent first so the base comes out prime.
  for (int e = 62; e >= 1; --e) {
    if ((std::int64_t{1} << std::min(e, 62)) > n && e > 1) continue;
    const std::int64_t r = integer_root(n, e);
    if (r < 2) continue;
    __int128 acc = 1;
    for (int i = 0; i < e; ++i) acc *= r;
    if (acc != n) continue;
    if (is_prime_u64(static_cast<std::uint64_t>(r))) return PrimePower{r, e, n};
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace binatoms::numtheory
