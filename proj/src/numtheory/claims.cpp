#include "binatoms/numtheory/claims.hpp"

#include <algorithm>
#include <string>

#include "binatoms/bigint.hpp"
#include "binatoms/error.hpp"
#include "binatoms/numtheory/matching.hpp"
#include "binatoms/parallel.hpp"

namespace binatoms::numtheory {
namespace {

WitnessReport make_report(ClaimId id, std::int64_t search_bound) {
  WitnessReport r;
  r.claim_id = id;
  r.search_bound = search_bound;
  return r;
}

void finish(WitnessReport& r) {
  if (!r.values.empty() && r.outcome == Outcome::verified)
    r.outcome = Outcome::counterexample;
}

void require_table(const PrimeTable& table, std::int64_t needed, const char* what) {
  if (table.limit() < needed)
    throw ResourceError(std::string(what) + " needs a prime table up to " +
                        std::to_string(needed) + ", have " +
                        std::to_string(table.limit()));
}

}  // namespace

std::int64_t bertrand_witness(std::int64_t n, const PrimeTable& table) {
  if (n < 3) throw UsageError("bertrand_witness needs n >= 3");
  const std::int64_t p = largest_prime_leq(n - 1, table);
  if (2 * p <= n) {
    auto r = make_report(ClaimId::bertrand, n);
    r.parameters = {{"n", n}};
    r.outcome = Outcome::counterexample;
    r.values = {{n}};
    throw CounterexampleError(r);
  }
  return p;
}

WitnessReport bertrand_sweep(std::int64_t n_max, const PrimeTable& table) {
  if (n_max < 3) throw UsageError("bertrand sweep needs n_max >= 3");
  auto r = make_report(ClaimId::bertrand, n_max);
  r.parameters = {{"n_max", n_max}};
  std::int64_t p = 2;  // largest prime < n
  for (std::int64_t n = 3; n <= n_max; ++n) {
    if (n - 1 <= table.limit() ? table.is_prime(n - 1)
                               : is_prime_u64(static_cast<std::uint64_t>(n - 1)))
      p = n - 1;
    if (2 * p <= n) r.values.push_back({n});
  }
  finish(r);
  return r;
}

std::int64_t theorem2_witness(std::int64_t n, std::int64_t k, const PrimeTable& table) {
  if (n <= 10) throw UsageError("theorem2_witness needs n > 10");
  const std::int64_t big_p = largest_prime_leq(n, table);
  if (k < 2 || k > n - big_p)
    throw UsageError("theorem2_witness needs 2 <= k <= n - P = " +
                     std::to_string(n - big_p) + ", got k = " + std::to_string(k));
  std::int64_t best = 0;
  std::int64_t source = 0;
  for (std::int64_t i = 0; i < k; ++i) {
    const std::int64_t q = table.largest_prime_factor(n - i);
    if (q > best) {
      best = q;
      source = n - i;
    }
  }
  if (best <= 2 * k || source % best != 0) {
    auto r = make_report(ClaimId::theorem2, n);
    r.parameters = {{"n", n}, {"k", k}};
    r.outcome = Outcome::counterexample;
    r.values = {{n, k}};
    throw CounterexampleError(r);
  }
  return best;
}

WitnessReport theorem2_sweep(std::int64_t n_max, const PrimeTable& table,
                             unsigned threads) {
  if (n_max < 11) throw UsageError("theorem2 sweep needs n_max >= 11");
  auto report = make_report(ClaimId::theorem2, n_max);

  constexpr std::int64_t kChunk = 8192;
  const std::int64_t first = 11;
  const std::int64_t chunks = (n_max - first) / kChunk + 1;
  struct ChunkResult {
    std::vector<std::vector<std::int64_t>> failures;
    std::int64_t cases = 0;
    std::int64_t max_k = 0;
  };
  std::vector<ChunkResult> results(static_cast<std::size_t>(chunks));

  parallel_for(chunks, threads, [&](std::int64_t c) {
    auto& out = results[static_cast<std::size_t>(c)];
    const std::int64_t lo = first + c * kChunk;
    const std::int64_t hi = std::min(n_max, lo + kChunk - 1);
    std::int64_t big_p = largest_prime_leq(lo, table);
    for (std::int64_t n = lo; n <= hi; ++n) {
      if (n > big_p && (n <= table.limit() ? table.is_prime(n)
                                           : is_prime_u64(static_cast<std::uint64_t>(n))))
        big_p = n;
      // Grow the composite run n, n-1, ..., n-k+1 one element at a time.
      std::int64_t best = table.largest_prime_factor(n);
      std::int64_t source = n;
      for (std::int64_t k = 2; k <= n - big_p; ++k) {
        const std::int64_t q = table.largest_prime_factor(n - k + 1);
        if (q > best) {
          best = q;
          source = n - k + 1;
        }
        ++out.cases;
        out.max_k = std::max(out.max_k, k);
        if (best <= 2 * k || source % best != 0) out.failures.push_back({n, k});
      }
    }
  });

  std::int64_t cases = 0;
  std::int64_t max_k = 0;
  for (auto& c : results) {
    cases += c.cases;
    max_k = std::max(max_k, c.max_k);
    for (auto& f : c.failures) report.values.push_back(std::move(f));
  }
  report.parameters = {{"n_max", n_max}, {"cases", cases}, {"max_k", max_k}};
  finish(report);
  return report;
}

std::vector<std::int64_t> grimm_assignment(std::int64_t n, std::int64_t k,
                                           const PrimeTable& table) {
  if (k < 1 || k >= n) throw UsageError("grimm_assignment needs 1 <= k < n");
  if (n - k + 1 > kGrimmKnownBound)
    throw UsageError("grimm_assignment: run start exceeds the known bound 1.9e10");
  std::vector<std::vector<std::int64_t>> divisors(static_cast<std::size_t>(k));
  std::vector<std::int64_t> primes;
  for (std::int64_t i = 0; i < k; ++i) {
    const auto fs = table.factor(n - i);
    if (fs.size() == 1 && fs.front().exponent == 1)
      throw UsageError("grimm_assignment: " + std::to_string(n - i) + " is prime");
    for (const auto& f : fs) {
      divisors[i].push_back(f.prime);
      primes.push_back(f.prime);
    }
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  auto index_of = [&primes](std::int64_t p) {
    return static_cast<std::size_t>(std::lower_bound(primes.begin(), primes.end(), p) -
                                    primes.begin());
  };

  // Fix p_0, p_1, ... greedily at their smallest value that still leaves a
  // perfect matching for the remaining indices.
  std::vector<std::int64_t> chosen;
  std::vector<std::size_t> used;
  for (std::int64_t i = 0; i < k; ++i) {
    bool fixed = false;
    for (std::int64_t q : divisors[i]) {
      const std::size_t qi = index_of(q);
      if (std::find(used.begin(), used.end(), qi) != used.end()) continue;
      BipartiteMatcher matcher(static_cast<std::size_t>(k), primes.size());
      std::vector<std::size_t> rest;
      for (std::int64_t t = i + 1; t < k; ++t) {
        rest.push_back(static_cast<std::size_t>(t));
        for (std::int64_t d : divisors[t]) matcher.add_edge(t, index_of(d));
      }
      for (std::size_t u : used) matcher.block_right(u);
      matcher.block_right(qi);
      if (matcher.solve(rest) == rest.size()) {
        chosen.push_back(q);
        used.push_back(qi);
        fixed = true;
        break;
      }
    }
    if (!fixed) {
      auto r = make_report(ClaimId::grimm, n);
      r.parameters = {{"n", n}, {"k", k}};
      r.outcome = Outcome::counterexample;
      r.values = {{n, k}};
      throw CounterexampleError(r);
    }
  }

  for (std::int64_t i = 0; i < k; ++i) {
    const bool distinct =
        std::count(chosen.begin(), chosen.end(), chosen[i]) == 1;
    if (!distinct || (n - i) % chosen[i] != 0)
      throw std::logic_error("grimm_assignment produced an invalid assignment");
  }
  return chosen;
}

std::vector<std::int64_t> proper_prime_powers(std::int64_t limit, const PrimeTable& table,
                                              EnumerationOrder order) {
  const std::int64_t root = integer_root(limit, 2);
  require_table(table, root, "prime power enumeration");
  const auto primes = table.primes_up_to(root);
  std::vector<std::int64_t> out;
  if (order == EnumerationOrder::by_base) {
    for (std::int64_t p : primes) {
      for (__int128 v = static_cast<__int128>(p) * p; v <= limit; v *= p)
        out.push_back(static_cast<std::int64_t>(v));
    }
  } else {
    for (int e = 2;; ++e) {
      bool any = false;
      for (std::int64_t p : primes) {
        __int128 v = 1;
        for (int i = 0; i < e && v <= limit; ++i) v *= p;
        if (v > limit) break;
        out.push_back(static_cast<std::int64_t>(v));
        any = true;
      }
      if (!any) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<PowerPair> pairs_at_distance(const std::vector<std::int64_t>& powers,
                                         std::int64_t gap) {
  std::vector<PowerPair> out;
  std::size_t j = 0;
  for (std::size_t i = 0; i < powers.size(); ++i) {
    while (j < powers.size() && powers[j] < powers[i] + gap) ++j;
    if (j < powers.size() && powers[j] == powers[i] + gap)
      out.emplace_back(powers[i], powers[j]);
  }
  return out;
}

WitnessReport scan_report(ClaimId id, std::int64_t limit,
                          const std::vector<PowerPair>& found,
                          const std::vector<PowerPair>& expected) {
  auto r = make_report(id, limit);
  r.parameters = {{"limit", limit}, {"pairs", static_cast<std::int64_t>(found.size())}};
  for (const auto& [a, b] : found) r.values.push_back({a, b});
  r.outcome = found == expected ? Outcome::verified : Outcome::counterexample;
  return r;
}

}  // namespace

std::vector<PowerPair> catalan_scan(std::int64_t limit, const PrimeTable& table,
                                    EnumerationOrder order) {
  if (limit < 9) throw UsageError("catalan_scan needs limit >= 9");
  return pairs_at_distance(proper_prime_powers(limit, table, order), 1);
}

std::vector<PowerPair> pillai_scan(std::int64_t limit, const PrimeTable& table,
                                   EnumerationOrder order) {
  if (limit < 27) throw UsageError("pillai_scan needs limit >= 27");
  return pairs_at_distance(proper_prime_powers(limit, table, order), 2);
}

WitnessReport catalan_report(std::int64_t limit, const PrimeTable& table) {
  return scan_report(ClaimId::catalan, limit, catalan_scan(limit, table), {{8, 9}});
}

WitnessReport pillai_report(std::int64_t limit, const PrimeTable& table) {
  return scan_report(ClaimId::pillai, limit, pillai_scan(limit, table), {{25, 27}});
}

bool mkbound_admissible(std::int64_t m, std::int64_t k) {
  // m > k + 13 and 262 m > 279 k
  return k >= 2 && m > k + 13 && 262 * m > 279 * k;
}

WitnessReport mkbound_check(std::int64_t m, std::int64_t k, const PrimeTable& table) {
  if (!mkbound_admissible(m, k))
    throw UsageError("mkbound_check needs k >= 2 and m > max{k+13, 279k/262}");
  auto r = make_report(ClaimId::mkbound, m + k - 1);
  r.parameters = {{"m", m}, {"k", k}};
  std::int64_t best = 0;
  for (std::int64_t i = 0; i < k; ++i) best = std::max(best, table.largest_prime_factor(m + i));
  if (best > 2 * k) {
    r.outcome = Outcome::witness;
    r.values = {{best}};
  } else {
    r.outcome = Outcome::counterexample;
    r.values = {{m, k}};
  }
  return r;
}

WitnessReport mkbound_sweep(std::int64_t m_max, std::int64_t k_max, const PrimeTable& table) {
  if (k_max < 2) throw UsageError("mkbound sweep needs k_max >= 2");
  auto r = make_report(ClaimId::mkbound, m_max + k_max - 1);
  std::int64_t cases = 0;
  for (std::int64_t m = 1; m <= m_max; ++m) {
    std::int64_t best = table.largest_prime_factor(m);
    for (std::int64_t k = 2; k <= k_max; ++k) {
      best = std::max(best, table.largest_prime_factor(m + k - 1));
      if (!mkbound_admissible(m, k)) continue;
      ++cases;
      if (best <= 2 * k) r.values.push_back({m, k});
    }
  }
  r.parameters = {{"m_max", m_max}, {"k_max", k_max}, {"cases", cases}};
  finish(r);
  return r;
}

WitnessReport schoenfeld_window_check(std::int64_t lo, std::int64_t hi,
                                      const PrimeTable& table) {
  if (lo < kSchoenfeldThreshold)
    throw UsageError("schoenfeld_window_check needs lo >= 2010760");
  if (hi <= lo) throw UsageError("schoenfeld_window_check needs hi > lo");
  auto r = make_report(ClaimId::schoenfeld, hi);
  r.parameters = {{"lo", lo}, {"hi", hi}};

  const std::int64_t beyond = next_prime(hi, table);
  PrimeWindow window(lo, beyond, table);
  std::vector<std::int64_t> primes;
  for (std::int64_t x = lo + 1; x <= beyond; ++x)
    if (window.is_prime(x)) primes.push_back(x);

  const BigInt num = 16598;  // (1 + 1/16597) = 16598/16597
  const BigInt den = 16597;
  std::size_t idx = 0;
  std::int64_t max_gap = 0;
  for (std::int64_t m = lo; m <= hi; ++m) {
    while (primes[idx] <= m) ++idx;
    const std::int64_t p = primes[idx];
    max_gap = std::max(max_gap, p - m);
    if (!(den * p < num * m)) r.values.push_back({m, p});
  }
  r.parameters["max_gap"] = max_gap;
  finish(r);
  return r;
}

namespace {

bool nthlargen_claim_holds(std::int64_t n, std::int64_t big_p) {
  const BigInt d = n - big_p;
  const BigInt lhs = big_p + 1;
  return lhs > d + 13 && 262 * lhs > 279 * d;
}

}  // namespace

WitnessReport prop_nthlargen_claim_check(std::int64_t n, const PrimeTable& table) {
  if (n < 2) throw UsageError("nthlargen claim needs n >= 2");
  auto r = make_report(ClaimId::nthlargen, n);
  const std::int64_t big_p = largest_prime_leq(n, table);
  r.parameters = {{"n", n}, {"P", big_p}};
  if (n < kLargeNThreshold) r.flags.push_back("exploratory");
  if (!nthlargen_claim_holds(n, big_p)) r.values.push_back({n, big_p});
  finish(r);
  return r;
}

WitnessReport nthlargen_window_check(std::int64_t lo, std::int64_t hi,
                                     const PrimeTable& table) {
  if (lo < 2 || hi < lo) throw UsageError("nthlargen window needs 2 <= lo <= hi");
  auto r = make_report(ClaimId::nthlargen, hi);
  r.parameters = {{"lo", lo}, {"hi", hi}};
  if (lo < kLargeNThreshold) r.flags.push_back("exploratory");
  std::int64_t big_p = largest_prime_leq(lo, table);
  PrimeWindow window(big_p, hi, table);
  std::int64_t max_distance = 0;
  for (std::int64_t n = lo; n <= hi; ++n) {
    if (window.is_prime(n)) big_p = n;
    max_distance = std::max(max_distance, n - big_p);
    if (!nthlargen_claim_holds(n, big_p)) r.values.push_back({n, big_p});
  }
  r.parameters["max_n_minus_P"] = max_distance;
  finish(r);
  return r;
}

WitnessReport kth_prime_check(std::int64_t k_max, const PrimeTable& table) {
  if (k_max < 5) throw UsageError("kth prime check needs k_max >= 5");
  if (static_cast<std::int64_t>(table.primes().size()) < k_max)
    throw ResourceError("kth prime check needs " + std::to_string(k_max) +
                        " tabulated primes, have " +
                        std::to_string(table.primes().size()));
  auto r = make_report(ClaimId::kth_prime, k_max);
  r.parameters = {{"k_max", k_max}};
  for (std::int64_t k = 5; k <= k_max; ++k)
    if (table.primes()[k - 1] <= 2 * k) r.values.push_back({k, table.primes()[k - 1]});
  finish(r);
  return r;
}

}  // namespace binatoms::numtheory
