#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "binatoms/error.hpp"
#include "binatoms/numtheory/claims.hpp"
#include "binatoms/numtheory/matching.hpp"
#include "oracles.hpp"

using namespace binatoms;
using namespace binatoms::numtheory;

namespace {
const PrimeTable& table() {
  static const PrimeTable t(1'000'000);
  return t;
}
}  // namespace

TEST_CASE("prime table small limits") {
  CHECK(PrimeTable(10).primes() == std::vector<std::int64_t>{2, 3, 5, 7});
  CHECK(PrimeTable(2).primes() == std::vector<std::int64_t>{2});
  CHECK(PrimeTable(300).primes().size() == 62);
  CHECK(PrimeTable(300).primes() == oracle::primes_up_to(300));
}

TEST_CASE("prime table factorization") {
  const auto& t = table();
  CHECK(t.smallest_prime_factor(91) == 7);
  CHECK(t.factor(360) == std::vector<PrimeFactor>{{2, 3}, {3, 2}, {5, 1}});
  // beyond the table, by trial division
  CHECK(t.largest_prime_factor(1'000'003LL * 999'983LL) == 1'000'003);
  CHECK_THROWS_AS(t.factor(t.factor_limit() + 1), ResourceError);
  for (std::int64_t m = 2; m < 3000; ++m)
    CHECK(t.largest_prime_factor(m) == oracle::largest_prime_factor(m));
}

TEST_CASE("prime table memory budget") {
  CHECK_THROWS_AS(PrimeTable(1'000'000, 1000), ResourceError);
}

TEST_CASE("prime table from cached list") {
  const PrimeTable t = PrimeTable::from_prime_list(30, PrimeTable(30).primes());
  CHECK(t.is_prime(29));
  CHECK(t.smallest_prime_factor(25) == 5);
  std::vector<std::int64_t> wrong{2, 3, 5, 9};
  CHECK_THROWS_AS(PrimeTable::from_prime_list(10, wrong), UsageError);
}

TEST_CASE("segmented window agrees with trial division") {
  const PrimeWindow w(1'000'000'000, 1'000'002'000, table());
  for (std::int64_t x = w.lo(); x <= w.hi(); ++x) CHECK(w.is_prime(x) == oracle::is_prime(x));
}

TEST_CASE("miller-rabin") {
  for (std::int64_t x = 0; x < 5000; ++x) CHECK(is_prime_u64(x) == oracle::is_prime(x));
  CHECK(is_prime_u64(18446744073709551557ULL));
  CHECK_FALSE(is_prime_u64(3215031751ULL));  // strong pseudoprime to 2, 3, 5, 7
}

TEST_CASE("p-adic valuation") {
  CHECK(p_adic_valuation(8, 2) == 3);
  CHECK(p_adic_valuation(10, 3) == 0);
  CHECK(p_adic_valuation(BigRational(9, 2), 2) == -1);
  CHECK(p_adic_valuation(BigRational(-75, 8), 5) == 2);
  CHECK_THROWS_AS(p_adic_valuation(0, 2), DomainError);
  CHECK_THROWS_AS(p_adic_valuation(12, 4), UsageError);
}

TEST_CASE("property: valuation is additive on coprime products") {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<std::int64_t> dist(1, 1'000'000);
  const auto& primes = table().primes();
  for (int trial = 0; trial < 2000; ++trial) {
    const std::int64_t a = dist(rng), b = dist(rng);
    if (std::gcd(a, b) != 1) continue;
    const std::int64_t p = primes[trial % 50];
    const BigInt ab = BigInt(a) * BigInt(b);
    CHECK(p_adic_valuation(ab, p) == p_adic_valuation(a, p) + p_adic_valuation(b, p));
    CHECK(p_adic_valuation(ab, p) == oracle::valuation(ab, p));
  }
}

TEST_CASE("largest prime at most n and next prime") {
  const auto& t = table();
  CHECK(largest_prime_leq(10, t) == 7);
  CHECK(largest_prime_leq(27, t) == 23);
  CHECK(largest_prime_leq(4'021'520, t) == 4'021'519);
  CHECK(next_prime(7, t) == 11);
  CHECK(next_prime(2, t) == 3);
  CHECK(next_prime(2'010'760, t) == 2'010'881);
  const PrimeTable small(2'100);  // just past sqrt(4021520)
  CHECK(largest_prime_leq(4'021'520, small) == 4'021'519);
  CHECK(next_prime(2'010'760, small) == 2'010'881);
}

TEST_CASE("prime power decomposition") {
  CHECK(prime_power_decompose(8) == PrimePower{2, 3, 8});
  CHECK(prime_power_decompose(25) == PrimePower{5, 2, 25});
  CHECK_FALSE(prime_power_decompose(10).has_value());
  CHECK(prime_power_decompose(7) == PrimePower{7, 1, 7});
  CHECK(prime_power_decompose(1LL << 62) == PrimePower{2, 62, 1LL << 62});
  CHECK(prime_power_decompose(999'983LL * 999'983LL) == PrimePower{999'983, 2, 999'983LL * 999'983LL});
}

TEST_CASE("property: prime power round trip") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> dist(2, 1'000'000'000'000LL);
  for (int i = 0; i < 3000; ++i) {
    const std::int64_t n = i < 1000 ? i + 2 : dist(rng);
    if (const auto pp = prime_power_decompose(n)) {
      BigInt v = 1;
      for (int e = 0; e < pp->exponent; ++e) v *= pp->base;
      CHECK(v == n);
      CHECK(is_prime_u64(static_cast<std::uint64_t>(pp->base)));
    }
  }
  for (std::int64_t p : {2, 3, 5, 7, 101, 9973})
    for (std::int64_t v = p, e = 1; v <= INT64_MAX / p; v *= p, ++e)
      CHECK(prime_power_decompose(v) == PrimePower{p, static_cast<int>(e), v});
}

TEST_CASE("bertrand witnesses") {
  const auto& t = table();
  CHECK(bertrand_witness(10, t) == 7);
  CHECK(bertrand_witness(4, t) == 3);
  CHECK(bertrand_witness(100, t) == 97);
  CHECK_THROWS_AS(bertrand_witness(2, t), UsageError);
  const auto r = bertrand_sweep(100'000, t);
  CHECK(r.outcome == Outcome::verified);
}

TEST_CASE("composite-run witnesses") {
  const auto& t = table();
  CHECK(theorem2_witness(27, 3, t) == 13);
  CHECK(theorem2_witness(26, 2, t) == 13);
  // 114..121: the largest prime factor exceeding 16 is 59 (| 118).
  CHECK(theorem2_witness(121, 8, t) == 59);
  CHECK_THROWS_AS(theorem2_witness(10, 2, t), UsageError);
  CHECK_THROWS_AS(theorem2_witness(121, 9, t), UsageError);
  CHECK_THROWS_AS(theorem2_witness(121, 1, t), UsageError);
}

TEST_CASE("composite-run witnesses match brute force") {
  const auto& t = table();
  for (std::int64_t n = 11; n <= 400; ++n) {
    std::int64_t big_p = n;
    while (!oracle::is_prime(big_p)) --big_p;
    for (std::int64_t k = 2; k <= n - big_p; ++k) {
      std::int64_t best = 0;
      for (std::int64_t i = 0; i < k; ++i)
        for (std::int64_t p : oracle::prime_divisors(n - i))
          if (p > 2 * k) best = std::max(best, p);
      CHECK(theorem2_witness(n, k, t) == best);
    }
  }
}

TEST_CASE("composite-run sweeps") {
  const auto& t = table();
  CHECK(theorem2_sweep(11, t).outcome == Outcome::verified);
  CHECK(theorem2_sweep(11, t).parameters.at("cases") == 0);
  CHECK(theorem2_sweep(1000, t).outcome == Outcome::verified);
  CHECK(theorem2_sweep(20'000, t, 1) == theorem2_sweep(20'000, t, 3));
}

TEST_CASE("grimm assignments") {
  const auto& t = table();
  const auto a = grimm_assignment(26, 3, t);
  CHECK(a == std::vector<std::int64_t>{2, 5, 3});
  CHECK(a == *oracle::grimm(26, 3));
  CHECK(grimm_assignment(91, 1, t) == std::vector<std::int64_t>{7});
  const auto b = grimm_assignment(121, 8, t);
  CHECK(b == *oracle::grimm(121, 8));
  CHECK(std::set<std::int64_t>(b.begin(), b.end()).size() == 8);
  for (std::size_t i = 0; i < b.size(); ++i) CHECK((121 - static_cast<std::int64_t>(i)) % b[i] == 0);
  CHECK_THROWS_AS(grimm_assignment(24, 2, t), UsageError);  // 23 is prime
}

TEST_CASE("grimm assignments match brute force on composite runs") {
  const auto& t = table();
  for (std::int64_t n = 4; n <= 2000; ++n) {
    for (std::int64_t k = 1; k <= n - 1 && !oracle::is_prime(n - k + 1); ++k) {
      const auto expect = oracle::grimm(n, k);
      REQUIRE(expect.has_value());
      CHECK(grimm_assignment(n, k, t) == *expect);
    }
  }
}

TEST_CASE("bipartite matching") {
  BipartiteMatcher m(3, 3);
  m.add_edge(0, 0);
  m.add_edge(1, 0);
  m.add_edge(1, 1);
  m.add_edge(2, 1);
  CHECK(m.solve({0, 1, 2}) == 2);
  m.add_edge(2, 2);
  CHECK(m.solve({0, 1, 2}) == 3);
}

TEST_CASE("catalan and pillai scans") {
  const PrimeTable t(2'000);
  CHECK(catalan_scan(10, t) == std::vector<PowerPair>{{8, 9}});
  CHECK(catalan_scan(1'000'000, t) == std::vector<PowerPair>{{8, 9}});
  CHECK(pillai_scan(30, t) == std::vector<PowerPair>{{25, 27}});
  CHECK(pillai_scan(1'000'000, t) == std::vector<PowerPair>{{25, 27}});
  CHECK_THROWS_AS(catalan_scan(8, t), UsageError);
  CHECK_THROWS_AS(pillai_scan(26, t), UsageError);
  CHECK(catalan_report(1'000'000, t).outcome == Outcome::verified);
  CHECK(pillai_report(1'000'000, t).outcome == Outcome::verified);
}

TEST_CASE("property: scans are independent of enumeration order") {
  const PrimeTable t(100'000);
  for (std::int64_t limit : {100LL, 10'000LL, 1'000'000LL, 10'000'000'000LL}) {
    CHECK(proper_prime_powers(limit, t, EnumerationOrder::by_base) ==
          proper_prime_powers(limit, t, EnumerationOrder::by_exponent));
    CHECK(catalan_scan(limit, t, EnumerationOrder::by_base) ==
          catalan_scan(limit, t, EnumerationOrder::by_exponent));
    CHECK(pillai_scan(limit, t, EnumerationOrder::by_base) ==
          pillai_scan(limit, t, EnumerationOrder::by_exponent));
  }
  std::vector<std::int64_t> brute;
  for (std::int64_t x = 4; x <= 10'000; ++x) {
    const auto pp = prime_power_decompose(x);
    if (pp && pp->proper()) brute.push_back(x);
  }
  CHECK(proper_prime_powers(10'000, t) == brute);
}

TEST_CASE("product prime factor bound") {
  const auto& t = table();
  CHECK(mkbound_check(17, 3, t).values == std::vector<std::vector<std::int64_t>>{{19}});
  CHECK(mkbound_check(24, 4, t).values == std::vector<std::vector<std::int64_t>>{{13}});
  CHECK_FALSE(mkbound_admissible(16, 3));
  CHECK_THROWS_AS(mkbound_check(16, 3, t), UsageError);
  CHECK(mkbound_sweep(10'000, 50, t).outcome == Outcome::verified);
}

TEST_CASE("schoenfeld gap windows") {
  const auto& t = table();
  CHECK(schoenfeld_window_check(2'010'760, 2'010'761, t).outcome == Outcome::verified);
  CHECK(schoenfeld_window_check(2'010'760, 2'110'760, t).outcome == Outcome::verified);
  CHECK_THROWS_AS(schoenfeld_window_check(5, 4, t), UsageError);
}

TEST_CASE("large-n claim") {
  const auto& t = table();
  const auto r = prop_nthlargen_claim_check(4'021'520, t);
  CHECK(r.outcome == Outcome::verified);
  CHECK(r.flags.empty());
  const auto e = prop_nthlargen_claim_check(100, t);
  CHECK(e.outcome == Outcome::verified);
  CHECK(e.flags == std::vector<std::string>{"exploratory"});
  CHECK(e.parameters.at("P") == 97);
}

TEST_CASE("k-th prime bound") {
  CHECK(kth_prime_check(50'000, table()).outcome == Outcome::verified);
}

TEST_CASE("witness report json round trip") {
  WitnessReport r;
  r.claim_id = ClaimId::grimm;
  r.parameters = {{"n", 26}, {"k", 3}};
  r.outcome = Outcome::witness;
  r.values = {{2, 5, 3}};
  r.search_bound = 26;
  r.flags = {"x"};
  r.notes = {"note"};
  const nlohmann::json j = r;
  CHECK(j.get<WitnessReport>() == r);
  CHECK(nlohmann::json::parse(j.dump()).get<WitnessReport>() == r);
}
