#pragma once

// Candidate factors of powers of the binomial polynomial C(x, n).
//
// By unique factorization in Q[x], any factor of C(x,n)^m that lies in
// Int(Z) is, up to sign, prod_i ((x - i)/(n - i))^{k_i} with 0 <= k_i <= m.
// Such a candidate is stored as its exponent vector.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "binatoms/bigint.hpp"
#include "binatoms/numtheory/primes.hpp"

namespace binatoms::intpoly {

struct ExponentVector {
  std::int64_t n = 0;
  std::vector<int> k;  ///< size n

  ExponentVector() = default;
  ExponentVector(std::int64_t n, std::vector<int> k);

  static ExponentVector constant(std::int64_t n, int c);

  std::int64_t degree() const;
  bool is_constant() const;
  /// The exponent vector of the complementary factor of C(x,n)^m.
  ExponentVector complement(int m) const;

  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;
  friend auto operator<=>(const ExponentVector& a, const ExponentVector& b) {
    return a.k <=> b.k;
  }
};

struct FactorizationPair {
  ExponentVector k;
  ExponentVector l;
  int m = 0;

  bool trivial() const { return k.is_constant() && l.is_constant(); }
  friend bool operator==(const FactorizationPair&, const FactorizationPair&) = default;
};

/// prod_i ((s - i)/(n - i))^{k_i}, exactly.
BigRational evaluate_candidate(const ExponentVector& v, std::int64_t s);

/// True iff the candidate takes integer values at 0, 1, ..., degree; for a
/// polynomial of that degree this is equivalent to lying in Int(Z).
bool is_integer_valued(const ExponentVector& v);

/// Default ceiling on (m+1)^n candidates for exhaustive enumeration.
inline constexpr std::int64_t kDefaultCandidateBudget = 2'000'000;

/// (m+1)^n, saturated at INT64_MAX.
std::int64_t candidate_count(std::int64_t n, int m);

/// All unordered pairs (k, m - k) of integer-valued candidates with k <= m - k
/// lexicographically, in lexicographic order of k. Throws ResourceError when
/// (m+1)^n exceeds `budget`.
std::vector<FactorizationPair> enumerate_factorizations_oracle(
    std::int64_t n, int m, std::int64_t budget = kDefaultCandidateBudget,
    unsigned threads = 1);

struct KernelEnumeration {
  std::vector<FactorizationPair> pairs;
  std::int64_t kernel_dimension = 0;
  /// Set when the kernel is not spanned by the all-ones vector and the
  /// lattice slab had to be searched.
  bool anomaly = false;
};

/// Pairs whose exponent vectors are integer points of ker(A_n) in [0, m]^n,
/// each re-checked with is_integer_valued.
KernelEnumeration enumerate_factorizations_kernel(std::int64_t n, int m,
                                                  const numtheory::PrimeTable& table,
                                                  std::int64_t budget = kDefaultCandidateBudget);

enum class Method { oracle, kernel, both };

std::string_view to_string(Method m);
Method method_from_string(std::string_view s);

struct IrreducibilityVerdict {
  std::int64_t n = 0;
  int m_max = 0;
  bool irreducible = true;  ///< absolutely irreducible up to m_max
  Method method = Method::kernel;
  std::vector<FactorizationPair> pairs;  ///< counterexample, or all trivial pairs found
  std::vector<std::string> flags;
};

/// For each 1 <= m <= m_max all factorizations of C(x,n)^m found are
/// trivial. Uses both enumerations when the oracle fits the budget, the
/// kernel method otherwise.
IrreducibilityVerdict verify_absolute_irreducibility(std::int64_t n, int m_max,
                                                     const numtheory::PrimeTable& table,
                                                     std::int64_t budget = kDefaultCandidateBudget,
                                                     unsigned threads = 1);

nlohmann::ordered_json to_json(const FactorizationPair& p);
nlohmann::ordered_json to_json(const IrreducibilityVerdict& v);
IrreducibilityVerdict verdict_from_json(const nlohmann::json& j);

}  // namespace binatoms::intpoly
