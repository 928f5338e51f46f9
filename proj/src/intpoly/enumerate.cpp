#include <algorithm>
#include <string>

#include "binatoms/error.hpp"
#include "binatoms/intpoly/intpoly.hpp"
#include "binatoms/parallel.hpp"
#include "binatoms/valmatrix/valuation_matrix.hpp"

namespace binatoms::intpoly {
namespace {

void require_budget(std::int64_t n, int m, std::int64_t budget) {
  if (n < 2 || m < 1) throw UsageError("enumeration needs n >= 2 and m >= 1");
  const std::int64_t count = candidate_count(n, m);
  if (count > budget)
    throw ResourceError("(m+1)^n = " +
                        (count == INT64_MAX ? std::string("overflow") : std::to_string(count)) +
                        " candidates for n = " + std::to_string(n) + ", m = " +
                        std::to_string(m) + " exceeds the budget of " +
                        std::to_string(budget) + " (raise --budget)");
}

// Candidate number `index` in lexicographic order, k_0 most significant.
std::vector<int> decode(std::int64_t index, std::int64_t n, int m) {
  std::vector<int> k(static_cast<std::size_t>(n));
  for (std::int64_t i = n - 1; i >= 0; --i) {
    k[static_cast<std::size_t>(i)] = static_cast<int>(index % (m + 1));
    index /= m + 1;
  }
  return k;
}

// Enumerates [lo, hi) in lexicographic order, keeping pairs accepted by `keep`.
template <class Keep>
std::vector<FactorizationPair> scan_slab(std::int64_t n, int m, std::int64_t lo,
                                         std::int64_t hi, Keep&& keep) {
  std::vector<FactorizationPair> out;
  std::vector<int> k = decode(lo, n, m);
  for (std::int64_t idx = lo; idx < hi; ++idx) {
    std::vector<int> l(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) l[i] = m - k[i];
    if (k <= l) {
      ExponentVector kv(n, k);
      if (keep(kv)) {
        ExponentVector lv(n, std::move(l));
        if (is_integer_valued(kv) && is_integer_valued(lv))
          out.push_back({std::move(kv), std::move(lv), m});
      }
    }
    // odometer increment, last coordinate fastest
    for (std::int64_t i = n - 1; i >= 0; --i) {
      if (++k[static_cast<std::size_t>(i)] <= m) break;
      k[static_cast<std::size_t>(i)] = 0;
    }
  }
  return out;
}

template <class Keep>
std::vector<FactorizationPair> scan_all(std::int64_t n, int m, unsigned threads,
                                        Keep&& keep) {
  const std::int64_t total = candidate_count(n, m);
  constexpr std::int64_t kChunk = 4096;
  const std::int64_t chunks = (total + kChunk - 1) / kChunk;
  std::vector<std::vector<FactorizationPair>> parts(static_cast<std::size_t>(chunks));
  parallel_for(chunks, threads, [&](std::int64_t c) {
    parts[static_cast<std::size_t>(c)] =
        scan_slab(n, m, c * kChunk, std::min(total, (c + 1) * kChunk), keep);
  });
  std::vector<FactorizationPair> out;
  for (auto& p : parts)
    for (auto& f : p) out.push_back(std::move(f));
  return out;
}

BigRational binomial_power(std::int64_t s, std::int64_t n, int m) {
  BigRational b = 1;
  for (std::int64_t i = 0; i < n; ++i) b *= BigRational(s - i) / BigRational(n - i);
  BigRational r = 1;
  for (int i = 0; i < m; ++i) r *= b;
  return r;
}

// Independent check of a reported pair by evaluating it directly.
bool reverify(const FactorizationPair& pair) {
  const std::int64_t n = pair.k.n;
  for (std::int64_t i = 0; i < n; ++i)
    if (pair.k.k[static_cast<std::size_t>(i)] + pair.l.k[static_cast<std::size_t>(i)] != pair.m)
      return false;
  const std::int64_t deg = std::max(pair.k.degree(), pair.l.degree());
  for (std::int64_t s = 0; s <= deg; ++s) {
    const BigRational f = evaluate_candidate(pair.k, s);
    const BigRational g = evaluate_candidate(pair.l, s);
    if (!is_integral(f) || !is_integral(g)) return false;
    if (f * g != binomial_power(s, n, pair.m)) return false;
  }
  return true;
}

}  // namespace

std::vector<FactorizationPair> enumerate_factorizations_oracle(std::int64_t n, int m,
                                                               std::int64_t budget,
                                                               unsigned threads) {
  require_budget(n, m, budget);
  return scan_all(n, m, threads, [](const ExponentVector&) { return true; });
}

KernelEnumeration enumerate_factorizations_kernel(std::int64_t n, int m,
                                                  const numtheory::PrimeTable& table,
                                                  std::int64_t budget) {
  if (n < 2 || m < 1) throw UsageError("enumeration needs n >= 2 and m >= 1");
  const valmatrix::ValuationMatrix a(n, table);
  const RankResult res = exact_rank_and_kernel(a.matrix());
  KernelEnumeration out;
  out.kernel_dimension = static_cast<std::int64_t>(res.kernel_basis.size());

  const bool ones_span =
      res.kernel_basis.size() == 1 && (res.kernel_basis.front().array() == BigInt(1)).all();
  if (ones_span) {
    for (int c = 0; c <= m - c; ++c) {
      auto k = ExponentVector::constant(n, c);
      auto l = ExponentVector::constant(n, m - c);
      if (is_integer_valued(k) && is_integer_valued(l))
        out.pairs.push_back({std::move(k), std::move(l), m});
    }
    return out;
  }

  out.anomaly = true;
  require_budget(n, m, budget);
  const IntMatrix& mat = a.matrix();
  out.pairs = scan_all(n, m, 1, [&mat](const ExponentVector& kv) {
    IntVector x(kv.n);
    for (std::int64_t i = 0; i < kv.n; ++i) x[i] = kv.k[static_cast<std::size_t>(i)];
    return (mat * x).isZero();
  });
  return out;
}

IrreducibilityVerdict verify_absolute_irreducibility(std::int64_t n, int m_max,
                                                     const numtheory::PrimeTable& table,
                                                     std::int64_t budget, unsigned threads) {
  if (n < 2 || m_max < 1) throw UsageError("irreducibility check needs n >= 2, m_max >= 1");
  IrreducibilityVerdict v;
  v.n = n;
  v.m_max = m_max;
  bool oracle_everywhere = true;

  for (int m = 1; m <= m_max; ++m) {
    auto kernel = enumerate_factorizations_kernel(n, m, table, budget);
    if (kernel.anomaly) v.flags.push_back("kernel_anomaly_m" + std::to_string(m));
    std::vector<FactorizationPair> found = kernel.pairs;

    if (candidate_count(n, m) <= budget) {
      auto oracle = enumerate_factorizations_oracle(n, m, budget, threads);
      if (oracle != kernel.pairs) {
        v.flags.push_back("methods_disagree_m" + std::to_string(m));
        for (auto& p : oracle)
          if (std::find(found.begin(), found.end(), p) == found.end())
            found.push_back(std::move(p));
      }
    } else {
      oracle_everywhere = false;
    }

    for (const auto& p : found) {
      if (p.trivial()) continue;
      if (!reverify(p)) {
        v.flags.push_back("unverified_candidate_m" + std::to_string(m));
        continue;
      }
      v.irreducible = false;
      v.pairs = {p};
      v.method = oracle_everywhere ? Method::both : Method::kernel;
      return v;
    }
    for (auto& p : found) v.pairs.push_back(std::move(p));
  }
  v.method = oracle_everywhere ? Method::both : Method::kernel;
  return v;
}

nlohmann::ordered_json to_json(const FactorizationPair& p) {
  nlohmann::ordered_json j;
  j["k"] = p.k.k;
  j["l"] = p.l.k;
  return j;
}

nlohmann::ordered_json to_json(const IrreducibilityVerdict& v) {
  nlohmann::ordered_json j;
  j["n"] = v.n;
  j["m_max"] = v.m_max;
  j["status"] = v.irreducible ? "absolutely_irreducible_up_to" : "counterexample";
  j["method"] = std::string(to_string(v.method));
  nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
  for (const auto& p : v.pairs) pairs.push_back(to_json(p));
  j["pairs"] = std::move(pairs);
  j["flags"] = v.flags;
  return j;
}

IrreducibilityVerdict verdict_from_json(const nlohmann::json& j) {
  IrreducibilityVerdict v;
  v.n = j.at("n").get<std::int64_t>();
  v.m_max = j.at("m_max").get<int>();
  const auto status = j.at("status").get<std::string>();
  if (status == "absolutely_irreducible_up_to")
    v.irreducible = true;
  else if (status == "counterexample")
    v.irreducible = false;
  else
    throw UsageError("unknown verdict status: " + status);
  v.method = method_from_string(j.at("method").get<std::string>());
  for (const auto& pj : j.at("pairs")) {
    ExponentVector k(v.n, pj.at("k").get<std::vector<int>>());
    ExponentVector l(v.n, pj.at("l").get<std::vector<int>>());
    const int m = k.k.empty() ? 0 : k.k.front() + l.k.front();
    v.pairs.push_back({std::move(k), std::move(l), m});
  }
  v.flags = j.value("flags", std::vector<std::string>{});
  return v;
}

}  // namespace binatoms::intpoly
