#include <algorithm>
#include <string>

#include "binatoms/error.hpp"
#include "binatoms/parallel.hpp"
#include "binatoms/valmatrix/valuation_matrix.hpp"

namespace binatoms::valmatrix {
namespace {

[[noreturn]] void span_mismatch(const char* which, std::int64_t n, std::int64_t got,
                                std::int64_t expected) {
  WitnessReport r;
  r.claim_id = ClaimId::rank_theorem;
  r.parameters = {{"n", n}, {"dimension", got}, {"expected", expected}};
  r.outcome = Outcome::counterexample;
  r.values = {{n, got, expected}};
  r.notes = {std::string(which) + " span dimension mismatch"};
  throw CounterexampleError(r);
}

bool is_ones(const BigIntVector& v) {
  return (v.array() == BigInt(1)).all();
}

std::vector<Eigen::Index> merged(std::vector<Eigen::Index> a,
                                 const std::vector<Eigen::Index>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  return a;
}

}  // namespace

std::int64_t inner_span_dimension(const ValuationMatrix& a) {
  const std::int64_t n = a.n();
  const std::int64_t big_p = a.largest_prime();
  const std::int64_t dim = exact_rank(select_columns(a.matrix(), inner_columns(n, big_p)));
  if (dim != 2 * big_p - n - 1) span_mismatch("inner", n, dim, 2 * big_p - n - 1);
  return dim;
}

std::int64_t inner_span_dimension(std::int64_t n, const numtheory::PrimeTable& table) {
  return inner_span_dimension(ValuationMatrix(n, table));
}

std::int64_t outer_span_dimension(const ValuationMatrix& a) {
  const std::int64_t n = a.n();
  const std::int64_t big_p = a.largest_prime();
  const auto cols = outer_columns(n, big_p);
  const std::int64_t dim = cols.empty() ? 0 : exact_rank(select_columns(a.matrix(), cols));
  if (dim != 2 * (n - big_p)) span_mismatch("outer", n, dim, 2 * (n - big_p));
  return dim;
}

std::int64_t outer_span_dimension(std::int64_t n, const numtheory::PrimeTable& table) {
  return outer_span_dimension(ValuationMatrix(n, table));
}

RankCheck check_rank_theorem(std::int64_t n, const numtheory::PrimeTable& table) {
  RankCheck c;
  c.n = n;
  std::optional<ValuationMatrix> built;
  try {
    built.emplace(n, table);
    c.column_grouping = true;
  } catch (const CounterexampleError&) {
    return c;
  }
  const ValuationMatrix& a = *built;
  const std::int64_t big_p = a.largest_prime();

  const RankResult res = exact_rank_and_kernel(a.matrix());
  c.rank = res.rank;
  c.kernel_is_ones = res.kernel_basis.size() == 1 && is_ones(res.kernel_basis.front());
  c.row_sums_zero = a.row_sums_zero();

  const auto inner = inner_columns(n, big_p);
  c.inner_dimension = exact_rank(select_columns(a.matrix(), inner));
  bool spans_ok = *c.inner_dimension == 2 * big_p - n - 1;
  if (n != big_p) {
    const auto outer = outer_columns(n, big_p);
    c.outer_dimension = exact_rank(select_columns(a.matrix(), outer));
    c.union_rank = exact_rank(select_columns(a.matrix(), merged(inner, outer)));
    spans_ok = spans_ok && *c.outer_dimension == 2 * (n - big_p) && *c.union_rank == n - 1;
  }
  c.ok = c.rank == n - 1 && c.kernel_is_ones && c.row_sums_zero && spans_ok;
  return c;
}

WitnessReport verify_rank_theorem(std::int64_t n_lo, std::int64_t n_hi,
                                  const numtheory::PrimeTable& table, unsigned threads) {
  if (n_lo < 2 || n_hi < n_lo)
    throw UsageError("verify_rank_theorem needs 2 <= n_lo <= n_hi");
  WitnessReport report;
  report.claim_id = ClaimId::rank_theorem;
  report.search_bound = n_hi;

  std::vector<RankCheck> checks(static_cast<std::size_t>(n_hi - n_lo + 1));
  // Largest n first so the expensive items start early.
  const std::int64_t count = n_hi - n_lo + 1;
  parallel_for(count, threads, [&](std::int64_t i) {
    const std::int64_t n = n_hi - i;
    checks[static_cast<std::size_t>(n - n_lo)] = check_rank_theorem(n, table);
  });

  std::int64_t composites = 0;
  for (const auto& c : checks) {
    if (c.outer_dimension) ++composites;
    if (!c.ok)
      report.values.push_back({c.n, c.rank, c.inner_dimension.value_or(-1),
                               c.outer_dimension.value_or(-1), c.union_rank.value_or(-1)});
    if (is_proper_power_of_two(c.n))
      report.notes.push_back("n=" + std::to_string(c.n) + ": exceptional R_{" +
                             std::to_string(c.n) + ",2} = {1,2}");
    if (c.n == 9) report.notes.push_back("n=9: exceptional R_{9,3} = {1,2,3,4}");
  }
  report.parameters = {{"n_lo", n_lo}, {"n_hi", n_hi}, {"composites", composites}};
  report.outcome = report.values.empty() ? Outcome::verified : Outcome::counterexample;
  return report;
}

std::vector<std::int64_t> admissible_band_widths(std::int64_t n, std::int64_t p,
                                                 const numtheory::PrimeTable& table) {
  const auto info = residue_info(n, p);
  const std::int64_t big_p = numtheory::largest_prime_leq(n, table);
  std::vector<std::int64_t> ks;
  for (std::int64_t k = info.r_np + 1; k <= n - big_p && 2 * k <= p + info.r_np - 1; ++k)
    ks.push_back(k);
  return ks;
}

WitnessReport p_block_structure_check(std::int64_t n, std::int64_t p,
                                      std::optional<std::int64_t> k,
                                      const numtheory::PrimeTable& table) {
  const PBlock b = build_p_block(n, p);
  const std::int64_t r_np = n % p;
  WitnessReport report;
  report.claim_id = ClaimId::pblock_structure;
  report.search_bound = n;

  std::vector<std::int64_t> widths = admissible_band_widths(n, p, table);
  if (k) {
    if (std::find(widths.begin(), widths.end(), *k) == widths.end())
      throw UsageError("band width k = " + std::to_string(*k) +
                       " is not admissible for n = " + std::to_string(n) +
                       ", p = " + std::to_string(p));
    widths = {*k};
  }

  auto violation = [&](const std::string& what, std::vector<std::int64_t> at) {
    report.values.push_back(std::move(at));
    report.notes.push_back(what);
  };

  // Entry patterns hold for the rows 1..p-r_np-1.
  const std::int64_t v = numtheory::valuation(n - r_np, p);
  std::int64_t checked_entries = 0;
  for (std::int64_t r = 1; r <= p - r_np - 1; ++r) {
    for (std::int64_t j = 0; j <= std::min(p - 1, n - 1); ++j) {
      const std::int64_t expected = j == r_np ? -v : (j == r + r_np ? v : 0);
      ++checked_entries;
      if (b.at(r, j) != expected) violation("left pattern (p,r,j)", {p, r, j});
    }
    for (std::int64_t j = std::max<std::int64_t>(0, n - (p - 1)); j <= n - 1; ++j) {
      const std::int64_t expected = j == n - p + r ? 1 : 0;
      ++checked_entries;
      if (b.at(r, j) != expected) violation("right pattern (p,r,j)", {p, r, j});
    }
  }

  for (std::int64_t w : widths) {
    const std::int64_t dim = exact_rank(select_columns(b.entries, outer_band(n, r_np, w - 1)));
    if (dim != 2 * (w - r_np)) violation("band dimension (p,k,dim)", {p, w, dim});
    if (r_np > 0) {
      const IntMatrix zero_band = select_columns(b.entries, outer_band(n, 0, r_np - 1));
      if (!zero_band.isZero()) violation("nonzero outer band (p,r_np)", {p, r_np});
    }
  }

  report.parameters = {{"n", n},
                       {"p", p},
                       {"r_np", r_np},
                       {"entries_checked", checked_entries},
                       {"band_widths_checked", static_cast<std::int64_t>(widths.size())}};
  report.outcome = report.values.empty() ? Outcome::verified : Outcome::counterexample;
  return report;
}

}  // namespace binatoms::valmatrix
