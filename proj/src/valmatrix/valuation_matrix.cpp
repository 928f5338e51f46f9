#include "binatoms/valmatrix/valuation_matrix.hpp"

#include <algorithm>
#include <string>

#include "binatoms/error.hpp"

namespace binatoms::valmatrix {

using numtheory::valuation;

ResidueInfo residue_info(std::int64_t n, std::int64_t p) {
  if (p < 2 || p > n || !numtheory::is_prime_u64(static_cast<std::uint64_t>(p)))
    throw UsageError("residue_info needs a prime 2 <= p <= n, got n = " +
                     std::to_string(n) + ", p = " + std::to_string(p));
  return {n, p, n % p};
}

bool is_proper_power_of_two(std::int64_t n) { return n >= 4 && (n & (n - 1)) == 0; }

RowSet row_set(std::int64_t n, std::int64_t p) {
  const auto info = residue_info(n, p);
  RowSet rs{n, p, {}, false};
  if (p == 2 && is_proper_power_of_two(n)) {
    rs.rows = {1, 2};
    rs.exceptional = true;
  } else if (n == 9 && p == 3) {
    rs.rows = {1, 2, 3, 4};
    rs.exceptional = true;
  } else {
    for (std::int64_t r = 1; r <= p - info.r_np - 1; ++r) rs.rows.push_back(r);
  }
  return rs;
}

std::int64_t valuation_entry(std::int64_t n, std::int64_t p, std::int64_t r, std::int64_t j) {
  return valuation(n + r - j, p) - valuation(n - j, p);
}

std::int64_t PBlock::at(std::int64_t r, Eigen::Index j) const {
  const auto it = std::find(row_set.rows.begin(), row_set.rows.end(), r);
  if (it == row_set.rows.end())
    throw UsageError("row " + std::to_string(r) + " not in the row set of p = " +
                     std::to_string(p));
  return entries(it - row_set.rows.begin(), j);
}

PBlock build_p_block(std::int64_t n, std::int64_t p) {
  PBlock b;
  b.n = n;
  b.p = p;
  b.row_set = row_set(n, p);
  const auto rows = static_cast<Eigen::Index>(b.row_set.rows.size());
  b.entries.resize(rows, n);
  // v_p(n - j) is shared by every row of the block.
  IntVector base(n);
  for (Eigen::Index j = 0; j < n; ++j) base[j] = valuation(n - j, p);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const std::int64_t r = b.row_set.rows[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < n; ++j)
      b.entries(i, j) = valuation(n + r - j, p) - base[j];
    b.row_labels.push_back({p, r});
  }
  return b;
}

ValuationMatrix::ValuationMatrix(std::int64_t n, const numtheory::PrimeTable& table)
    : n_(n) {
  if (n < 2) throw UsageError("valuation matrix needs n >= 2, got " + std::to_string(n));
  largest_prime_ = numtheory::largest_prime_leq(n, table);
  if (!(largest_prime_ - 1 > n - largest_prime_)) {
    WitnessReport r;
    r.claim_id = ClaimId::rank_theorem;
    r.parameters = {{"n", n}, {"P", largest_prime_}};
    r.outcome = Outcome::counterexample;
    r.values = {{n, largest_prime_}};
    r.notes = {"column grouping P - 1 > n - P fails"};
    throw CounterexampleError(r);
  }

  Eigen::Index total = 0;
  for (std::int64_t p : table.primes_up_to(n)) {
    blocks_.push_back(build_p_block(n, p));
    total += blocks_.back().entries.rows();
  }
  matrix_.resize(total, n);
  Eigen::Index at = 0;
  for (const auto& b : blocks_) {
    matrix_.middleRows(at, b.entries.rows()) = b.entries;
    at += b.entries.rows();
    labels_.insert(labels_.end(), b.row_labels.begin(), b.row_labels.end());
  }
}

const PBlock& ValuationMatrix::block(std::int64_t p) const {
  for (const auto& b : blocks_)
    if (b.p == p) return b;
  throw UsageError(std::to_string(p) + " is not a prime <= " + std::to_string(n_));
}

bool ValuationMatrix::row_sums_zero() const {
  return matrix_.rows() == 0 || (matrix_.rowwise().sum().array() == 0).all();
}

IntMatrix ValuationMatrix::without_exceptional_rows() const {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < matrix_.rows(); ++i) {
    const auto& [p, r] = labels_[static_cast<std::size_t>(i)];
    if (r <= p - n_ % p - 1) keep.push_back(i);
  }
  return matrix_(keep, Eigen::all);
}

std::vector<Eigen::Index> inner_columns(std::int64_t n, std::int64_t big_p) {
  std::vector<Eigen::Index> cols;
  for (std::int64_t j = n - big_p + 1; j <= big_p - 1; ++j) cols.push_back(j);
  return cols;
}

std::vector<Eigen::Index> outer_columns(std::int64_t n, std::int64_t big_p) {
  if (n == big_p) return {};
  return outer_band(n, 0, n - big_p - 1);
}

std::vector<Eigen::Index> outer_band(std::int64_t n, std::int64_t s, std::int64_t t) {
  std::vector<Eigen::Index> cols;
  for (std::int64_t j = s; j <= t; ++j) cols.push_back(j);
  for (std::int64_t j = n - (t + 1); j <= n - (s + 1); ++j) cols.push_back(j);
  return cols;
}

ExceptionalRowsDiagnostic exceptional_rows_diagnostic(std::int64_t n,
                                                      const numtheory::PrimeTable& table) {
  const ValuationMatrix a(n, table);
  const IntMatrix reduced = a.without_exceptional_rows();
  return {n, exact_rank(a.matrix()), exact_rank(reduced), reduced.rows() != a.rows()};
}

}  // namespace binatoms::valmatrix
