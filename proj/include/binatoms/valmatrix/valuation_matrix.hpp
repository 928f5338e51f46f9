#pragma once

// The valuation matrix of n: one row per (p, r) with p <= n prime and r in
// the row set R_{n,p}, one column per j = 0..n-1, entry
// v_p(n + r - j) - v_p(n - j).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "binatoms/numtheory/primes.hpp"
#include "binatoms/numtheory/witness_report.hpp"
#include "binatoms/valmatrix/exact_rank.hpp"

namespace binatoms::valmatrix {

struct ResidueInfo {
  std::int64_t n;
  std::int64_t p;
  std::int64_t r_np;  ///< n mod p
};

ResidueInfo residue_info(std::int64_t n, std::int64_t p);

struct RowSet {
  std::int64_t n;
  std::int64_t p;
  std::vector<std::int64_t> rows;
  /// True for the two enlarged sets (n = 2^s with p = 2, and n = 9 with p = 3).
  bool exceptional = false;
};

RowSet row_set(std::int64_t n, std::int64_t p);

/// n = 2^s with s > 1, tested on the bit pattern.
bool is_proper_power_of_two(std::int64_t n);

struct RowLabel {
  std::int64_t p;
  std::int64_t r;
  friend bool operator==(const RowLabel&, const RowLabel&) = default;
};

struct PBlock {
  std::int64_t n = 0;
  std::int64_t p = 0;
  RowSet row_set;
  IntMatrix entries;  ///< |R_{n,p}| x n
  std::vector<RowLabel> row_labels;

  /// Entry in row r (an element of the row set, not an index) and column j.
  std::int64_t at(std::int64_t r, Eigen::Index j) const;
};

PBlock build_p_block(std::int64_t n, std::int64_t p);

/// Entry formula, evaluated directly; independent of any block layout.
std::int64_t valuation_entry(std::int64_t n, std::int64_t p, std::int64_t r, std::int64_t j);

class ValuationMatrix {
 public:
  ValuationMatrix(std::int64_t n, const numtheory::PrimeTable& table);

  std::int64_t n() const noexcept { return n_; }
  /// Largest prime <= n.
  std::int64_t largest_prime() const noexcept { return largest_prime_; }
  /// One block per prime <= n in ascending order; blocks may have zero rows.
  const std::vector<PBlock>& blocks() const noexcept { return blocks_; }
  const PBlock& block(std::int64_t p) const;

  /// All blocks stacked, ascending p then ascending r.
  const IntMatrix& matrix() const noexcept { return matrix_; }
  const std::vector<RowLabel>& row_labels() const noexcept { return labels_; }
  Eigen::Index rows() const noexcept { return matrix_.rows(); }
  Eigen::Index cols() const noexcept { return matrix_.cols(); }

  bool row_sums_zero() const;

  /// Same matrix without the extra rows of the enlarged row sets.
  IntMatrix without_exceptional_rows() const;

 private:
  std::int64_t n_;
  std::int64_t largest_prime_;
  std::vector<PBlock> blocks_;
  IntMatrix matrix_;
  std::vector<RowLabel> labels_;
};

// Column groups. With P the largest prime <= n, the inner columns are
// n-P+1 .. P-1 and the outer columns are 0 .. n-P-1 together with P .. n-1.
std::vector<Eigen::Index> inner_columns(std::int64_t n, std::int64_t big_p);
std::vector<Eigen::Index> outer_columns(std::int64_t n, std::int64_t big_p);
/// Columns s..t and n-(t+1)..n-(s+1): the symmetric outer band.
std::vector<Eigen::Index> outer_band(std::int64_t n, std::int64_t s, std::int64_t t);

template <class Derived>
IntMatrix select_columns(const Eigen::MatrixBase<Derived>& m,
                         const std::vector<Eigen::Index>& cols) {
  return m(Eigen::all, cols);
}

/// Rank of the inner columns of A_n; throws CounterexampleError unless it
/// equals 2P - n - 1.
std::int64_t inner_span_dimension(const ValuationMatrix& a);
std::int64_t inner_span_dimension(std::int64_t n, const numtheory::PrimeTable& table);

/// Rank of the outer columns of A_n; throws CounterexampleError unless it
/// equals 2(n - P). Zero for prime n.
std::int64_t outer_span_dimension(const ValuationMatrix& a);
std::int64_t outer_span_dimension(std::int64_t n, const numtheory::PrimeTable& table);

struct RankCheck {
  std::int64_t n = 0;
  std::int64_t rank = 0;
  bool kernel_is_ones = false;
  bool row_sums_zero = false;
  bool column_grouping = false;  ///< P - 1 > n - P
  std::optional<std::int64_t> inner_dimension;
  std::optional<std::int64_t> outer_dimension;
  std::optional<std::int64_t> union_rank;
  bool ok = false;
};

RankCheck check_rank_theorem(std::int64_t n, const numtheory::PrimeTable& table);

/// rank(A_n) = n-1, kernel spanned by the all-ones vector, vanishing row
/// sums and (for composite n) the inner/outer span dimensions, for every n
/// in [n_lo, n_hi].
WitnessReport verify_rank_theorem(std::int64_t n_lo, std::int64_t n_hi,
                                  const numtheory::PrimeTable& table,
                                  unsigned threads = 1);

/// Zero/nonzero pattern of the leftmost p and rightmost p-1 columns of the
/// p-block, and the outer band dimension 2(k - r_np) for admissible k. With
/// no k given every admissible k is checked.
WitnessReport p_block_structure_check(std::int64_t n, std::int64_t p,
                                      std::optional<std::int64_t> k,
                                      const numtheory::PrimeTable& table);

/// Admissible k for the band check: r+1 <= k <= min{n-P, (p+r-1)/2}.
std::vector<std::int64_t> admissible_band_widths(std::int64_t n, std::int64_t p,
                                                 const numtheory::PrimeTable& table);

struct ExceptionalRowsDiagnostic {
  std::int64_t n;
  std::int64_t rank_with;
  std::int64_t rank_without;
  bool has_exceptional_rows;
};

ExceptionalRowsDiagnostic exceptional_rows_diagnostic(std::int64_t n,
                                                      const numtheory::PrimeTable& table);

// Export formats.
nlohmann::ordered_json to_json(const ValuationMatrix& a);
std::string to_csv(const ValuationMatrix& a);
std::string to_text(const ValuationMatrix& a);

}  // namespace binatoms::valmatrix
