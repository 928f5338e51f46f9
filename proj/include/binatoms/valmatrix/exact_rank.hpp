#pragma once

// Exact rank and kernel of integer matrices.
//
// Rows are inserted one at a time into an integer echelon basis. Each
// elimination step is fraction-free (row <- a*row - b*pivot with a, b
// coprime) and is followed by division by the row content, so only primitive
// integer rows are stored. The basis is templated on its scalar: a checked
// int64 pass runs first and the computation restarts on BigInt if any
// product or difference would overflow.

#include <Eigen/Dense>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "binatoms/bigint.hpp"

namespace binatoms {

using IntMatrix =
    Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;
using BigIntVector = Eigen::Matrix<BigInt, Eigen::Dynamic, 1>;

struct RankResult {
  Eigen::Index rank = 0;
  std::vector<Eigen::Index> pivot_columns;
  /// Integer vectors with content 1 and positive first nonzero entry; one per
  /// non-pivot column.
  std::vector<BigIntVector> kernel_basis;
};

namespace detail {

struct Overflow {};

template <class Scalar>
struct EliminationOps;

template <>
struct EliminationOps<std::int64_t> {
  static std::int64_t combine(std::int64_t a, std::int64_t x, std::int64_t b,
                              std::int64_t y) {
    std::int64_t ax, by, r;
    if (__builtin_mul_overflow(a, x, &ax) || __builtin_mul_overflow(b, y, &by) ||
        __builtin_sub_overflow(ax, by, &r))
      throw Overflow{};
    return r;
  }
  static std::int64_t gcd(std::int64_t a, std::int64_t b) {
    if (a == INT64_MIN || b == INT64_MIN) throw Overflow{};
    return std::gcd(a, b);
  }
};

template <>
struct EliminationOps<BigInt> {
  static BigInt combine(const BigInt& a, const BigInt& x, const BigInt& b,
                        const BigInt& y) {
    return a * x - b * y;
  }
  static BigInt gcd(const BigInt& a, const BigInt& b) {
    return boost::multiprecision::gcd(a, b);
  }
};

}  // namespace detail

/// Row echelon basis over the integers with primitive rows.
template <class Scalar>
class FractionFreeEchelon {
 public:
  using Row = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;
  using Ops = detail::EliminationOps<Scalar>;

  explicit FractionFreeEchelon(Eigen::Index cols)
      : cols_(cols), pivot_row_of_col_(static_cast<std::size_t>(cols), -1) {}

  /// Reduces `row` against the basis; keeps it if a new pivot appears.
  bool insert(Row row) {
    Eigen::Index c = 0;
    for (;;) {
      while (c < cols_ && row[c] == 0) ++c;
      if (c == cols_) return false;
      const auto slot = pivot_row_of_col_[static_cast<std::size_t>(c)];
      if (slot < 0) {
        make_primitive(row, c);
        if (row[c] < 0) row = -row;
        pivot_row_of_col_[static_cast<std::size_t>(c)] =
            static_cast<Eigen::Index>(rows_.size());
        rows_.push_back(std::move(row));
        pivots_.push_back(c);
        return true;
      }
      const Row& pivot = rows_[static_cast<std::size_t>(slot)];
      Scalar a = pivot[c];
      Scalar b = row[c];
      const Scalar g = Ops::gcd(a, b);
      a /= g;
      b /= g;
      for (Eigen::Index j = c; j < cols_; ++j)
        row[j] = Ops::combine(a, row[j], b, pivot[j]);
      make_primitive(row, c + 1);
      ++c;
    }
  }

  Eigen::Index rank() const { return static_cast<Eigen::Index>(rows_.size()); }
  Eigen::Index cols() const { return cols_; }
  const std::vector<Row>& rows() const { return rows_; }
  const std::vector<Eigen::Index>& pivots() const { return pivots_; }

 private:
  void make_primitive(Row& row, Eigen::Index from) const {
    Scalar g = 0;
    for (Eigen::Index j = from; j < cols_; ++j) {
      if (row[j] != 0) g = Ops::gcd(g, row[j]);
      if (g == 1) return;
    }
    if (g > 1)
      for (Eigen::Index j = from; j < cols_; ++j) row[j] /= g;
  }

  Eigen::Index cols_;
  std::vector<Eigen::Index> pivot_row_of_col_;
  std::vector<Row> rows_;
  std::vector<Eigen::Index> pivots_;
};

namespace detail {

template <class Scalar, class Derived>
FractionFreeEchelon<Scalar> echelon(const Eigen::MatrixBase<Derived>& m) {
  FractionFreeEchelon<Scalar> basis(m.cols());
  typename FractionFreeEchelon<Scalar>::Row row(m.cols());
  // Last row first: for valuation matrices this starts with the sparse,
  // nearly unimodular rows of the largest primes.
  for (Eigen::Index i = m.rows() - 1; i >= 0; --i) {
    if (basis.rank() == m.cols()) break;
    for (Eigen::Index j = 0; j < m.cols(); ++j) row[j] = Scalar(m(i, j));
    basis.insert(row);
  }
  return basis;
}

template <class Scalar>
std::vector<BigIntVector> kernel_from_echelon(const FractionFreeEchelon<Scalar>& basis) {
  const Eigen::Index n = basis.cols();
  std::vector<Eigen::Index> slot_of_col(static_cast<std::size_t>(n), -1);
  for (std::size_t s = 0; s < basis.pivots().size(); ++s)
    slot_of_col[static_cast<std::size_t>(basis.pivots()[s])] = static_cast<Eigen::Index>(s);

  std::vector<BigIntVector> kernel;
  for (Eigen::Index free_col = 0; free_col < n; ++free_col) {
    if (slot_of_col[static_cast<std::size_t>(free_col)] >= 0) continue;
    std::vector<BigRational> x(static_cast<std::size_t>(n), BigRational(0));
    x[static_cast<std::size_t>(free_col)] = 1;
    // Each pivot row is zero left of its pivot, so solve right to left.
    for (Eigen::Index c = n - 1; c >= 0; --c) {
      const auto slot = slot_of_col[static_cast<std::size_t>(c)];
      if (slot < 0) continue;
      const auto& row = basis.rows()[static_cast<std::size_t>(slot)];
      BigRational acc = 0;
      for (Eigen::Index j = c + 1; j < n; ++j)
        if (row[j] != 0 && x[static_cast<std::size_t>(j)] != 0)
          acc += BigRational(BigInt(row[j])) * x[static_cast<std::size_t>(j)];
      x[static_cast<std::size_t>(c)] = -acc / BigRational(BigInt(row[c]));
    }
    BigInt lcm = 1;
    for (const auto& q : x) lcm = boost::multiprecision::lcm(lcm, denominator_of(q));
    BigIntVector v(n);
    BigInt content = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const BigRational scaled = x[static_cast<std::size_t>(j)] * BigRational(lcm);
      v[j] = numerator_of(scaled);
      content = boost::multiprecision::gcd(content, v[j]);
    }
    Eigen::Index lead = 0;
    while (v[lead] == 0) ++lead;
    if (v[lead] < 0) content = -content;
    for (Eigen::Index j = 0; j < n; ++j) v[j] /= content;
    kernel.push_back(std::move(v));
  }
  return kernel;
}

}  // namespace detail

/// Returns true iff m * v == 0, computed exactly.
template <class Derived>
bool annihilates(const Eigen::MatrixBase<Derived>& m, const BigIntVector& v) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    BigInt acc = 0;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) acc += BigInt(m(i, j)) * v[j];
    if (acc != 0) return false;
  }
  return true;
}

template <class Derived>
Eigen::Index exact_rank(const Eigen::MatrixBase<Derived>& m) {
  if (m.cols() == 0 || m.rows() == 0) return 0;
  try {
    return detail::echelon<std::int64_t>(m).rank();
  } catch (const detail::Overflow&) {
    return detail::echelon<BigInt>(m).rank();
  }
}

/// Rank plus a normalized kernel basis; every basis vector is re-checked
/// against the input.
template <class Derived>
RankResult exact_rank_and_kernel(const Eigen::MatrixBase<Derived>& m) {
  RankResult result;
  auto fill = [&](const auto& basis) {
    result.rank = basis.rank();
    result.pivot_columns = basis.pivots();
    std::sort(result.pivot_columns.begin(), result.pivot_columns.end());
    result.kernel_basis = detail::kernel_from_echelon(basis);
  };
  try {
    fill(detail::echelon<std::int64_t>(m));
  } catch (const detail::Overflow&) {
    fill(detail::echelon<BigInt>(m));
  }
  for (const auto& v : result.kernel_basis)
    if (!annihilates(m, v)) throw std::logic_error("kernel vector failed re-verification");
  return result;
}

}  // namespace binatoms
