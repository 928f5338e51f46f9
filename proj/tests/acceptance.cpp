// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if
// any criterion fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "binatoms/intpoly/intpoly.hpp"
#include "binatoms/numtheory/claims.hpp"
#include "binatoms/parallel.hpp"
#include "binatoms/valmatrix/valuation_matrix.hpp"

using namespace binatoms;

namespace {

// Runtime ceilings in seconds.
constexpr double kRankSweepLimit = 300;
constexpr double kOracleLimit = 60;
constexpr double kWitnessSweepLimit = 120;
constexpr double kScanLimit = 60;
constexpr double kWindowLimit = 120;

// Exact criteria: every comparison below is on integers, tolerance zero.
constexpr std::int64_t kRankMax = 300;
constexpr std::int64_t kOracleNMax = 7;
constexpr int kOracleMMax = 3;
constexpr std::int64_t kSweepMax = 100'000;
constexpr std::int64_t kScanMax = 1'000'000'000'000;
constexpr std::int64_t kGapLo = 2'010'760, kGapHi = 4'200'000;
constexpr std::int64_t kLargeLo = 4'021'520, kLargeHi = 4'121'520;

struct Verdict {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Verdict()>& run,
            double limit_s = 0) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict o;
  try {
    o = run();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(2);
  bool pass = o.pass;
  line << " [" << id << "] " << name << ": " << o.detail << " (" << secs << " s";
  if (limit_s > 0) {
    line << ", limit " << limit_s << " s";
    if (secs > limit_s) {
      pass = false;
      line << ", too slow";
    }
  }
  line << ')';
  if (!pass) ++failures;
  std::cout << (pass ? "PASS" : "FAIL") << line.str() << std::endl;
}

template <class T>
std::string show(const std::vector<T>& v) {
  std::ostringstream s;
  s << '(';
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  s << ')';
  return s.str();
}

std::vector<std::int64_t> row_at(const IntMatrix& m, Eigen::Index i,
                                 const std::vector<Eigen::Index>& cols) {
  std::vector<std::int64_t> out;
  for (auto j : cols) out.push_back(m(i, j));
  return out;
}

std::string capture(const std::string& command) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) throw std::runtime_error("cannot run " + command);
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  if (pclose(pipe) != 0) throw std::runtime_error("nonzero exit from " + command);
  return out;
}

}  // namespace

int main() {
  const numtheory::PrimeTable table(1'000'000);
  const unsigned threads = default_thread_count();

  report(1, "rank(A_n) = n-1 and ker(A_n) = span{1} for 2 <= n <= 300", [&] {
    int bad = 0;
    for (std::int64_t n = 2; n <= kRankMax; ++n) {
      const valmatrix::ValuationMatrix a(n, table);
      const auto r = exact_rank_and_kernel(a.matrix());
      const bool ones = r.kernel_basis.size() == 1 &&
                        (r.kernel_basis[0].array() == BigInt(1)).all();
      if (r.rank != n - 1 || !ones) ++bad;
    }
    return Verdict{bad == 0, std::to_string(kRankMax - 1) + " matrices, " +
                                 std::to_string(bad) + " failures"};
  }, kRankSweepLimit);

  report(2, "golden blocks", [&] {
    std::vector<std::string> problems;
    const auto b = valmatrix::build_p_block(9, 3);
    const std::vector<Eigen::Index> all{0, 1, 2, 3, 4, 5, 6, 7, 8};
    using Row = std::vector<std::int64_t>;
    if (b.entries.rows() != 4 || b.entries.cols() != 9) problems.push_back("3-block of 9 shape");
    else {
      if (row_at(b.entries, 2, all) != Row{-1, 0, 0, 1, 0, 0, 0, 0, 0}) problems.push_back("r=3");
      if (row_at(b.entries, 3, all) != Row{-2, 1, 0, -1, 2, 0, -1, 1, 0})
        problems.push_back("r=4");
    }
    const valmatrix::ValuationMatrix a10(10, table);
    const std::vector<Eigen::Index> outer{0, 1, 2, 7, 8, 9};
    const std::vector<Row> fig{
        {-1, 1, -3, 2, -1, 1}, {0, -2, 2, -1, 1, 0},  {-1, 1, 0, 0, 0, 0},
        {-1, 0, 1, 1, 0, 0},   {-1, 0, 0, 0, 1, 0},   {-1, 0, 0, 0, 0, 1},
        {0, 0, 0, 0, 0, 0},    {0, 0, 0, 0, 0, 0},    {0, 0, 0, 0, 0, 0}};
    if (a10.rows() != 9) problems.push_back("A_10 rows");
    else
      for (Eigen::Index i = 0; i < 9; ++i)
        if (row_at(a10.matrix(), i, outer) != fig[i])
          problems.push_back("A_10 row " + std::to_string(i) + " " +
                             show(row_at(a10.matrix(), i, outer)));
    const auto d10 = valmatrix::outer_span_dimension(10, table);
    const auto d9 = valmatrix::outer_span_dimension(9, table);
    if (d10 != 6) problems.push_back("outer dim A_10 = " + std::to_string(d10));
    if (d9 != 4) problems.push_back("outer dim A_9 = " + std::to_string(d9));
    return Verdict{problems.empty(), problems.empty() ? "3-block of 9, A_10 outer columns, "
                                                        "outer dims 6 and 4"
                                                      : show(problems)};
  });

  report(3, "every row of A_n sums to 0 for n <= 300", [&] {
    std::int64_t rows = 0, bad = 0;
    for (std::int64_t n = 2; n <= kRankMax; ++n) {
      const valmatrix::ValuationMatrix a(n, table);
      const IntMatrix& m = a.matrix();
      for (Eigen::Index i = 0; i < m.rows(); ++i, ++rows)
        if (m.row(i).sum() != 0) ++bad;
    }
    return Verdict{bad == 0, std::to_string(rows) + " rows, " + std::to_string(bad) + " nonzero"};
  });

  report(4, "inner 2P-n-1, outer 2(n-P), union n-1 for composite 4 <= n <= 300", [&] {
    int composites = 0, bad = 0;
    for (std::int64_t n = 4; n <= kRankMax; ++n) {
      if (table.is_prime(n)) continue;
      ++composites;
      const valmatrix::ValuationMatrix a(n, table);
      const std::int64_t p = a.largest_prime();
      auto in_cols = valmatrix::inner_columns(n, p);
      auto out_cols = valmatrix::outer_columns(n, p);
      const auto in = exact_rank(valmatrix::select_columns(a.matrix(), in_cols));
      const auto out = exact_rank(valmatrix::select_columns(a.matrix(), out_cols));
      in_cols.insert(in_cols.end(), out_cols.begin(), out_cols.end());
      const auto uni = exact_rank(valmatrix::select_columns(a.matrix(), in_cols));
      if (in != 2 * p - n - 1 || out != 2 * (n - p) || uni != n - 1) ++bad;
    }
    return Verdict{bad == 0, std::to_string(composites) + " composites, " + std::to_string(bad) +
                                 " failures"};
  });

  report(5, "oracle and kernel enumerations agree for n <= 7, m <= 3", [&] {
    int cases = 0, bad = 0, nonconstant = 0;
    for (std::int64_t n = 2; n <= kOracleNMax; ++n)
      for (int m = 1; m <= kOracleMMax; ++m, ++cases) {
        const auto o = intpoly::enumerate_factorizations_oracle(n, m, intpoly::kDefaultCandidateBudget,
                                                                threads);
        const auto k = intpoly::enumerate_factorizations_kernel(n, m, table);
        if (o != k.pairs) ++bad;
        for (const auto& p : o)
          if (!p.trivial()) ++nonconstant;
      }
    return Verdict{bad == 0 && nonconstant == 0,
                   std::to_string(cases) + " (n, m), " + std::to_string(bad) + " disagreements, " +
                       std::to_string(nonconstant) + " non-constant pairs"};
  }, kOracleLimit);

  report(6, "witness p > 2k for every 10 < n <= 1e5 and admissible k", [&] {
    const auto r = numtheory::theorem2_sweep(kSweepMax, table, threads);
    return Verdict{r.outcome == binatoms::Outcome::verified,
                   std::to_string(r.parameters.at("cases")) + " cases, outcome " +
                       std::string(to_string(r.outcome))};
  }, kWitnessSweepLimit);

  report(7, "catalan_scan(1e12) = {(8,9)}, pillai_scan(1e12) = {(25,27)}", [&] {
    const auto c = numtheory::catalan_scan(kScanMax, table);
    const auto p = numtheory::pillai_scan(kScanMax, table);
    const bool ok = c == std::vector<numtheory::PowerPair>{{8, 9}} &&
                    p == std::vector<numtheory::PowerPair>{{25, 27}};
    return Verdict{ok, std::to_string(c.size()) + " catalan pair(s), " + std::to_string(p.size()) +
                           " pillai pair(s)"};
  }, kScanLimit);

  report(8, "gap window [2010760, 4200000] and large-n window [4021520, 4121520]", [&] {
    const auto g = numtheory::schoenfeld_window_check(kGapLo, kGapHi, table);
    const auto l = numtheory::nthlargen_window_check(kLargeLo, kLargeHi, table);
    const bool ok = g.outcome == binatoms::Outcome::verified &&
                    l.outcome == binatoms::Outcome::verified;
    return Verdict{ok, std::string("gap ") + std::string(to_string(g.outcome)) + ", large-n " +
                           std::string(to_string(l.outcome))};
  }, kWindowLimit);

  report(9, "matrix and verify output byte-identical across runs and threads 1, 2, 8", [&] {
    const std::string exe = BINOMIAL_ATOMS_EXE;
    const std::vector<std::string> commands{
        "matrix --n 60", "--format csv matrix --n 60", "--format text matrix --n 30",
        "verify --lo 2 --hi 120"};
    int compared = 0, bad = 0;
    for (const auto& c : commands) {
      std::string first;
      for (int t : {1, 2, 8})
        for (int rep = 0; rep < 2; ++rep) {
          const auto out =
              capture(exe + " --threads " + std::to_string(t) + " " + c + " 2>/dev/null");
          if (first.empty()) first = out;
          else if (out != first) ++bad;
          ++compared;
        }
    }
    return Verdict{bad == 0, std::to_string(compared) + " runs, " + std::to_string(bad) +
                                 " differing"};
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
