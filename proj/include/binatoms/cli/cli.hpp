#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace binatoms::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kCounterexample = 2,
  kBudget = 3,
};

enum class OutputFormat { json, csv, text };

inline constexpr std::int64_t kDefaultSieveLimit = 1'000'000;
inline constexpr const char* kSieveLimitEnv = "BINOMIAL_ATOMS_SIEVE_LIMIT";

struct RunConfig {
  std::string command;
  std::map<std::string, std::int64_t> parameters;
  OutputFormat output_format = OutputFormat::json;
  std::int64_t sieve_limit = kDefaultSieveLimit;
  std::int64_t budget = 0;  ///< 0: the module default
  unsigned threads = 1;
  std::optional<std::string> cache_primes;
};

/// Parses decimal or scientific notation ("4021520", "1e12", "2.5e3") to an
/// exact integer. Fractional values, overflow and junk throw UsageError.
std::int64_t parse_exact_integer(std::string_view text);

/// Runs the command line `args` (without the program name). Results go to
/// `out`, log lines to `err`. `env_sieve_limit` stands in for the
/// environment variable when set.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::optional<std::string> env_sieve_limit = std::nullopt);

}  // namespace binatoms::cli
