#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace binatoms {

enum class ClaimId {
  bertrand,
  theorem2,
  grimm,
  catalan,
  pillai,
  mkbound,
  schoenfeld,
  nthlargen,
  kth_prime,
  rank_theorem,
  pblock_structure,
};

enum class Outcome { witness, verified, counterexample };

std::string_view to_string(ClaimId id);
std::string_view to_string(Outcome o);
ClaimId claim_from_string(std::string_view s);
Outcome outcome_from_string(std::string_view s);

/// Result of checking one existential or universal claim over a finite range.
///
/// `values` holds one tuple per witness or counterexample. A counterexample
/// outcome is only produced after the search up to `search_bound` finished.
struct WitnessReport {
  ClaimId claim_id = ClaimId::bertrand;
  std::map<std::string, std::int64_t> parameters;
  Outcome outcome = Outcome::verified;
  std::vector<std::vector<std::int64_t>> values;
  std::int64_t search_bound = 0;
  std::vector<std::string> flags;
  std::vector<std::string> notes;

  bool ok() const { return outcome != Outcome::counterexample; }

  friend bool operator==(const WitnessReport&, const WitnessReport&) = default;
};

void to_json(nlohmann::json& j, const WitnessReport& r);
void from_json(const nlohmann::json& j, WitnessReport& r);

/// Thrown by single-shot witness searches that exhausted their range.
class CounterexampleError : public std::runtime_error {
 public:
  explicit CounterexampleError(WitnessReport report);
  const WitnessReport& report() const noexcept { return report_; }

 private:
  WitnessReport report_;
};

}  // namespace binatoms
