#include "binatoms/numtheory/witness_report.hpp"

#include <array>
#include <utility>

#include "binatoms/error.hpp"

namespace binatoms {
namespace {

constexpr std::array<std::pair<ClaimId, std::string_view>, 11> kClaimNames{{
    {ClaimId::bertrand, "bertrand"},
    {ClaimId::theorem2, "theorem2"},
    {ClaimId::grimm, "grimm"},
    {ClaimId::catalan, "catalan"},
    {ClaimId::pillai, "pillai"},
    {ClaimId::mkbound, "mkbound"},
    {ClaimId::schoenfeld, "schoenfeld"},
    {ClaimId::nthlargen, "nthlargen"},
    {ClaimId::kth_prime, "kth_prime"},
    {ClaimId::rank_theorem, "rank_theorem"},
    {ClaimId::pblock_structure, "pblock_structure"},
}};

constexpr std::array<std::pair<Outcome, std::string_view>, 3> kOutcomeNames{{
    {Outcome::witness, "witness"},
    {Outcome::verified, "verified"},
    {Outcome::counterexample, "counterexample"},
}};

}  // namespace

std::string_view to_string(ClaimId id) {
  for (const auto& [k, name] : kClaimNames)
    if (k == id) return name;
  return "unknown";
}

std::string_view to_string(Outcome o) {
  for (const auto& [k, name] : kOutcomeNames)
    if (k == o) return name;
  return "unknown";
}

ClaimId claim_from_string(std::string_view s) {
  for (const auto& [k, name] : kClaimNames)
    if (name == s) return k;
  throw UsageError("unknown claim id: " + std::string(s));
}

Outcome outcome_from_string(std::string_view s) {
  for (const auto& [k, name] : kOutcomeNames)
    if (name == s) return k;
  throw UsageError("unknown outcome: " + std::string(s));
}

void to_json(nlohmann::json& j, const WitnessReport& r) {
  j = nlohmann::json{
      {"claim_id", std::string(to_string(r.claim_id))},
      {"parameters", r.parameters},
      {"outcome", std::string(to_string(r.outcome))},
      {"values", r.values},
      {"search_bound", r.search_bound},
      {"flags", r.flags},
      {"notes", r.notes},
  };
}

void from_json(const nlohmann::json& j, WitnessReport& r) {
  r.claim_id = claim_from_string(j.at("claim_id").get<std::string>());
  r.parameters = j.at("parameters").get<std::map<std::string, std::int64_t>>();
  r.outcome = outcome_from_string(j.at("outcome").get<std::string>());
  r.values = j.at("values").get<std::vector<std::vector<std::int64_t>>>();
  r.search_bound = j.at("search_bound").get<std::int64_t>();
  r.flags = j.value("flags", std::vector<std::string>{});
  r.notes = j.value("notes", std::vector<std::string>{});
}

CounterexampleError::CounterexampleError(WitnessReport report)
    : std::runtime_error("counterexample found for claim " +
                         std::string(to_string(report.claim_id))),
      report_(std::move(report)) {}

}  // namespace binatoms
