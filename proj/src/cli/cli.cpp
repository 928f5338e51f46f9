#include "binatoms/cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "binatoms/error.hpp"
#include "binatoms/intpoly/intpoly.hpp"
#include "binatoms/numtheory/claims.hpp"
#include "binatoms/parallel.hpp"
#include "binatoms/valmatrix/valuation_matrix.hpp"

namespace binatoms::cli {
namespace {

using numtheory::PrimeTable;

class Session {
 public:
  Session(RunConfig cfg, std::ostream& out, std::ostream& err)
      : cfg_(std::move(cfg)), out_(out), err_(err) {}

  RunConfig& config() { return cfg_; }
  std::ostream& out() { return out_; }
  std::ostream& log() { return err_; }

  /// A prime table reaching at least `needed`, honouring the configured
  /// sieve limit and prime cache.
  const PrimeTable& primes(std::int64_t needed) {
    needed = std::max<std::int64_t>(needed, 2);
    std::int64_t limit = std::max<std::int64_t>(cfg_.sieve_limit, 2);
    if (needed > limit) {
      err_ << "notice: extending sieve limit from " << limit << " to " << needed << '\n';
      limit = needed;
    }
    if (cfg_.cache_primes) {
      if (auto cached = read_cache(limit)) {
        table_.emplace(std::move(*cached));
        return *table_;
      }
    }
    table_.emplace(limit);
    if (cfg_.cache_primes) write_cache();
    return *table_;
  }

  void emit(const nlohmann::ordered_json& j) { out_ << j.dump(2) << '\n'; }

  int emit(const WitnessReport& r) {
    if (cfg_.output_format == OutputFormat::text) {
      out_ << to_string(r.claim_id) << ": " << to_string(r.outcome);
      for (const auto& [k, v] : r.parameters) out_ << ' ' << k << '=' << v;
      out_ << '\n';
      for (const auto& t : r.values) {
        out_ << " ";
        for (auto v : t) out_ << ' ' << v;
        out_ << '\n';
      }
    } else {
      nlohmann::json j = r;
      out_ << j.dump(2) << '\n';
    }
    for (const auto& note : r.notes) err_ << "info: " << note << '\n';
    return r.ok() ? kSuccess : kCounterexample;
  }

 private:
  std::optional<PrimeTable> read_cache(std::int64_t limit) {
    std::ifstream in(*cfg_.cache_primes);
    if (!in) return std::nullopt;
    std::vector<std::int64_t> primes;
    for (std::string line; std::getline(in, line);)
      if (!line.empty()) primes.push_back(parse_exact_integer(line));
    if (primes.empty() || primes.back() < limit) {
      err_ << "notice: prime cache " << *cfg_.cache_primes << " does not reach " << limit
           << ", rebuilding\n";
      return std::nullopt;
    }
    err_ << "info: loaded " << primes.size() << " primes from " << *cfg_.cache_primes << '\n';
    return PrimeTable::from_prime_list(primes.back(), primes);
  }

  void write_cache() {
    std::ofstream f(*cfg_.cache_primes, std::ios::trunc);
    if (!f) throw UsageError("cannot write prime cache " + *cfg_.cache_primes);
    for (std::int64_t p : table_->primes()) f << p << '\n';
    // one prime past the limit, so a reader can tell the list is complete up to it
    f << numtheory::next_prime(table_->limit(), *table_) << '\n';
  }

  RunConfig cfg_;
  std::ostream& out_;
  std::ostream& err_;
  std::optional<PrimeTable> table_;
};

std::int64_t isqrt_plus(std::int64_t x) { return numtheory::integer_root(std::max<std::int64_t>(x, 0), 2) + 2; }

using Raw = std::map<std::string, std::string>;

struct Args {
  const Raw& raw;
  bool has(const std::string& key) const {
    auto it = raw.find(key);
    return it != raw.end() && !it->second.empty();
  }
  std::int64_t get(const std::string& key) const {
    if (!has(key)) throw UsageError("missing required option --" + key);
    return parse_exact_integer(raw.at(key));
  }
};

void require_not_csv(Session& s) {
  if (s.config().output_format == OutputFormat::csv)
    throw UsageError("--format csv is only available for the matrix command");
}

int cmd_matrix(Session& s, const Args& a) {
  const std::int64_t n = a.get("n");
  if (n < 2) throw UsageError("matrix needs n >= 2");
  const valmatrix::ValuationMatrix m(n, s.primes(n));
  switch (s.config().output_format) {
    case OutputFormat::json: s.emit(valmatrix::to_json(m)); break;
    case OutputFormat::csv: s.out() << valmatrix::to_csv(m); break;
    case OutputFormat::text: s.out() << valmatrix::to_text(m); break;
  }
  return kSuccess;
}

int cmd_verify(Session& s, const Args& a) {
  require_not_csv(s);
  const std::int64_t lo = a.get("lo");
  const std::int64_t hi = a.get("hi");
  if (lo < 2 || hi < lo) throw UsageError("verify needs 2 <= lo <= hi");
  s.log() << "info: verifying rank(A_n) = n - 1 for n in [" << lo << ", " << hi << "]\n";
  return s.emit(valmatrix::verify_rank_theorem(lo, hi, s.primes(hi), s.config().threads));
}

int cmd_rank(Session& s, const Args& a) {
  require_not_csv(s);
  const std::int64_t n = a.get("n");
  if (n < 2) throw UsageError("rank needs n >= 2");
  const auto& table = s.primes(n);
  const valmatrix::ValuationMatrix m(n, table);
  const RankResult res = exact_rank_and_kernel(m.matrix());
  const auto diag = valmatrix::exceptional_rows_diagnostic(n, table);
  nlohmann::ordered_json j;
  j["n"] = n;
  j["rows"] = m.rows();
  j["rank"] = res.rank;
  nlohmann::ordered_json basis = nlohmann::ordered_json::array();
  for (const auto& v : res.kernel_basis) {
    nlohmann::ordered_json vec = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) vec.push_back(v[i].str());
    basis.push_back(std::move(vec));
  }
  j["kernel_basis"] = std::move(basis);
  j["has_exceptional_rows"] = diag.has_exceptional_rows;
  j["rank_without_exceptional_rows"] = diag.rank_without;
  s.emit(j);
  return res.rank == n - 1 ? kSuccess : kCounterexample;
}

int cmd_factor(Session& s, const Args& a, const std::string& method_name) {
  require_not_csv(s);
  const std::int64_t n = a.get("n");
  const std::int64_t m64 = a.get("m");
  if (n < 2 || m64 < 1 || m64 > 1000) throw UsageError("factor needs n >= 2, 1 <= m <= 1000");
  const int m = static_cast<int>(m64);
  const auto method = intpoly::method_from_string(method_name);
  const std::int64_t budget = s.config().budget > 0 ? s.config().budget
                                                    : intpoly::kDefaultCandidateBudget;

  std::vector<intpoly::FactorizationPair> pairs;
  nlohmann::ordered_json j;
  j["n"] = n;
  j["m"] = m;
  j["method"] = method_name;
  bool agree = true;
  if (method != intpoly::Method::kernel)
    pairs = intpoly::enumerate_factorizations_oracle(n, m, budget, s.config().threads);
  if (method != intpoly::Method::oracle) {
    auto k = intpoly::enumerate_factorizations_kernel(n, m, s.primes(n), budget);
    j["kernel_dimension"] = k.kernel_dimension;
    j["kernel_anomaly"] = k.anomaly;
    if (method == intpoly::Method::both) agree = k.pairs == pairs;
    else pairs = std::move(k.pairs);
  }
  const bool trivial = std::all_of(pairs.begin(), pairs.end(),
                                   [](const auto& p) { return p.trivial(); });
  j["status"] = !agree ? "methods_disagree" : (trivial ? "trivial_only" : "nontrivial_found");
  if (method == intpoly::Method::both) j["agree"] = agree;
  nlohmann::ordered_json pj = nlohmann::ordered_json::array();
  for (const auto& p : pairs) pj.push_back(intpoly::to_json(p));
  j["pairs"] = std::move(pj);
  s.emit(j);
  return agree && trivial ? kSuccess : kCounterexample;
}

int cmd_irreducible(Session& s, const Args& a) {
  require_not_csv(s);
  const std::int64_t n = a.get("n");
  const std::int64_t m_max = a.get("mmax");
  if (n < 2 || m_max < 1 || m_max > 1000)
    throw UsageError("irreducible needs n >= 2, 1 <= mmax <= 1000");
  const std::int64_t budget = s.config().budget > 0 ? s.config().budget
                                                    : intpoly::kDefaultCandidateBudget;
  const auto v = intpoly::verify_absolute_irreducibility(n, static_cast<int>(m_max), s.primes(n),
                                                         budget, s.config().threads);
  s.emit(intpoly::to_json(v));
  return v.irreducible ? kSuccess : kCounterexample;
}

int cmd_pblock(Session& s, const Args& a) {
  require_not_csv(s);
  const std::int64_t n = a.get("n");
  const std::int64_t p = a.get("p");
  std::optional<std::int64_t> k;
  if (a.has("k")) k = a.get("k");
  return s.emit(valmatrix::p_block_structure_check(n, p, k, s.primes(n)));
}

WitnessReport single_witness(ClaimId id, std::map<std::string, std::int64_t> params,
                             std::vector<std::int64_t> values, std::int64_t bound) {
  WitnessReport r;
  r.claim_id = id;
  r.parameters = std::move(params);
  r.outcome = Outcome::witness;
  r.values = {std::move(values)};
  r.search_bound = bound;
  return r;
}

int cmd_nt(Session& s, const std::string& sub, const Args& a) {
  require_not_csv(s);
  namespace nt = numtheory;
  if (sub == "theorem2") {
    if (a.has("n")) {
      const auto n = a.get("n"), k = a.get("k");
      const auto p = nt::theorem2_witness(n, k, s.primes(n));
      return s.emit(single_witness(ClaimId::theorem2, {{"n", n}, {"k", k}}, {p}, n));
    }
    const auto n_max = a.get("nmax");
    return s.emit(nt::theorem2_sweep(n_max, s.primes(n_max), s.config().threads));
  }
  if (sub == "bertrand") {
    if (a.has("n")) {
      const auto n = a.get("n");
      const auto p = nt::bertrand_witness(n, s.primes(isqrt_plus(n)));
      return s.emit(single_witness(ClaimId::bertrand, {{"n", n}}, {p}, n));
    }
    const auto n_max = a.get("nmax");
    return s.emit(nt::bertrand_sweep(n_max, s.primes(n_max)));
  }
  if (sub == "grimm") {
    const auto n = a.get("n"), k = a.get("k");
    const auto ps = nt::grimm_assignment(n, k, s.primes(isqrt_plus(n)));
    return s.emit(single_witness(ClaimId::grimm, {{"n", n}, {"k", k}}, ps, n));
  }
  if (sub == "catalan" || sub == "pillai") {
    const auto limit = a.get("limit");
    const auto& table = s.primes(isqrt_plus(limit));
    return s.emit(sub == "catalan" ? nt::catalan_report(limit, table)
                                   : nt::pillai_report(limit, table));
  }
  if (sub == "mkbound") {
    if (a.has("m")) {
      const auto m = a.get("m"), k = a.get("k");
      return s.emit(nt::mkbound_check(m, k, s.primes(isqrt_plus(m + k))));
    }
    const auto m_max = a.get("mmax"), k_max = a.get("kmax");
    return s.emit(nt::mkbound_sweep(m_max, k_max, s.primes(m_max + k_max)));
  }
  if (sub == "schoenfeld") {
    const auto lo = a.get("lo"), hi = a.get("hi");
    return s.emit(nt::schoenfeld_window_check(lo, hi, s.primes(isqrt_plus(hi + 100000))));
  }
  if (sub == "nthlargen") {
    if (a.has("n")) {
      const auto n = a.get("n");
      return s.emit(nt::prop_nthlargen_claim_check(n, s.primes(isqrt_plus(n))));
    }
    const auto lo = a.get("lo"), hi = a.get("hi");
    return s.emit(nt::nthlargen_window_check(lo, hi, s.primes(isqrt_plus(hi))));
  }
  if (sub == "kth-prime") {
    const auto k_max = a.get("kmax");
    if (k_max < 5) throw UsageError("kth-prime needs kmax >= 5");
    const double k = static_cast<double>(k_max);
    // p_k < k (ln k + ln ln k) for k >= 6
    const auto bound = static_cast<std::int64_t>(k * (std::log(k) + std::log(std::log(k)))) + 20;
    return s.emit(nt::kth_prime_check(k_max, s.primes(bound)));
  }
  if (sub == "prime-power") {
    const auto n = a.get("n");
    if (n < 2) throw UsageError("prime-power needs n >= 2");
    nlohmann::ordered_json j;
    j["n"] = n;
    if (const auto pp = nt::prime_power_decompose(n)) {
      j["base"] = pp->base;
      j["exponent"] = pp->exponent;
    } else {
      j["base"] = nullptr;
      j["exponent"] = nullptr;
    }
    s.emit(j);
    return kSuccess;
  }
  if (sub == "largest-prime" || sub == "next-prime") {
    const auto n = a.get("n");
    const auto& table = s.primes(isqrt_plus(n + 100000));
    nlohmann::ordered_json j;
    j["n"] = n;
    j["value"] = sub == "largest-prime" ? nt::largest_prime_leq(n, table)
                                        : nt::next_prime(n, table);
    s.emit(j);
    return kSuccess;
  }
  throw UsageError("unknown nt subcommand " + sub);
}

OutputFormat format_from_string(const std::string& f) {
  if (f == "json") return OutputFormat::json;
  if (f == "csv") return OutputFormat::csv;
  if (f == "text") return OutputFormat::text;
  throw UsageError("unknown format " + f);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::optional<std::string> env_sieve_limit) {
  CLI::App app{"Exact verification of the absolute irreducibility of binomial polynomials",
               "binomial-atoms"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "json", threads, budget, sieve_limit, cache;
  app.add_option("--format", format, "Output format: json, csv (matrix only) or text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--threads", threads, "Worker threads (default: available parallelism)");
  app.add_option("--budget", budget, "Candidate budget for exhaustive enumeration");
  app.add_option("--sieve-limit", sieve_limit, "Base prime table limit (default 1e6)");
  app.add_option("--cache-primes", cache, "Read/write a newline-delimited prime list");

  Raw raw;
  auto opt = [&raw](CLI::App* sub, const std::string& name, const std::string& help) {
    return sub->add_option("--" + name, raw[name], help);
  };

  auto* matrix = app.add_subcommand("matrix", "Export the valuation matrix A_n");
  opt(matrix, "n", "n >= 2")->required();

  auto* verify = app.add_subcommand("verify", "Check rank(A_n) = n - 1 over a range of n");
  opt(verify, "lo", "Smallest n")->required();
  opt(verify, "hi", "Largest n")->required();

  auto* rank = app.add_subcommand("rank", "Exact rank and kernel of A_n");
  opt(rank, "n", "n >= 2")->required();

  std::string method = "both";
  auto* factor = app.add_subcommand("factor", "Enumerate factorizations of C(x,n)^m");
  opt(factor, "n", "n >= 2")->required();
  opt(factor, "m", "m >= 1")->required();
  factor->add_option("--method", method, "oracle, kernel or both")
      ->check(CLI::IsMember({"oracle", "kernel", "both"}));

  auto* irreducible =
      app.add_subcommand("irreducible", "Absolute irreducibility verdict up to m_max");
  opt(irreducible, "n", "n >= 2")->required();
  opt(irreducible, "mmax", "Largest power m")->required();

  auto* pblock = app.add_subcommand("pblock", "Check the structure of one p-block");
  opt(pblock, "n", "n >= 2")->required();
  opt(pblock, "p", "prime p <= n")->required();
  opt(pblock, "k", "band width (default: all admissible)");

  auto* nt = app.add_subcommand("nt", "Number-theoretic witness checks");
  nt->require_subcommand(1);
  std::map<std::string, CLI::App*> nt_subs;
  auto nt_sub = [&](const std::string& name, const std::string& help,
                    std::initializer_list<const char*> keys) {
    auto* sub = nt->add_subcommand(name, help);
    for (const char* k : keys) opt(sub, k, "");
    nt_subs[name] = sub;
  };
  nt_sub("theorem2", "Composite-run witness (--n --k) or sweep (--nmax)", {"n", "k", "nmax"});
  nt_sub("bertrand", "Prime in (n/2, n) (--n) or sweep (--nmax)", {"n", "nmax"});
  nt_sub("grimm", "Distinct prime assignment for a composite run", {"n", "k"});
  nt_sub("catalan", "Adjacent proper prime powers up to --limit", {"limit"});
  nt_sub("pillai", "Proper prime powers at distance 2 up to --limit", {"limit"});
  nt_sub("mkbound", "Product prime factor bound (--m --k) or sweep (--mmax --kmax)",
         {"m", "k", "mmax", "kmax"});
  nt_sub("schoenfeld", "Prime gap bound on [--lo, --hi]", {"lo", "hi"});
  nt_sub("nthlargen", "Large-n claim at --n or on [--lo, --hi]", {"n", "lo", "hi"});
  nt_sub("kth-prime", "p_k > 2k for 5 <= k <= --kmax", {"kmax"});
  nt_sub("prime-power", "Decompose --n as p^e", {"n"});
  nt_sub("largest-prime", "Largest prime <= --n", {"n"});
  nt_sub("next-prime", "Smallest prime > --n", {"n"});

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    RunConfig cfg;
    cfg.output_format = format_from_string(format);
    cfg.threads = threads.empty() ? default_thread_count()
                                  : static_cast<unsigned>(parse_exact_integer(threads));
    if (cfg.threads < 1 || cfg.threads > 1024) throw UsageError("--threads must be in [1, 1024]");
    cfg.budget = budget.empty() ? 0 : parse_exact_integer(budget);
    if (!sieve_limit.empty())
      cfg.sieve_limit = parse_exact_integer(sieve_limit);
    else if (env_sieve_limit && !env_sieve_limit->empty())
      cfg.sieve_limit = parse_exact_integer(*env_sieve_limit);
    if (cfg.sieve_limit < 2) throw UsageError("sieve limit must be at least 2");
    if (!cache.empty()) cfg.cache_primes = cache;
    for (const auto& [k, v] : raw)
      if (!v.empty()) cfg.parameters[k] = parse_exact_integer(v);

    const Args a{raw};
    Session s(cfg, out, err);
    if (matrix->parsed()) return s.config().command = "matrix", cmd_matrix(s, a);
    if (verify->parsed()) return s.config().command = "verify", cmd_verify(s, a);
    if (rank->parsed()) return s.config().command = "rank", cmd_rank(s, a);
    if (factor->parsed()) return s.config().command = "factor", cmd_factor(s, a, method);
    if (irreducible->parsed()) return s.config().command = "irreducible", cmd_irreducible(s, a);
    if (pblock->parsed()) return s.config().command = "pblock", cmd_pblock(s, a);
    for (const auto& [name, sub] : nt_subs)
      if (sub->parsed()) return s.config().command = "nt " + name, cmd_nt(s, name, a);
    throw UsageError("no command given");
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const CounterexampleError& e) {
    nlohmann::json j = e.report();
    out << j.dump(2) << '\n';
    err << "error: " << e.what() << '\n';
    return kCounterexample;
  }
}

}  // namespace binatoms::cli
