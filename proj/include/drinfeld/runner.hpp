#pragma once
// Verification suites behind the `verify` command. A suite samples its own
// inputs from the seed, runs one family of identity checks, and reports one
// row per check. Reports are byte-identical for a fixed config and seed, for
// any thread count: rows are computed into index-ordered slots and merged in
// order, and nothing about scheduling enters the output.
//
// Precision semantics per suite: residuals are always reported in u-units.
// For identities whose two sides carry full working precision (exp, quasi,
// omega, levelchange, legendre, cm) the pass threshold is
// threshold_frac * prec * m. Lattice-sum comparisons (automorphy, expansion)
// are capped by the certified evaluation precision, not the working
// precision, so there `prec` is the evaluation target in theta-digits and
// the threshold is threshold_frac * prec * m against that cap.

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "drinfeld/field.hpp"

namespace drinfeld {

struct RunConfig {
  FieldParams field{3, 1, 2, 2};
  int prec = 80;               // theta-units; see the per-suite note above
  int t_order = 12;            // t-truncation for the omega checks
  int deg_budget = 6;          // lattice enumeration cutoff D
  int kmax = 12;               // entire-series truncation
  int deg_x = 4;               // detector X-degree bound
  int deg_theta = 8;           // detector coefficient degree bound
  int samples = 8;             // sampled points / modules per suite
  double threshold_frac = 0.6; // pass threshold as a fraction of prec
  std::uint64_t seed = 1;
  int threads = 1;             // execution knob; never echoed in reports
  std::string out;             // report path; empty writes to stdout

  void validate() const;  // throws DomainError on nonsense
  // threshold in u-units, optionally against an explicit precision base
  std::int64_t threshold_num(int prec_base = -1) const;
};

// apply one `key = value` assignment; unknown keys throw DomainError
void apply_config_kv(RunConfig* cfg, const std::string& key, const std::string& value);
// line-based config text: blank lines and #-comments ignored
RunConfig parse_config(const std::string& text);

struct CheckRow {
  std::string check;
  std::string sample;
  std::int64_t residual_valuation = 0;  // u-units
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  RunConfig cfg;
  std::vector<CheckRow> rows;
  bool pass = false;  // all rows pass
};

nlohmann::ordered_json report_to_json(const SuiteReport& rep);
std::string report_text(const SuiteReport& rep);  // dumped json + newline

extern const char* const kSuiteNames[9];  // exp quasi omega automorphy
                                          // levelchange expansion legendre
                                          // cm independence
bool is_suite_name(const std::string& name);

// dispatch by name; throws DomainError for unknown suites, BudgetError when
// a budget is exhausted mid-suite
SuiteReport run_suite(const std::string& suite, const RunConfig& cfg);

// deterministic index sharding: fn(i) for i in [0, n), contiguous blocks per
// thread; the first thrown exception (lowest thread index) is rethrown
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace drinfeld
