#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "roughlab/rational.hpp"

namespace roughlab {

// One experiment run. Zero or empty fields fall back to the experiment's
// pinned defaults; explicit values override them (n lists must stay strictly
// increasing, and sweeps require each n to divide the largest so the common
// fine batch restricts exactly).
struct ExperimentConfig {
  std::string experiment;        // canonical id a1..a10 or a named alias
  std::optional<Rational> nu;    // Hurst index override
  std::vector<std::int64_t> ns;  // grid sizes
  int paths = 0;                 // Monte Carlo sample size
  std::uint64_t seed = 42;
  int threads = 1;
  int block_count = 0;     // a1: fixed block count for the decomposition trials
  int oracle_subgrid = 0;  // a10: oracle refinement, 0 = match the lift
};

// One gate of one criterion, carrying everything needed to re-run it.
struct CriterionVerdict {
  std::string criterion;
  std::int64_t n = 0;
  int paths = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  double observed = 0.0;
  bool pass = false;
  std::string detail;
};

// Per-grid-size summary; fields that do not apply stay NaN and serialize as
// empty (CSV) or null (JSON).
struct SummaryRow {
  std::int64_t n = 0;
  int paths = 0;
  double stat_mean = std::numeric_limits<double>::quiet_NaN();
  double stat_var = std::numeric_limits<double>::quiet_NaN();
  double se = std::numeric_limits<double>::quiet_NaN();
  double predicted = std::numeric_limits<double>::quiet_NaN();
  double ks_stat = std::numeric_limits<double>::quiet_NaN();
  double ks_p = std::numeric_limits<double>::quiet_NaN();
};

struct ExperimentReport {
  std::string experiment;
  std::string nu_label;
  std::uint64_t seed = 0;
  std::vector<SummaryRow> rows;
  std::vector<CriterionVerdict> verdicts;
  bool pass = false;  // all verdicts pass
};

// Runs one experiment. A statistical failure is a verdict, never an
// exception; only configuration errors throw. Given a seed the report is
// byte-for-byte reproducible at any thread count.
ExperimentReport run(const ExperimentConfig& cfg);

const std::vector<std::string>& experiment_ids();

// Resolves an id or alias ("bm-clt" -> "a3"); ConfigInvalid for unknown names.
std::string canonical_experiment(const std::string& name);
// The alias for an id, for listings.
std::string experiment_alias(const std::string& id);

// One CSV row per summary row, reals at 17 significant digits; the JSON
// mirror additionally carries every verdict.
void write_report_csv(std::ostream& os, const ExperimentReport& report);
void write_report_json(std::ostream& os, const ExperimentReport& report);

}  // namespace roughlab
