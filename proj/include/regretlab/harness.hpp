#pragma once

#include "regretlab/algorithms.hpp"
#include "regretlab/metrics.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace regretlab {

// Feasible-set description as it appears in config files. build() validates
// through the FeasibleSet constructors.
struct SetSpec {
  SetKind kind = SetKind::Ball;
  int d = 2;
  double radius = 1.0;
  std::vector<double> center;  // ball only; empty means the origin
  std::vector<double> lo, hi;  // box only
  FeasibleSet build() const;
};

// Optional log-log slope fit emitted once per seed over the horizon sweep.
struct SlopeSpec {
  bool enabled = false;
  std::string value = "regret";  // regret | forward_regret | stability
  double limit = 0.6;
};

// One experiment: a learner, an adversary family, a feasible set, and the
// grid of seeds x horizons to run. Round-trips through canonical_config.
struct ExperimentConfig {
  std::string name = "experiment";
  LearnerSpec learner;
  AdversaryParams adversary;
  CompositeKind composite = CompositeKind::None;
  double composite_weight = 0.0;
  SetSpec set;
  std::vector<std::uint64_t> seeds = {1};
  std::vector<int> horizons = {64};
  std::vector<std::string> bounds;  // empty = theorem 1 + the bound registry
  SlopeSpec slope;
  bool strict = false;
  std::string out;            // empty = stdout
  std::string format = "csv";  // csv | json
};

// Parses config JSON, applies --set path=value overrides, validates the
// schema. Errors carry the offending field path.
ExperimentConfig parse_config(const std::string& json_text,
                              std::span<const std::string> overrides = {});
ExperimentConfig load_config(const std::string& path,
                             std::span<const std::string> overrides = {});

// Canonical JSON with every field materialized; equal configs agree byte for
// byte, so the FNV-1a hash of this string is the run's stable identity.
std::string canonical_config(const ExperimentConfig& cfg);
std::string config_hash(const ExperimentConfig& cfg);

// "exact" or the approximate delta schedule, for the mode column
std::string mode_name(const DeltaSchedule& d);

// One output line: a (seed, horizon) run paired with one verdict. The
// measurements repeat across the verdicts of the same run.
struct ResultRow {
  std::string config_hash;
  std::string learner;
  std::string mode;
  int T = 0;
  int d = 0;
  std::uint64_t seed = 0;
  double regret = 0.0;
  double forward_regret = 0.0;
  double stability = 0.0;
  std::string bound_name;
  double bound_theoretical = 0.0;
  double bound_empirical = 0.0;
  double slack = 0.0;
  bool pass = true;
  double wall_clock_ms = 0.0;  // recorded, never asserted, excluded from goldens
};

// Runs the full seeds x horizons grid in a worker pool (REGRETLAB_THREADS
// caps it) and returns rows in config order regardless of scheduling. Each
// run contributes the theorem-1 pair plus the configured bounds; slope specs
// add one fit row per seed with T = 0.
std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg);

// Fixed column order; floats at 17 significant digits. to_json mirrors the
// CSV schema as an array of flat objects and reads back bit-identically.
std::string to_csv(std::span<const ResultRow> rows);
std::string to_json(std::span<const ResultRow> rows);
std::vector<ResultRow> rows_from_json(const std::string& text);

void write_file(const std::string& path, const std::string& text);

// default sweep grid: powers of two, lo and hi inclusive
std::vector<int> dyadic_horizons(int lo, int hi);

}  // namespace regretlab
