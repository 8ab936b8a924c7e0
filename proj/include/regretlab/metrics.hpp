#pragma once

#include "regretlab/trajectory.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace regretlab {

// pass rule everywhere: empirical <= theoretical + slack + kPassEpsilon
inline constexpr double kPassEpsilon = 1e-8;

struct BoundVerdict {
  std::string name;
  double theoretical = 0.0;
  double empirical = 0.0;
  double slack = 0.0;
  bool pass = true;
};

struct DiagnosticsReport {
  double regret = 0.0;
  double forward_regret = 0.0;
  double stability = 0.0;
  std::vector<double> uniform_series;  // ||w_t - w_{t+1}||, t = 1..T
  double hindsight_value = 0.0;
  double eps_star = 0.0;           // hindsight certificate
  double certificate_slack = 0.0;  // L * sum_t sqrt(2 delta_t / mu_t)
};

// all three measures share one hindsight solve
struct Measured {
  Hindsight hindsight;
  double regret = 0.0;
  double forward_regret = 0.0;
  double stability = 0.0;
  std::vector<double> uniform_series;
};

Measured measure(const Trajectory& traj);

double regret(const Trajectory& traj);
double forward_regret(const Trajectory& traj);
double stability(const Trajectory& traj);
std::vector<double> uniform_stability_series(const Trajectory& traj);

DiagnosticsReport diagnostics(const Trajectory& traj);

// pathwise equivalence, both directions, zero slack:
//   regret <= L * stability + forward_regret
//   forward_regret <= L * stability + regret
// L includes the composite part since the effective per-round losses do.
std::pair<BoundVerdict, BoundVerdict> check_equivalence(const Trajectory& traj);

// closed-form bound lookup by name; throws ConfigError for names that do not
// apply to the trajectory's learner/regime or whose premises the run violates
BoundVerdict check_bound(const Trajectory& traj, const std::string& name);

// the bounds that apply to this trajectory, in registry order
std::vector<std::string> supported_bounds(const Trajectory& traj);

// least-squares slope of log(value) against log(T) over a horizon sweep;
// passes when the fitted exponent stays at or below the limit. Values are
// floored at 1e-9 so a sweep that never accumulates regret passes trivially.
BoundVerdict check_slope(const std::string& name,
                         std::span<const std::pair<int, double>> horizon_values,
                         double exponent_limit);

}  // namespace regretlab
