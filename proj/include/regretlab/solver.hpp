#pragma once

#include "regretlab/losses.hpp"

#include <functional>
#include <optional>

namespace regretlab {

enum class SolveStatus { Certified, Truncated };

// Suboptimality certificate for an inner solve. `achieved` bounds
// f(w) - min_C f from above via the strong-convexity model gap
//   delta(w) = -min_{u in C} [ <g(w), u-w> + lam(|u|_1 - |w|_1) + (mu/2)|u-w|^2 ],
// computable exactly with one prox-type subproblem and sound for any
// (sub)gradient g(w) of a mu-strongly-convex objective.
struct SolveCertificate {
  double achieved = 0.0;
  double strong_convexity = 0.0;
  long iterations = 0;
  SolveStatus status = SolveStatus::Certified;
};

enum class SolveKernel { Euclidean, Entropic };

// Closed-form tag for entropic objectives lin.w + coeff * sum w_i ln(w_i/ref_i)
// over the simplex; minimizer w_i proportional to ref_i exp(-lin_i/coeff).
struct EntropicProxTag {
  Vector lin;
  Vector ref;  // empty means uniform reference
  double coeff = 1.0;
};

// Inner minimization problem: smooth part (value/gradient callables) plus an
// optional l1 term, over a feasible set. `smoothness` < 0 marks a nonsmooth
// "smooth part" (hinge sums); those run on the subgradient engine.
// `strong_convexity` is the modulus of the full objective w.r.t. l2 and must
// be positive: it is what makes certificates possible.
struct InnerObjective {
  const FeasibleSet* set = nullptr;
  std::function<double(const Vector&)> smooth_value;
  std::function<Vector(const Vector&)> smooth_grad;
  double smoothness = 0.0;
  double strong_convexity = 0.0;
  double l1_weight = 0.0;
  SolveKernel kernel = SolveKernel::Euclidean;
  double rel_smoothness = 0.0;  // entropic engine step constant
  std::optional<QuadraticForm> quadratic;  // Euclidean fast-path tag
  std::optional<EntropicProxTag> entropic; // entropic fast-path tag

  double full_value(const Vector& w) const {
    return smooth_value(w) + l1_weight * w.lpNorm<1>();
  }
};

struct SolverOptions {
  double target_delta = 1e-10;
  long max_iters = 100000;
  bool allow_fast_path = true;
  // keep stepping after certification until iterates stall; lets exact-route
  // comparisons reach machine precision where the certificate alone cannot
  bool polish = false;
};

struct SolveResult {
  Vector point;
  SolveCertificate certificate;
};

// hard floor on certifiable targets; requests below it are clamped
inline constexpr double kDeltaFloor = 1e-12;

// argmin over C of lam |u|_1 + (m/2) |u - z|^2, exact (box: coordinatewise
// soft-threshold + clamp; simplex: l1 constant, Euclidean projection; ball:
// origin-centered only, multiplier bisection)
Vector prox_model_min(const FeasibleSet& set, double lam, const Vector& z, double m);

double certificate_at(const InnerObjective& obj, const Vector& w);

SolveResult solve(const InnerObjective& obj, const Vector& warm, const SolverOptions& opts);

// convenience wrapper at target 1e-10 with polish enabled
SolveResult solve_exact(const InnerObjective& obj, const Vector& warm);

// distance conversion: |w - w*| <= sqrt(2 delta / mu)
inline double delta_to_distance(double delta, double mu) {
  return mu > 0.0 ? std::sqrt(std::max(0.0, 2.0 * delta / mu)) : 0.0;
}

}  // namespace regretlab
