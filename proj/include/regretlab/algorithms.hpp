#pragma once

#include "regretlab/trajectory.hpp"

#include <span>

namespace regretlab {

// Which implementation produces an update. FastPath takes the closed form
// (projected mean, projected gradient step, soft-threshold, multiplicative
// weights) when the objective admits one; Iterative forces the certified
// solver; Auto uses the fast path exactly when the target is at the exact
// floor, so approximate runs genuinely iterate.
enum class Route { Auto, FastPath, Iterative };

struct UpdateResult {
  Vector point;
  SolveCertificate cert;
};

// w_{t+1} = argmin over C of sum of history
UpdateResult ftl_update(std::span<const Loss> history, const FeasibleSet& set,
                        double target_delta = 1e-10, Route route = Route::Auto);

// w_{t+1} = argmin over C of sum of history + R/eta
UpdateResult ftrl_update(std::span<const Loss> history, const Regularizer& reg,
                         double eta, const FeasibleSet& set,
                         double target_delta = 1e-10, Route route = Route::Auto);

// w_{t+1} = argmin over C of sum_grads.w + t r(w) + beta_t h(w); h is the
// auxiliary strongly convex function (the run's regularizer)
UpdateResult rda_update(const Vector& sum_grads, int t, const CompositePart& r,
                        const Regularizer& h, double beta_t, const FeasibleSet& set,
                        double target_delta = 1e-10, Route route = Route::Auto);

// w_{t+1} = argmin over C of D_R(w, w_t) + eta_t loss(w)
UpdateResult iol_update(const Vector& w_t, const Loss& loss, const Regularizer& reg,
                        double eta_t, const FeasibleSet& set,
                        double target_delta = 1e-10, Route route = Route::Auto);

// w_{t+1} = argmin over C of eta_t (g_t.w + r(w)) + D_R(w, w_t)
UpdateResult comid_update(const Vector& w_t, const Vector& g_t, const CompositePart& r,
                          const Regularizer& reg, double eta_t, const FeasibleSet& set,
                          double target_delta = 1e-10, Route route = Route::Auto);

// COMiD with r = 0
UpdateResult md_update(const Vector& w_t, const Vector& g_t, const Regularizer& reg,
                       double eta_t, const FeasibleSet& set,
                       double target_delta = 1e-10, Route route = Route::Auto);

struct LearnerSpec {
  LearnerKind kind = LearnerKind::Md;
  RegKind regularizer = RegKind::HalfSquaredL2;
  // Zero kind means "resolve from the validated regime"
  Schedule eta = Schedule::zero();
  Schedule beta = Schedule::zero();
  DeltaSchedule delta = DeltaSchedule::exact();
  int batch_size = 0;                      // batch wrapper; 0 -> ceil(sqrt(T))
  LearnerKind inner = LearnerKind::Ftl;    // batch wrapper inner learner
  bool validate = true;
};

struct RunOptions {
  bool strict = false;  // abort on solver truncation, carrying the step index
};

// Online loop: w_t = current point, observe loss t, solve for w_{t+1};
// play() before each observe is a pure function of history. Resolves and
// validates the schedule/regime pairing first (validate=false skips the
// premise checks but still needs well-formed schedules).
Trajectory run(const LearnerSpec& spec, std::shared_ptr<const AdversarySequence> seq,
               std::shared_ptr<const FeasibleSet> set, RunOptions opts = {});

// regime/schedule resolution without running; exposed for the harness
struct ResolvedSpec {
  LearnerSpec spec;
  Regime regime = Regime::General;
  double alpha = 0.0;  // strong convexity the regime leans on
};
ResolvedSpec resolve_spec(const LearnerSpec& spec, const AdversarySequence& seq,
                          const FeasibleSet& set);

}  // namespace regretlab
