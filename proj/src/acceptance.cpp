#include "regretlab/acceptance.hpp"

#include "regretlab/algorithms.hpp"
#include "regretlab/harness.hpp"
#include "regretlab/metrics.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <thread>

namespace regretlab {
namespace {

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

void parallel_for(int n, const std::function<void(int)>& body) {
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("REGRETLAB_THREADS")) {
    int cap = std::atoi(env);
    if (cap >= 1) threads = std::min<unsigned>(threads, cap);
  }
  threads = std::min<unsigned>(threads, std::max(n, 1));
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;
  auto worker = [&] {
    while (true) {
      int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

FeasibleSet make_set(SetKind kind, int d) {
  switch (kind) {
    case SetKind::Ball: return FeasibleSet::ball(Vector::Zero(d), 1.0);
    case SetKind::Box:
      return FeasibleSet::box(Vector::Constant(d, -1.0), Vector::Constant(d, 1.0));
    case SetKind::Simplex: return FeasibleSet::simplex(d);
  }
  throw ConfigError("make_set: invalid kind");
}

LearnerSpec spec_of(LearnerKind kind) {
  LearnerSpec s;
  s.kind = kind;
  return s;
}

AdversaryParams quad_adversary() {
  AdversaryParams p;
  p.kind = GeneratorKind::Quadratic;
  return p;
}

AdversaryParams linear_adversary() {
  AdversaryParams p;
  p.kind = GeneratorKind::Linear;
  return p;
}

AdversaryParams hinge_adversary() {
  AdversaryParams p;
  p.kind = GeneratorKind::Hinge;
  return p;
}

struct Setup {
  std::string label;
  LearnerSpec spec;
  AdversaryParams adv;
  CompositePart comp = CompositePart::none();
  SetKind set_kind = SetKind::Ball;
};

Trajectory run_setup(const Setup& s, std::uint64_t seed, int T, int d) {
  auto set = std::make_shared<const FeasibleSet>(make_set(s.set_kind, d));
  auto seq = std::make_shared<const AdversarySequence>(
      AdversarySequence(seed, T, *set, s.adv, s.comp));
  return run(s.spec, seq, set);
}

// min over all checks of theoretical + slack - empirical; negative means fail
struct Margins {
  int checks = 0;
  bool pass = true;
  double worst = std::numeric_limits<double>::infinity();
  std::string worst_name;

  void add(const BoundVerdict& v) {
    ++checks;
    pass = pass && v.pass;
    double margin = v.theoretical + v.slack - v.empirical;
    if (margin < worst) {
      worst = margin;
      worst_name = v.name;
    }
  }
  void merge(const Margins& o) {
    checks += o.checks;
    pass = pass && o.pass;
    if (o.worst < worst) {
      worst = o.worst;
      worst_name = o.worst_name;
    }
  }
  std::string describe() const {
    return fmt("%d checks, worst margin %.3g (%s)", checks, worst,
               worst_name.c_str());
  }
};

// criterion 1: both directions of the regret/forward-regret exchange hold
// with zero slack on every learner at T = 512, d in {2, 10}, 5 seeds
CriterionResult equivalence_criterion() {
  Timer timer;
  LearnerSpec batch = spec_of(LearnerKind::Batch);
  batch.batch_size = 16;  // divides 512
  std::vector<Setup> setups = {
      {"ftl", spec_of(LearnerKind::Ftl), quad_adversary()},
      {"ftrl", spec_of(LearnerKind::Ftrl), linear_adversary()},
      {"rda-strong", spec_of(LearnerKind::Rda), linear_adversary(),
       CompositePart::half_squared_l2(0.5)},
      {"rda-general", spec_of(LearnerKind::Rda), linear_adversary(),
       CompositePart::l1(0.3), SetKind::Box},
      {"rda-hinge", spec_of(LearnerKind::Rda), hinge_adversary(),
       CompositePart::half_squared_l2(0.5)},
      {"comid-strong", spec_of(LearnerKind::Comid), quad_adversary(),
       CompositePart::l1(0.2), SetKind::Box},
      {"comid-general", spec_of(LearnerKind::Comid), linear_adversary(),
       CompositePart::l1(0.2), SetKind::Box},
      {"iol-strong", spec_of(LearnerKind::Iol), quad_adversary()},
      {"iol-general", spec_of(LearnerKind::Iol), linear_adversary()},
      {"md", spec_of(LearnerKind::Md), linear_adversary()},
      {"batch", batch, quad_adversary()},
  };
  Setup entropic{"md-entropic", spec_of(LearnerKind::Md), linear_adversary(),
                 CompositePart::none(), SetKind::Simplex};
  entropic.spec.regularizer = RegKind::NegativeEntropy;
  setups.push_back(entropic);

  const int dims[] = {2, 10};
  const int kSeeds = 5, T = 512;
  int n = static_cast<int>(setups.size()) * 2 * kSeeds;
  std::vector<Margins> margins(n);
  std::vector<double> slacks(n, 0.0);
  parallel_for(n, [&](int i) {
    const Setup& s = setups[i / (2 * kSeeds)];
    int d = dims[(i / kSeeds) % 2];
    std::uint64_t seed = 1 + i % kSeeds;
    Trajectory traj = run_setup(s, seed, T, d);
    auto [vr, vf] = check_equivalence(traj);
    margins[i].add(vr);
    margins[i].add(vf);
    slacks[i] = std::max(vr.slack, vf.slack);
  });
  Margins total;
  double max_slack = 0.0;
  for (int i = 0; i < n; ++i) {
    total.merge(margins[i]);
    max_slack = std::max(max_slack, slacks[i]);
  }
  bool zero_slack = max_slack == 0.0;
  return {"pathwise-equivalence", total.pass && zero_slack,
          fmt("%d runs x 2 directions, worst margin %.3g, max slack %.3g, %.1fs",
              n, total.worst, max_slack, timer.seconds())};
}

// shared driver: run the setup grid and check the named bounds on each run
Margins bound_battery(const std::vector<Setup>& setups,
                      const std::vector<std::vector<std::string>>& bounds,
                      const std::vector<int>& horizons, const std::vector<int>& dims,
                      int seeds) {
  struct Case {
    int setup, T, d;
    std::uint64_t seed;
  };
  std::vector<Case> cases;
  for (int s = 0; s < static_cast<int>(setups.size()); ++s)
    for (int T : horizons)
      for (int d : dims)
        for (int seed = 1; seed <= seeds; ++seed)
          cases.push_back({s, T, d, static_cast<std::uint64_t>(seed)});
  std::vector<Margins> margins(cases.size());
  parallel_for(static_cast<int>(cases.size()), [&](int i) {
    const Case& c = cases[i];
    Trajectory traj = run_setup(setups[c.setup], c.seed, c.T, c.d);
    for (const std::string& name : bounds[c.setup])
      margins[i].add(check_bound(traj, name));
  });
  Margins total;
  for (const Margins& m : margins) total.merge(m);
  return total;
}

// criterion 2: log regret for follow-the-leader on quadratics, T = 1000
CriterionResult ftl_criterion() {
  Timer timer;
  Margins m = bound_battery(
      {{"ftl", spec_of(LearnerKind::Ftl), quad_adversary()}},
      {{"ftl_regret", "ftl_stability", "ftl_forward_regret"}}, {1000}, {2}, 5);
  return {"ftl-log-regret", m.pass, m.describe() + fmt(", %.1fs", timer.seconds())};
}

// criterion 3: sqrt-T regret for regularized leader on linear losses over
// ball and box, with the per-step stability cap at every round
CriterionResult ftrl_criterion() {
  Timer timer;
  Margins m = bound_battery(
      {{"ftrl-ball", spec_of(LearnerKind::Ftrl), linear_adversary()},
       {"ftrl-box", spec_of(LearnerKind::Ftrl), linear_adversary(),
        CompositePart::none(), SetKind::Box}},
      {{"ftrl_regret", "ftrl_step_stability"},
       {"ftrl_regret", "ftrl_step_stability"}},
      {256, 1024}, {2, 10}, 3);
  return {"ftrl-sqrt-regret", m.pass, m.describe() + fmt(", %.1fs", timer.seconds())};
}

// criterion 4: implicit updates in both regimes with the per-step cap
CriterionResult iol_criterion() {
  Timer timer;
  Margins m = bound_battery(
      {{"iol-general", spec_of(LearnerKind::Iol), linear_adversary()},
       {"iol-strong", spec_of(LearnerKind::Iol), quad_adversary()}},
      {{"iol_regret_general", "iol_step_stability"},
       {"iol_regret_strong", "iol_step_stability"}},
      {512}, {2}, 3);
  return {"iol-both-regimes", m.pass, m.describe() + fmt(", %.1fs", timer.seconds())};
}

// criterion 5: dual averaging with a strongly convex part (beta = 0) and the
// general sqrt-t auxiliary schedule with its derived constant
CriterionResult rda_criterion() {
  Timer timer;
  Margins m = bound_battery(
      {{"rda-strong", spec_of(LearnerKind::Rda), linear_adversary(),
        CompositePart::half_squared_l2(0.5)},
       {"rda-general", spec_of(LearnerKind::Rda), linear_adversary(),
        CompositePart::l1(0.3), SetKind::Box}},
      {{"rda_regret_strong", "rda_stability_strong"},
       {"rda_regret_general", "rda_stability_general"}},
      {512}, {2}, 3);
  return {"rda-both-regimes", m.pass, m.describe() + fmt(", %.1fs", timer.seconds())};
}

// criterion 6: composite mirror descent in both regimes; cumulative
// stability only, since per-step uniform stability is not guaranteed
CriterionResult comid_criterion() {
  Timer timer;
  Margins m = bound_battery(
      {{"comid-general", spec_of(LearnerKind::Comid), linear_adversary(),
        CompositePart::l1(0.2), SetKind::Box},
       {"comid-strong", spec_of(LearnerKind::Comid), quad_adversary(),
        CompositePart::l1(0.2), SetKind::Box}},
      {{"comid_regret_general", "comid_stability"},
       {"comid_regret_strong", "comid_stability"}},
      {512}, {2}, 3);
  return {"comid-both-regimes", m.pass,
          m.describe() + fmt(", %.1fs", timer.seconds())};
}

// criterion 7: blocked wrapper at B = ceil(sqrt(T)); the stability cap is an
// exact count (slack must be zero), regret is checked term-wise
CriterionResult wrapper_criterion() {
  Timer timer;
  const int T = 1024, kSeeds = 5;
  LearnerSpec spec = spec_of(LearnerKind::Batch);  // batch_size 0 -> ceil(sqrt(T))
  Setup setup{"batch", spec, quad_adversary()};
  std::vector<Margins> margins(kSeeds);
  std::vector<double> stab_slack(kSeeds, 0.0);
  parallel_for(kSeeds, [&](int i) {
    Trajectory traj = run_setup(setup, i + 1, T, 2);
    BoundVerdict stab = check_bound(traj, "wrapper_stability");
    margins[i].add(stab);
    margins[i].add(check_bound(traj, "wrapper_regret"));
    stab_slack[i] = stab.slack;
  });
  Margins total;
  double max_slack = 0.0;
  for (int i = 0; i < kSeeds; ++i) {
    total.merge(margins[i]);
    max_slack = std::max(max_slack, stab_slack[i]);
  }
  return {"batch-wrapper", total.pass && max_slack == 0.0,
          total.describe() +
              fmt(", stability slack %.3g, %.1fs", max_slack, timer.seconds())};
}

// criterion 8: regret growth exponents of the inexact variants, fitted over
// dyadic horizons 2^6..2^12, three seeds each
CriterionResult approx_criterion() {
  Timer timer;
  struct Family {
    std::string label;
    LearnerKind kind;
    DeltaSchedule::Kind delta;  // Constant means delta = 1/T per horizon
    double limit;
  };
  std::vector<Family> families = {
      {"rda d=c/sqrt(t)", LearnerKind::Rda, DeltaSchedule::Kind::InverseSqrtT, 0.6},
      {"ftrl d=1/T", LearnerKind::Ftrl, DeltaSchedule::Kind::Constant, 0.6},
      {"iol d=c/t", LearnerKind::Iol, DeltaSchedule::Kind::InverseT, 0.85},
      {"iol d=c/t^2", LearnerKind::Iol, DeltaSchedule::Kind::InverseT2, 0.6},
  };
  std::vector<int> horizons = dyadic_horizons(64, 4096);
  const int kSeeds = 3;
  int runs_per_family = kSeeds * static_cast<int>(horizons.size());
  int n = static_cast<int>(families.size()) * runs_per_family;
  std::vector<double> regrets(n, 0.0);
  parallel_for(n, [&](int i) {
    const Family& f = families[i / runs_per_family];
    int j = i % runs_per_family;
    std::uint64_t seed = 1 + j / horizons.size();
    int T = horizons[j % horizons.size()];
    LearnerSpec spec = spec_of(f.kind);
    spec.delta = f.delta == DeltaSchedule::Kind::Constant
                     ? DeltaSchedule{DeltaSchedule::Kind::Constant, 1.0 / T}
                     : DeltaSchedule{f.delta, 1.0};
    Setup s{f.label, spec, linear_adversary()};
    regrets[i] = measure(run_setup(s, seed, T, 2)).regret;
  });

  bool pass = true;
  std::string detail;
  for (std::size_t fi = 0; fi < families.size(); ++fi) {
    double worst = 0.0;
    for (int seed = 0; seed < kSeeds; ++seed) {
      std::vector<std::pair<int, double>> pts;
      for (std::size_t h = 0; h < horizons.size(); ++h) {
        int idx = static_cast<int>(fi) * runs_per_family +
                  seed * static_cast<int>(horizons.size()) + static_cast<int>(h);
        pts.emplace_back(horizons[h], regrets[idx]);
      }
      BoundVerdict v = check_slope(families[fi].label, pts, families[fi].limit);
      pass = pass && v.pass;
      worst = std::max(worst, v.empirical);
    }
    detail += fmt("%s%s slope %.3f<=%.2f", fi ? "; " : "",
                  families[fi].label.c_str(), worst, families[fi].limit);
  }
  return {"approx-slopes", pass, detail + fmt(", %.1fs", timer.seconds())};
}

Vector rand_vec(SplitMix64& rng, int d) {
  Vector v(d);
  for (int i = 0; i < d; ++i) v[i] = 2.0 * rng.next_double() - 1.0;
  return v;
}

// criterion 9: each closed-form update agrees with the certified iterative
// path to 1e-8 on random instances
CriterionResult closed_form_criterion() {
  Timer timer;
  const int kInstances = 100;
  struct Family {
    std::string label;
    std::function<double(SplitMix64&)> diff;  // one instance, returns |a - b|
  };
  Regularizer l2 = Regularizer::half_squared_l2();
  Regularizer entropy = Regularizer::negative_entropy();

  auto euclid_set = [](SplitMix64& rng, int d) {
    return rng.next_u64() % 2 == 0
               ? FeasibleSet::ball(Vector::Zero(d), 1.0)
               : FeasibleSet::box(Vector::Constant(d, -1.0), Vector::Constant(d, 1.0));
  };
  auto step = [](SplitMix64& rng) { return 0.05 + 0.45 * rng.next_double(); };

  std::vector<Family> families;
  families.push_back({"md-linear", [&](SplitMix64& rng) {
    int d = 2 + static_cast<int>(rng.next_u64() % 4);
    FeasibleSet set = euclid_set(rng, d);
    Vector w = set.sample(rng, 0.1), g = rand_vec(rng, d);
    double eta = step(rng);
    auto a = md_update(w, g, l2, eta, set, 1e-10, Route::FastPath);
    auto b = md_update(w, g, l2, eta, set, 1e-10, Route::Iterative);
    return (a.point - b.point).norm();
  }});
  families.push_back({"iol-linear", [&](SplitMix64& rng) {
    int d = 2 + static_cast<int>(rng.next_u64() % 4);
    FeasibleSet set = euclid_set(rng, d);
    Vector w = set.sample(rng, 0.1);
    Loss loss = Loss::linear(rand_vec(rng, d));
    double eta = step(rng);
    auto a = iol_update(w, loss, l2, eta, set, 1e-10, Route::FastPath);
    auto b = iol_update(w, loss, l2, eta, set, 1e-10, Route::Iterative);
    return (a.point - b.point).norm();
  }});
  families.push_back({"ftl-quadratic", [&](SplitMix64& rng) {
    int d = 2 + static_cast<int>(rng.next_u64() % 4);
    FeasibleSet set = euclid_set(rng, d);
    int k = 1 + static_cast<int>(rng.next_u64() % 5);
    std::vector<Loss> history;
    for (int i = 0; i < k; ++i)
      history.push_back(Loss::quadratic(set.sample(rng, 0.1),
                                        0.5 + rng.next_double()));
    auto a = ftl_update(history, set, 1e-10, Route::FastPath);
    auto b = ftl_update(history, set, 1e-10, Route::Iterative);
    return (a.point - b.point).norm();
  }});
  families.push_back({"comid-l1", [&](SplitMix64& rng) {
    int d = 2 + static_cast<int>(rng.next_u64() % 4);
    FeasibleSet set =
        FeasibleSet::box(Vector::Constant(d, -1.0), Vector::Constant(d, 1.0));
    CompositePart r = CompositePart::l1(0.1 + 0.4 * rng.next_double());
    r.bind(set);
    Vector w = set.sample(rng, 0.1), g = rand_vec(rng, d);
    double eta = step(rng);
    auto a = comid_update(w, g, r, l2, eta, set, 1e-10, Route::FastPath);
    auto b = comid_update(w, g, r, l2, eta, set, 1e-10, Route::Iterative);
    return (a.point - b.point).norm();
  }});
  families.push_back({"md-entropic", [&](SplitMix64& rng) {
    int d = 2 + static_cast<int>(rng.next_u64() % 4);
    FeasibleSet set = FeasibleSet::simplex(d);
    Vector w = set.sample(rng, 0.2), g = rand_vec(rng, d);
    double eta = step(rng);
    auto a = md_update(w, g, entropy, eta, set, 1e-10, Route::FastPath);
    auto b = md_update(w, g, entropy, eta, set, 1e-10, Route::Iterative);
    return (a.point - b.point).norm();
  }});

  bool pass = true;
  std::string detail;
  for (std::size_t fi = 0; fi < families.size(); ++fi) {
    std::vector<double> diffs(kInstances, 0.0);
    parallel_for(kInstances, [&](int i) {
      SplitMix64 rng(SplitMix64::mix(0x0a11ce5ull + fi, i));
      diffs[i] = families[fi].diff(rng);
    });
    double worst = 0.0;
    for (double v : diffs) worst = std::max(worst, v);
    pass = pass && worst <= 1e-8;
    detail += fmt("%s%s %.2g", fi ? "; " : "", families[fi].label.c_str(), worst);
  }
  return {"closed-form-oracles", pass,
          detail + fmt(" (tol 1e-8), %.1fs", timer.seconds())};
}

// scans the set's bounding box at 1e-3 resolution; box endpoints land on the
// lattice exactly, infeasible lattice points are skipped
template <typename F>
Vector grid_argmin(const FeasibleSet& set, F&& obj) {
  const double step = 1e-3;
  Vector lo(2), hi(2);
  if (set.kind() == SetKind::Ball) {
    lo = set.center().array() - set.radius();
    hi = set.center().array() + set.radius();
  } else {
    lo = set.lower();
    hi = set.upper();
  }
  long nx = std::lround((hi[0] - lo[0]) / step);
  long ny = std::lround((hi[1] - lo[1]) / step);
  double best = std::numeric_limits<double>::infinity();
  Vector arg = set.project(lo), w(2);
  for (long ix = 0; ix <= nx; ++ix) {
    w[0] = lo[0] + ix * step;
    for (long iy = 0; iy <= ny; ++iy) {
      w[1] = lo[1] + iy * step;
      if (!set.contains(w)) continue;
      double v = obj(w);
      if (v < best) {
        best = v;
        arg = w;
      }
    }
  }
  return arg;
}

// the 2-simplex is the segment (x, 1-x); scan x directly
template <typename F>
Vector grid_argmin_simplex(F&& obj) {
  const double step = 1e-3;
  double best = std::numeric_limits<double>::infinity();
  Vector arg(2), w(2);
  arg << 0.5, 0.5;
  for (long i = 0; i <= 1000; ++i) {
    w[0] = i * step;
    w[1] = 1.0 - w[0];
    double v = obj(w);
    if (v < best) {
      best = v;
      arg = w;
    }
  }
  return arg;
}

// criterion 10: every update objective at d = 2 against brute-force grid
// minimization; each family mirrors the objective its update documents
CriterionResult grid_criterion() {
  Timer timer;
  const int kInstances = 20;
  const double kTol = 2e-3;
  Regularizer l2 = Regularizer::half_squared_l2();
  Regularizer entropy = Regularizer::negative_entropy();

  auto euclid_set = [](SplitMix64& rng) {
    return rng.next_u64() % 2 == 0
               ? FeasibleSet::ball(Vector::Zero(2), 1.0)
               : FeasibleSet::box(Vector::Constant(2, -1.0), Vector::Constant(2, 1.0));
  };
  auto step = [](SplitMix64& rng) { return 0.1 + 0.4 * rng.next_double(); };

  struct Family {
    std::string label;
    std::function<double(SplitMix64&)> dist;  // |update - grid argmin|
  };
  std::vector<Family> families;
  families.push_back({"ftl", [&](SplitMix64& rng) {
    FeasibleSet set = euclid_set(rng);
    int k = 1 + static_cast<int>(rng.next_u64() % 3);
    std::vector<Loss> history;
    for (int i = 0; i < k; ++i)
      history.push_back(Loss::quadratic(set.sample(rng, 0.1),
                                        0.5 + rng.next_double()));
    Vector w = ftl_update(history, set).point;
    Vector g = grid_argmin(set, [&](const Vector& u) {
      double v = 0.0;
      for (const Loss& l : history) v += l.value(u);
      return v;
    });
    return (w - g).norm();
  }});
  families.push_back({"ftrl", [&](SplitMix64& rng) {
    FeasibleSet set = euclid_set(rng);
    int k = 1 + static_cast<int>(rng.next_u64() % 3);
    std::vector<Loss> history;
    for (int i = 0; i < k; ++i) history.push_back(Loss::linear(rand_vec(rng, 2)));
    double eta = step(rng);
    Vector w = ftrl_update(history, l2, eta, set).point;
    Vector g = grid_argmin(set, [&](const Vector& u) {
      double v = l2.value(u) / eta;
      for (const Loss& l : history) v += l.value(u);
      return v;
    });
    return (w - g).norm();
  }});
  families.push_back({"rda", [&](SplitMix64& rng) {
    FeasibleSet set =
        FeasibleSet::box(Vector::Constant(2, -1.0), Vector::Constant(2, 1.0));
    Vector sum = rand_vec(rng, 2);
    int t = 1 + static_cast<int>(rng.next_u64() % 5);
    bool strong = rng.next_u64() % 2 == 0;
    CompositePart r = strong ? CompositePart::half_squared_l2(0.3 + 0.4 * rng.next_double())
                             : CompositePart::l1(0.1 + 0.3 * rng.next_double());
    r.bind(set);
    double beta = strong ? 0.0 : std::sqrt(double(t));
    Vector w = rda_update(sum, t, r, l2, beta, set).point;
    Vector g = grid_argmin(set, [&](const Vector& u) {
      return sum.dot(u) + t * r.value(u) + beta * l2.value(u);
    });
    return (w - g).norm();
  }});
  families.push_back({"comid", [&](SplitMix64& rng) {
    FeasibleSet set =
        FeasibleSet::box(Vector::Constant(2, -1.0), Vector::Constant(2, 1.0));
    CompositePart r = CompositePart::l1(0.1 + 0.3 * rng.next_double());
    r.bind(set);
    Vector wt = set.sample(rng, 0.1), grad = rand_vec(rng, 2);
    double eta = step(rng);
    Vector w = comid_update(wt, grad, r, l2, eta, set).point;
    Vector g = grid_argmin(set, [&](const Vector& u) {
      return eta * (grad.dot(u) + r.value(u)) + l2.bregman(u, wt);
    });
    return (w - g).norm();
  }});
  families.push_back({"iol", [&](SplitMix64& rng) {
    FeasibleSet set = euclid_set(rng);
    Vector wt = set.sample(rng, 0.1);
    Loss loss = Loss::quadratic(set.sample(rng, 0.1), 0.5 + rng.next_double());
    double eta = step(rng);
    Vector w = iol_update(wt, loss, l2, eta, set).point;
    Vector g = grid_argmin(set, [&](const Vector& u) {
      return l2.bregman(u, wt) + eta * loss.value(u);
    });
    return (w - g).norm();
  }});
  families.push_back({"md", [&](SplitMix64& rng) {
    FeasibleSet set = euclid_set(rng);
    Vector wt = set.sample(rng, 0.1), grad = rand_vec(rng, 2);
    double eta = step(rng);
    Vector w = md_update(wt, grad, l2, eta, set).point;
    Vector g = grid_argmin(set, [&](const Vector& u) {
      return eta * grad.dot(u) + l2.bregman(u, wt);
    });
    return (w - g).norm();
  }});
  families.push_back({"md-entropic", [&](SplitMix64& rng) {
    FeasibleSet set = FeasibleSet::simplex(2);
    Vector wt = set.sample(rng, 0.2), grad = rand_vec(rng, 2);
    double eta = step(rng);
    Vector w = md_update(wt, grad, entropy, eta, set).point;
    Vector g = grid_argmin_simplex([&](const Vector& u) {
      return eta * grad.dot(u) + entropy.bregman(u, wt);
    });
    return (w - g).norm();
  }});

  bool pass = true;
  std::string detail;
  for (std::size_t fi = 0; fi < families.size(); ++fi) {
    std::vector<double> dists(kInstances, 0.0);
    parallel_for(kInstances, [&](int i) {
      SplitMix64 rng(SplitMix64::mix(0x9c1dull + fi, i));
      dists[i] = families[fi].dist(rng);
    });
    double worst = 0.0;
    for (double v : dists) worst = std::max(worst, v);
    pass = pass && worst <= kTol;
    detail += fmt("%s%s %.2g", fi ? "; " : "", families[fi].label.c_str(), worst);
  }
  return {"grid-oracle", pass, detail + fmt(" (tol 2e-3), %.1fs", timer.seconds())};
}

}  // namespace

std::vector<std::string> acceptance_suites() {
  return {"equivalence", "bounds-exact", "wrapper", "bounds-approx", "oracles"};
}

std::vector<CriterionResult> run_acceptance_suite(const std::string& suite) {
  if (suite == "equivalence") return {equivalence_criterion()};
  if (suite == "bounds-exact")
    return {ftl_criterion(), ftrl_criterion(), iol_criterion(), rda_criterion(),
            comid_criterion()};
  if (suite == "wrapper") return {wrapper_criterion()};
  if (suite == "bounds-approx") return {approx_criterion()};
  if (suite == "oracles") return {closed_form_criterion(), grid_criterion()};
  if (suite == "all") {
    std::vector<CriterionResult> all;
    for (const std::string& s : acceptance_suites())
      for (CriterionResult& r : run_acceptance_suite(s))
        all.push_back(std::move(r));
    return all;
  }
  throw ConfigError("unknown acceptance suite: " + suite);
}

}  // namespace regretlab
