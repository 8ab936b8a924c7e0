#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "regretlab/solver.hpp"

#include <cmath>

using namespace regretlab;

namespace {

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

// mu-strongly convex quadratic (mu/2)|w - c|^2 as an inner objective
InnerObjective quad_objective(const FeasibleSet& set, const Vector& c, double mu,
                              double l1 = 0.0) {
  InnerObjective obj;
  obj.set = &set;
  obj.smooth_value = [c, mu](const Vector& w) { return 0.5 * mu * (w - c).squaredNorm(); };
  obj.smooth_grad = [c, mu](const Vector& w) { return (mu * (w - c)).eval(); };
  obj.smoothness = mu;
  obj.strong_convexity = mu;
  obj.l1_weight = l1;
  QuadraticForm f;
  f.q = mu;
  f.b = mu * c;
  f.c = 0.5 * mu * c.squaredNorm();
  obj.quadratic = f;
  return obj;
}

}  // namespace

TEST_CASE("prox_model_min matches the grid oracle on every set kind") {
  auto box = FeasibleSet::box(vec2(-1.0, -1.0), vec2(1.0, 1.0));
  auto simplex = FeasibleSet::simplex(2);
  auto ball = FeasibleSet::ball(vec2(0.0, 0.0), 1.0);
  SplitMix64 rng(3);
  for (int k = 0; k < 25; ++k) {
    Vector z(2);
    z << 4.0 * rng.next_double() - 2.0, 4.0 * rng.next_double() - 2.0;
    double lam = rng.next_double();
    double m = 0.5 + 2.0 * rng.next_double();
    for (const auto& set : {box, simplex, ball}) {
      Vector u = prox_model_min(set, lam, z, m);
      CHECK(set.contains(u, 1e-9));
      auto f = [&](const Vector& w) {
        return lam * w.lpNorm<1>() + 0.5 * m * (w - z).squaredNorm();
      };
      Vector g = oracles::grid_minimize(set, f);
      CHECK(f(u) <= f(g) + 1e-9);
    }
  }
}

TEST_CASE("origin ball prox lands inside or exactly on the sphere") {
  auto ball = FeasibleSet::ball(vec2(0.0, 0.0), 1.0);
  // interior case: soft-threshold already feasible
  Vector u1 = prox_model_min(ball, 0.5, vec2(0.6, 0.2), 1.0);
  CHECK(u1.norm() < 1.0);
  CHECK(u1[0] == doctest::Approx(0.1));
  CHECK(u1[1] == doctest::Approx(0.0));
  // boundary case: multiplier bisection
  Vector u2 = prox_model_min(ball, 0.2, vec2(4.0, 3.0), 1.0);
  CHECK(u2.norm() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(prox_model_min(FeasibleSet::ball(vec2(1.0, 0.0), 1.0), 0.2,
                                 vec2(4.0, 3.0), 1.0),
                  ConfigError);
}

TEST_CASE("quadratic over a box containing the center returns it exactly") {
  auto box = FeasibleSet::box(vec2(-1.0, -1.0), vec2(1.0, 1.0));
  Vector c = vec2(0.25, -0.5);
  auto obj = quad_objective(box, c, 1.0);
  SolverOptions opts;
  auto res = solve(obj, vec2(0.9, 0.9), opts);
  CHECK((res.point - c).norm() == 0.0);
  CHECK(res.certificate.achieved == 0.0);
  CHECK(res.certificate.status == SolveStatus::Certified);
}

TEST_CASE("linear-plus-proximity over a ball matches the projected step closed form") {
  auto ball = FeasibleSet::ball(vec2(0.5, -0.5), 1.5);
  Vector wt = vec2(0.8, 0.1);
  Vector g = vec2(2.0, -1.0);
  double eta = 0.3;
  // eta g.w + 1/2 |w - w_t|^2 has unconstrained minimizer w_t - eta g
  InnerObjective obj;
  obj.set = &ball;
  obj.smooth_value = [&](const Vector& w) {
    return eta * g.dot(w) + 0.5 * (w - wt).squaredNorm();
  };
  obj.smooth_grad = [&](const Vector& w) { return (eta * g + w - wt).eval(); };
  obj.smoothness = 1.0;
  obj.strong_convexity = 1.0;
  QuadraticForm f;
  f.q = 1.0;
  f.b = wt - eta * g;
  obj.quadratic = f;

  Vector closed = ball.project(wt - eta * g);
  auto fast = solve(obj, wt, SolverOptions{});
  CHECK((fast.point - closed).norm() <= 1e-12);

  SolverOptions it;
  it.allow_fast_path = false;
  it.target_delta = 1e-10;
  it.polish = true;
  auto iter = solve(obj, wt, it);
  CHECK(iter.certificate.status == SolveStatus::Certified);
  CHECK((iter.point - closed).norm() <= 1e-8);
}

TEST_CASE("dual-averaging inner problem matches its first-order closed form") {
  // sum g.w + t (lam/2)|w|^2 minimized at the projection of -sum g/(t lam)
  auto ball = FeasibleSet::ball(vec2(0.0, 0.0), 1.0);
  Vector sum_g = vec2(3.0, -1.5);
  double lam = 0.8;
  int t = 5;
  InnerObjective obj;
  obj.set = &ball;
  obj.smooth_value = [&](const Vector& w) {
    return sum_g.dot(w) + 0.5 * t * lam * w.squaredNorm();
  };
  obj.smooth_grad = [&](const Vector& w) { return (sum_g + t * lam * w).eval(); };
  obj.smoothness = t * lam;
  obj.strong_convexity = t * lam;
  QuadraticForm f;
  f.q = t * lam;
  f.b = -sum_g;
  obj.quadratic = f;

  Vector closed = ball.project(-sum_g / (t * lam));
  auto fast = solve(obj, vec2(0.0, 0.0), SolverOptions{});
  CHECK((fast.point - closed).norm() <= 1e-12);

  SolverOptions it;
  it.allow_fast_path = false;
  it.polish = true;
  auto iter = solve(obj, vec2(0.0, 0.0), it);
  CHECK((iter.point - closed).norm() <= 1e-8);
}

TEST_CASE("certificates are sound against closed-form minima") {
  SplitMix64 rng(9);
  auto box = FeasibleSet::box(vec2(-1.0, -1.0), vec2(1.0, 1.0));
  for (int k = 0; k < 50; ++k) {
    Vector c(2);
    c << 3.0 * rng.next_double() - 1.5, 3.0 * rng.next_double() - 1.5;
    double mu = 0.5 + rng.next_double();
    auto obj = quad_objective(box, c, mu);
    Vector wstar = box.project(c);
    double fstar = obj.smooth_value(wstar);
    // evaluate the certificate at arbitrary points: it must upper-bound the gap
    Vector w = box.sample(rng);
    double gap = obj.smooth_value(w) - fstar;
    CHECK(certificate_at(obj, w) >= gap - 1e-10);
    // and a certified solve respects its own bound
    SolverOptions opts;
    opts.allow_fast_path = false;
    opts.target_delta = 1e-6;
    auto res = solve(obj, w, opts);
    CHECK(res.certificate.status == SolveStatus::Certified);
    CHECK(obj.smooth_value(res.point) - fstar <= res.certificate.achieved + 1e-12);
    CHECK((res.point - wstar).norm() <=
          delta_to_distance(res.certificate.achieved, mu) + 1e-9);
  }
}

TEST_CASE("delta-to-distance conversion bounds the iterate error") {
  CHECK(delta_to_distance(1e-8, 2.0) == doctest::Approx(1e-4));
  CHECK(delta_to_distance(0.0, 2.0) == 0.0);
  CHECK(delta_to_distance(1e-8, 0.0) == 0.0);
}

TEST_CASE("decreasing the target never increases the achieved value") {
  auto box = FeasibleSet::box(vec2(-1.0, -1.0), vec2(1.0, 1.0));
  auto obj = quad_objective(box, vec2(0.4, 0.9), 2.0, 0.3);
  SolverOptions coarse;
  coarse.allow_fast_path = false;
  coarse.target_delta = 1e-3;
  auto first = solve(obj, vec2(-0.9, -0.9), coarse);
  SolverOptions fine;
  fine.allow_fast_path = false;
  fine.target_delta = 1e-9;
  auto second = solve(obj, first.point, fine);
  CHECK(obj.full_value(second.point) <= obj.full_value(first.point) + 1e-15);
  CHECK(second.certificate.achieved <= 1e-9);
}

TEST_CASE("iterative path agrees with the l1 fast path") {
  auto box = FeasibleSet::box(vec2(-1.0, -1.0), vec2(1.0, 1.0));
  auto obj = quad_objective(box, vec2(0.7, -0.2), 1.5, 0.4);
  auto fast = solve(obj, vec2(0.0, 0.0), SolverOptions{});
  SolverOptions it;
  it.allow_fast_path = false;
  it.polish = true;
  auto iter = solve(obj, vec2(0.0, 0.0), it);
  CHECK((fast.point - iter.point).norm() <= 1e-8);
  // soft-threshold structure: the x-coordinate shrinks by lam/mu
  CHECK(fast.point[0] == doctest::Approx(0.7 - 0.4 / 1.5));
}

TEST_CASE("entropic closed form matches the iterative mirror path") {
  auto simplex = FeasibleSet::simplex(3);
  Vector lin(3);
  lin << 0.8, -0.3, 0.2;
  Vector ref(3);
  ref << 0.5, 0.3, 0.2;
  double coeff = 0.7;
  InnerObjective obj;
  obj.set = &simplex;
  obj.kernel = SolveKernel::Entropic;
  obj.smooth_value = [&](const Vector& w) {
    double kl = 0.0;
    for (int i = 0; i < 3; ++i)
      kl += w[i] * std::log(std::max(w[i], 1e-300) / ref[i]) + ref[i] - w[i];
    return lin.dot(w) + coeff * kl;
  };
  obj.smooth_grad = [&](const Vector& w) {
    Vector g(3);
    for (int i = 0; i < 3; ++i)
      g[i] = lin[i] + coeff * std::log(std::max(w[i], 1e-12) / ref[i]);
    return g;
  };
  obj.strong_convexity = coeff;  // relative to the simplex geometry
  obj.rel_smoothness = coeff;
  EntropicProxTag tag;
  tag.lin = lin;
  tag.ref = ref;
  tag.coeff = coeff;
  obj.entropic = tag;

  auto fast = solve(obj, Vector::Constant(3, 1.0 / 3.0), SolverOptions{});
  // closed form: w_i proportional to ref_i exp(-lin_i / coeff)
  Vector expect(3);
  for (int i = 0; i < 3; ++i) expect[i] = ref[i] * std::exp(-lin[i] / coeff);
  expect /= expect.sum();
  CHECK((fast.point - expect).norm() <= 1e-12);

  SolverOptions it;
  it.allow_fast_path = false;
  it.polish = true;
  auto iter = solve(obj, Vector::Constant(3, 1.0 / 3.0), it);
  CHECK(iter.certificate.status == SolveStatus::Certified);
  CHECK((iter.point - expect).norm() <= 1e-8);
}

TEST_CASE("nonsmooth objectives certify through the subgradient engine") {
  auto box = FeasibleSet::box(vec2(-1.0, -1.0), vec2(1.0, 1.0));
  auto hinge = Loss::hinge(vec2(1.0, 0.5), 0.2);
  Vector c = vec2(0.3, -0.6);
  InnerObjective obj;
  obj.set = &box;
  obj.smooth_value = [&](const Vector& w) {
    return hinge.value(w) + 1.0 * (0.5 * (w - c).squaredNorm());
  };
  obj.smooth_grad = [&](const Vector& w) {
    return (hinge.subgradient(w) + (w - c)).eval();
  };
  obj.smoothness = -1.0;
  obj.strong_convexity = 1.0;
  SolverOptions opts;
  opts.target_delta = 1e-8;
  auto res = solve(obj, vec2(0.0, 0.0), opts);
  CHECK(res.certificate.status == SolveStatus::Certified);
  Vector g = oracles::grid_minimize(
      box, [&](const Vector& w) { return obj.smooth_value(w); }, 2e-4);
  CHECK(obj.smooth_value(res.point) <= obj.smooth_value(g) + 1e-7);
}

TEST_CASE("kink-pinned optima still reach tight certificates") {
  // f = max(0, w_x - b) + 1/2 |w|^2 with b in (-1, 0): the optimum sits
  // exactly at the hinge kink (w_x = b) where no single subgradient model
  // can certify; the mixed lower bound must
  auto box = FeasibleSet::box(vec2(-1.0, -1.0), vec2(1.0, 1.0));
  for (double b : {-0.3, -0.55, -0.8}) {
    auto hinge = Loss::hinge(vec2(1.0, 0.0), b);
    InnerObjective obj;
    obj.set = &box;
    obj.smooth_value = [&](const Vector& w) {
      return hinge.value(w) + 0.5 * w.squaredNorm();
    };
    obj.smooth_grad = [&](const Vector& w) {
      return (hinge.subgradient(w) + w).eval();
    };
    obj.smoothness = -1.0;
    obj.strong_convexity = 1.0;
    SolverOptions opts;
    opts.target_delta = 1e-8;
    auto res = solve(obj, vec2(0.9, 0.9), opts);
    CHECK(res.certificate.status == SolveStatus::Certified);
    CHECK(res.certificate.achieved <= 1e-8);
    CHECK((res.point - vec2(b, 0.0)).norm() <=
          delta_to_distance(res.certificate.achieved, 1.0) + 1e-9);
  }
}

TEST_CASE("iteration caps produce Truncated with the best certificate") {
  auto box = FeasibleSet::box(vec2(-1.0, -1.0), vec2(1.0, 1.0));
  auto hinge = Loss::hinge(vec2(1.0, 0.0), -0.3);
  InnerObjective obj;
  obj.set = &box;
  obj.smooth_value = [&](const Vector& w) {
    return hinge.value(w) + 0.005 * w.squaredNorm();
  };
  obj.smooth_grad = [&](const Vector& w) {
    return (hinge.subgradient(w) + 0.01 * w).eval();
  };
  obj.smoothness = -1.0;
  obj.strong_convexity = 0.01;
  SolverOptions opts;
  opts.target_delta = 1e-12;
  opts.max_iters = 3;
  auto res = solve(obj, vec2(0.9, 0.9), opts);
  CHECK(res.certificate.achieved > 0.0);
  // whatever the status, the reported certificate stays sound
  double fstar = 0.005 * 0.3 * 0.3;  // optimum at (-0.3, 0) for this scaling
  double val = obj.smooth_value(res.point);
  CHECK(val - fstar <= res.certificate.achieved + 1e-9);
}

TEST_CASE("solve validates its preconditions") {
  InnerObjective obj;
  CHECK_THROWS_AS(solve(obj, Vector::Zero(2), SolverOptions{}), ConfigError);
  auto box = FeasibleSet::box(vec2(-1.0, -1.0), vec2(1.0, 1.0));
  obj.set = &box;
  obj.smooth_value = [](const Vector& w) { return w.squaredNorm(); };
  obj.smooth_grad = [](const Vector& w) { return (2.0 * w).eval(); };
  obj.smoothness = 2.0;
  obj.strong_convexity = 0.0;
  CHECK_THROWS_AS(solve(obj, Vector::Zero(2), SolverOptions{}), ConfigError);
}

TEST_CASE("solve_exact polishes to the fixed point of the prox map") {
  auto box = FeasibleSet::box(vec2(-1.0, -1.0), vec2(1.0, 1.0));
  auto obj = quad_objective(box, vec2(0.3, 0.8), 2.0);
  obj.quadratic.reset();  // force the iterative engine
  auto res = solve_exact(obj, vec2(-0.5, 0.0));
  CHECK(res.certificate.status == SolveStatus::Certified);
  CHECK((res.point - vec2(0.3, 0.8)).norm() <= 1e-12);
}
