#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "regretlab/geometry.hpp"

#include <cmath>

using namespace regretlab;

namespace {

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

Vector vec3(double a, double b, double c) {
  Vector v(3);
  v << a, b, c;
  return v;
}

// variational inequality at the projection: <x - p, u - p> <= 0 for u in C
double vi_violation(const FeasibleSet& set, const Vector& x, const Vector& p,
                    SplitMix64& rng, int trials = 200) {
  double worst = 0.0;
  for (int k = 0; k < trials; ++k) {
    Vector u = set.sample(rng);
    worst = std::max(worst, (x - p).dot(u - p));
  }
  return worst;
}

}  // namespace

TEST_CASE("ball projection keeps interior points and radially maps exterior ones") {
  auto set = FeasibleSet::ball(vec2(1.0, -0.5), 2.0);
  Vector inside = vec2(1.5, 0.0);
  CHECK((set.project(inside) - inside).norm() == doctest::Approx(0.0));

  Vector outside = vec2(10.0, 4.0);
  Vector p = set.project(outside);
  CHECK((p - set.center()).norm() == doctest::Approx(2.0));
  // projected point lies on the segment from center to x
  Vector d1 = (outside - set.center()).normalized();
  Vector d2 = (p - set.center()).normalized();
  CHECK((d1 - d2).norm() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("box projection clamps coordinatewise") {
  auto set = FeasibleSet::box(vec2(-1.0, 0.0), vec2(1.0, 3.0));
  CHECK((set.project(vec2(-5.0, 1.0)) - vec2(-1.0, 1.0)).norm() == doctest::Approx(0.0));
  CHECK((set.project(vec2(0.5, 9.0)) - vec2(0.5, 3.0)).norm() == doctest::Approx(0.0));
  CHECK((set.project(vec2(0.2, 0.2)) - vec2(0.2, 0.2)).norm() == doctest::Approx(0.0));
}

TEST_CASE("simplex projection matches the nearest-point grid oracle") {
  auto set = FeasibleSet::simplex(2);
  for (Vector x : {vec2(0.9, 0.4), vec2(-1.0, 0.3), vec2(2.0, 2.0), vec2(-3.0, -4.0)}) {
    Vector p = set.project(x);
    CHECK(set.contains(p));
    Vector q = oracles::grid_minimize(
        set, [&](const Vector& u) { return (u - x).squaredNorm(); }, 1e-3);
    CHECK((p - q).norm() < 3e-3);
  }
}

TEST_CASE("simplex projection satisfies the variational inequality at vertices") {
  auto set = FeasibleSet::simplex(5);
  SplitMix64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Vector x(5);
    for (int i = 0; i < 5; ++i) x[i] = 4.0 * rng.next_double() - 2.0;
    Vector p = set.project(x);
    CHECK(set.contains(p, 1e-12));
    for (int j = 0; j < 5; ++j) {
      Vector e = Vector::Zero(5);
      e[j] = 1.0;
      CHECK((x - p).dot(e - p) <= 1e-10);
    }
  }
}

TEST_CASE("projections onto every set kind satisfy the variational inequality") {
  SplitMix64 rng(11);
  auto ball = FeasibleSet::ball(vec3(0.5, 0.0, -1.0), 1.5);
  auto box = FeasibleSet::box(vec3(-1.0, -2.0, 0.0), vec3(1.0, 0.0, 2.0));
  auto simplex = FeasibleSet::simplex(3);
  for (const auto& set : {ball, box, simplex}) {
    for (int trial = 0; trial < 20; ++trial) {
      Vector x(3);
      for (int i = 0; i < 3; ++i) x[i] = 6.0 * rng.next_double() - 3.0;
      Vector p = set.project(x);
      CHECK(set.contains(p));
      CHECK(vi_violation(set, x, p, rng) <= 1e-9);
    }
  }
}

TEST_CASE("diameters match the advertised closed forms") {
  auto ball = FeasibleSet::ball(vec2(3.0, 1.0), 1.25);
  CHECK(ball.diameter(NormKind::L2) == doctest::Approx(2.5));
  CHECK(ball.diameter(NormKind::L1) == doctest::Approx(2.5 * std::sqrt(2.0)));

  auto box = FeasibleSet::box(vec2(-1.0, 0.0), vec2(2.0, 4.0));
  CHECK(box.diameter(NormKind::L2) == doctest::Approx(5.0));
  CHECK(box.diameter(NormKind::L1) == doctest::Approx(7.0));

  auto simplex = FeasibleSet::simplex(4);
  CHECK(simplex.diameter(NormKind::L2) == doctest::Approx(std::sqrt(2.0)));
  CHECK(simplex.diameter(NormKind::L1) == doctest::Approx(2.0));
}

TEST_CASE("diameters dominate sampled pairwise distances") {
  SplitMix64 rng(23);
  auto ball = FeasibleSet::ball(vec3(0.0, 1.0, 0.0), 2.0);
  auto box = FeasibleSet::box(vec3(-1.0, -1.0, -1.0), vec3(1.0, 2.0, 3.0));
  auto simplex = FeasibleSet::simplex(3);
  for (const auto& set : {ball, box, simplex}) {
    for (auto norm : {NormKind::L2, NormKind::L1}) {
      double best = 0.0;
      for (int k = 0; k < 300; ++k) {
        Vector a = set.sample(rng), b = set.sample(rng);
        best = std::max(best, norm_of(a - b, norm));
      }
      CHECK(best <= set.diameter(norm) + 1e-9);
      // sampling should get reasonably close to the sup
      CHECK(best >= 0.4 * set.diameter(norm));
    }
  }
}

TEST_CASE("samples stay inside and margin keeps them off the boundary") {
  SplitMix64 rng(5);
  auto ball = FeasibleSet::ball(vec2(1.0, 1.0), 1.0);
  auto box = FeasibleSet::box(vec2(0.0, 0.0), vec2(1.0, 1.0));
  auto simplex = FeasibleSet::simplex(4);
  for (int k = 0; k < 200; ++k) {
    CHECK(ball.contains(ball.sample(rng)));
    CHECK(box.contains(box.sample(rng)));
    CHECK(simplex.contains(simplex.sample(rng)));
  }
  for (int k = 0; k < 200; ++k) {
    Vector b = ball.sample(rng, 0.3);
    CHECK((b - ball.center()).norm() <= 0.7 + 1e-12);
    Vector s = simplex.sample(rng, 0.3);
    CHECK(s.minCoeff() >= 0.3 * 0.25 - 1e-12);
  }
}

TEST_CASE("sampling is deterministic in the seed") {
  auto set = FeasibleSet::simplex(6);
  SplitMix64 a(99), b(99);
  for (int k = 0; k < 10; ++k)
    CHECK((set.sample(a) - set.sample(b)).norm() == 0.0);
}

TEST_CASE("max_distance dominates sampled distances and is attained") {
  SplitMix64 rng(31);
  auto ball = FeasibleSet::ball(vec2(2.0, 0.0), 1.0);
  auto box = FeasibleSet::box(vec2(-1.0, -1.0), vec2(3.0, 2.0));
  auto simplex = FeasibleSet::simplex(2);
  Vector c = vec2(0.5, 0.5);
  for (const auto& set : {ball, box, simplex}) {
    for (auto norm : {NormKind::L2, NormKind::L1}) {
      double reported = set.max_distance(c, norm);
      double best = 0.0;
      for (int k = 0; k < 2000; ++k)
        best = std::max(best, norm_of(set.sample(rng) - c, norm));
      CHECK(best <= reported + 1e-9);
      CHECK(best >= 0.8 * reported);
    }
  }
  // hand-worked: farthest ball point from (0.5, 0.5) in l2 is along the line
  // through the center, at distance |(2,0)-(0.5,0.5)| + 1
  CHECK(ball.max_distance(c, NormKind::L2) ==
        doctest::Approx(std::sqrt(2.25 + 0.25) + 1.0));
  CHECK(box.max_distance(c, NormKind::L1) == doctest::Approx(2.5 + 1.5));
}

TEST_CASE("invalid set constructions are rejected") {
  CHECK_THROWS_AS(FeasibleSet::ball(vec2(0.0, 0.0), 0.0), ConfigError);
  CHECK_THROWS_AS(FeasibleSet::ball(vec2(0.0, 0.0), -1.0), ConfigError);
  CHECK_THROWS_AS(FeasibleSet::box(vec2(1.0, 0.0), vec2(0.0, 1.0)), ConfigError);
  CHECK_THROWS_AS(FeasibleSet::box(vec2(0.0, 0.0), Vector(3)), ConfigError);
  CHECK_THROWS_AS(FeasibleSet::simplex(0), ConfigError);
}

TEST_CASE("half-squared-l2 value, gradient, and bregman agree with direct formulas") {
  auto reg = Regularizer::half_squared_l2();
  Vector w = vec3(0.3, -1.2, 2.0);
  CHECK(reg.value(w) == doctest::Approx(0.5 * w.squaredNorm()));
  Vector fd = oracles::finite_difference_gradient(
      [&](const Vector& u) { return reg.value(u); }, w);
  CHECK((reg.gradient(w) - fd).norm() < 1e-6);
  Vector y = vec3(1.0, 0.0, -1.0);
  CHECK(reg.bregman(w, y) == doctest::Approx(0.5 * (w - y).squaredNorm()));
}

TEST_CASE("negative entropy matches the direct formula on the simplex interior") {
  auto reg = Regularizer::negative_entropy();
  Vector w = vec3(0.2, 0.5, 0.3);
  double direct = 0.0;
  for (int i = 0; i < 3; ++i) direct += w[i] * std::log(w[i]);
  CHECK(reg.value(w) == doctest::Approx(direct + std::log(3.0)));

  Vector fd = oracles::finite_difference_gradient(
      [&](const Vector& u) { return reg.value(u); }, w);
  CHECK((reg.gradient(w) - fd).norm() < 1e-5);
}

TEST_CASE("entropy bregman divergence is the KL divergence") {
  auto reg = Regularizer::negative_entropy();
  Vector x = vec3(0.1, 0.6, 0.3);
  Vector y = vec3(0.4, 0.4, 0.2);
  CHECK(reg.bregman(x, y) == doctest::Approx(oracles::kl_direct(x, y)));
  // boundary x is fine, nonpositive y is a domain error
  Vector xb = vec3(0.0, 0.7, 0.3);
  CHECK(reg.bregman(xb, y) == doctest::Approx(oracles::kl_direct(xb, y)));
  CHECK_THROWS_AS(reg.bregman(x, vec3(0.5, 0.5, 0.0)), std::domain_error);
}

TEST_CASE("bregman divergences are nonnegative and vanish on the diagonal") {
  SplitMix64 rng(17);
  auto simplex = FeasibleSet::simplex(4);
  auto hsl2 = Regularizer::half_squared_l2();
  auto ent = Regularizer::negative_entropy();
  for (int k = 0; k < 100; ++k) {
    Vector x = simplex.sample(rng), y = simplex.sample(rng, 0.1);
    CHECK(hsl2.bregman(x, y) >= 0.0);
    CHECK(ent.bregman(x, y) >= -1e-12);
    CHECK(hsl2.bregman(x, x) == doctest::Approx(0.0));
    CHECK(ent.bregman(y, y) == doctest::Approx(0.0));
  }
}

TEST_CASE("entropy is 1-strongly-convex w.r.t. l1 on sampled simplex pairs") {
  // Pinsker direction of the pairing: KL(x, y) >= 0.5 ||x - y||_1^2
  SplitMix64 rng(41);
  auto simplex = FeasibleSet::simplex(5);
  auto ent = Regularizer::negative_entropy();
  for (int k = 0; k < 200; ++k) {
    Vector x = simplex.sample(rng), y = simplex.sample(rng, 0.05);
    double lhs = ent.bregman(x, y);
    double rhs = 0.5 * std::pow(norm_of(x - y, NormKind::L1), 2);
    CHECK(lhs >= rhs - 1e-10);
  }
}

TEST_CASE("regularizer argmin matches the grid oracle") {
  auto hsl2 = Regularizer::half_squared_l2();
  auto ball = FeasibleSet::ball(vec2(2.0, 2.0), 1.0);
  Vector a = hsl2.argmin(ball);
  Vector g = oracles::grid_minimize(ball, [&](const Vector& u) { return hsl2.value(u); });
  CHECK((a - g).norm() < 3e-3);
  CHECK(hsl2.value(a) <= hsl2.value(g) + 1e-9);

  auto ent = Regularizer::negative_entropy();
  auto simplex = FeasibleSet::simplex(2);
  Vector u = ent.argmin(simplex);
  Vector gu = oracles::grid_minimize(simplex, [&](const Vector& w) { return ent.value(w); });
  CHECK((u - gu).norm() < 3e-3);
  CHECK_THROWS_AS(ent.argmin(ball), ConfigError);
}

TEST_CASE("regularizer minima over supported sets are nonnegative and zero-touching") {
  // bound formulas add R(w*) with R >= 0; entropy is shifted so min is 0
  auto ent = Regularizer::negative_entropy();
  auto simplex = FeasibleSet::simplex(8);
  CHECK(ent.value(ent.argmin(simplex)) == doctest::Approx(0.0));
  SplitMix64 rng(3);
  for (int k = 0; k < 100; ++k) CHECK(ent.value(simplex.sample(rng)) >= -1e-12);

  auto hsl2 = Regularizer::half_squared_l2();
  auto box = FeasibleSet::box(vec2(-1.0, 2.0), vec2(1.0, 3.0));
  CHECK(hsl2.value(hsl2.argmin(box)) == doctest::Approx(2.0));
}

TEST_CASE("dual norm gradient bounds dominate sampled gradients") {
  auto hsl2 = Regularizer::half_squared_l2();
  SplitMix64 rng(13);
  auto ball = FeasibleSet::ball(vec2(1.0, -1.0), 0.5);
  auto box = FeasibleSet::box(vec2(-2.0, 0.0), vec2(1.0, 1.0));
  auto simplex = FeasibleSet::simplex(3);
  CHECK(hsl2.dual_norm_grad_bound(ball) == doctest::Approx(std::sqrt(2.0) + 0.5));
  CHECK(hsl2.dual_norm_grad_bound(box) == doctest::Approx(std::sqrt(4.0 + 1.0)));
  CHECK(hsl2.dual_norm_grad_bound(simplex) == doctest::Approx(1.0));
  for (const auto& set : {ball, box}) {
    double bound = hsl2.dual_norm_grad_bound(set);
    for (int k = 0; k < 500; ++k)
      CHECK(dual_norm_of(hsl2.gradient(set.sample(rng)), NormKind::L2) <= bound + 1e-9);
  }

  auto ent = Regularizer::negative_entropy();
  double eb = ent.dual_norm_grad_bound(simplex);
  CHECK(eb == doctest::Approx(-(1.0 + std::log(1e-6))));
  for (int k = 0; k < 500; ++k) {
    Vector w = simplex.sample(rng);
    for (int i = 0; i < w.size(); ++i) w[i] = std::max(w[i], Regularizer::kDualFloor);
    w /= w.sum();
    CHECK(dual_norm_of(ent.gradient(w), NormKind::L1) <= eb + 1e-9);
  }
}

TEST_CASE("norm helpers compute l2, l1, and their duals") {
  Vector v = vec3(3.0, -4.0, 0.0);
  CHECK(norm_of(v, NormKind::L2) == doctest::Approx(5.0));
  CHECK(norm_of(v, NormKind::L1) == doctest::Approx(7.0));
  CHECK(dual_norm_of(v, NormKind::L2) == doctest::Approx(5.0));
  CHECK(dual_norm_of(v, NormKind::L1) == doctest::Approx(4.0));
}

TEST_CASE("splitmix64 streams are reproducible and mix decorrelates counters") {
  SplitMix64 a(123), b(123);
  for (int k = 0; k < 32; ++k) CHECK(a.next_u64() == b.next_u64());
  CHECK(SplitMix64::mix(1, 1) != SplitMix64::mix(1, 2));
  CHECK(SplitMix64::mix(1, 1) != SplitMix64::mix(2, 1));
  // normals have roughly unit scale
  SplitMix64 g(77);
  double m = 0.0, m2 = 0.0;
  const int n = 20000;
  for (int k = 0; k < n; ++k) {
    double z = g.next_normal();
    m += z;
    m2 += z * z;
  }
  CHECK(std::abs(m / n) < 0.05);
  CHECK(m2 / n == doctest::Approx(1.0).epsilon(0.05));
}
