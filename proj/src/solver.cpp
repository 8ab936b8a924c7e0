#include "regretlab/solver.hpp"

#include <algorithm>
#include <cmath>

namespace regretlab {

namespace {

Vector soft_threshold(const Vector& z, double tau) {
  return z.array().sign() * (z.array().abs() - tau).max(0.0);
}

Vector entropic_closed_form(const FeasibleSet& set, const EntropicProxTag& tag) {
  // log-space softmax with max-shift; floored so downstream KL terms stay finite
  int d = set.dim();
  Vector logw(d);
  for (int i = 0; i < d; ++i) {
    double lr = tag.ref.size() > 0
                    ? std::log(std::max(tag.ref[i], Regularizer::kIterateFloor))
                    : 0.0;
    logw[i] = lr - tag.lin[i] / tag.coeff;
  }
  double m = logw.maxCoeff();
  Vector w = (logw.array() - m).exp();
  w /= w.sum();
  w = w.cwiseMax(Regularizer::kIterateFloor);
  w /= w.sum();
  return w;
}

}  // namespace

Vector prox_model_min(const FeasibleSet& set, double lam, const Vector& z, double m) {
  require(m > 0.0, "prox_model_min: modulus must be positive");
  if (lam <= 0.0) return set.project(z);
  switch (set.kind()) {
    case SetKind::Box: {
      Vector u = soft_threshold(z, lam / m);
      return u.cwiseMax(set.lower()).cwiseMin(set.upper());
    }
    case SetKind::Simplex:
      // |u|_1 = 1 on the simplex
      return set.project(z);
    case SetKind::Ball: {
      require(set.center().norm() <= 1e-12,
              "prox_model_min: l1 over a ball needs the origin-centered case");
      Vector u0 = soft_threshold(z, lam / m);
      if (u0.norm() <= set.radius()) return u0;
      // KKT: u_i(nu) = soft(m z_i, lam) / (m + nu); |u(nu)| decreases in nu
      Vector num = soft_threshold(m * z, lam);
      auto radius_at = [&](double nu) { return num.norm() / (m + nu); };
      double lo = 0.0, hi = 1.0;
      while (radius_at(hi) > set.radius()) hi *= 2.0;
      for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (radius_at(mid) > set.radius() ? lo : hi) = mid;
        if (hi - lo <= 1e-15 * (1.0 + hi)) break;
      }
      return num / (m + 0.5 * (lo + hi));
    }
  }
  return set.project(z);
}

double certificate_at(const InnerObjective& obj, const Vector& w) {
  const double mu = obj.strong_convexity;
  Vector g = obj.smooth_grad(w);
  Vector u = prox_model_min(*obj.set, obj.l1_weight, w - g / mu, mu);
  double val = g.dot(u - w) + 0.5 * mu * (u - w).squaredNorm();
  if (obj.l1_weight > 0.0)
    val += obj.l1_weight * (u.lpNorm<1>() - w.lpNorm<1>());
  return std::max(0.0, -val);
}

namespace {

SolveResult run_prox_gradient(const InnerObjective& obj, Vector w,
                              const SolverOptions& opts, double target) {
  const double step_mod = std::max(obj.smoothness, obj.strong_convexity);
  SolveCertificate cert;
  cert.strong_convexity = obj.strong_convexity;
  for (long k = 0; k < opts.max_iters; ++k) {
    double delta = certificate_at(obj, w);
    cert.achieved = delta;
    cert.iterations = k;
    if (delta <= target) {
      if (opts.polish) {
        for (int extra = 0; extra < 200; ++extra) {
          Vector g = obj.smooth_grad(w);
          Vector wn = prox_model_min(*obj.set, obj.l1_weight, w - g / step_mod, step_mod);
          double move = (wn - w).lpNorm<Eigen::Infinity>();
          w = std::move(wn);
          if (move <= 1e-15 * (1.0 + w.lpNorm<Eigen::Infinity>())) break;
        }
        cert.achieved = certificate_at(obj, w);
      }
      cert.status = SolveStatus::Certified;
      return {std::move(w), cert};
    }
    Vector g = obj.smooth_grad(w);
    w = prox_model_min(*obj.set, obj.l1_weight, w - g / step_mod, step_mod);
  }
  cert.achieved = certificate_at(obj, w);
  cert.iterations = opts.max_iters;
  cert.status = cert.achieved <= target ? SolveStatus::Certified : SolveStatus::Truncated;
  return {std::move(w), cert};
}

SolveResult run_entropic(const InnerObjective& obj, Vector w,
                         const SolverOptions& opts, double target) {
  require(obj.set->kind() == SetKind::Simplex,
          "entropic solves are defined on the simplex");
  const double step = std::max(obj.rel_smoothness, 1.0);
  SolveCertificate cert;
  cert.strong_convexity = obj.strong_convexity;
  auto mirror_step = [&](const Vector& u) {
    Vector g = obj.smooth_grad(u);
    Vector logw = u.array().max(Regularizer::kIterateFloor).log().matrix() - g / step;
    double m = logw.maxCoeff();
    Vector wn = (logw.array() - m).exp();
    wn /= wn.sum();
    wn = wn.cwiseMax(Regularizer::kIterateFloor);
    wn /= wn.sum();
    return wn;
  };
  for (long k = 0; k < opts.max_iters; ++k) {
    double delta = certificate_at(obj, w);
    cert.achieved = delta;
    cert.iterations = k;
    if (delta <= target) {
      if (opts.polish) {
        for (int extra = 0; extra < 200; ++extra) {
          Vector wn = mirror_step(w);
          double move = (wn - w).lpNorm<Eigen::Infinity>();
          w = std::move(wn);
          if (move <= 1e-15) break;
        }
        cert.achieved = certificate_at(obj, w);
      }
      cert.status = SolveStatus::Certified;
      return {std::move(w), cert};
    }
    w = mirror_step(w);
  }
  cert.achieved = certificate_at(obj, w);
  cert.iterations = opts.max_iters;
  cert.status = cert.achieved <= target ? SolveStatus::Certified : SolveStatus::Truncated;
  return {std::move(w), cert};
}

// mu-quadratic minorant of the smooth part: m(u) = f0 + <g, u-w> + (mu/2)|u-w|^2.
// Strong convexity makes every (point, subgradient) pair one of these, and a
// convex combination of minorants is again one, so bundle aggregation stays
// in this form.
struct Minorant {
  Vector w;
  double f0;
  Vector g;
};

SolveResult run_subgradient(const InnerObjective& obj, Vector w,
                            const SolverOptions& opts, double target) {
  const double mu = obj.strong_convexity;
  const double lam = obj.l1_weight;
  SolveCertificate cert;
  cert.strong_convexity = mu;

  auto make_minorant = [&](const Vector& p) {
    return Minorant{p, obj.smooth_value(p), obj.smooth_grad(p)};
  };
  // certified lower bound on min_C [smooth + lam |.|_1] from one minorant
  auto lower_of = [&](const Minorant& a) {
    Vector u = prox_model_min(*obj.set, lam, a.w - a.g / mu, mu);
    return a.f0 + a.g.dot(u - a.w) + 0.5 * mu * (u - a.w).squaredNorm() +
           lam * u.lpNorm<1>();
  };
  auto mix = [&](const Minorant& a, const Minorant& b, double s) {
    Minorant m;
    m.w = s * a.w + (1.0 - s) * b.w;
    m.g = s * a.g + (1.0 - s) * b.g;
    double base = s * (a.f0 - a.g.dot(a.w)) + (1.0 - s) * (b.f0 - b.g.dot(b.w));
    double spread = 0.5 * mu * (s * a.w.squaredNorm() +
                                (1.0 - s) * b.w.squaredNorm() - m.w.squaredNorm());
    m.f0 = base + spread + m.g.dot(m.w);
    return m;
  };

  std::vector<Minorant> atoms;
  const std::size_t kAtomCap = 12;
  Minorant cur = make_minorant(w);
  atoms.push_back(cur);
  Minorant agg = cur;

  Vector best = w;
  double best_value = cur.f0 + lam * w.lpNorm<1>();
  double lower_best = lower_of(cur);

  auto note_point = [&](const Vector& p) {
    Minorant m = make_minorant(p);
    double value = m.f0 + lam * p.lpNorm<1>();
    if (value < best_value) {
      best_value = value;
      best = p;
    }
    lower_best = std::max(lower_best, lower_of(m));
    if (atoms.size() >= kAtomCap) atoms.erase(atoms.begin());
    atoms.push_back(std::move(m));
  };

  // Pairwise bundle aggregation: lower_of(mix(agg, atom, s)) is concave in s,
  // so ternary search finds the optimal weight. At a kink optimum the
  // one-sided minorants mix to an exact lower bound, which the single-point
  // model gap cannot reach, and the aggregate's own minimizer converges to
  // the optimum, which the diminishing-step iterates reach only at rate 1/k.
  double agg_lb = lower_best;
  auto refresh = [&]() {
    for (int round = 0; round < 6; ++round) {
      for (int pass = 0; pass < 2; ++pass) {
        for (const Minorant& atom : atoms) {
          double lo = 0.0, hi = 1.0;
          for (int it = 0; it < 48; ++it) {
            double s1 = lo + (hi - lo) / 3.0, s2 = hi - (hi - lo) / 3.0;
            if (lower_of(mix(agg, atom, s1)) < lower_of(mix(agg, atom, s2)))
              lo = s1;
            else
              hi = s2;
          }
          Minorant cand = mix(agg, atom, 0.5 * (lo + hi));
          double lb = lower_of(cand);
          // compare against the aggregate's own bound, not the global one:
          // adopting the best atom (s at an endpoint) must be allowed even
          // when it only ties what note_point already recorded
          if (lb >= agg_lb) {
            agg_lb = lb;
            agg = std::move(cand);
            lower_best = std::max(lower_best, lb);
          }
        }
      }
      // probe the aggregate's minimizer as an incumbent
      Vector u = prox_model_min(*obj.set, lam, agg.w - agg.g / mu, mu);
      note_point(u);
      if (best_value - lower_best <= target) return;
    }
  };

  long k = 0;
  for (; k < opts.max_iters; ++k) {
    if (best_value - lower_best <= target) break;
    if (k % 64 == 15) {
      refresh();
      if (best_value - lower_best <= target) break;
    }
    // diminishing-step prox-subgradient trajectory: the global progress
    // guarantee that feeds the bundle with anchors around the optimum
    double eta = 2.0 / (mu * (k + 2));
    w = prox_model_min(*obj.set, lam * eta, w - eta * cur.g, 1.0 / eta);
    cur = make_minorant(w);
    double value = cur.f0 + lam * w.lpNorm<1>();
    if (value < best_value) {
      best_value = value;
      best = w;
    }
    lower_best = std::max(lower_best, lower_of(cur));
    if (atoms.size() >= kAtomCap) atoms.erase(atoms.begin());
    atoms.push_back(cur);
  }
  if (best_value - lower_best > target) refresh();

  cert.achieved = std::max(0.0, best_value - lower_best);
  cert.iterations = k;
  cert.status = cert.achieved <= target ? SolveStatus::Certified : SolveStatus::Truncated;
  return {std::move(best), cert};
}

}  // namespace

SolveResult solve(const InnerObjective& obj, const Vector& warm, const SolverOptions& opts) {
  require(obj.set != nullptr, "solve: objective has no feasible set");
  require(obj.strong_convexity > 0.0,
          "solve: certificate needs a positive strong convexity modulus");
  const double target = std::max(opts.target_delta, kDeltaFloor);

  if (opts.allow_fast_path) {
    if (obj.kernel == SolveKernel::Euclidean && obj.quadratic && obj.quadratic->q > 0.0) {
      Vector w = prox_model_min(*obj.set, obj.l1_weight,
                                obj.quadratic->minimizer_center(), obj.quadratic->q);
      SolveCertificate cert;
      cert.strong_convexity = obj.strong_convexity;
      return {std::move(w), cert};
    }
    if (obj.kernel == SolveKernel::Entropic && obj.entropic) {
      Vector w = entropic_closed_form(*obj.set, *obj.entropic);
      SolveCertificate cert;
      cert.strong_convexity = obj.strong_convexity;
      return {std::move(w), cert};
    }
  }

  Vector w0 = obj.set->project(warm.size() == obj.set->dim()
                                   ? warm
                                   : Vector::Zero(obj.set->dim()));
  if (obj.kernel == SolveKernel::Entropic)
    return run_entropic(obj, std::move(w0), opts, target);
  if (obj.smoothness < 0.0)
    return run_subgradient(obj, std::move(w0), opts, target);
  return run_prox_gradient(obj, std::move(w0), opts, target);
}

SolveResult solve_exact(const InnerObjective& obj, const Vector& warm) {
  SolverOptions opts;
  opts.target_delta = 1e-10;
  opts.polish = true;
  return solve(obj, warm, opts);
}

}  // namespace regretlab
