#include "regretlab/losses.hpp"

#include "regretlab/solver.hpp"

#include <algorithm>
#include <cmath>

namespace regretlab {

Loss Loss::linear(Vector g) {
  require(g.size() > 0, "linear loss: empty gradient");
  Loss l;
  l.kind_ = LossKind::Linear;
  l.dim_ = static_cast<int>(g.size());
  l.g_ = std::move(g);
  return l;
}

Loss Loss::quadratic(Vector center, double curvature) {
  require(center.size() > 0, "quadratic loss: empty center");
  require(curvature > 0.0, "quadratic loss: curvature must be positive");
  Loss l;
  l.kind_ = LossKind::Quadratic;
  l.dim_ = static_cast<int>(center.size());
  l.center_ = std::move(center);
  l.curvature_ = curvature;
  return l;
}

Loss Loss::hinge(Vector g, double threshold) {
  require(g.size() > 0, "hinge loss: empty gradient");
  Loss l;
  l.kind_ = LossKind::Hinge;
  l.dim_ = static_cast<int>(g.size());
  l.g_ = std::move(g);
  l.threshold_ = threshold;
  return l;
}

Loss Loss::average(std::vector<Loss> parts) {
  require(!parts.empty(), "average loss: no parts");
  int d = parts.front().dim();
  for (const Loss& p : parts)
    require(p.dim() == d, "average loss: dimension mismatch");
  Loss l;
  l.kind_ = LossKind::Average;
  l.dim_ = d;
  l.parts_ = std::move(parts);
  return l;
}

double Loss::value(const Vector& w) const {
  switch (kind_) {
    case LossKind::Linear:
      return g_.dot(w);
    case LossKind::Quadratic:
      return 0.5 * curvature_ * (w - center_).squaredNorm();
    case LossKind::Hinge:
      return std::max(0.0, g_.dot(w) - threshold_);
    case LossKind::Average: {
      double s = 0.0;
      for (const Loss& p : parts_) s += p.value(w);
      return s / parts_.size();
    }
  }
  return 0.0;
}

Vector Loss::subgradient(const Vector& w) const {
  switch (kind_) {
    case LossKind::Linear:
      return g_;
    case LossKind::Quadratic:
      return curvature_ * (w - center_);
    case LossKind::Hinge:
      // right-limit at the kink: active side wins at equality
      return g_.dot(w) - threshold_ >= 0.0 ? g_ : Vector::Zero(dim_).eval();
    case LossKind::Average: {
      Vector s = Vector::Zero(dim_);
      for (const Loss& p : parts_) s += p.subgradient(w);
      return s / parts_.size();
    }
  }
  return Vector::Zero(dim_);
}

namespace {

// max over C, per coordinate, of |w_i - c_i|; exact for all three set kinds
double max_coordinate_deviation(const FeasibleSet& set, const Vector& c) {
  double best = 0.0;
  switch (set.kind()) {
    case SetKind::Ball:
      for (int i = 0; i < set.dim(); ++i)
        best = std::max(best, std::abs(set.center()[i] - c[i]) + set.radius());
      break;
    case SetKind::Box:
      for (int i = 0; i < set.dim(); ++i)
        best = std::max(best, std::max(std::abs(set.lower()[i] - c[i]),
                                       std::abs(set.upper()[i] - c[i])));
      break;
    case SetKind::Simplex:
      for (int i = 0; i < set.dim(); ++i)
        best = std::max(best, std::max(std::abs(c[i]), std::abs(1.0 - c[i])));
      break;
  }
  return best;
}

double max_l2_norm_over(const FeasibleSet& set) {
  switch (set.kind()) {
    case SetKind::Ball:
      return set.center().norm() + set.radius();
    case SetKind::Box: {
      double s = 0.0;
      for (int i = 0; i < set.dim(); ++i) {
        double m = std::max(std::abs(set.lower()[i]), std::abs(set.upper()[i]));
        s += m * m;
      }
      return std::sqrt(s);
    }
    case SetKind::Simplex:
      return 1.0;
  }
  return 0.0;
}

}  // namespace

double Loss::lipschitz(const FeasibleSet& set, NormKind norm) const {
  require(set.dim() == dim_, "lipschitz: set dimension mismatch");
  switch (kind_) {
    case LossKind::Linear:
    case LossKind::Hinge:
      return dual_norm_of(g_, norm);
    case LossKind::Quadratic:
      // sup_C ||curv (w - c)||_*; the dual of l1 is max-coordinate
      return norm == NormKind::L2
                 ? curvature_ * set.max_distance(center_, NormKind::L2)
                 : curvature_ * max_coordinate_deviation(set, center_);
    case LossKind::Average: {
      double s = 0.0;
      for (const Loss& p : parts_) s += p.lipschitz(set, norm);
      return s / parts_.size();
    }
  }
  return 0.0;
}

double Loss::strong_convexity() const {
  switch (kind_) {
    case LossKind::Quadratic:
      return curvature_;
    case LossKind::Average: {
      double s = 0.0;
      for (const Loss& p : parts_) s += p.strong_convexity();
      return s / parts_.size();
    }
    default:
      return 0.0;
  }
}

std::optional<double> Loss::smoothness() const {
  switch (kind_) {
    case LossKind::Linear:
      return 0.0;
    case LossKind::Quadratic:
      return curvature_;
    case LossKind::Hinge:
      return std::nullopt;
    case LossKind::Average: {
      double s = 0.0;
      for (const Loss& p : parts_) {
        auto sm = p.smoothness();
        if (!sm) return std::nullopt;
        s += *sm;
      }
      return s / parts_.size();
    }
  }
  return std::nullopt;
}

std::optional<QuadraticForm> Loss::quadratic_form() const {
  QuadraticForm f;
  f.b = Vector::Zero(dim_);
  switch (kind_) {
    case LossKind::Linear:
      f.b = -g_;
      return f;
    case LossKind::Quadratic:
      f.q = curvature_;
      f.b = curvature_ * center_;
      f.c = 0.5 * curvature_ * center_.squaredNorm();
      return f;
    case LossKind::Hinge:
      return std::nullopt;
    case LossKind::Average: {
      for (const Loss& p : parts_) {
        auto pf = p.quadratic_form();
        if (!pf) return std::nullopt;
        f.q += pf->q;
        f.b += pf->b;
        f.c += pf->c;
      }
      double n = static_cast<double>(parts_.size());
      f.q /= n;
      f.b /= n;
      f.c /= n;
      return f;
    }
  }
  return std::nullopt;
}

CompositePart CompositePart::none() { return CompositePart(CompositeKind::None, 0.0); }

CompositePart CompositePart::l1(double weight) {
  require(weight > 0.0, "l1 composite: weight must be positive");
  return CompositePart(CompositeKind::L1, weight);
}

CompositePart CompositePart::half_squared_l2(double weight) {
  require(weight > 0.0, "l2 composite: weight must be positive");
  return CompositePart(CompositeKind::HalfSquaredL2, weight);
}

void CompositePart::bind(const FeasibleSet& set) {
  switch (kind_) {
    case CompositeKind::None:
      offset_ = 0.0;
      argmin_ = set.project(Vector::Zero(set.dim()));
      break;
    case CompositeKind::L1: {
      if (set.kind() == SetKind::Box) {
        double s = 0.0;
        Vector a(set.dim());
        for (int i = 0; i < set.dim(); ++i) {
          a[i] = std::clamp(0.0, set.lower()[i], set.upper()[i]);
          s += std::abs(a[i]);
        }
        offset_ = weight_ * s;
        argmin_ = a;
      } else if (set.kind() == SetKind::Simplex) {
        // ||w||_1 = 1 on the simplex; tie-break the minimizer to uniform
        offset_ = weight_;
        argmin_ = Vector::Constant(set.dim(), 1.0 / set.dim());
      } else {
        require(set.center().norm() <= 1e-12,
                "l1 composite needs a box, simplex, or origin-centered ball");
        offset_ = 0.0;
        argmin_ = Vector::Zero(set.dim());
      }
      break;
    }
    case CompositeKind::HalfSquaredL2: {
      argmin_ = set.project(Vector::Zero(set.dim()));
      offset_ = 0.5 * weight_ * argmin_.squaredNorm();
      break;
    }
  }
  bound_ = true;
}

double CompositePart::value(const Vector& w) const {
  switch (kind_) {
    case CompositeKind::None:
      return 0.0;
    case CompositeKind::L1:
      return weight_ * w.lpNorm<1>() - offset_;
    case CompositeKind::HalfSquaredL2:
      return 0.5 * weight_ * w.squaredNorm() - offset_;
  }
  return 0.0;
}

Vector CompositePart::subgradient(const Vector& w) const {
  if (kind_ == CompositeKind::L1)
    return weight_ * w.array().sign().matrix();
  if (kind_ == CompositeKind::HalfSquaredL2) return weight_ * w;
  return Vector::Zero(w.size());
}

double CompositePart::lipschitz(const FeasibleSet& set, NormKind norm) const {
  switch (kind_) {
    case CompositeKind::None:
      return 0.0;
    case CompositeKind::L1:
      return norm == NormKind::L2 ? weight_ * std::sqrt(double(set.dim())) : weight_;
    case CompositeKind::HalfSquaredL2:
      return norm == NormKind::L2
                 ? weight_ * max_l2_norm_over(set)
                 : weight_ * max_coordinate_deviation(set, Vector::Zero(set.dim()));
  }
  return 0.0;
}

const Vector& CompositePart::argmin() const {
  if (!bound_) throw ConfigError("composite part not bound to a set");
  return argmin_;
}

AdversarySequence::AdversarySequence(std::uint64_t seed, int horizon,
                                     const FeasibleSet& set, AdversaryParams params,
                                     CompositePart composite)
    : seed_(seed), horizon_(horizon), dim_(set.dim()), params_(params),
      composite_(composite) {
  require(horizon >= 0, "adversary: negative horizon");
  composite_.bind(set);

  // drift direction drawn from the t=0 stream
  SplitMix64 g0(SplitMix64::mix(seed, 0));
  Vector bias_dir(dim_);
  for (int i = 0; i < dim_; ++i) bias_dir[i] = g0.next_normal();
  double bn = bias_dir.norm();
  if (bn < 1e-12) { bias_dir.setZero(); bias_dir[0] = 1.0; bn = 1.0; }
  bias_dir /= bn;

  losses_.reserve(horizon);
  for (int t = 1; t <= horizon; ++t) {
    SplitMix64 g(SplitMix64::mix(seed, static_cast<std::uint64_t>(t)));
    switch (params_.kind) {
      case GeneratorKind::Quadratic: {
        Vector c = set.sample(g, params_.margin);
        losses_.push_back(Loss::quadratic(std::move(c), params_.curvature));
        break;
      }
      case GeneratorKind::Linear:
      case GeneratorKind::Hinge: {
        Vector u(dim_);
        for (int i = 0; i < dim_; ++i) u[i] = g.next_normal();
        double un = u.norm();
        if (un < 1e-12) { u.setZero(); u[0] = 1.0; un = 1.0; }
        Vector v = params_.bias * bias_dir + (1.0 - params_.bias) * (u / un);
        double vn = v.norm();
        if (vn < 1e-12) { v = bias_dir; vn = 1.0; }
        Vector grad = params_.scale * v / vn;
        if (params_.kind == GeneratorKind::Linear) {
          losses_.push_back(Loss::linear(std::move(grad)));
        } else {
          double b = grad.dot(set.sample(g, 0.3));
          losses_.push_back(Loss::hinge(std::move(grad), b));
        }
        break;
      }
    }
  }
}

AdversarySequence AdversarySequence::from_losses(std::vector<Loss> losses,
                                                 const FeasibleSet& set,
                                                 CompositePart composite,
                                                 std::uint64_t seed) {
  for (const Loss& l : losses)
    require(l.dim() == set.dim(), "from_losses: loss/set dimension mismatch");
  AdversarySequence seq;
  seq.seed_ = seed;
  seq.horizon_ = static_cast<int>(losses.size());
  seq.dim_ = set.dim();
  seq.composite_ = composite;
  seq.composite_.bind(set);
  seq.losses_ = std::move(losses);
  return seq;
}

const Loss& AdversarySequence::loss(int t) const {
  if (t < 1 || t > horizon_)
    throw ConfigError("adversary: loss index out of range");
  return losses_[t - 1];
}

double AdversarySequence::uniform_lipschitz(const FeasibleSet& set, NormKind norm) const {
  double best = 0.0;
  for (const Loss& l : losses_) best = std::max(best, l.lipschitz(set, norm));
  return best;
}

double AdversarySequence::total_lipschitz(const FeasibleSet& set, NormKind norm) const {
  return uniform_lipschitz(set, norm) + composite_.lipschitz(set, norm);
}

double AdversarySequence::min_strong_convexity() const {
  if (losses_.empty()) return 0.0;
  double worst = losses_.front().strong_convexity();
  for (const Loss& l : losses_) worst = std::min(worst, l.strong_convexity());
  return worst;
}

double AdversarySequence::effective_value(int t, const Vector& w) const {
  return loss(t).value(w) + composite_.value(w);
}

namespace {

Vector linear_argmin(const FeasibleSet& set, const Vector& c) {
  // argmin over C of c.w, deterministic tie-breaks
  switch (set.kind()) {
    case SetKind::Ball: {
      double n = c.norm();
      if (n < 1e-15) return set.project(Vector::Zero(set.dim()));
      return set.center() - set.radius() * c / n;
    }
    case SetKind::Box: {
      Vector w(set.dim());
      for (int i = 0; i < set.dim(); ++i) {
        if (c[i] > 0.0)
          w[i] = set.lower()[i];
        else if (c[i] < 0.0)
          w[i] = set.upper()[i];
        else
          w[i] = std::clamp(0.0, set.lower()[i], set.upper()[i]);
      }
      return w;
    }
    case SetKind::Simplex: {
      int best = 0;
      for (int i = 1; i < set.dim(); ++i)
        if (c[i] < c[best]) best = i;
      Vector w = Vector::Zero(set.dim());
      w[best] = 1.0;
      return w;
    }
  }
  return Vector::Zero(set.dim());
}

// minimize (q/2) w^2 - b w + lam |w| over [lo, hi], exact
double scalar_prox_min(double q, double b, double lam, double lo, double hi) {
  auto val = [&](double w) { return 0.5 * q * w * w - b * w + lam * std::abs(w); };
  if (q > 0.0) {
    double mag = std::max(0.0, std::abs(b) - lam);
    double u = (b >= 0.0 ? mag : -mag) / q;
    return std::clamp(u, lo, hi);
  }
  double best = lo, bv = val(lo);
  if (val(hi) < bv) { best = hi; bv = val(hi); }
  if (lo <= 0.0 && 0.0 <= hi && val(0.0) < bv) best = 0.0;
  return best;
}

}  // namespace

Hindsight hindsight_optimum(const AdversarySequence& seq, const FeasibleSet& set) {
  Hindsight hs;
  int T = seq.horizon();
  if (T == 0) {
    hs.w_star = set.project(Vector::Zero(set.dim()));
    return hs;
  }

  // aggregate the smooth family if every loss admits the quadratic form
  bool all_quad = true;
  QuadraticForm total;
  total.b = Vector::Zero(set.dim());
  for (int t = 1; t <= T; ++t) {
    auto f = seq.loss(t).quadratic_form();
    if (!f) { all_quad = false; break; }
    total.q += f->q;
    total.b += f->b;
    total.c += f->c;
  }

  const CompositePart& r = seq.composite();
  if (all_quad) {
    double lam_tot = (r.kind() == CompositeKind::L1) ? T * r.weight() : 0.0;
    double q_tot = total.q +
        (r.kind() == CompositeKind::HalfSquaredL2 ? T * r.weight() : 0.0);
    if (lam_tot == 0.0) {
      hs.w_star = q_tot > 0.0 ? set.project(total.b / q_tot)
                              : linear_argmin(set, -total.b);
    } else if (set.kind() == SetKind::Box) {
      hs.w_star = Vector(set.dim());
      for (int i = 0; i < set.dim(); ++i)
        hs.w_star[i] = scalar_prox_min(q_tot, total.b[i], lam_tot,
                                       set.lower()[i], set.upper()[i]);
    } else if (set.kind() == SetKind::Simplex) {
      // l1 part is constant on the simplex
      hs.w_star = q_tot > 0.0 ? set.project(total.b / q_tot)
                              : linear_argmin(set, -total.b);
    } else {
      require(q_tot > 0.0, "hindsight: l1 over a ball needs curvature");
      hs.w_star = prox_model_min(set, lam_tot, total.b / q_tot, q_tot);
    }
  } else {
    // nonsmooth family: certify via the subgradient engine; needs strong
    // convexity in the total objective
    double mu = 0.0;
    for (int t = 1; t <= T; ++t) mu += seq.loss(t).strong_convexity();
    mu += T * r.strong_convexity();
    if (mu <= 0.0)
      throw ConfigError(
          "hindsight: nonsmooth sequence without strong convexity cannot be certified");
    InnerObjective obj;
    obj.set = &set;
    obj.strong_convexity = mu;
    obj.smooth_value = [&seq, &r, T](const Vector& w) {
      double s = 0.0;
      for (int t = 1; t <= T; ++t) s += seq.loss(t).value(w);
      return s + T * (r.kind() == CompositeKind::HalfSquaredL2 ? r.value(w) : 0.0);
    };
    obj.smooth_grad = [&seq, &r, T](const Vector& w) {
      Vector g = Vector::Zero(w.size());
      for (int t = 1; t <= T; ++t) g += seq.loss(t).subgradient(w);
      if (r.kind() == CompositeKind::HalfSquaredL2) g += T * r.subgradient(w);
      return g;
    };
    obj.smoothness = -1.0;  // subgradient engine
    if (r.kind() == CompositeKind::L1) obj.l1_weight = T * r.weight();
    SolverOptions opts;
    opts.target_delta = 1e-8;
    auto res = solve(obj, set.project(Vector::Zero(set.dim())), opts);
    if (res.certificate.status != SolveStatus::Certified)
      throw DiagnosticError("hindsight: solver did not reach certification target",
                            res.certificate.achieved);
    hs.w_star = res.point;
    hs.eps_star = res.certificate.achieved;
    hs.mu = mu;
  }

  for (int t = 1; t <= T; ++t) hs.value += seq.effective_value(t, hs.w_star);
  return hs;
}

}  // namespace regretlab
