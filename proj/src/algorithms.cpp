#include "regretlab/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <utility>

namespace regretlab {

const char* learner_name(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::Ftl: return "ftl";
    case LearnerKind::Ftrl: return "ftrl";
    case LearnerKind::Rda: return "rda";
    case LearnerKind::Comid: return "comid";
    case LearnerKind::Iol: return "iol";
    case LearnerKind::Md: return "md";
    case LearnerKind::Batch: return "batch";
  }
  return "?";
}

LearnerKind learner_from_name(const std::string& name) {
  if (name == "ftl") return LearnerKind::Ftl;
  if (name == "ftrl") return LearnerKind::Ftrl;
  if (name == "rda") return LearnerKind::Rda;
  if (name == "comid") return LearnerKind::Comid;
  if (name == "iol") return LearnerKind::Iol;
  if (name == "md") return LearnerKind::Md;
  if (name == "batch") return LearnerKind::Batch;
  throw ConfigError("unknown learner: " + name);
}

namespace {

SolverOptions route_options(double target, Route route) {
  SolverOptions o;
  o.target_delta = target;
  switch (route) {
    case Route::Auto:
      o.allow_fast_path = target <= 1e-10;
      break;
    case Route::FastPath:
      o.allow_fast_path = true;
      break;
    case Route::Iterative:
      o.allow_fast_path = false;
      o.polish = target <= 1e-10;
      break;
  }
  return o;
}

bool entropic(const Regularizer& reg) {
  return reg.kind() == RegKind::NegativeEntropy;
}

// smooth objective pieces for sum_{l in history} l (+ inv_eta * R)
InnerObjective sum_objective(std::span<const Loss> history, const Regularizer& reg,
                             double inv_eta, const FeasibleSet& set) {
  InnerObjective obj;
  obj.set = &set;

  bool all_quad = true, all_smooth = true;
  QuadraticForm tag;
  tag.b = Vector::Zero(set.dim());
  double sumsm = 0.0, sumsc = 0.0;
  bool all_linear = true;
  Vector sum_g = Vector::Zero(set.dim());
  for (const Loss& l : history) {
    auto f = l.quadratic_form();
    if (f) { tag.q += f->q; tag.b += f->b; tag.c += f->c; }
    else all_quad = false;
    auto sm = l.smoothness();
    if (sm) sumsm += *sm;
    else all_smooth = false;
    sumsc += l.strong_convexity();
    if (l.kind() == LossKind::Linear) sum_g += l.direction();
    else all_linear = false;
  }

  obj.smooth_value = [history, &reg, inv_eta](const Vector& w) {
    double s = inv_eta > 0.0 ? inv_eta * reg.value(w) : 0.0;
    for (const Loss& l : history) s += l.value(w);
    return s;
  };
  obj.smooth_grad = [history, &reg, inv_eta, d = set.dim()](const Vector& w) {
    Vector g = inv_eta > 0.0 ? (inv_eta * reg.gradient(w)).eval()
                             : Vector::Zero(d).eval();
    for (const Loss& l : history) g += l.subgradient(w);
    return g;
  };

  if (entropic(reg)) {
    require(all_smooth, "entropic pairing supports linear and quadratic losses only");
    obj.kernel = SolveKernel::Entropic;
    obj.rel_smoothness = inv_eta + sumsm;
    obj.strong_convexity = inv_eta + sumsc;
    if (all_linear && inv_eta > 0.0)
      obj.entropic = EntropicProxTag{sum_g, Vector(), inv_eta};
  } else {
    if (all_quad) {
      if (inv_eta > 0.0) tag.q += inv_eta;
      obj.quadratic = tag;
    }
    obj.smoothness = all_smooth ? sumsm + inv_eta : -1.0;
    obj.strong_convexity = sumsc + inv_eta;
  }
  return obj;
}

UpdateResult dispatch(const InnerObjective& obj, const Vector& warm,
                      double target, Route route) {
  auto res = solve(obj, warm, route_options(target, route));
  return {std::move(res.point), res.certificate};
}

}  // namespace

UpdateResult ftl_update(std::span<const Loss> history, const FeasibleSet& set,
                        double target_delta, Route route) {
  require(!history.empty(), "ftl_update: empty history");
  Regularizer dummy = Regularizer::half_squared_l2();
  InnerObjective obj = sum_objective(history, dummy, 0.0, set);
  require(obj.strong_convexity > 0.0,
          "ftl needs strongly convex losses (alpha > 0 over the sequence)");
  return dispatch(obj, set.project(Vector::Zero(set.dim())), target_delta, route);
}

UpdateResult ftrl_update(std::span<const Loss> history, const Regularizer& reg,
                         double eta, const FeasibleSet& set,
                         double target_delta, Route route) {
  require(eta > 0.0, "ftrl_update: eta must be positive");
  InnerObjective obj = sum_objective(history, reg, 1.0 / eta, set);
  Vector warm = entropic(reg) ? Vector::Constant(set.dim(), 1.0 / set.dim()).eval()
                              : set.project(Vector::Zero(set.dim()));
  return dispatch(obj, warm, target_delta, route);
}

UpdateResult rda_update(const Vector& sum_grads, int t, const CompositePart& r,
                        const Regularizer& h, double beta_t, const FeasibleSet& set,
                        double target_delta, Route route) {
  require(t >= 1, "rda_update: t must be >= 1");
  require(beta_t >= 0.0, "rda_update: beta must be nonnegative");
  InnerObjective obj;
  obj.set = &set;
  const double lam_sc = r.kind() == CompositeKind::HalfSquaredL2 ? r.weight() : 0.0;
  const bool l1_proximal =
      r.kind() == CompositeKind::L1 && set.kind() != SetKind::Simplex;
  if (l1_proximal) obj.l1_weight = t * r.weight();

  // constant offsets from the normalized r are kept so objective values are
  // honest; they do not move the argmin
  const double r_const = r.kind() == CompositeKind::L1
                             ? (set.kind() == SetKind::Simplex ? r.weight() - r.offset()
                                                               : -r.offset())
                             : 0.0;
  obj.smooth_value = [&, t, beta_t, lam_sc, r_const](const Vector& w) {
    double s = sum_grads.dot(w) + beta_t * h.value(w) + t * r_const;
    if (lam_sc > 0.0) s += t * (0.5 * lam_sc * w.squaredNorm() - r.offset());
    return s;
  };
  obj.smooth_grad = [&, t, beta_t, lam_sc](const Vector& w) {
    Vector g = sum_grads + beta_t * h.gradient(w);
    if (lam_sc > 0.0) g += (t * lam_sc) * w;
    return g;
  };

  if (entropic(h)) {
    obj.kernel = SolveKernel::Entropic;
    obj.rel_smoothness = beta_t + t * lam_sc;
    obj.strong_convexity = beta_t + t * lam_sc;
    require(obj.strong_convexity > 0.0, "rda_update: objective is not strongly convex");
    if (lam_sc == 0.0 && beta_t > 0.0)
      obj.entropic = EntropicProxTag{sum_grads, Vector(), beta_t};
  } else {
    double q = beta_t + t * lam_sc;
    require(q > 0.0, "rda_update: objective is not strongly convex");
    QuadraticForm tag;
    tag.q = q;
    tag.b = -sum_grads;
    obj.quadratic = tag;
    obj.smoothness = q;
    obj.strong_convexity = q;
  }
  return dispatch(obj, set.project(Vector::Zero(set.dim())), target_delta, route);
}

namespace {

InnerObjective bregman_step_objective(const Vector& w_t, const Regularizer& reg,
                                      const FeasibleSet& set) {
  // D_R(w, w_t) as the strongly convex anchor; callers add loss terms
  InnerObjective obj;
  obj.set = &set;
  if (entropic(reg)) {
    obj.kernel = SolveKernel::Entropic;
    obj.rel_smoothness = 1.0;
    obj.strong_convexity = 1.0;
  } else {
    QuadraticForm tag;
    tag.q = 1.0;
    tag.b = w_t;
    tag.c = 0.5 * w_t.squaredNorm();
    obj.quadratic = tag;
    obj.smoothness = 1.0;
    obj.strong_convexity = 1.0;
  }
  return obj;
}

}  // namespace

UpdateResult iol_update(const Vector& w_t, const Loss& loss, const Regularizer& reg,
                        double eta_t, const FeasibleSet& set,
                        double target_delta, Route route) {
  require(eta_t > 0.0, "iol_update: eta must be positive");
  InnerObjective obj = bregman_step_objective(w_t, reg, set);
  obj.smooth_value = [&, eta_t](const Vector& w) {
    return reg.bregman(w, w_t) + eta_t * loss.value(w);
  };
  obj.smooth_grad = [&, eta_t](const Vector& w) {
    return (reg.gradient(w) - reg.gradient(w_t) + eta_t * loss.subgradient(w)).eval();
  };
  if (entropic(reg)) {
    auto sm = loss.smoothness();
    require(sm.has_value(), "entropic pairing supports linear and quadratic losses only");
    obj.rel_smoothness = 1.0 + eta_t * *sm;
    obj.strong_convexity = 1.0 + eta_t * loss.strong_convexity();
    if (loss.kind() == LossKind::Linear)
      obj.entropic = EntropicProxTag{(eta_t * loss.direction()).eval(), w_t, 1.0};
  } else {
    auto f = loss.quadratic_form();
    if (f) {
      obj.quadratic->q = 1.0 + eta_t * f->q;
      obj.quadratic->b = w_t + eta_t * f->b;
      obj.smoothness = obj.quadratic->q;
    } else {
      obj.quadratic.reset();
      obj.smoothness = -1.0;
    }
    obj.strong_convexity = 1.0 + eta_t * loss.strong_convexity();
  }
  return dispatch(obj, w_t, target_delta, route);
}

UpdateResult comid_update(const Vector& w_t, const Vector& g_t, const CompositePart& r,
                          const Regularizer& reg, double eta_t, const FeasibleSet& set,
                          double target_delta, Route route) {
  require(eta_t > 0.0, "comid_update: eta must be positive");
  InnerObjective obj = bregman_step_objective(w_t, reg, set);
  const double lam_sc = r.kind() == CompositeKind::HalfSquaredL2 ? r.weight() : 0.0;
  const bool l1_proximal =
      r.kind() == CompositeKind::L1 && set.kind() != SetKind::Simplex;
  if (l1_proximal) obj.l1_weight = eta_t * r.weight();
  const double r_const = r.kind() == CompositeKind::L1
                             ? (set.kind() == SetKind::Simplex ? r.weight() - r.offset()
                                                               : -r.offset())
                             : 0.0;
  obj.smooth_value = [&, eta_t, lam_sc, r_const](const Vector& w) {
    double s = reg.bregman(w, w_t) + eta_t * (g_t.dot(w) + r_const);
    if (lam_sc > 0.0) s += eta_t * (0.5 * lam_sc * w.squaredNorm() - r.offset());
    return s;
  };
  obj.smooth_grad = [&, eta_t, lam_sc](const Vector& w) {
    Vector g = reg.gradient(w) - reg.gradient(w_t) + eta_t * g_t;
    if (lam_sc > 0.0) g += (eta_t * lam_sc) * w;
    return g;
  };
  if (entropic(reg)) {
    obj.rel_smoothness = 1.0 + eta_t * lam_sc;
    obj.strong_convexity = 1.0 + eta_t * lam_sc;
    if (lam_sc == 0.0)
      obj.entropic = EntropicProxTag{(eta_t * g_t).eval(), w_t, 1.0};
  } else {
    obj.quadratic->q = 1.0 + eta_t * lam_sc;
    obj.quadratic->b = w_t - eta_t * g_t;
    obj.smoothness = obj.quadratic->q;
    obj.strong_convexity = 1.0 + eta_t * lam_sc;
  }
  return dispatch(obj, w_t, target_delta, route);
}

UpdateResult md_update(const Vector& w_t, const Vector& g_t, const Regularizer& reg,
                       double eta_t, const FeasibleSet& set,
                       double target_delta, Route route) {
  return comid_update(w_t, g_t, CompositePart::none(), reg, eta_t, set,
                      target_delta, route);
}

namespace {

double max_regularizer_over(const Regularizer& reg, const FeasibleSet& set) {
  if (reg.kind() == RegKind::NegativeEntropy) return std::log(double(set.dim()));
  switch (set.kind()) {
    case SetKind::Ball: {
      double m = set.center().norm() + set.radius();
      return 0.5 * m * m;
    }
    case SetKind::Box: {
      double s = 0.0;
      for (int i = 0; i < set.dim(); ++i) {
        double m = std::max(std::abs(set.lower()[i]), std::abs(set.upper()[i]));
        s += m * m;
      }
      return 0.5 * s;
    }
    case SetKind::Simplex:
      return 0.5;
  }
  return 0.0;
}

// constant step that optimizes the general-regime recursion. IOL pays 2 eta
// L^2 T against R*/eta, so its optimizer is sqrt(R*/(2 L^2 T)); the COMiD/MD
// bound L sqrt(2 R* T) is attained by the classic sqrt(2 R*/(L^2 T)) instead.
double general_convex_eta(const AdversarySequence& seq, const FeasibleSet& set,
                          const Regularizer& reg, LearnerKind kind) {
  int T = seq.horizon();
  if (T == 0) return 1.0;
  double L = std::max(seq.uniform_lipschitz(set, reg.paired_norm()), 1e-12);
  Hindsight hs = hindsight_optimum(seq, set);
  double rstar = std::max(reg.value(hs.w_star), 1e-12);
  if (kind == LearnerKind::Iol) return std::sqrt(rstar / (2.0 * L * L * T));
  return std::sqrt(2.0 * rstar / (L * L * T));
}

// Inexact-IOL step. The recursion pays (D^2/2 + sum_t delta_t
// + D sum_t sqrt(2 delta_t)) / eta + 2 L^2 T eta, so the optimizer balances
// the delta drift against the horizon; 1/t schedules land at T^{-1/4}. The
// exact-regime step would let "stay put" stay delta_t-feasible forever: the
// objective re-anchors at w_t, whose stationarity gap eta^2 L^2 / 2 drops
// below any polynomially decaying delta_t, and the frozen path is linear.
double approx_iol_eta(const AdversarySequence& seq, const FeasibleSet& set,
                      const Regularizer& reg, const DeltaSchedule& delta) {
  int T = seq.horizon();
  if (T == 0) return 1.0;
  double L = std::max(seq.uniform_lipschitz(set, reg.paired_norm()), 1e-12);
  double D = set.diameter(reg.paired_norm());
  double sum_delta = 0.0, sum_root = 0.0;
  for (int t = 1; t <= T; ++t) {
    double d = delta.at(t);
    sum_delta += d;
    sum_root += std::sqrt(2.0 * d);
  }
  double a = 0.5 * D * D + sum_delta + D * sum_root;
  return std::sqrt(a / (2.0 * L * L * T));
}

}  // namespace

ResolvedSpec resolve_spec(const LearnerSpec& spec, const AdversarySequence& seq,
                          const FeasibleSet& set) {
  ResolvedSpec out;
  out.spec = spec;
  Schedule& eta = out.spec.eta;
  Schedule& beta = out.spec.beta;
  Regularizer reg = spec.regularizer == RegKind::HalfSquaredL2
                        ? Regularizer::half_squared_l2()
                        : Regularizer::negative_entropy();
  if (spec.regularizer == RegKind::NegativeEntropy)
    require(set.kind() == SetKind::Simplex,
            "NegativeEntropy pairing requires the simplex");
  const int T = seq.horizon();
  const bool validate = spec.validate;

  // strong convexity w.r.t. D_R: quadratics certify it for the Euclidean
  // regularizer only
  double alpha_dr = spec.regularizer == RegKind::HalfSquaredL2
                        ? seq.min_strong_convexity()
                        : 0.0;

  switch (spec.kind) {
    case LearnerKind::Ftl:
      if (validate)
        require(seq.min_strong_convexity() > 0.0,
                "ftl needs strongly convex losses (alpha > 0 over the sequence)");
      out.regime = Regime::StronglyConvex;
      out.alpha = seq.min_strong_convexity();
      break;

    case LearnerKind::Ftrl:
      if (eta.kind == ScheduleKind::Zero)
        eta = Schedule::constant(T > 0 ? 1.0 / std::sqrt(double(T)) : 1.0);
      if (validate)
        require(eta.kind == ScheduleKind::Constant && eta.c > 0.0,
                "ftrl regret guarantee needs a constant step eta = 1/sqrt(T); got " +
                    eta.describe());
      out.regime = Regime::General;
      break;

    case LearnerKind::Iol:
    case LearnerKind::Comid:
    case LearnerKind::Md: {
      double alpha = spec.kind == LearnerKind::Md ? 0.0 : alpha_dr;
      if (alpha > 0.0) {
        out.regime = Regime::StronglyConvex;
        out.alpha = alpha;
        if (eta.kind == ScheduleKind::Zero) eta = Schedule::inverse_t(1.0 / alpha);
        if (validate)
          require(eta.kind == ScheduleKind::InverseT &&
                      std::abs(eta.c * alpha - 1.0) <= 1e-9,
                  std::string(learner_name(spec.kind)) +
                      " strongly convex regime requires eta_t = 1/(alpha t); got " +
                      eta.describe());
      } else {
        out.regime = Regime::General;
        if (eta.kind == ScheduleKind::Zero)
          eta = Schedule::constant(
              spec.kind == LearnerKind::Iol && !spec.delta.is_exact()
                  ? approx_iol_eta(seq, set, reg, spec.delta)
                  : general_convex_eta(seq, set, reg, spec.kind));
        if (validate)
          require(eta.kind == ScheduleKind::Constant && eta.c > 0.0,
                  std::string(learner_name(spec.kind)) +
                      " general convex regime requires a constant eta; got " +
                      eta.describe());
      }
      break;
    }

    case LearnerKind::Rda: {
      double lam = seq.composite().strong_convexity();
      if (lam > 0.0) {
        out.regime = Regime::StronglyConvex;
        out.alpha = lam;
        if (validate)
          require(beta.kind == ScheduleKind::Zero,
                  "rda strongly convex regime runs with beta_t = 0; got " +
                      beta.describe());
      } else {
        out.regime = Regime::General;
        if (beta.kind == ScheduleKind::Zero) beta = Schedule::sqrt_t(1.0);
        if (validate) {
          require(beta.kind == ScheduleKind::SqrtT && std::abs(beta.c - 1.0) <= 1e-12,
                  "rda general regime requires beta_t = sqrt(t); got " +
                      beta.describe());
          double D = set.diameter(reg.paired_norm());
          require(max_regularizer_over(reg, set) <= D * D + 1e-12,
                  "rda general regime needs 0 <= h <= D^2 over the set");
        }
      }
      break;
    }

    case LearnerKind::Batch: {
      require(spec.inner != LearnerKind::Batch, "batch wrapper cannot nest itself");
      int B = spec.batch_size;
      if (B == 0) B = T > 0 ? int(std::ceil(std::sqrt(double(T)))) : 1;
      require(B >= 1, "batch wrapper needs B >= 1");
      out.spec.batch_size = B;
      if (spec.inner == LearnerKind::Ftl && validate)
        require(seq.min_strong_convexity() > 0.0,
                "ftl needs strongly convex losses (alpha > 0 over the sequence)");
      out.regime = Regime::General;
      break;
    }
  }
  return out;
}

namespace {

class LearnerBase {
 public:
  virtual ~LearnerBase() = default;
  virtual const Vector& current() = 0;
  virtual SolveCertificate observe(const Loss& loss, int t) = 0;
};

struct StepPolicy {
  DeltaSchedule delta;
  Route route() const {
    return delta.is_exact() ? Route::Auto : Route::Iterative;
  }
};

class FtlLearner : public LearnerBase {
 public:
  FtlLearner(const FeasibleSet& set, StepPolicy policy)
      : set_(set), policy_(policy), w_(set.project(Vector::Zero(set.dim()))) {}
  const Vector& current() override { return w_; }
  SolveCertificate observe(const Loss& loss, int t) override {
    history_.push_back(loss);
    auto res = ftl_update(history_, set_, policy_.delta.at(t), policy_.route());
    w_ = std::move(res.point);
    return res.cert;
  }

 private:
  const FeasibleSet& set_;
  StepPolicy policy_;
  std::vector<Loss> history_;
  Vector w_;
};

class FtrlLearner : public LearnerBase {
 public:
  FtrlLearner(const FeasibleSet& set, const Regularizer& reg, double eta,
              StepPolicy policy)
      : set_(set), reg_(reg), eta_(eta), policy_(policy), w_(reg.argmin(set)) {}
  const Vector& current() override { return w_; }
  SolveCertificate observe(const Loss& loss, int t) override {
    history_.push_back(loss);
    auto res = ftrl_update(history_, reg_, eta_, set_, policy_.delta.at(t),
                           policy_.route());
    w_ = std::move(res.point);
    return res.cert;
  }

 private:
  const FeasibleSet& set_;
  Regularizer reg_;
  double eta_;
  StepPolicy policy_;
  std::vector<Loss> history_;
  Vector w_;
};

class RdaLearner : public LearnerBase {
 public:
  RdaLearner(const FeasibleSet& set, const Regularizer& h, const CompositePart& r,
             Schedule beta, StepPolicy policy)
      : set_(set), h_(h), r_(r), beta_(beta), policy_(policy), w_(r.argmin()),
        sum_g_(Vector::Zero(set.dim())) {}
  const Vector& current() override { return w_; }
  SolveCertificate observe(const Loss& loss, int t) override {
    sum_g_ += loss.subgradient(w_);
    auto res = rda_update(sum_g_, t, r_, h_, beta_.at(t), set_,
                          policy_.delta.at(t), policy_.route());
    w_ = std::move(res.point);
    return res.cert;
  }

 private:
  const FeasibleSet& set_;
  Regularizer h_;
  CompositePart r_;
  Schedule beta_;
  StepPolicy policy_;
  Vector w_;
  Vector sum_g_;
};

class IolLearner : public LearnerBase {
 public:
  IolLearner(const FeasibleSet& set, const Regularizer& reg, Schedule eta,
             StepPolicy policy)
      : set_(set), reg_(reg), eta_(eta), policy_(policy), w_(reg.argmin(set)) {}
  const Vector& current() override { return w_; }
  SolveCertificate observe(const Loss& loss, int t) override {
    auto res = iol_update(w_, loss, reg_, eta_.at(t), set_, policy_.delta.at(t),
                          policy_.route());
    w_ = std::move(res.point);
    return res.cert;
  }

 private:
  const FeasibleSet& set_;
  Regularizer reg_;
  Schedule eta_;
  StepPolicy policy_;
  Vector w_;
};

class ComidLearner : public LearnerBase {
 public:
  ComidLearner(const FeasibleSet& set, const Regularizer& reg, const CompositePart& r,
               Schedule eta, StepPolicy policy, bool with_composite)
      : set_(set), reg_(reg), r_(r), eta_(eta), policy_(policy),
        with_composite_(with_composite),
        w_(with_composite ? r.argmin() : set.project(Vector::Zero(set.dim()))) {}
  const Vector& current() override { return w_; }
  SolveCertificate observe(const Loss& loss, int t) override {
    Vector g = loss.subgradient(w_);
    auto res = with_composite_
                   ? comid_update(w_, g, r_, reg_, eta_.at(t), set_,
                                  policy_.delta.at(t), policy_.route())
                   : md_update(w_, g, reg_, eta_.at(t), set_, policy_.delta.at(t),
                               policy_.route());
    w_ = std::move(res.point);
    return res.cert;
  }

 private:
  const FeasibleSet& set_;
  Regularizer reg_;
  CompositePart r_;
  Schedule eta_;
  StepPolicy policy_;
  bool with_composite_;
  Vector w_;
};

class BatchLearner : public LearnerBase {
 public:
  BatchLearner(std::unique_ptr<LearnerBase> inner, int B)
      : inner_(std::move(inner)), B_(B) {}
  const Vector& current() override { return inner_->current(); }
  SolveCertificate observe(const Loss& loss, int) override {
    block_.push_back(loss);
    if (static_cast<int>(block_.size()) < B_) return SolveCertificate{};
    // feed the block-average loss; the inner learner sees round index = block count
    ++fed_;
    auto cert = inner_->observe(Loss::average(std::move(block_)), fed_);
    block_.clear();
    return cert;
  }

 private:
  std::unique_ptr<LearnerBase> inner_;
  int B_;
  int fed_ = 0;
  std::vector<Loss> block_;
};

std::unique_ptr<LearnerBase> make_learner(const ResolvedSpec& rs, const FeasibleSet& set,
                                          const AdversarySequence& seq) {
  const LearnerSpec& s = rs.spec;
  Regularizer reg = s.regularizer == RegKind::HalfSquaredL2
                        ? Regularizer::half_squared_l2()
                        : Regularizer::negative_entropy();
  StepPolicy policy{s.delta};
  switch (s.kind) {
    case LearnerKind::Ftl:
      return std::make_unique<FtlLearner>(set, policy);
    case LearnerKind::Ftrl:
      return std::make_unique<FtrlLearner>(set, reg, s.eta.c, policy);
    case LearnerKind::Rda:
      return std::make_unique<RdaLearner>(set, reg, seq.composite(), s.beta, policy);
    case LearnerKind::Iol:
      return std::make_unique<IolLearner>(set, reg, s.eta, policy);
    case LearnerKind::Comid:
      return std::make_unique<ComidLearner>(set, reg, seq.composite(), s.eta, policy,
                                            true);
    case LearnerKind::Md:
      return std::make_unique<ComidLearner>(set, reg, seq.composite(), s.eta, policy,
                                            false);
    case LearnerKind::Batch: {
      LearnerSpec inner = s;
      inner.kind = s.inner;
      inner.batch_size = 0;
      ResolvedSpec rin = resolve_spec(inner, seq, set);
      return std::make_unique<BatchLearner>(make_learner(rin, set, seq), s.batch_size);
    }
  }
  throw ConfigError("make_learner: unreachable");
}

}  // namespace

Trajectory run(const LearnerSpec& spec, std::shared_ptr<const AdversarySequence> seq,
               std::shared_ptr<const FeasibleSet> set, RunOptions opts) {
  require(seq != nullptr && set != nullptr, "run: missing sequence or set");
  require(seq->dim() == set->dim(), "run: sequence/set dimension mismatch");
  ResolvedSpec rs = resolve_spec(spec, *seq, *set);

  Trajectory traj;
  traj.set = set;
  traj.seq = seq;
  traj.meta.learner = spec.kind;
  traj.meta.inner = spec.inner;
  traj.meta.regime = rs.regime;
  traj.meta.regularizer = spec.regularizer;
  traj.meta.norm = spec.regularizer == RegKind::HalfSquaredL2 ? NormKind::L2
                                                              : NormKind::L1;
  traj.meta.eta = rs.spec.eta;
  traj.meta.beta = rs.spec.beta;
  traj.meta.delta = spec.delta;
  traj.meta.batch_size = rs.spec.batch_size > 0 ? rs.spec.batch_size : 1;

  const int T = seq->horizon();
  if (T == 0) return traj;

  auto learner = make_learner(rs, *set, *seq);
  traj.points.reserve(T + 1);
  traj.certs.reserve(T + 1);
  traj.certs.push_back(SolveCertificate{});  // w_1 is a convention, not a solve
  for (int t = 1; t <= T; ++t) {
    traj.points.push_back(learner->current());
    SolveCertificate cert = learner->observe(seq->loss(t), t);
    if (opts.strict && cert.status == SolveStatus::Truncated)
      throw DiagnosticError("solver truncated at step " + std::to_string(t),
                            cert.achieved);
    traj.certs.push_back(cert);
  }
  traj.points.push_back(learner->current());
  return traj;
}

}  // namespace regretlab
