#pragma once

#include "regretlab/geometry.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace regretlab {

enum class LossKind { Linear, Quadratic, Hinge, Average };

// (q/2)||w||^2 - b.w + c, the aggregate form every smooth loss family here
// reduces to; the solver's closed-form fast path keys on it
struct QuadraticForm {
  double q = 0.0;
  Vector b;
  double c = 0.0;

  Vector minimizer_center() const { return b / q; }
};

class Loss {
 public:
  // g.w
  static Loss linear(Vector g);
  // (curvature/2)||w - center||^2
  static Loss quadratic(Vector center, double curvature);
  // max(0, g.w - threshold); subgradient returns the right-limit at the kink
  static Loss hinge(Vector g, double threshold);
  // (1/n) sum of parts; exact aggregate, keeps quadratic structure if all
  // parts are linear/quadratic
  static Loss average(std::vector<Loss> parts);

  LossKind kind() const { return kind_; }
  int dim() const { return dim_; }

  double value(const Vector& w) const;
  Vector subgradient(const Vector& w) const;

  // certified Lipschitz constant over the set w.r.t. the norm (exact closed
  // forms; this is what bound formulas consume)
  double lipschitz(const FeasibleSet& set, NormKind norm) const;

  // strong convexity modulus w.r.t. half squared l2 (equivalently w.r.t.
  // D_R for R = HalfSquaredL2); 0 for linear and hinge
  double strong_convexity() const;

  // gradient Lipschitz constant when smooth; nullopt for hinge
  std::optional<double> smoothness() const;

  // aggregate (q/2)||w||^2 - b.w + c when the loss is a linear/quadratic
  // combination; nullopt for hinge
  std::optional<QuadraticForm> quadratic_form() const;

  const Vector& direction() const { return g_; }   // linear/hinge
  const Vector& center() const { return center_; } // quadratic
  double curvature() const { return curvature_; }
  double threshold() const { return threshold_; }

 private:
  Loss() = default;
  LossKind kind_ = LossKind::Linear;
  int dim_ = 0;
  Vector g_;
  Vector center_;
  double curvature_ = 0.0;
  double threshold_ = 0.0;
  std::vector<Loss> parts_;  // average
};

enum class CompositeKind { None, L1, HalfSquaredL2 };

// Regularization part r shared across rounds, normalized so min_C r = 0.
// The normalization offset is frozen when the part is bound to a set.
class CompositePart {
 public:
  static CompositePart none();
  static CompositePart l1(double weight);
  static CompositePart half_squared_l2(double weight);

  CompositeKind kind() const { return kind_; }
  double weight() const { return weight_; }
  bool is_none() const { return kind_ == CompositeKind::None; }

  // computes the normalization offset and the minimizer over the set;
  // L1 needs a box, simplex, or origin-centered ball
  void bind(const FeasibleSet& set);
  bool bound() const { return bound_; }

  double value(const Vector& w) const;  // normalized: raw - min_C raw
  Vector subgradient(const Vector& w) const;
  double strong_convexity() const {
    return kind_ == CompositeKind::HalfSquaredL2 ? weight_ : 0.0;
  }
  // Lipschitz constant over the bound set w.r.t. the norm
  double lipschitz(const FeasibleSet& set, NormKind norm) const;
  const Vector& argmin() const;
  double offset() const { return offset_; }

 private:
  CompositePart(CompositeKind kind, double weight) : kind_(kind), weight_(weight) {}
  CompositeKind kind_;
  double weight_ = 0.0;
  bool bound_ = false;
  double offset_ = 0.0;
  Vector argmin_;
};

enum class GeneratorKind { Quadratic, Linear, Hinge };

struct AdversaryParams {
  GeneratorKind kind = GeneratorKind::Linear;
  double scale = 1.0;       // target gradient magnitude L
  double curvature = 1.0;   // quadratic alpha
  double bias = 0.75;       // drift strength relative to noise, in [0,1)
  double margin = 0.2;      // interior margin for quadratic centers
};

// Deterministic oblivious adversary: loss t is a pure function of
// (seed, kind, params, t), bit-identical across platforms and re-reads.
class AdversarySequence {
 public:
  AdversarySequence(std::uint64_t seed, int horizon, const FeasibleSet& set,
                    AdversaryParams params, CompositePart composite = CompositePart::none());

  // wraps an explicit loss list (replays, block averages, hand-built tests)
  static AdversarySequence from_losses(std::vector<Loss> losses, const FeasibleSet& set,
                                       CompositePart composite = CompositePart::none(),
                                       std::uint64_t seed = 0);

  int horizon() const { return horizon_; }
  int dim() const { return dim_; }
  std::uint64_t seed() const { return seed_; }
  const AdversaryParams& params() const { return params_; }
  const Loss& loss(int t) const;  // t in [1, horizon]
  const CompositePart& composite() const { return composite_; }

  // exact max_t of the per-loss certified constants (losses only)
  double uniform_lipschitz(const FeasibleSet& set, NormKind norm) const;
  // including the composite part; what pathwise checks need
  double total_lipschitz(const FeasibleSet& set, NormKind norm) const;
  // exact min_t strong convexity of the losses
  double min_strong_convexity() const;

  // effective per-round objective: loss value plus normalized composite
  double effective_value(int t, const Vector& w) const;

 private:
  AdversarySequence() : seed_(0), horizon_(0), dim_(0), composite_(CompositePart::none()) {}
  std::uint64_t seed_;
  int horizon_;
  int dim_;
  AdversaryParams params_;
  CompositePart composite_;
  std::vector<Loss> losses_;
};

// argmin over the set of sum_t [loss_t + r], with its achieved value and a
// certificate on suboptimality. Closed forms are used whenever the family
// allows; otherwise the certified solver runs with target 1e-8.
struct Hindsight {
  Vector w_star;
  double value = 0.0;       // sum of effective losses at w_star
  double eps_star = 0.0;    // certified suboptimality of w_star
  double mu = 0.0;          // strong convexity of the total objective (0 if closed form)
};

Hindsight hindsight_optimum(const AdversarySequence& seq, const FeasibleSet& set);

}  // namespace regretlab
