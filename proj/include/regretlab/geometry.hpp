#pragma once

#include "regretlab/types.hpp"

namespace regretlab {

enum class SetKind { Ball, Box, Simplex };

// Closed convex feasible set with exact Euclidean projection. Only the three
// kinds below are supported; each has closed-form projection, diameter, and
// sampling, which the rest of the library leans on for certified constants.
class FeasibleSet {
 public:
  static FeasibleSet ball(Vector center, double radius);
  static FeasibleSet box(Vector lower, Vector upper);
  static FeasibleSet simplex(int dim);

  SetKind kind() const { return kind_; }
  int dim() const { return dim_; }

  // diameter w.r.t. the given norm: 2r, ||up-lo||, sqrt(2) for l2;
  // l1 diameters are the exact closed forms (simplex: 2).
  double diameter(NormKind norm = NormKind::L2) const;

  Vector project(const Vector& x) const;
  bool contains(const Vector& x, double tol = 1e-9) const;

  // uniform-ish interior sample; margin in [0,1) shrinks toward the
  // analytic center so losses can keep optima away from the boundary
  Vector sample(SplitMix64& rng, double margin = 0.0) const;

  // max_{w in C} |w_i - c_i| per coordinate, and max_{w in C} ||w - c||;
  // used for certified Lipschitz constants of quadratic losses
  double max_distance(const Vector& c, NormKind norm) const;

  const Vector& center() const { return center_; }
  double radius() const { return radius_; }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }

 private:
  FeasibleSet() = default;
  SetKind kind_ = SetKind::Ball;
  int dim_ = 0;
  Vector center_;   // ball
  double radius_ = 0.0;
  Vector lower_, upper_;  // box
};

enum class RegKind { HalfSquaredL2, NegativeEntropy };

// Strongly convex regularizer R with modulus 1 w.r.t. its paired norm:
// HalfSquaredL2 pairs with l2, NegativeEntropy (shifted by +ln d so its
// minimum over the simplex is 0) pairs with l1 and is only defined there.
class Regularizer {
 public:
  static Regularizer half_squared_l2();
  static Regularizer negative_entropy();

  RegKind kind() const { return kind_; }
  NormKind paired_norm() const {
    return kind_ == RegKind::HalfSquaredL2 ? NormKind::L2 : NormKind::L1;
  }
  double strong_convexity() const { return 1.0; }
  // R >= 0 on every supported set; bound formulas rely on this
  bool nonnegative() const { return true; }

  double value(const Vector& w) const;
  // entropy gradients evaluate on coordinates floored at kIterateFloor; a
  // nonpositive coordinate in y is a domain error for bregman()
  Vector gradient(const Vector& w) const;

  // D_R(x, y) = R(x) - R(y) - <grad R(y), x - y>
  double bregman(const Vector& x, const Vector& y) const;

  Vector argmin(const FeasibleSet& set) const;

  // sup_{w in C} ||grad R(w)||_* for the paired norm. For entropy the sup is
  // over the eps-interior (coordinates >= kDualFloor); unbounded otherwise.
  double dual_norm_grad_bound(const FeasibleSet& set) const;

  static constexpr double kIterateFloor = 1e-12;
  static constexpr double kDualFloor = 1e-6;

 private:
  explicit Regularizer(RegKind kind) : kind_(kind) {}
  RegKind kind_;
};

}  // namespace regretlab
