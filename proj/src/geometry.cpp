#include "regretlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace regretlab {

FeasibleSet FeasibleSet::ball(Vector center, double radius) {
  require(radius > 0.0, "ball: radius must be positive");
  require(center.size() > 0, "ball: center must be nonempty");
  FeasibleSet s;
  s.kind_ = SetKind::Ball;
  s.dim_ = static_cast<int>(center.size());
  s.center_ = std::move(center);
  s.radius_ = radius;
  return s;
}

FeasibleSet FeasibleSet::box(Vector lower, Vector upper) {
  require(lower.size() == upper.size(), "box: lower/upper dimension mismatch");
  require(lower.size() > 0, "box: bounds must be nonempty");
  require((lower.array() <= upper.array()).all(), "box: lower exceeds upper");
  FeasibleSet s;
  s.kind_ = SetKind::Box;
  s.dim_ = static_cast<int>(lower.size());
  s.lower_ = std::move(lower);
  s.upper_ = std::move(upper);
  return s;
}

FeasibleSet FeasibleSet::simplex(int dim) {
  require(dim >= 1, "simplex: dim must be >= 1");
  FeasibleSet s;
  s.kind_ = SetKind::Simplex;
  s.dim_ = dim;
  return s;
}

double FeasibleSet::diameter(NormKind norm) const {
  switch (kind_) {
    case SetKind::Ball:
      // l1 diameter of an l2 ball: extremes along a coordinate axis pair
      return norm == NormKind::L2 ? 2.0 * radius_ : 2.0 * radius_ * std::sqrt(double(dim_));
    case SetKind::Box:
      return norm_of(upper_ - lower_, norm);
    case SetKind::Simplex:
      return norm == NormKind::L2 ? std::sqrt(2.0) : 2.0;
  }
  return 0.0;
}

Vector FeasibleSet::project(const Vector& x) const {
  require(static_cast<int>(x.size()) == dim_, "project: dimension mismatch");
  switch (kind_) {
    case SetKind::Ball: {
      Vector d = x - center_;
      double n = d.norm();
      if (n <= radius_) return x;
      return center_ + d * (radius_ / n);
    }
    case SetKind::Box:
      return x.cwiseMax(lower_).cwiseMin(upper_);
    case SetKind::Simplex: {
      // sort-based exact projection onto {w >= 0, sum w = 1}
      std::vector<double> u(x.data(), x.data() + dim_);
      std::sort(u.begin(), u.end(), std::greater<double>());
      double cssv = 0.0, theta = 0.0;
      int rho = 0;
      for (int i = 0; i < dim_; ++i) {
        cssv += u[i];
        double t = (cssv - 1.0) / (i + 1);
        if (u[i] - t > 0.0) {
          rho = i + 1;
          theta = t;
        }
      }
      (void)rho;
      return (x.array() - theta).max(0.0).matrix();
    }
  }
  return x;
}

bool FeasibleSet::contains(const Vector& x, double tol) const {
  if (static_cast<int>(x.size()) != dim_) return false;
  switch (kind_) {
    case SetKind::Ball:
      return (x - center_).norm() <= radius_ + tol;
    case SetKind::Box:
      return (x.array() >= lower_.array() - tol).all() &&
             (x.array() <= upper_.array() + tol).all();
    case SetKind::Simplex:
      return (x.array() >= -tol).all() && std::abs(x.sum() - 1.0) <= tol;
  }
  return false;
}

Vector FeasibleSet::sample(SplitMix64& rng, double margin) const {
  double shrink = 1.0 - margin;
  switch (kind_) {
    case SetKind::Ball: {
      Vector dir(dim_);
      for (int i = 0; i < dim_; ++i) dir[i] = rng.next_normal();
      double n = dir.norm();
      if (n < 1e-12) n = 1.0;
      double r = radius_ * shrink * std::pow(rng.next_double(), 1.0 / dim_);
      return center_ + dir * (r / n);
    }
    case SetKind::Box: {
      Vector w(dim_);
      for (int i = 0; i < dim_; ++i) {
        double mid = 0.5 * (lower_[i] + upper_[i]);
        double half = 0.5 * (upper_[i] - lower_[i]) * shrink;
        w[i] = mid + (2.0 * rng.next_double() - 1.0) * half;
      }
      return w;
    }
    case SetKind::Simplex: {
      // Dirichlet(1,..,1) via exponentials, then shrink toward uniform
      Vector w(dim_);
      for (int i = 0; i < dim_; ++i) {
        double u = rng.next_double();
        while (u <= 1e-300) u = rng.next_double();
        w[i] = -std::log(u);
      }
      w /= w.sum();
      Vector uni = Vector::Constant(dim_, 1.0 / dim_);
      return uni + (w - uni) * shrink;
    }
  }
  return Vector::Zero(dim_);
}

double FeasibleSet::max_distance(const Vector& c, NormKind norm) const {
  require(static_cast<int>(c.size()) == dim_, "max_distance: dimension mismatch");
  switch (kind_) {
    case SetKind::Ball: {
      double d2 = (center_ - c).norm() + radius_;
      if (norm == NormKind::L2) return d2;
      // max l1 distance from c over the ball: per the support function of
      // the l2 ball under the sign pattern of (center - c), plus r*sqrt(d)
      return (center_ - c).lpNorm<1>() + radius_ * std::sqrt(double(dim_));
    }
    case SetKind::Box: {
      if (norm == NormKind::L2) {
        double s = 0.0;
        for (int i = 0; i < dim_; ++i) {
          double a = std::abs(lower_[i] - c[i]), b = std::abs(upper_[i] - c[i]);
          double m = std::max(a, b);
          s += m * m;
        }
        return std::sqrt(s);
      }
      double s = 0.0;
      for (int i = 0; i < dim_; ++i)
        s += std::max(std::abs(lower_[i] - c[i]), std::abs(upper_[i] - c[i]));
      return s;
    }
    case SetKind::Simplex: {
      // the max over the simplex is attained at a vertex
      double best = 0.0;
      for (int j = 0; j < dim_; ++j) {
        Vector v = Vector::Zero(dim_);
        v[j] = 1.0;
        best = std::max(best, norm_of(v - c, norm));
      }
      return best;
    }
  }
  return 0.0;
}

Regularizer Regularizer::half_squared_l2() { return Regularizer(RegKind::HalfSquaredL2); }
Regularizer Regularizer::negative_entropy() { return Regularizer(RegKind::NegativeEntropy); }

double Regularizer::value(const Vector& w) const {
  if (kind_ == RegKind::HalfSquaredL2) return 0.5 * w.squaredNorm();
  // sum w_i ln w_i + ln d, floored so boundary points evaluate finitely
  double s = 0.0;
  for (int i = 0; i < w.size(); ++i) {
    double wi = std::max(w[i], kIterateFloor);
    s += wi * std::log(wi);
  }
  return s + std::log(double(w.size()));
}

Vector Regularizer::gradient(const Vector& w) const {
  if (kind_ == RegKind::HalfSquaredL2) return w;
  Vector g(w.size());
  for (int i = 0; i < w.size(); ++i)
    g[i] = 1.0 + std::log(std::max(w[i], kIterateFloor));
  return g;
}

double Regularizer::bregman(const Vector& x, const Vector& y) const {
  require(x.size() == y.size(), "bregman: dimension mismatch");
  if (kind_ == RegKind::HalfSquaredL2) return 0.5 * (x - y).squaredNorm();
  for (int i = 0; i < y.size(); ++i)
    if (y[i] <= 0.0)
      throw std::domain_error("bregman: NegativeEntropy needs y in the relative interior");
  // KL divergence; x may touch the boundary (x ln x -> 0)
  double s = 0.0;
  for (int i = 0; i < x.size(); ++i) {
    double xi = std::max(x[i], 0.0);
    double yi = std::max(y[i], kIterateFloor);
    if (xi > 0.0) s += xi * std::log(xi / yi);
    s += yi - xi;
  }
  return s;
}

Vector Regularizer::argmin(const FeasibleSet& set) const {
  if (kind_ == RegKind::HalfSquaredL2)
    return set.project(Vector::Zero(set.dim()));
  require(set.kind() == SetKind::Simplex,
          "NegativeEntropy is only defined on the simplex");
  return Vector::Constant(set.dim(), 1.0 / set.dim());
}

double Regularizer::dual_norm_grad_bound(const FeasibleSet& set) const {
  if (kind_ == RegKind::HalfSquaredL2) {
    // sup ||w||_2 over C
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
  }
  require(set.kind() == SetKind::Simplex,
          "dual_norm_grad_bound: NegativeEntropy pairs only with the simplex");
  // sup over the eps-interior of max_i |1 + ln w_i|; attained at the floor
  return std::max(1.0, -(1.0 + std::log(kDualFloor)));
}

}  // namespace regretlab
