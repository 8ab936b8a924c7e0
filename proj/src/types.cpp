#include "regretlab/types.hpp"

#include <cmath>

namespace regretlab {

double norm_of(const Vector& v, NormKind kind) {
  return kind == NormKind::L2 ? v.norm() : v.lpNorm<1>();
}

double dual_norm_of(const Vector& v, NormKind kind) {
  return kind == NormKind::L2 ? v.norm() : v.lpNorm<Eigen::Infinity>();
}

double SplitMix64::next_normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // Box-Muller on our own uniforms keeps the stream platform-stable
  double u1 = next_double();
  double u2 = next_double();
  while (u1 <= 1e-300) u1 = next_double();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

void require(bool cond, const std::string& message) {
  if (!cond) throw ConfigError(message);
}

}  // namespace regretlab
