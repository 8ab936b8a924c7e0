#pragma once

#include "regretlab/types.hpp"

#include <cmath>
#include <string>

namespace regretlab {

enum class ScheduleKind { Zero, Constant, InverseT, InverseSqrtT, SqrtT };

// step-size / parameter schedule evaluated at rounds t = 1, 2, ...
struct Schedule {
  ScheduleKind kind = ScheduleKind::Zero;
  double c = 0.0;

  static Schedule zero() { return {ScheduleKind::Zero, 0.0}; }
  static Schedule constant(double c) { return {ScheduleKind::Constant, c}; }
  static Schedule inverse_t(double c) { return {ScheduleKind::InverseT, c}; }
  static Schedule inverse_sqrt_t(double c) { return {ScheduleKind::InverseSqrtT, c}; }
  static Schedule sqrt_t(double c) { return {ScheduleKind::SqrtT, c}; }

  double at(int t) const {
    switch (kind) {
      case ScheduleKind::Zero: return 0.0;
      case ScheduleKind::Constant: return c;
      case ScheduleKind::InverseT: return c / t;
      case ScheduleKind::InverseSqrtT: return c / std::sqrt(double(t));
      case ScheduleKind::SqrtT: return c * std::sqrt(double(t));
    }
    return 0.0;
  }

  double sum(int T) const {
    double s = 0.0;
    for (int t = 1; t <= T; ++t) s += at(t);
    return s;
  }

  std::string describe() const {
    switch (kind) {
      case ScheduleKind::Zero: return "0";
      case ScheduleKind::Constant: return "constant";
      case ScheduleKind::InverseT: return "c/t";
      case ScheduleKind::InverseSqrtT: return "c/sqrt(t)";
      case ScheduleKind::SqrtT: return "c*sqrt(t)";
    }
    return "?";
  }
};

// certificate target schedule; Exact means the solver floor with closed-form
// routes allowed
struct DeltaSchedule {
  enum class Kind { Exact, Constant, InverseSqrtT, InverseT, InverseT2 };
  Kind kind = Kind::Exact;
  double c = 1.0;

  static DeltaSchedule exact() { return {Kind::Exact, 0.0}; }

  bool is_exact() const { return kind == Kind::Exact; }

  double at(int t) const {
    switch (kind) {
      case Kind::Exact: return 1e-10;
      case Kind::Constant: return c;
      case Kind::InverseSqrtT: return c / std::sqrt(double(t));
      case Kind::InverseT: return c / t;
      case Kind::InverseT2: return c / (double(t) * t);
    }
    return 1e-10;
  }

  std::string describe() const {
    switch (kind) {
      case Kind::Exact: return "exact";
      case Kind::Constant: return "constant";
      case Kind::InverseSqrtT: return "c/sqrt(t)";
      case Kind::InverseT: return "c/t";
      case Kind::InverseT2: return "c/t^2";
    }
    return "?";
  }
};

}  // namespace regretlab
