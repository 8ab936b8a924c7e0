#pragma once

#include "regretlab/losses.hpp"
#include "regretlab/schedules.hpp"
#include "regretlab/solver.hpp"

#include <memory>
#include <vector>

namespace regretlab {

enum class LearnerKind { Ftl, Ftrl, Rda, Comid, Iol, Md, Batch };
enum class Regime { General, StronglyConvex };

const char* learner_name(LearnerKind kind);
LearnerKind learner_from_name(const std::string& name);

// Everything bound formulas need to know about how a trajectory was produced.
struct TrajectoryMeta {
  LearnerKind learner = LearnerKind::Md;
  LearnerKind inner = LearnerKind::Ftl;  // batch wrapper
  Regime regime = Regime::General;
  RegKind regularizer = RegKind::HalfSquaredL2;
  NormKind norm = NormKind::L2;  // stability norm, paired with the regularizer
  Schedule eta;
  Schedule beta;
  DeltaSchedule delta;
  int batch_size = 1;
};

// Ordered record of a run: iterates w_1..w_{T+1} with the certificate of the
// solve that produced each. certs[0] belongs to w_1, certs[t] to w_{t+1}.
// T = 0 leaves both lists empty.
struct Trajectory {
  std::shared_ptr<const FeasibleSet> set;
  std::shared_ptr<const AdversarySequence> seq;
  TrajectoryMeta meta;
  std::vector<Vector> points;
  std::vector<SolveCertificate> certs;

  int horizon() const {
    return points.empty() ? 0 : static_cast<int>(points.size()) - 1;
  }
};

}  // namespace regretlab
