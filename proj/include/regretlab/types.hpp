#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace regretlab {

using Vector = Eigen::VectorXd;

// Thrown when a configuration violates a precondition that can be checked
// before any numerics run (dimension mismatches, unsupported pairings,
// schedule/regime violations).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a numeric routine cannot deliver its contract (solver
// non-convergence in strict mode, hindsight certification failure). Carries
// the best certificate achieved so callers can decide what to do with it.
class DiagnosticError : public std::runtime_error {
 public:
  DiagnosticError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_certificate(achieved) {}
  double achieved_certificate;
};

enum class NormKind { L2, L1 };

double norm_of(const Vector& v, NormKind kind);
double dual_norm_of(const Vector& v, NormKind kind);

// Counter-based deterministic generator (splitmix64). All randomness in the
// library flows through this so that (seed, t) reproduces bit-identical
// streams on any platform; std::* distributions are implementation-defined
// and must not be used.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // standard normal via Box-Muller, platform-stable
  double next_normal();

  // mixes a key into a fresh stream; used for counter-based per-step draws
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t counter) {
    SplitMix64 g(seed ^ (0x517cc1b727220a95ULL * (counter + 1)));
    return g.next_u64();
  }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

void require(bool cond, const std::string& message);

}  // namespace regretlab
