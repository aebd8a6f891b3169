#pragma once

#include <stdexcept>
#include <string>

namespace choreo {

// Base class for all domain errors thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OriginTooClose : Error {
  double min_radius;
  explicit OriginTooClose(double r)
      : Error("curve approaches the origin: min |u| = " + std::to_string(r)),
        min_radius(r) {}
};

struct UnresolvedWinding : Error {
  int grid_size;
  explicit UnresolvedWinding(int grid)
      : Error("winding unresolved: angular increment >= pi at " +
              std::to_string(grid) + " samples"),
        grid_size(grid) {}
};

struct ResonantMode : Error {
  int mode;
  double gap;
  ResonantMode(int k, double g)
      : Error("resonant mode k = " + std::to_string(k) +
              ": min |omega k -+ Omega| = " + std::to_string(g)),
        mode(k), gap(g) {}
};

struct CollisionProximity : Error {
  double separation;
  explicit CollisionProximity(double rho)
      : Error("pairwise separation " + std::to_string(rho) +
              " fell below the collision threshold"),
        separation(rho) {}
};

struct HypothesisViolated : Error {
  using Error::Error;
};

struct InadmissibleMode : Error {
  int mode;
  InadmissibleMode(int k, int n)
      : Error("mode " + std::to_string(k) + " is not congruent to 1 mod " +
              std::to_string(n)),
        mode(k) {}
};

struct UnsupportedParity : Error {
  int n;
  explicit UnsupportedParity(int n_)
      : Error("even body count n = " + std::to_string(n_) +
              " yields coincident copies under the choreography pairing"),
        n(n_) {}
};

struct SingularJacobian : Error {
  using Error::Error;
};

struct StageFailed : Error {
  double lambda;
  StageFailed(double l, const std::string& why)
      : Error("continuation stage lambda = " + std::to_string(l) + " failed: " + why),
        lambda(l) {}
};

struct IntegratorCollision : Error {
  double time;
  double separation;
  IntegratorCollision(double t, double rho)
      : Error("integrator detected separation " + std::to_string(rho) +
              " at t = " + std::to_string(t)),
        time(t), separation(rho) {}
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace choreo
