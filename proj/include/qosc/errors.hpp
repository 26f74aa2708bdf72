#pragma once

#include <stdexcept>
#include <string>

namespace qosc {

// Domain violations in the parameter-transformation chain.
struct NegativeRadicand : std::runtime_error {
  explicit NegativeRadicand(const std::string& what) : std::runtime_error(what) {}
};

struct NonpositiveMass : std::runtime_error {
  explicit NonpositiveMass(const std::string& what) : std::runtime_error(what) {}
};

// Mixing-angle solve failures.
struct ThetaNotConstant : std::runtime_error {
  ThetaNotConstant(const std::string& what, double deviation)
      : std::runtime_error(what), max_deviation(deviation) {}
  double max_deviation;
};

struct DegenerateFrequencies : std::runtime_error {
  explicit DegenerateFrequencies(const std::string& what) : std::runtime_error(what) {}
};

// ODE integration failures.
struct StepSizeUnderflow : std::runtime_error {
  explicit StepSizeUnderflow(const std::string& what) : std::runtime_error(what) {}
};

struct RhoNonPositive : std::runtime_error {
  explicit RhoNonPositive(const std::string& what) : std::runtime_error(what) {}
};

// Grid and state-shape failures.
struct GridTooSmall : std::runtime_error {
  explicit GridTooSmall(const std::string& what) : std::runtime_error(what) {}
};

struct GridMismatch : std::runtime_error {
  explicit GridMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct SupportClipped : std::runtime_error {
  explicit SupportClipped(const std::string& what) : std::runtime_error(what) {}
};

// Propagation failures.
struct StabilityViolation : std::runtime_error {
  explicit StabilityViolation(const std::string& what) : std::runtime_error(what) {}
};

struct NormDrift : std::runtime_error {
  explicit NormDrift(const std::string& what) : std::runtime_error(what) {}
};

struct TimeMeshMismatch : std::runtime_error {
  explicit TimeMeshMismatch(const std::string& what) : std::runtime_error(what) {}
};

// Scenario / configuration problems (CLI exit code 1).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Missing or malformed on-disk artifact (CLI exit code 4).
struct ArtifactError : std::runtime_error {
  explicit ArtifactError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qosc
