#pragma once

#include <stdexcept>
#include <string>

namespace qsl {

// Thrown when a bound is requested for a state that carries no signal
// (zero variance, zero mean above the reference, or an identically zero
// envelope): the corresponding speed limit is undefined, not infinite.
struct NoInformationError : std::domain_error {
  explicit NoInformationError(const std::string& what) : std::domain_error(what) {}
};

// Reference energy level above the ground state: the mean-energy bound
// does not hold there.
struct InvalidReferenceError : std::domain_error {
  explicit InvalidReferenceError(const std::string& what) : std::domain_error(what) {}
};

// Step refinement hit the configured maximum depth without meeting the
// requested tolerance.
struct NonConvergenceError : std::runtime_error {
  explicit NonConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Eigenframe tracking hit a (near-)degenerate generator: the frame, and
// with it the information rate, is undefined at that point.
struct DegenerateFrameError : std::domain_error {
  explicit DegenerateFrameError(const std::string& what) : std::domain_error(what) {}
};

// Requested tensor dimension exceeds the brute-force limit.
struct DimensionError : std::length_error {
  explicit DimensionError(const std::string& what) : std::length_error(what) {}
};

// A target that cannot be met within the supplied horizon, in a context
// where the caller did not ask for feasibility as a value.
struct InfeasibleError : std::runtime_error {
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or invalid scenario specification (CLI input).
struct SpecError : std::runtime_error {
  explicit SpecError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qsl
