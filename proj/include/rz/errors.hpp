#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace rz {

// Two failure classes: bad input (parameters, preconditions) and numerical
// machinery that could not deliver a trustworthy answer. The CLI maps them to
// exit codes 1 and 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

class NonInvertibleError : public DomainError {
 public:
  using DomainError::DomainError;
};

class UnsupportedReductionError : public DomainError {
 public:
  using DomainError::DomainError;
};

class UndefinedStatisticError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A Sturm count was requested at an endpoint that is itself a root.
class EndpointRootError : public DomainError {
 public:
  EndpointRootError(const std::string& what, double endpoint, double nudge)
      : DomainError(what), endpoint_(endpoint), nudge_(nudge) {}
  double endpoint() const { return endpoint_; }
  /// Endpoint value that moves off the root without crossing another one.
  double suggested() const { return nudge_; }

 private:
  double endpoint_;
  double nudge_;
};

/// t0(theta) = -1/(b - 2a cos theta) hit its pole.
class PoleError : public DomainError {
 public:
  PoleError(const std::string& what, double theta_pole)
      : DomainError(what), theta_pole_(theta_pole) {}
  double theta_pole() const { return theta_pole_; }

 private:
  double theta_pole_;
};

/// Simultaneous iteration hit its cap; carries the best iterates.
class InconclusiveError : public SolverError {
 public:
  InconclusiveError(const std::string& what,
                    std::vector<std::complex<double>> iterates,
                    double worst_residual)
      : SolverError(what),
        iterates_(std::move(iterates)),
        worst_residual_(worst_residual) {}
  const std::vector<std::complex<double>>& iterates() const { return iterates_; }
  double worst_residual() const { return worst_residual_; }

 private:
  std::vector<std::complex<double>> iterates_;
  double worst_residual_;
};

class BracketFailureError : public SolverError {
 public:
  BracketFailureError(const std::string& what, int found, int expected)
      : SolverError(what), found_(found), expected_(expected) {}
  int found() const { return found_; }
  int expected() const { return expected_; }

 private:
  int found_;
  int expected_;
};

class WitnessSearchError : public SolverError {
 public:
  WitnessSearchError(const std::string& what, std::vector<std::string> trace)
      : SolverError(what), trace_(std::move(trace)) {}
  const std::vector<std::string>& trace() const { return trace_; }

 private:
  std::vector<std::string> trace_;
};

class VerificationFailureError : public SolverError {
 public:
  using SolverError::SolverError;
};

}  // namespace rz
