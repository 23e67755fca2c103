#pragma once

#include <stdexcept>
#include <string>

namespace mmlp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownAgent : public Error {
 public:
  using Error::Error;
};

/// Raised when an objective is requested on an instance without beneficiaries.
class EmptyBeneficiarySet : public Error {
 public:
  EmptyBeneficiarySet() : Error("empty K: instance has no beneficiaries") {}
};

class SolverFailure : public Error {
 public:
  using Error::Error;
};

class CapacityExceeded : public Error {
 public:
  using Error::Error;
};

class GenerationFailure : public Error {
 public:
  using Error::Error;
};

/// A local algorithm produced a negative or non-finite activity.
class AlgorithmOutputError : public Error {
 public:
  using Error::Error;
};

}  // namespace mmlp
