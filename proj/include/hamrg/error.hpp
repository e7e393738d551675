#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hamrg {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define HAMRG_DEFINE_ERROR(Name)                        \
  class Name : public Error {                           \
   public:                                              \
    explicit Name(const std::string& what)              \
        : Error(std::string(#Name ": ") + what) {}      \
  }

HAMRG_DEFINE_ERROR(InfeasibleTarget);
HAMRG_DEFINE_ERROR(NonConvergence);
HAMRG_DEFINE_ERROR(OutOfSupport);
HAMRG_DEFINE_ERROR(IndexOutOfRange);
HAMRG_DEFINE_ERROR(DeadVertex);
HAMRG_DEFINE_ERROR(IsolatedVertex);
HAMRG_DEFINE_ERROR(OddTotal);
HAMRG_DEFINE_ERROR(MinDegreeViolation);
HAMRG_DEFINE_ERROR(EmptyGraph);
HAMRG_DEFINE_ERROR(NotA2Matching);
HAMRG_DEFINE_ERROR(EmptyCover);
HAMRG_DEFINE_ERROR(InvalidRotation);
HAMRG_DEFINE_ERROR(TooLarge);
HAMRG_DEFINE_ERROR(ParseError);

#undef HAMRG_DEFINE_ERROR

// Raised when a rejection sampler gives up. Carries enough context to tell a
// mis-sized input from bad luck.
class RetryLimitExceeded : public Error {
 public:
  RetryLimitExceeded(const std::string& what, std::int64_t attempts,
                     std::int64_t successes, double rho)
      : Error("RetryLimitExceeded: " + what),
        attempts_(attempts),
        successes_(successes),
        rho_(rho) {}

  std::int64_t attempts() const { return attempts_; }
  std::int64_t successes() const { return successes_; }
  double rho() const { return rho_; }

 private:
  std::int64_t attempts_;
  std::int64_t successes_;
  double rho_;
};

}  // namespace hamrg
