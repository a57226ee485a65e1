#pragma once

#include <stdexcept>
#include <string>

namespace hecke {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define HECKE_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                      \
   public:                                                         \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

HECKE_DEFINE_ERROR(NonUnit);
HECKE_DEFINE_ERROR(ZeroSubstitution);
HECKE_DEFINE_ERROR(InsufficientPrecision);
HECKE_DEFINE_ERROR(TraceNotZero);
HECKE_DEFINE_ERROR(RadiusExceeded);
HECKE_DEFINE_ERROR(InterpolationDegreeExceeded);
HECKE_DEFINE_ERROR(NonIntegralCoefficient);
HECKE_DEFINE_ERROR(BudgetExceeded);
HECKE_DEFINE_ERROR(NotNormOne);
HECKE_DEFINE_ERROR(CertificateFailure);
HECKE_DEFINE_ERROR(UsageError);
HECKE_DEFINE_ERROR(ArithmeticOverflow);

#undef HECKE_DEFINE_ERROR

}  // namespace hecke
