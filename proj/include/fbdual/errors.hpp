#pragma once

#include <stdexcept>
#include <string>

namespace fbd {

// Every fault raised by the engine derives from Error so the C API boundary can
// translate it into a status code without knowing the concrete type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

#define FBD_DECLARE_ERROR(Name)                                         \
  class Name : public Error {                                           \
   public:                                                              \
    using Error::Error;                                                 \
    const char* kind() const noexcept override { return #Name; }        \
  }

FBD_DECLARE_ERROR(DivisionByZero);
FBD_DECLARE_ERROR(EvalSingularity);
FBD_DECLARE_ERROR(ConventionMismatch);
FBD_DECLARE_ERROR(ClosureFailure);
FBD_DECLARE_ERROR(NonScalarCasimir);
FBD_DECLARE_ERROR(UnknownLabel);
FBD_DECLARE_ERROR(NotAnEigenstate);
FBD_DECLARE_ERROR(GridTooCoarse);
FBD_DECLARE_ERROR(GridTooSmall);
FBD_DECLARE_ERROR(DerivativeBoundary);
FBD_DECLARE_ERROR(ConfigError);
FBD_DECLARE_ERROR(ConventionUnresolvable);
FBD_DECLARE_ERROR(IoError);

#undef FBD_DECLARE_ERROR

}  // namespace fbd
