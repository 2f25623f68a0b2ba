#pragma once

#include <stdexcept>
#include <string>

namespace scg {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParam : public Error {
 public:
  InvalidParam(std::string field, const std::string& reason)
      : Error("invalid parameter '" + field + "': " + reason), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

#define SCG_DEFINE_ERROR(Name)  \
  class Name : public Error {   \
   public:                      \
    using Error::Error;         \
  };

SCG_DEFINE_ERROR(RoleViolation)
SCG_DEFINE_ERROR(NegativeArgument)
SCG_DEFINE_ERROR(DegenerateDenominator)
SCG_DEFINE_ERROR(DeltaOutOfRange)
SCG_DEFINE_ERROR(SubcriticalDelta)
SCG_DEFINE_ERROR(NoNeighbor)
SCG_DEFINE_ERROR(UnknownNode)
SCG_DEFINE_ERROR(EmptyComponent)
SCG_DEFINE_ERROR(GeometryError)
SCG_DEFINE_ERROR(DegenerateInput)
SCG_DEFINE_ERROR(IoError)
SCG_DEFINE_ERROR(InvalidSpec)

#undef SCG_DEFINE_ERROR

}  // namespace scg
