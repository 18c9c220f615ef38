#pragma once

#include <stdexcept>
#include <string>

namespace polycubify {

// Numeric values are shared with the C API status enum.
enum class ErrorCode : int {
  kParse = 1,
  kTopology = 2,
  kDegenerate = 3,
  kOrientation = 4,
  kInfeasible = 5,
  kSolve = 6,
  kEmptyArchive = 7,
  kInvalidArgument = 8,
  kIo = 9,
  kNoPath = 10,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

#define POLYCUBIFY_DEFINE_ERROR(Name, Code)                                 \
  class Name : public Error {                                               \
   public:                                                                  \
    explicit Name(const std::string& what) : Error(ErrorCode::Code, what) {} \
  };

POLYCUBIFY_DEFINE_ERROR(ParseError, kParse)
POLYCUBIFY_DEFINE_ERROR(TopologyError, kTopology)
POLYCUBIFY_DEFINE_ERROR(DegenerateError, kDegenerate)
POLYCUBIFY_DEFINE_ERROR(OrientationError, kOrientation)
POLYCUBIFY_DEFINE_ERROR(InfeasibleError, kInfeasible)
POLYCUBIFY_DEFINE_ERROR(SolveError, kSolve)
POLYCUBIFY_DEFINE_ERROR(EmptyArchiveError, kEmptyArchive)
POLYCUBIFY_DEFINE_ERROR(InvalidArgumentError, kInvalidArgument)
POLYCUBIFY_DEFINE_ERROR(IoError, kIo)
POLYCUBIFY_DEFINE_ERROR(NoPathError, kNoPath)

#undef POLYCUBIFY_DEFINE_ERROR

}  // namespace polycubify
