#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace monoext {

/// Base of every error raised by the library. `code()` is a stable
/// machine-readable identifier used in the CLI's JSON error objects.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define MONOEXT_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& what) : Error(#Name, what) {}   \
  }

MONOEXT_DEFINE_ERROR(CycleError);
MONOEXT_DEFINE_ERROR(DuplicateLabelError);
MONOEXT_DEFINE_ERROR(UnknownElement);
MONOEXT_DEFINE_ERROR(DuplicateQueryElement);
MONOEXT_DEFINE_ERROR(InvalidPermutation);
MONOEXT_DEFINE_ERROR(EmptyQuery);
MONOEXT_DEFINE_ERROR(NotAChain);
MONOEXT_DEFINE_ERROR(PreconditionViolated);
MONOEXT_DEFINE_ERROR(NotIncreasing);
MONOEXT_DEFINE_ERROR(ScaleSizeMismatch);
MONOEXT_DEFINE_ERROR(OutOfDomain);
MONOEXT_DEFINE_ERROR(ToleranceNotMet);
MONOEXT_DEFINE_ERROR(InvalidGrid);
MONOEXT_DEFINE_ERROR(InvalidMap);
MONOEXT_DEFINE_ERROR(NotIncomparable);
MONOEXT_DEFINE_ERROR(NotAdjacentValues);
MONOEXT_DEFINE_ERROR(InvalidSamples);
MONOEXT_DEFINE_ERROR(ParseError);
MONOEXT_DEFINE_ERROR(MembershipViolation);

#undef MONOEXT_DEFINE_ERROR

/// Raised when an enumeration would yield more than `cap` items.
class CapExceeded : public Error {
 public:
  explicit CapExceeded(std::size_t cap)
      : Error("CapExceeded",
              "enumeration exceeded cap of " + std::to_string(cap)),
        cap_(cap) {}

  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

}  // namespace monoext
