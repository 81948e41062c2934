#ifndef PMIX_ERROR_HPP
#define PMIX_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace pmix
{

enum class ErrorCode
{
  OrderExceeded,
  InvalidPermutation,
  InvalidArgument,
  PrimeSearchFailed,
  DegenerateEigenspace,
  TrivialGroup,
  EmptySet,
  RoundingDrift,
  NotNormal,
  TooManyClasses,
  BudgetExceeded,
  PreconditionNotCertified,
  SyntaxError,
  NotABijection,
  ValidationFailed,
  IoError
};

std::string_view error_code_name(ErrorCode code);

// All library failures are reported through this one exception type; the
// code is what the command line renders as its machine-readable tag.
class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, std::string const &message)
  : std::runtime_error(message), _code(code)
  {}

  ErrorCode code() const { return _code; }

private:
  ErrorCode _code;
};

} // namespace pmix

#endif // PMIX_ERROR_HPP
