#include "pmix/error.hpp"

namespace pmix
{

std::string_view error_code_name(ErrorCode code)
{
  switch (code) {
  case ErrorCode::OrderExceeded: return "OrderExceeded";
  case ErrorCode::InvalidPermutation: return "InvalidPermutation";
  case ErrorCode::InvalidArgument: return "InvalidArgument";
  case ErrorCode::PrimeSearchFailed: return "PrimeSearchFailed";
  case ErrorCode::DegenerateEigenspace: return "DegenerateEigenspace";
  case ErrorCode::TrivialGroup: return "TrivialGroup";
  case ErrorCode::EmptySet: return "EmptySet";
  case ErrorCode::RoundingDrift: return "RoundingDrift";
  case ErrorCode::NotNormal: return "NotNormal";
  case ErrorCode::TooManyClasses: return "TooManyClasses";
  case ErrorCode::BudgetExceeded: return "BudgetExceeded";
  case ErrorCode::PreconditionNotCertified: return "PreconditionNotCertified";
  case ErrorCode::SyntaxError: return "SyntaxError";
  case ErrorCode::NotABijection: return "NotABijection";
  case ErrorCode::ValidationFailed: return "ValidationFailed";
  case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

} // namespace pmix
