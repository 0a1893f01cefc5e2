#pragma once

#include <stdexcept>

namespace qavg {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonPrimeError : Error { using Error::Error; };
struct EvenCharacteristicError : Error { using Error::Error; };
struct ReducibleModulusError : Error { using Error::Error; };
struct FieldRangeError : Error { using Error::Error; };
struct GridBudgetError : Error { using Error::Error; };
struct ZeroInversionError : Error { using Error::Error; };
struct DegenerateFormError : Error { using Error::Error; };
struct UnsupportedError : Error { using Error::Error; };
struct SideMismatchError : Error { using Error::Error; };
struct RangeError : Error { using Error::Error; };
struct EmptySetError : Error { using Error::Error; };
struct ZeroFunctionError : Error { using Error::Error; };
struct NegativeValueError : Error { using Error::Error; };
struct NoConstructivePatternError : Error { using Error::Error; };
struct ProbeMeaninglessError : Error { using Error::Error; };
struct HypothesisError : Error { using Error::Error; };
struct InternalConsistencyError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

}  // namespace qavg
