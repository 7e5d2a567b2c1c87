#pragma once

#include <stdexcept>
#include <string>

namespace specfold {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input: malformed text, violated precondition, impossible request.
/// The command line tool maps these to exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Floating point trouble the library refuses to paper over (rank ties,
/// non-converged decompositions).  Mapped to exit code 3.
class NumericError : public Error {
 public:
  using Error::Error;
};

#define SPECFOLD_VALIDATION_ERROR(NAME)      \
  class NAME : public ValidationError {      \
   public:                                   \
    using ValidationError::ValidationError;  \
  }

SPECFOLD_VALIDATION_ERROR(DimensionMismatch);
SPECFOLD_VALIDATION_ERROR(SingularMatrix);
SPECFOLD_VALIDATION_ERROR(UnsupportedMatrix);
SPECFOLD_VALIDATION_ERROR(EmptyBand);
SPECFOLD_VALIDATION_ERROR(EmptyList);
SPECFOLD_VALIDATION_ERROR(NotSamplingMatrix);
SPECFOLD_VALIDATION_ERROR(Incommensurable);
SPECFOLD_VALIDATION_ERROR(PeriodMismatch);
SPECFOLD_VALIDATION_ERROR(NotDisjoint);
SPECFOLD_VALIDATION_ERROR(NotTight);
SPECFOLD_VALIDATION_ERROR(LengthMismatch);
SPECFOLD_VALIDATION_ERROR(MissingTimeProfile);
SPECFOLD_VALIDATION_ERROR(NotExpansive);
SPECFOLD_VALIDATION_ERROR(ZeroFactor);
SPECFOLD_VALIDATION_ERROR(ParseError);
SPECFOLD_VALIDATION_ERROR(UnknownKey);

#undef SPECFOLD_VALIDATION_ERROR

/// No frequency of the requested grid lands in the band.  Carries the
/// smallest commensurable period that would fix it.
class EmptyBandGrid : public ValidationError {
 public:
  EmptyBandGrid(const std::string& message, std::string suggested_period)
      : ValidationError(message), suggested_period_(std::move(suggested_period)) {}
  const std::string& suggested_period() const { return suggested_period_; }

 private:
  std::string suggested_period_;
};

/// A rank decision fell inside the ambiguity window around the threshold;
/// the caller gets an error instead of a coin flip.
class RankAmbiguity : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace specfold
