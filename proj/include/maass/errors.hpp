#pragma once

#include <stdexcept>
#include <string>

namespace maass {

// Two error families, mirrored by the CLI exit codes:
//   InputError   -> rejected inputs / violated preconditions (exit 2)
//   ComputeError -> failures detected while computing on accepted inputs (exit 3)
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ComputeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StepSizeInvalid : InputError { using InputError::InputError; };
struct RangeError      : InputError { using InputError::InputError; };
struct DomainError     : InputError { using InputError::InputError; };
struct LimitExceeded   : InputError { using InputError::InputError; };
struct TableTooSmall   : InputError { using InputError::InputError; };
struct LengthMismatch  : InputError { using InputError::InputError; };
struct NotInvertible   : InputError { using InputError::InputError; };
struct ParseError      : InputError { using InputError::InputError; };
struct ValidationError : InputError { using InputError::InputError; };
struct OrderError      : InputError { using InputError::InputError; };

struct ImaginaryResidual  : ComputeError { using ComputeError::ComputeError; };
struct MissingCoefficient : ComputeError { using ComputeError::ComputeError; };
struct NotApplicable      : ComputeError { using ComputeError::ComputeError; };
struct NoZeroFound        : ComputeError { using ComputeError::ComputeError; };
struct IncompleteCoverage : ComputeError { using ComputeError::ComputeError; };

}  // namespace maass
