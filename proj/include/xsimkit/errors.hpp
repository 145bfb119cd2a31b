#pragma once

#include <stdexcept>
#include <string>

namespace xsimkit {

// Base for all data/format errors. The CLI maps these to exit code 2;
// usage errors (bad flags) stay exit code 1.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// corpus
struct LengthMismatch : Error { using Error::Error; };
struct EncodingError : Error { using Error::Error; };
struct EmptyLine : Error { using Error::Error; };
struct FormatError : Error { using Error::Error; };
struct InvariantViolation : Error { using Error::Error; };

// align
struct SizeMismatch : Error { using Error::Error; };
struct InvalidValue : Error { using Error::Error; };
struct DimMismatch : Error { using Error::Error; };
struct RowCountMismatch : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

// scoring
struct EmptyCandidateSet : Error { using Error::Error; };

// ranking
struct InsufficientSystems : Error { using Error::Error; };
struct PopulationMismatch : Error { using Error::Error; };
struct MissingGroupTags : Error { using Error::Error; };

}  // namespace xsimkit
