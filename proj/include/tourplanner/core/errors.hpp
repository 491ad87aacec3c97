#pragma once

#include <stdexcept>
#include <string>

namespace tourplanner {

// Base for all domain errors raised by the library. Precondition violations
// use std::invalid_argument instead.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// providers
struct TransportError : Error { using Error::Error; };
struct SchemaError : Error { using Error::Error; };
struct AuthError : Error { using Error::Error; };
struct DimensionMismatchError : Error { using Error::Error; };

// sandbox
struct ParseError : Error { using Error::Error; };
struct DuplicateIdError : Error { using Error::Error; };
struct UnknownCityError : Error { using Error::Error; };

// profile
struct ExtractionError : Error { using Error::Error; };
struct StatsMissingError : Error { using Error::Error; };
struct EmptyCategoryError : Error { using Error::Error; };

// geo
struct InsufficientPointsError : Error { using Error::Error; };
struct NoClustersError : Error { using Error::Error; };

// recall
struct EmptyTruthError : Error { using Error::Error; };

// ccot
struct TeamSizeError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };
struct PlanningFailure : Error { using Error::Error; };
struct ZeroVectorError : Error { using Error::Error; };

// constraints / reward / eval
struct UnresolvedEntityError : Error { using Error::Error; };
struct NoLocatedDaysError : Error { using Error::Error; };
struct LengthMismatchError : Error { using Error::Error; };

} // namespace tourplanner
