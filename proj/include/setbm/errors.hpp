#pragma once

#include <stdexcept>
#include <string>

namespace setbm {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};
struct UnsupportedRepresentationPair : Error {
    using Error::Error;
};
struct InvalidRange : Error {
    using Error::Error;
};
struct GridMismatch : Error {
    using Error::Error;
};
struct ReconstructionUnavailable : Error {
    using Error::Error;
};
struct NSamplesZero : Error {
    using Error::Error;
};
struct NonPositiveLambda : Error {
    using Error::Error;
};
struct EquivalenceViolation : Error {
    using Error::Error;
};
struct EmptyTimeGrid : Error {
    using Error::Error;
};
struct TooFewPaths : Error {
    using Error::Error;
};
struct UnstableMoment : Error {
    using Error::Error;
};
struct PartitionOutOfRange : Error {
    using Error::Error;
};
struct NonAdaptedIntegrand : Error {
    using Error::Error;
};

}  // namespace setbm
