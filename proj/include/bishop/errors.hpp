#pragma once

#include <stdexcept>
#include <string>

namespace bishop {

// Typed failures; every throwing operation documents which of these it uses.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidInput : Error {
    using Error::Error;
};
struct OutOfDomain : Error {
    using Error::Error;
};
struct DegenerateManifold : Error {
    using Error::Error;
};
struct NonContraction : Error {
    using Error::Error;
};
struct NoConvergence : Error {
    using Error::Error;
};
struct HolomorphyFailure : Error {
    using Error::Error;
};
struct AttachmentFailure : Error {
    using Error::Error;
};
struct Unsupported : Error {
    using Error::Error;
};
struct DegenerateBoundary : Error {
    using Error::Error;
};
struct DomainViolation : Error {
    using Error::Error;
};
struct HypothesisViolation : Error {
    using Error::Error;
};
struct ConfigError : Error {
    using Error::Error;
};

} // namespace bishop
