#pragma once

#include <stdexcept>
#include <string>

namespace bml {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidField : Error {
    using Error::Error;
};
struct ShapeError : Error {
    using Error::Error;
};
struct InvalidParameter : Error {
    using Error::Error;
};
struct IndexError : Error {
    using Error::Error;
};
struct GridTooCoarse : Error {
    using Error::Error;
};
struct StepTooLarge : Error {
    using Error::Error;
};
struct ContractionFailure : Error {
    using Error::Error;
};
struct SmallnessGateFailed : Error {
    using Error::Error;
};
struct NoContraction : Error {
    using Error::Error;
};
struct InvalidFamily : Error {
    using Error::Error;
};
struct ConfigError : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};

}  // namespace bml
