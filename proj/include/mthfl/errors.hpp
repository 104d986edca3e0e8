#pragma once

#include <stdexcept>
#include <string>

namespace mthfl {

// Error taxonomy shared by all modules. Everything derives from Error so
// callers can catch the whole family at the CLI boundary.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : Error {
    using Error::Error;
};
struct CoverageError : Error {
    using Error::Error;
};
struct PartitionError : Error {
    using Error::Error;
};
struct FormatError : Error {
    using Error::Error;
};
struct LabelRangeError : Error {
    using Error::Error;
};
struct DimensionError : Error {
    using Error::Error;
};
struct EmptyAggregateError : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};
struct ValidationError : Error {
    using Error::Error;
};
struct SchemaError : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};

}  // namespace mthfl
