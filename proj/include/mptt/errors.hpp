#pragma once

#include <stdexcept>
#include <string>

namespace mptt {

// Base classes map onto CLI exit codes: ConfigError -> 2, DataError -> 3,
// NumericError -> 4.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : Error {
    using Error::Error;
};
struct DataError : Error {
    using Error::Error;
};
struct NumericError : Error {
    using Error::Error;
};

struct DuplicateYear : DataError {
    explicit DuplicateYear(int year)
        : DataError("duplicate year " + std::to_string(year)) {}
};
struct InvalidValue : DataError {
    InvalidValue(std::size_t row, const std::string& what)
        : DataError("invalid value at row " + std::to_string(row) + ": " + what) {}
};
struct SchemaError : DataError {
    using DataError::DataError;
};
struct MissingBaseYear : DataError {
    explicit MissingBaseYear(int year)
        : DataError("base year " + std::to_string(year) + " not in panel") {}
};
struct InsufficientData : DataError {
    using DataError::DataError;
};
struct MissingYear : DataError {
    explicit MissingYear(int year)
        : DataError("year " + std::to_string(year) + " not in panel") {}
};
struct UndefinedRatio : DataError {
    using DataError::DataError;
};
struct SpecError : DataError {
    using DataError::DataError;
};

struct SingularDesign : NumericError {
    using NumericError::NumericError;
};
struct InsufficientObservations : NumericError {
    using NumericError::NumericError;
};
struct DegenerateSplit : NumericError {
    using NumericError::NumericError;
};
struct MissingBreakYear : NumericError {
    explicit MissingBreakYear(int year)
        : NumericError("break year " + std::to_string(year) + " not in panel") {}
};
struct EmptyScanRange : NumericError {
    using NumericError::NumericError;
};

}  // namespace mptt
