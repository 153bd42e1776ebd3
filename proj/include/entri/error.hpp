#pragma once

#include <stdexcept>
#include <string>

namespace entri {

// Misuse of the library surface: bad partitions, out-of-range parameters,
// unresolvable column names. The CLI maps this to exit code 2.
class ArgumentError : public std::runtime_error {
public:
    explicit ArgumentError(const std::string& what) : std::runtime_error(what) {}
};

// Problems with the input data itself: empty inputs, NaN cells, codes outside
// a declared domain, ragged CSV rows. CLI exit code 3.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Numeric self-consistency failures, e.g. the three binding-information
// routes disagreeing beyond tolerance. CLI exit code 4.
class InternalError : public std::runtime_error {
public:
    explicit InternalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace entri
