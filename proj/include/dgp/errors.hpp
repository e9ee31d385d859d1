#ifndef DGP_ERRORS_HPP
#define DGP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dgp {

// Argument outside the mathematical domain of an operation (odd E, limit < 2, ...).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Query beyond what a prime table was built for. Tables never resize.
struct OutOfRangeError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// Memory or enumeration budget exceeded.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input data that cannot be fitted or processed (e.g. a zero count in a fit range).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace dgp

#endif  // DGP_ERRORS_HPP
