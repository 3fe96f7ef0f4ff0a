#ifndef MFLIFT_ERRORS_HPP
#define MFLIFT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mflift {

// Error taxonomy used across the library. All derive from std::runtime_error
// (or invalid_argument for caller mistakes) so generic handlers keep working.

struct UnsupportedFilterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InsufficientLengthError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidInputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidRangeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace mflift

#endif
