#pragma once

#include <stdexcept>

namespace curvebeam {

// Exit-code mapping used by the CLI: config_error -> 2, numeric_error -> 3, io_error -> 4.
// Precondition violations inside the library throw std::invalid_argument.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace curvebeam
