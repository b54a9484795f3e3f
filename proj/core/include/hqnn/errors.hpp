#pragma once

#include <stdexcept>

namespace hqnn {

// Error categories map onto the CLI exit codes:
// ConfigError -> 1, DataFormatError -> 2, NumericError -> 3.

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DataFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace hqnn
