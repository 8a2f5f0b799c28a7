#pragma once

#include <stdexcept>
#include <string>

namespace svn {

// Shape/dimension mismatch between operands.
struct ShapeError : std::invalid_argument {
    explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

// Non-finite or otherwise malformed numeric input.
struct InvalidInputError : std::invalid_argument {
    explicit InvalidInputError(const std::string& what) : std::invalid_argument(what) {}
};

// Schatten/lp order outside the supported range [1, inf].
struct UnsupportedOrderError : std::invalid_argument {
    explicit UnsupportedOrderError(const std::string& what) : std::invalid_argument(what) {}
};

// Iterative solver hit its cap without meeting its tolerance.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Bad key/value in a config file or CLI argument set.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace svn
