#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vostok {

/// Input violates an operation's mathematical precondition.
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The requested result is not determined at the working precision.
/// Callers can retry with larger truncation weight / guard digits.
struct precision_error : std::runtime_error {
    long suggested_D = -1;
    int suggested_G = -1;
    explicit precision_error(const std::string& msg, long sug_D = -1, int sug_G = -1)
        : std::runtime_error(msg), suggested_D(sug_D), suggested_G(sug_G) {}
};

/// Malformed expression or descriptor text. `offset` is 0-based.
struct parse_error : std::runtime_error {
    std::size_t offset;
    parse_error(const std::string& msg, std::size_t off)
        : std::runtime_error(msg + " at offset " + std::to_string(off)), offset(off) {}
};

}  // namespace vostok
