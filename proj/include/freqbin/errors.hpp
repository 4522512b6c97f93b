#ifndef FREQBIN_ERRORS_HPP
#define FREQBIN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace freqbin {

// Base for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid configuration text; carries a 1-based line number when known (0 = n/a).
struct ConfigError : Error {
    int line = 0;
    explicit ConfigError(const std::string& msg, int line_no = 0)
        : Error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg), line(line_no) {}
};

// Precondition violations on operation inputs (bad grid, out-of-range query, ...).
struct InvalidInput : Error {
    using Error::Error;
};

}  // namespace freqbin

#endif
