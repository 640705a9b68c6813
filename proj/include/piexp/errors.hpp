#pragma once

#include <stdexcept>
#include <string>

namespace piexp {

// Error taxonomy mirrored by the CLI exit codes:
//   parse_error 2, insoluble_error 3, precision_error 4, internal_error 5.

// Input-language errors. Positions are 1-based; column 0 means "end of input".
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& msg, long line, long col)
        : std::runtime_error(msg + " (line " + std::to_string(line) + ", column " +
                             std::to_string(col) + ")"),
          line_(line), col_(col) {}
    long line() const { return line_; }
    long column() const { return col_; }

private:
    long line_, col_;
};

// Raised when an operation requires a soluble equation and the input is not,
// or when neither side of an equivalence test is soluble.
class insoluble_error : public std::runtime_error {
public:
    explicit insoluble_error(const std::string& msg, long degree = -1, long deficit = 0)
        : std::runtime_error(msg), degree_(degree), deficit_(deficit) {}
    long degree() const { return degree_; }
    long deficit() const { return deficit_; }

private:
    long degree_, deficit_;
};

// Working precision ran out before a result could be certified. Re-running
// with a larger margin is the fix; silently guessing is not.
class precision_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A consistency assertion failed. Indicates a bug, never bad user input.
class internal_error : public std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace piexp
