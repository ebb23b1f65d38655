#pragma once

#include <stdexcept>
#include <string>

namespace drinfeld {

// All library errors carry a stable machine-readable code. The CLI maps
// precision/stabilization failures (is_precision_failure()) to exit code 3.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

    bool is_precision_failure() const noexcept {
        return code_ == "DivisionByZeroToPrecision" || code_ == "InsufficientPrecision" ||
               code_ == "Unstable" || code_ == "ZeroToPrecision" || code_ == "BoundaryPoint" ||
               code_ == "OnLattice";
    }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace drinfeld
