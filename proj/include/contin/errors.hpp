#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace contin {

// Rejected input. `code` is a stable machine-readable tag; the CLI surfaces it
// verbatim so scripted callers can match on it (exit status 2).
class precondition_error : public std::invalid_argument {
public:
    precondition_error(std::string code, const std::string& message)
        : std::invalid_argument(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

// Numerical abort: overflow, divergence, no convergence. Exit status 3 in the CLI.
class numerical_error : public std::runtime_error {
public:
    numerical_error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

namespace detail {

inline void require(bool ok, const char* code, const std::string& message) {
    if (!ok) throw precondition_error(code, message);
}

} // namespace detail

} // namespace contin
