#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lppl {

enum class ErrorKind {
    InvalidArgument,
    Domain,          // log/power of a non-positive argument, t >= tc, lambda <= 1
    RankDeficient,   // linear design matrix above the condition cutoff
    Degenerate,      // zero variance where a spread is required
    NoFeasibleFit,
    Parse,
    Io,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace lppl
