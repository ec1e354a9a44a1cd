#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace anomidx {

enum class ErrorKind {
    EmptySample,
    NonFiniteValue,
    TooFewPoints,
    InvalidP,
    InvalidRange,
    InvalidBaseline,
    NonCausalSpec,
    InvalidLength,
    InvalidSpec,
    ZeroBase,
    FileNotFound,
    ParseError,
    LengthMismatch,
    IoError,
    UnknownPreset,
    AllUndefined,
};

[[nodiscard]] std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace anomidx
