#include "anomidx/error.hpp"

namespace anomidx {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::EmptySample: return "EmptySample";
        case ErrorKind::NonFiniteValue: return "NonFiniteValue";
        case ErrorKind::TooFewPoints: return "TooFewPoints";
        case ErrorKind::InvalidP: return "InvalidP";
        case ErrorKind::InvalidRange: return "InvalidRange";
        case ErrorKind::InvalidBaseline: return "InvalidBaseline";
        case ErrorKind::NonCausalSpec: return "NonCausalSpec";
        case ErrorKind::InvalidLength: return "InvalidLength";
        case ErrorKind::InvalidSpec: return "InvalidSpec";
        case ErrorKind::ZeroBase: return "ZeroBase";
        case ErrorKind::FileNotFound: return "FileNotFound";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::LengthMismatch: return "LengthMismatch";
        case ErrorKind::IoError: return "IoError";
        case ErrorKind::UnknownPreset: return "UnknownPreset";
        case ErrorKind::AllUndefined: return "AllUndefined";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace anomidx
