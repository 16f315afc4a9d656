#pragma once

#include <stdexcept>
#include <string>

namespace eaplab {

/// Raised when a message arrives that the receiving state machine cannot
/// accept in its current phase; the session is dead afterwards.
struct ProtocolViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised by the wire codec on malformed frames.
struct DecodeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised by file loaders; the message names the offending line.
struct StorageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace eaplab
