#pragma once

#include <string>

#include "eaplab/attack.hpp"
#include "eaplab/harness.hpp"
#include "eaplab/user_db.hpp"

namespace eaplab {

// File loaders raise StorageError with the offending line number on bad input.

/// Lines of `username:hex-encoded-password`; `#` comments and blank lines
/// ignored. Duplicate usernames, usernames containing `:` and malformed hex
/// are errors.
UserDatabase load_user_db(const std::string& path);
void save_user_db(const UserDatabase& db, const std::string& path);

/// One candidate per line, UTF-8, LF; lines beginning `#` ignored; trailing
/// newline optional. Order is preserved.
Dictionary load_wordlist(const std::string& path);
void save_wordlist(const Dictionary& d, const std::string& path);

Transcript load_transcript(const std::string& path);
void save_transcript(const Transcript& t, const std::string& path);

} // namespace eaplab
