#pragma once

#include <string>
#include <vector>

#include "eaplab/actors.hpp"

namespace eaplab {

enum class Hop { ApplicantToAuth, AuthToServer, ServerToAuth, AuthToApplicant };

const char* hop_tag(Hop hop);
Hop hop_from_tag(const std::string& tag);  // throws std::invalid_argument

/// Ordered passive capture of every message crossing either link during one
/// session. A complete honest run has 11 entries: Start plus ten hops.
struct TranscriptEntry {
    Hop hop;
    Message message;
    Timestamp capture_time;

    friend bool operator==(const TranscriptEntry&, const TranscriptEntry&) = default;
};

struct Transcript {
    ProtocolVariant variant = ProtocolVariant::Baseline;
    std::vector<TranscriptEntry> entries;

    /// First message of the given type anywhere in the capture, or nullptr.
    template <typename T>
    const T* find() const {
        for (const auto& e : entries)
            if (const T* m = std::get_if<T>(&e.message)) return m;
        return nullptr;
    }

    friend bool operator==(const Transcript&, const Transcript&) = default;
};

/// Text form: header "EAPLAB1 <variant> <entry-count>", then one line per
/// entry "<hop-tag> <capture_millis> <hex of encoded message>", LF endings.
std::string transcript_to_text(const Transcript& t);
Transcript transcript_from_text(const std::string& text);  // throws StorageError

struct SessionConfig {
    ProtocolVariant variant = ProtocolVariant::Baseline;
    std::string username;
    Password password;
    std::uint64_t seed = 0;
    int entropy_bits = 128;
    IdByte first_id = 0;
    bool tap_enabled = true;
};

struct SessionOutcome {
    bool accepted = false;
    Transcript transcript;
    /// The challenge the server issued; laboratory introspection for tests
    /// and the masking scan, never part of any wire message.
    std::optional<Challenge> server_challenge;
    Server::RejectReason reject_reason = Server::RejectReason::None;
};

/// Runs applicant, authenticator and server to completion over an in-memory
/// channel with a passive wiretap on both links. Protocol violations
/// propagate as ProtocolViolation.
SessionOutcome run_session(const SessionConfig& config, const UserDatabase& db,
                           FreshnessPolicy& policy, Clock& clock);

/// Re-delivers the applicant-originated hops of a captured session verbatim
/// to a fresh server session. The server draws its challenge from `seed`;
/// pass the original session's seed to model the exchange repeating with the
/// identical challenge. Throws std::invalid_argument on incomplete input.
bool replay_session(const Transcript& original, const UserDatabase& db, FreshnessPolicy& policy,
                    Clock& clock, std::uint64_t seed, int entropy_bits = 128);

} // namespace eaplab
