#pragma once

#include <functional>
#include <mutex>
#include <optional>
#include <unordered_map>

#include "eaplab/clock.hpp"
#include "eaplab/message.hpp"
#include "eaplab/protocol.hpp"
#include "eaplab/user_db.hpp"

namespace eaplab {

enum class Role { Applicant, Authenticator, Server };
enum class Phase { Idle, AwaitIdentity, AwaitChallenge, AwaitResponse, Done };

/// Per-username timestamp freshness bookkeeping shared by all server sessions.
/// A response is accepted only if its timestamp lies within the window around
/// the server clock AND is strictly newer than the last accepted one for that
/// username; the whole check-verify-record step runs under one lock.
class FreshnessPolicy {
public:
    explicit FreshnessPolicy(std::uint64_t window_millis);

    std::uint64_t window_millis() const { return window_millis_; }

    enum class Outcome { Accepted, Stale, Replayed, BadDigest };

    Outcome check_and_record(const std::string& username, Timestamp now, Timestamp claimed,
                             const std::function<bool()>& digest_matches);

    std::optional<Timestamp> last_accepted(const std::string& username) const;

private:
    std::uint64_t window_millis_;
    mutable std::mutex mu_;
    std::unordered_map<std::string, Timestamp> last_accepted_;
};

/// The party proving its identity. Drives the session by emitting Start from
/// Idle; afterwards every output is a reaction to an incoming message.
class Applicant {
public:
    Applicant(ProtocolVariant variant, std::string username, Password password, Clock& clock);

    /// Throws ProtocolViolation on out-of-order or wrong-variant input.
    std::optional<Message> step(const std::optional<Message>& incoming);

    Phase phase() const { return phase_; }
    std::optional<bool> verdict() const { return verdict_; }

    /// Set only on the baseline path; the hardened applicant never learns the
    /// challenge and this stays empty for it.
    const std::optional<Challenge>& observed_challenge() const { return challenge_; }

private:
    ProtocolVariant variant_;
    std::string username_;
    Password password_;
    Clock& clock_;
    Phase phase_ = Phase::Idle;
    std::optional<IdByte> id_;
    std::optional<Challenge> challenge_;
    std::optional<bool> verdict_;
};

/// Re-encode a message verbatim; the relay's "same information, different
/// formatting" hop, observable in transcripts.
Message authenticator_forward(const Message& m);

/// Pass-through relay. Assigns the one-byte session ID (a counter seeded at
/// construction) and otherwise forwards traffic unchanged in both directions.
class Authenticator {
public:
    explicit Authenticator(IdByte first_id) : next_id_(first_id) {}

    struct FromApplicant {
        std::optional<Message> to_server;
        std::optional<Message> to_applicant;
    };

    FromApplicant on_applicant_message(const Message& m);
    Message on_server_message(const Message& m);

    IdByte current_id() const { return current_id_; }

private:
    IdByte next_id_;
    IdByte current_id_ = 0;
};

/// Holds the user database, issues challenges, renders the verdict.
class Server {
public:
    enum class RejectReason { None, UnknownUser, StaleTimestamp, ReplayedTimestamp, BadDigest };

    Server(ProtocolVariant variant, const UserDatabase& db, FreshnessPolicy& policy, Clock& clock,
           ChallengeRng& rng, int entropy_bits = 128);

    /// Throws ProtocolViolation on out-of-order or wrong-variant input.
    std::optional<Message> step(const Message& incoming);

    Phase phase() const { return phase_; }
    std::optional<bool> verdict() const { return verdict_; }
    RejectReason reject_reason() const { return reject_reason_; }
    const std::optional<Challenge>& issued_challenge() const { return challenge_; }

private:
    Message reject(RejectReason why);
    Message verdict_message(bool accept, RejectReason why);

    ProtocolVariant variant_;
    const UserDatabase& db_;
    FreshnessPolicy& policy_;
    Clock& clock_;
    ChallengeRng& rng_;
    int entropy_bits_;

    Phase phase_ = Phase::Idle;
    std::optional<IdByte> id_;
    std::string username_;
    std::optional<Password> password_;
    std::optional<Challenge> challenge_;
    std::optional<bool> verdict_;
    RejectReason reject_reason_ = RejectReason::None;
};

} // namespace eaplab
