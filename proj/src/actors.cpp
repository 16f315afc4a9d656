#include "eaplab/actors.hpp"

#include <stdexcept>

namespace eaplab {

namespace {

[[noreturn]] void violation(Role role, Phase phase, const Message& m) {
    const char* role_name = role == Role::Applicant     ? "applicant"
                            : role == Role::Authenticator ? "authenticator"
                                                          : "server";
    throw ProtocolViolation(std::string(role_name) + " cannot accept " + message_type_name(m) +
                            " in phase " + std::to_string(static_cast<int>(phase)));
}

std::uint64_t abs_diff(std::uint64_t a, std::uint64_t b) {
    return a > b ? a - b : b - a;
}

} // namespace

FreshnessPolicy::FreshnessPolicy(std::uint64_t window_millis) : window_millis_(window_millis) {
    if (window_millis_ == 0) throw std::invalid_argument("freshness window must be positive");
}

FreshnessPolicy::Outcome FreshnessPolicy::check_and_record(
    const std::string& username, Timestamp now, Timestamp claimed,
    const std::function<bool()>& digest_matches) {
    std::lock_guard lock(mu_);
    if (abs_diff(now.unix_millis, claimed.unix_millis) > window_millis_) return Outcome::Stale;
    const auto it = last_accepted_.find(username);
    if (it != last_accepted_.end() && claimed <= it->second) return Outcome::Replayed;
    if (!digest_matches()) return Outcome::BadDigest;
    last_accepted_[username] = claimed;
    return Outcome::Accepted;
}

std::optional<Timestamp> FreshnessPolicy::last_accepted(const std::string& username) const {
    std::lock_guard lock(mu_);
    const auto it = last_accepted_.find(username);
    if (it == last_accepted_.end()) return std::nullopt;
    return it->second;
}

// ---------------------------------------------------------------------------
// Applicant

Applicant::Applicant(ProtocolVariant variant, std::string username, Password password,
                     Clock& clock)
    : variant_(variant), username_(std::move(username)), password_(std::move(password)),
      clock_(clock) {}

std::optional<Message> Applicant::step(const std::optional<Message>& incoming) {
    if (phase_ == Phase::Idle) {
        if (incoming) violation(Role::Applicant, phase_, *incoming);
        phase_ = Phase::AwaitIdentity;
        return Start{};
    }
    if (!incoming) throw ProtocolViolation("applicant expected a message");
    const Message& m = *incoming;

    switch (phase_) {
        case Phase::AwaitIdentity:
            if (const auto* req = std::get_if<IdentityRequest>(&m)) {
                id_ = req->id;
                phase_ = Phase::AwaitChallenge;
                return IdentityResponse{req->id, username_};
            }
            break;

        case Phase::AwaitChallenge:
            if (const auto* plain = std::get_if<ChallengePlain>(&m);
                plain && variant_ == ProtocolVariant::Baseline) {
                challenge_ = plain->challenge;
                phase_ = Phase::AwaitResponse;
                return BaselineResponse{baseline_response(plain->id_plus1, password_, plain->challenge)};
            }
            if (const auto* masked = std::get_if<ChallengeMasked>(&m);
                masked && variant_ == ProtocolVariant::Hardened) {
                const Digest128 c = recover_c(masked->request, password_);
                const Timestamp t = clock_.now();
                phase_ = Phase::AwaitResponse;
                return HardenedResponse{make_response(c, t), t};
            }
            // Early rejection (e.g. unknown username) arrives in this phase.
            if (const auto* v = std::get_if<Verdict>(&m)) {
                verdict_ = v->accept;
                phase_ = Phase::Done;
                return std::nullopt;
            }
            break;

        case Phase::AwaitResponse:
            if (const auto* v = std::get_if<Verdict>(&m)) {
                verdict_ = v->accept;
                phase_ = Phase::Done;
                return std::nullopt;
            }
            break;

        case Phase::Idle:
        case Phase::Done:
            break;
    }
    violation(Role::Applicant, phase_, m);
}

// ---------------------------------------------------------------------------
// Authenticator

Message authenticator_forward(const Message& m) {
    return decode_message(encode_message(m));
}

Authenticator::FromApplicant Authenticator::on_applicant_message(const Message& m) {
    FromApplicant out;
    if (std::holds_alternative<Start>(m)) {
        current_id_ = next_id_;
        next_id_ = increment_id(next_id_);
        out.to_server = authenticator_forward(m);
        out.to_applicant = IdentityRequest{current_id_};
        return out;
    }
    out.to_server = authenticator_forward(m);
    return out;
}

Message Authenticator::on_server_message(const Message& m) {
    return authenticator_forward(m);
}

// ---------------------------------------------------------------------------
// Server

Server::Server(ProtocolVariant variant, const UserDatabase& db, FreshnessPolicy& policy,
               Clock& clock, ChallengeRng& rng, int entropy_bits)
    : variant_(variant), db_(db), policy_(policy), clock_(clock), rng_(rng),
      entropy_bits_(entropy_bits) {
    if (entropy_bits_ < 1 || entropy_bits_ > 128)
        throw std::invalid_argument("entropy_bits must be in 1..128");
}

Message Server::verdict_message(bool accept, RejectReason why) {
    verdict_ = accept;
    reject_reason_ = accept ? RejectReason::None : why;
    phase_ = Phase::Done;
    return Verdict{accept};
}

Message Server::reject(RejectReason why) {
    return verdict_message(false, why);
}

std::optional<Message> Server::step(const Message& incoming) {
    switch (phase_) {
        case Phase::Idle:
            if (std::holds_alternative<Start>(incoming)) {
                phase_ = Phase::AwaitIdentity;
                return std::nullopt;
            }
            break;

        case Phase::AwaitIdentity:
            if (const auto* ident = std::get_if<IdentityResponse>(&incoming)) {
                id_ = ident->id;
                username_ = ident->username;
                const auto password = db_.lookup(username_);
                if (!password) return reject(RejectReason::UnknownUser);
                password_ = *password;
                challenge_ = generate_challenge(entropy_bits_, rng_);
                phase_ = Phase::AwaitResponse;
                if (variant_ == ProtocolVariant::Baseline)
                    return ChallengePlain{increment_id(*id_), *challenge_};
                return ChallengeMasked{*id_, make_request(*id_, *challenge_, *password_)};
            }
            break;

        case Phase::AwaitResponse:
            if (const auto* resp = std::get_if<BaselineResponse>(&incoming);
                resp && variant_ == ProtocolVariant::Baseline) {
                const Digest128 expected =
                    baseline_response(increment_id(*id_), *password_, *challenge_);
                if (resp->digest == expected) return verdict_message(true, RejectReason::None);
                return reject(RejectReason::BadDigest);
            }
            if (const auto* resp = std::get_if<HardenedResponse>(&incoming);
                resp && variant_ == ProtocolVariant::Hardened) {
                const Timestamp now = clock_.now();
                const auto outcome = policy_.check_and_record(
                    username_, now, resp->timestamp, [&] {
                        return resp->digest ==
                               server_expected_response(*id_, *challenge_, resp->timestamp);
                    });
                switch (outcome) {
                    case FreshnessPolicy::Outcome::Accepted:
                        return verdict_message(true, RejectReason::None);
                    case FreshnessPolicy::Outcome::Stale:
                        return reject(RejectReason::StaleTimestamp);
                    case FreshnessPolicy::Outcome::Replayed:
                        return reject(RejectReason::ReplayedTimestamp);
                    case FreshnessPolicy::Outcome::BadDigest:
                        return reject(RejectReason::BadDigest);
                }
            }
            break;

        case Phase::AwaitChallenge:
        case Phase::Done:
            break;
    }
    violation(Role::Server, phase_, incoming);
}

} // namespace eaplab
