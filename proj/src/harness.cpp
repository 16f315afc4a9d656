#include "eaplab/harness.hpp"

#include <deque>
#include <sstream>

#include "eaplab/hex.hpp"

namespace eaplab {

const char* hop_tag(Hop hop) {
    switch (hop) {
        case Hop::ApplicantToAuth: return "applicant-to-auth";
        case Hop::AuthToServer: return "auth-to-server";
        case Hop::ServerToAuth: return "server-to-auth";
        case Hop::AuthToApplicant: return "auth-to-applicant";
    }
    return "?";
}

Hop hop_from_tag(const std::string& tag) {
    if (tag == "applicant-to-auth") return Hop::ApplicantToAuth;
    if (tag == "auth-to-server") return Hop::AuthToServer;
    if (tag == "server-to-auth") return Hop::ServerToAuth;
    if (tag == "auth-to-applicant") return Hop::AuthToApplicant;
    throw std::invalid_argument("unknown hop tag: " + tag);
}

std::string transcript_to_text(const Transcript& t) {
    std::ostringstream out;
    out << "EAPLAB1 " << variant_name(t.variant) << ' ' << t.entries.size() << '\n';
    for (const auto& e : t.entries) {
        out << hop_tag(e.hop) << ' ' << e.capture_time.unix_millis << ' '
            << to_hex(encode_message(e.message)) << '\n';
    }
    return out.str();
}

Transcript transcript_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw StorageError("transcript: empty input");

    std::istringstream header(line);
    std::string magic, variant;
    std::size_t count = 0;
    if (!(header >> magic >> variant >> count) || magic != "EAPLAB1")
        throw StorageError("transcript: malformed header");

    Transcript t;
    try {
        t.variant = variant_from_name(variant);
    } catch (const std::invalid_argument& e) {
        throw StorageError(std::string("transcript: ") + e.what());
    }

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;  // tolerate a trailing blank line only
        std::istringstream fields(line);
        std::string tag, hex;
        std::uint64_t millis = 0;
        if (!(fields >> tag >> millis >> hex))
            throw StorageError("transcript: malformed entry at line " + std::to_string(line_no));
        TranscriptEntry entry;
        try {
            entry.hop = hop_from_tag(tag);
            entry.message = decode_message(from_hex(hex));
        } catch (const std::exception& e) {
            throw StorageError("transcript: line " + std::to_string(line_no) + ": " + e.what());
        }
        entry.capture_time = Timestamp{millis};
        t.entries.push_back(std::move(entry));
    }
    if (t.entries.size() != count)
        throw StorageError("transcript: header promises " + std::to_string(count) +
                           " entries, found " + std::to_string(t.entries.size()));
    return t;
}

SessionOutcome run_session(const SessionConfig& config, const UserDatabase& db,
                           FreshnessPolicy& policy, Clock& clock) {
    Applicant applicant(config.variant, config.username, config.password, clock);
    Authenticator authenticator(config.first_id);
    ChallengeRng rng = make_rng(config.seed);
    Server server(config.variant, db, policy, clock, rng, config.entropy_bits);

    SessionOutcome outcome;
    outcome.transcript.variant = config.variant;

    struct Event {
        Hop hop;
        Message message;
    };
    std::deque<Event> queue;

    // The tap stamps each message as it enters a link, before delivery.
    auto send = [&](Hop hop, Message m) {
        if (config.tap_enabled)
            outcome.transcript.entries.push_back({hop, m, clock.now()});
        queue.push_back({hop, std::move(m)});
    };

    send(Hop::ApplicantToAuth, *applicant.step(std::nullopt));

    while (!queue.empty()) {
        const Event ev = std::move(queue.front());
        queue.pop_front();
        switch (ev.hop) {
            case Hop::ApplicantToAuth: {
                auto fwd = authenticator.on_applicant_message(ev.message);
                if (fwd.to_server) send(Hop::AuthToServer, std::move(*fwd.to_server));
                if (fwd.to_applicant) send(Hop::AuthToApplicant, std::move(*fwd.to_applicant));
                break;
            }
            case Hop::AuthToServer: {
                auto reply = server.step(ev.message);
                if (reply) send(Hop::ServerToAuth, std::move(*reply));
                break;
            }
            case Hop::ServerToAuth: {
                send(Hop::AuthToApplicant, authenticator.on_server_message(ev.message));
                break;
            }
            case Hop::AuthToApplicant: {
                auto reply = applicant.step(ev.message);
                if (reply) send(Hop::ApplicantToAuth, std::move(*reply));
                break;
            }
        }
    }

    if (!applicant.verdict()) throw ProtocolViolation("session ended without a verdict");
    outcome.accepted = *applicant.verdict();
    outcome.server_challenge = server.issued_challenge();
    outcome.reject_reason = server.reject_reason();
    return outcome;
}

bool replay_session(const Transcript& original, const UserDatabase& db, FreshnessPolicy& policy,
                    Clock& clock, std::uint64_t seed, int entropy_bits) {
    std::vector<const Message*> upstream;
    for (const auto& e : original.entries)
        if (e.hop == Hop::AuthToServer) upstream.push_back(&e.message);

    const bool has_response = original.find<BaselineResponse>() != nullptr ||
                              original.find<HardenedResponse>() != nullptr;
    if (upstream.size() < 3 || original.find<IdentityResponse>() == nullptr || !has_response ||
        original.find<Verdict>() == nullptr)
        throw std::invalid_argument("replay requires a complete captured session");

    ChallengeRng rng = make_rng(seed);
    Server server(original.variant, db, policy, clock, rng, entropy_bits);

    std::optional<bool> verdict;
    for (const Message* m : upstream) {
        const auto reply = server.step(*m);
        if (reply) {
            if (const auto* v = std::get_if<Verdict>(&*reply)) verdict = v->accept;
        }
        if (verdict) break;  // server is done; ignore any trailing captures
    }
    if (!verdict) throw std::invalid_argument("replayed session produced no verdict");
    return *verdict;
}

} // namespace eaplab
