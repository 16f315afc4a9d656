#pragma once

#include <cstdint>
#include <string>

#include "eaplab/harness.hpp"
#include "eaplab/user_db.hpp"

namespace eaplab {

struct Endpoint {
    std::string host = "127.0.0.1";
    std::uint16_t port = 0;
};

/// Listening TCP socket bound to the endpoint (port 0 picks a free port).
/// Throws std::runtime_error on bind failure. Caller owns the fd.
int open_listener(const Endpoint& ep);
std::uint16_t listener_port(int listen_fd);

struct NetServerConfig {
    ProtocolVariant variant = ProtocolVariant::Baseline;
    std::uint64_t seed = 0;
    int entropy_bits = 128;
    int max_sessions = 0;  // 0 = serve until the process dies
};

/// One framed session per connection, each handled by its own worker thread.
/// Challenge engines are derived per session from config.seed so runs are
/// reproducible without sharing RNG state across workers.
void serve_server(int listen_fd, const UserDatabase& db, FreshnessPolicy& policy, Clock& clock,
                  const NetServerConfig& config);

struct NetAuthenticatorConfig {
    Endpoint upstream;
    IdByte first_id = 0;
    std::string transcript_path;  // empty = no mirror
    int max_sessions = 0;
};

/// Accepts applicant connections and relays frames to/from the upstream
/// server, mirroring every hop to a transcript file when configured.
void serve_authenticator(int listen_fd, Clock& clock, const NetAuthenticatorConfig& config);

/// Runs one applicant session against an authenticator endpoint; returns the
/// verdict. Throws on connection failure or protocol violation.
bool run_applicant(const Endpoint& authenticator, ProtocolVariant variant,
                   const std::string& username, const Password& password, Clock& clock);

} // namespace eaplab
