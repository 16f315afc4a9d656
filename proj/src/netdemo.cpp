#include "eaplab/netdemo.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstring>
#include <iostream>
#include <optional>
#include <thread>
#include <vector>

#include "eaplab/storage.hpp"

namespace eaplab {

namespace {

constexpr std::uint64_t kSessionSeedStride = 0x9E3779B97F4A7C15ull;

struct Fd {
    int fd = -1;
    Fd() = default;
    explicit Fd(int f) : fd(f) {}
    Fd(const Fd&) = delete;
    Fd& operator=(const Fd&) = delete;
    Fd(Fd&& other) noexcept : fd(other.fd) { other.fd = -1; }
    ~Fd() {
        if (fd >= 0) ::close(fd);
    }
};

sockaddr_in make_addr(const Endpoint& ep) {
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(ep.port);
    if (::inet_pton(AF_INET, ep.host.c_str(), &addr.sin_addr) != 1)
        throw std::runtime_error("invalid IPv4 address: " + ep.host);
    return addr;
}

bool read_exact(int fd, std::uint8_t* buf, std::size_t n) {
    std::size_t got = 0;
    while (got < n) {
        const ssize_t r = ::read(fd, buf + got, n - got);
        if (r == 0) return false;  // peer closed
        if (r < 0) {
            if (errno == EINTR) continue;
            throw std::runtime_error(std::string("read: ") + std::strerror(errno));
        }
        got += static_cast<std::size_t>(r);
    }
    return true;
}

void write_all(int fd, const std::uint8_t* buf, std::size_t n) {
    std::size_t sent = 0;
    while (sent < n) {
        const ssize_t r = ::write(fd, buf + sent, n - sent);
        if (r < 0) {
            if (errno == EINTR) continue;
            throw std::runtime_error(std::string("write: ") + std::strerror(errno));
        }
        sent += static_cast<std::size_t>(r);
    }
}

/// Full frame (header + payload), or nullopt on clean EOF before a frame.
std::optional<std::vector<std::uint8_t>> read_frame(int fd) {
    std::vector<std::uint8_t> frame(kFrameHeaderBytes);
    if (!read_exact(fd, frame.data(), frame.size())) return std::nullopt;
    const std::size_t len =
        frame_payload_length(std::span<const std::uint8_t, kFrameHeaderBytes>(frame.data(), 3));
    frame.resize(kFrameHeaderBytes + len);
    if (len > 0 && !read_exact(fd, frame.data() + kFrameHeaderBytes, len))
        throw DecodeError("connection closed mid-frame");
    return frame;
}

void send_message(int fd, const Message& m) {
    const auto frame = encode_message(m);
    write_all(fd, frame.data(), frame.size());
}

} // namespace

int open_listener(const Endpoint& ep) {
    Fd sock(::socket(AF_INET, SOCK_STREAM, 0));
    if (sock.fd < 0) throw std::runtime_error(std::string("socket: ") + std::strerror(errno));
    const int one = 1;
    ::setsockopt(sock.fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    const sockaddr_in addr = make_addr(ep);
    if (::bind(sock.fd, reinterpret_cast<const sockaddr*>(&addr), sizeof(addr)) < 0)
        throw std::runtime_error("bind " + ep.host + ":" + std::to_string(ep.port) + ": " +
                                 std::strerror(errno));
    if (::listen(sock.fd, 16) < 0)
        throw std::runtime_error(std::string("listen: ") + std::strerror(errno));
    const int fd = sock.fd;
    sock.fd = -1;
    return fd;
}

std::uint16_t listener_port(int listen_fd) {
    sockaddr_in addr{};
    socklen_t len = sizeof(addr);
    if (::getsockname(listen_fd, reinterpret_cast<sockaddr*>(&addr), &len) < 0)
        throw std::runtime_error(std::string("getsockname: ") + std::strerror(errno));
    return ntohs(addr.sin_port);
}

void serve_server(int listen_fd, const UserDatabase& db, FreshnessPolicy& policy, Clock& clock,
                  const NetServerConfig& config) {
    Fd listener(listen_fd);
    std::vector<std::thread> workers;
    for (int session = 0; config.max_sessions == 0 || session < config.max_sessions; ++session) {
        const int conn = ::accept(listener.fd, nullptr, nullptr);
        if (conn < 0) {
            if (errno == EINTR) continue;
            throw std::runtime_error(std::string("accept: ") + std::strerror(errno));
        }
        const std::uint64_t session_seed =
            config.seed + kSessionSeedStride * static_cast<std::uint64_t>(session);
        workers.emplace_back([conn, session_seed, &db, &policy, &clock, config] {
            Fd sock(conn);
            ChallengeRng rng = make_rng(session_seed);
            Server server(config.variant, db, policy, clock, rng, config.entropy_bits);
            try {
                while (server.phase() != Phase::Done) {
                    auto frame = read_frame(sock.fd);
                    if (!frame) break;
                    const auto reply = server.step(decode_message(*frame));
                    if (reply) send_message(sock.fd, *reply);
                }
            } catch (const std::exception& e) {
                std::cerr << "server session error: " << e.what() << "\n";
            }
        });
    }
    for (auto& w : workers) w.join();
}

void serve_authenticator(int listen_fd, Clock& clock, const NetAuthenticatorConfig& config) {
    Fd listener(listen_fd);
    Authenticator authenticator(config.first_id);
    for (int session = 0; config.max_sessions == 0 || session < config.max_sessions; ++session) {
        const int conn = ::accept(listener.fd, nullptr, nullptr);
        if (conn < 0) {
            if (errno == EINTR) continue;
            throw std::runtime_error(std::string("accept: ") + std::strerror(errno));
        }
        Fd applicant(conn);
        Transcript transcript;
        bool saw_masked = false, saw_plain = false;
        try {
            Fd upstream(::socket(AF_INET, SOCK_STREAM, 0));
            if (upstream.fd < 0)
                throw std::runtime_error(std::string("socket: ") + std::strerror(errno));
            const sockaddr_in addr = make_addr(config.upstream);
            if (::connect(upstream.fd, reinterpret_cast<const sockaddr*>(&addr), sizeof(addr)) < 0)
                throw std::runtime_error("connect upstream: " + std::string(std::strerror(errno)));

            auto record = [&](Hop hop, const Message& m) {
                transcript.entries.push_back({hop, m, clock.now()});
                saw_masked = saw_masked || std::holds_alternative<ChallengeMasked>(m);
                saw_plain = saw_plain || std::holds_alternative<ChallengePlain>(m);
            };

            auto read_applicant = [&]() -> std::optional<Message> {
                auto frame = read_frame(applicant.fd);
                if (!frame) return std::nullopt;
                Message m = decode_message(*frame);
                record(Hop::ApplicantToAuth, m);
                return m;
            };

            // Start: forward upstream, then issue the identity request.
            auto start = read_applicant();
            if (!start) continue;
            auto reaction = authenticator.on_applicant_message(*start);
            if (reaction.to_server) {
                record(Hop::AuthToServer, *reaction.to_server);
                send_message(upstream.fd, *reaction.to_server);
            }
            if (reaction.to_applicant) {
                record(Hop::AuthToApplicant, *reaction.to_applicant);
                send_message(applicant.fd, *reaction.to_applicant);
            }

            bool done = false;
            while (!done) {
                auto m = read_applicant();
                if (!m) break;
                auto fwd = authenticator.on_applicant_message(*m);
                if (fwd.to_server) {
                    record(Hop::AuthToServer, *fwd.to_server);
                    send_message(upstream.fd, *fwd.to_server);
                }
                auto frame = read_frame(upstream.fd);
                if (!frame) break;
                Message reply = decode_message(*frame);
                record(Hop::ServerToAuth, reply);
                const Message down = authenticator.on_server_message(reply);
                record(Hop::AuthToApplicant, down);
                send_message(applicant.fd, down);
                done = std::holds_alternative<Verdict>(down);
            }
        } catch (const std::exception& e) {
            std::cerr << "authenticator session error: " << e.what() << "\n";
        }
        if (!config.transcript_path.empty() && !transcript.entries.empty()) {
            if (saw_masked || saw_plain) {
                transcript.variant =
                    saw_masked ? ProtocolVariant::Hardened : ProtocolVariant::Baseline;
                save_transcript(transcript, config.transcript_path);
            } else {
                std::cerr << "authenticator: session too short to mirror (variant unknown)\n";
            }
        }
    }
}

bool run_applicant(const Endpoint& authenticator, ProtocolVariant variant,
                   const std::string& username, const Password& password, Clock& clock) {
    Fd sock(::socket(AF_INET, SOCK_STREAM, 0));
    if (sock.fd < 0) throw std::runtime_error(std::string("socket: ") + std::strerror(errno));
    const sockaddr_in addr = make_addr(authenticator);
    if (::connect(sock.fd, reinterpret_cast<const sockaddr*>(&addr), sizeof(addr)) < 0)
        throw std::runtime_error("connect " + authenticator.host + ":" +
                                 std::to_string(authenticator.port) + ": " +
                                 std::strerror(errno));

    Applicant applicant(variant, username, password, clock);
    auto out = applicant.step(std::nullopt);
    while (true) {
        if (out) send_message(sock.fd, *out);
        if (applicant.phase() == Phase::Done) break;
        auto frame = read_frame(sock.fd);
        if (!frame) throw std::runtime_error("connection closed before verdict");
        out = applicant.step(decode_message(*frame));
    }
    return applicant.verdict().value();
}

} // namespace eaplab
