#pragma once

#include <chrono>
#include <mutex>

#include "eaplab/crypto.hpp"

namespace eaplab {

/// Timestamp source. Values are monotone non-decreasing per instance.
class Clock {
public:
    virtual ~Clock() = default;
    virtual Timestamp now() = 0;
};

class SystemClock final : public Clock {
public:
    Timestamp now() override {
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::system_clock::now().time_since_epoch());
        return Timestamp{static_cast<std::uint64_t>(ms.count())};
    }
};

/// Deterministic clock for experiments: starts at `start_millis` and advances
/// by `step_millis` on every read. advance() jumps it forward explicitly.
class SimClock final : public Clock {
public:
    explicit SimClock(std::uint64_t start_millis, std::uint64_t step_millis = 1)
        : current_(start_millis), step_(step_millis) {}

    Timestamp now() override {
        std::lock_guard lock(mu_);
        const Timestamp t{current_};
        current_ += step_;
        return t;
    }

    void advance(std::uint64_t millis) {
        std::lock_guard lock(mu_);
        current_ += millis;
    }

private:
    std::mutex mu_;
    std::uint64_t current_;
    std::uint64_t step_;
};

} // namespace eaplab
