#pragma once

#include <map>
#include <optional>
#include <string>

#include "eaplab/crypto.hpp"

namespace eaplab {

struct UserRecord {
    std::string username;
    Password password;
};

/// username -> password bindings held by the server. Usernames are unique.
class UserDatabase {
public:
    UserDatabase() = default;

    /// Throws std::invalid_argument on duplicate username.
    void add(UserRecord record);

    std::optional<Password> lookup(const std::string& username) const;
    std::size_t size() const { return records_.size(); }
    const std::map<std::string, Password>& records() const { return records_; }

    friend bool operator==(const UserDatabase&, const UserDatabase&) = default;

private:
    std::map<std::string, Password> records_;
};

} // namespace eaplab
