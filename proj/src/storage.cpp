#include "eaplab/storage.hpp"

#include <fstream>
#include <sstream>

#include "eaplab/hex.hpp"

namespace eaplab {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StorageError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw StorageError("cannot write " + path);
    out << content;
    if (!out) throw StorageError("write failed for " + path);
}

[[noreturn]] void bad_line(const std::string& path, std::size_t line_no, const std::string& why) {
    throw StorageError(path + ":" + std::to_string(line_no) + ": " + why);
}

} // namespace

UserDatabase load_user_db(const std::string& path) {
    std::istringstream in(read_file(path));
    UserDatabase db;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const auto sep = line.find(':');
        if (sep == std::string::npos) bad_line(path, line_no, "expected username:hex-password");
        const std::string username = line.substr(0, sep);
        const std::string hex = line.substr(sep + 1);
        if (username.empty()) bad_line(path, line_no, "empty username");
        if (username.size() > kMaxUsernameBytes) bad_line(path, line_no, "username exceeds 64 bytes");
        if (hex.find(':') != std::string::npos)
            bad_line(path, line_no, "extra ':' (usernames must not contain ':')");
        if (db.lookup(username)) bad_line(path, line_no, "duplicate username " + username);
        try {
            db.add({username, Password(from_hex(hex))});
        } catch (const std::invalid_argument& e) {
            bad_line(path, line_no, e.what());
        }
    }
    return db;
}

void save_user_db(const UserDatabase& db, const std::string& path) {
    std::ostringstream out;
    for (const auto& [username, password] : db.records())
        out << username << ':' << to_hex(password.bytes()) << '\n';
    write_file(path, out.str());
}

Dictionary load_wordlist(const std::string& path) {
    std::istringstream in(read_file(path));
    Dictionary d;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line[0] == '#') continue;
        try {
            d.words.push_back(Password::from_text(line));
        } catch (const std::invalid_argument& e) {
            bad_line(path, line_no, e.what());
        }
    }
    return d;
}

void save_wordlist(const Dictionary& d, const std::string& path) {
    std::ostringstream out;
    for (const auto& w : d.words)
        out << std::string(w.bytes().begin(), w.bytes().end()) << '\n';
    write_file(path, out.str());
}

Transcript load_transcript(const std::string& path) {
    try {
        return transcript_from_text(read_file(path));
    } catch (const StorageError& e) {
        throw StorageError(path + ": " + e.what());
    }
}

void save_transcript(const Transcript& t, const std::string& path) {
    write_file(path, transcript_to_text(t));
}

} // namespace eaplab
