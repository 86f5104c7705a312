#include "portalis/profile/session.hpp"

#include <array>
#include <mutex>
#include <random>

#include "portalis/error.hpp"

namespace portalis::profile {

std::string generate_token() {
    static constexpr char kHex[] = "0123456789abcdef";
    thread_local std::random_device device;
    std::array<std::uint32_t, 4> words{};
    for (auto& w : words) w = device();
    std::string out;
    out.reserve(32);
    for (std::uint32_t w : words) {
        for (int shift = 28; shift >= 0; shift -= 4) out.push_back(kHex[(w >> shift) & 0xF]);
    }
    return out;
}

Session SessionRegistry::open(std::string persona, UserProfile profile) {
    std::unique_lock lock(mutex_);
    std::string token;
    do {
        token = generate_token();
    } while (sessions_.contains(token));
    Session session{token, std::move(persona), std::move(profile), ++clock_, SessionState::Open};
    sessions_.emplace(token, session);
    return session;
}

void SessionRegistry::close(std::string_view token) {
    std::unique_lock lock(mutex_);
    auto it = sessions_.find(token);
    if (it == sessions_.end()) throw Error(ErrorCode::UnknownToken, "unknown session token");
    if (it->second.state == SessionState::Closed) throw Error(ErrorCode::AlreadyClosed, "session already closed");
    it->second.state = SessionState::Closed;
}

Session SessionRegistry::validate(std::string_view token) const {
    std::shared_lock lock(mutex_);
    auto it = sessions_.find(token);
    if (it == sessions_.end()) throw Error(ErrorCode::UnknownToken, "unknown session token");
    if (it->second.state == SessionState::Closed) throw Error(ErrorCode::SessionClosed, "session is closed");
    return it->second;
}

std::size_t SessionRegistry::open_count() const {
    std::shared_lock lock(mutex_);
    std::size_t n = 0;
    for (const auto& [_, s] : sessions_) n += s.state == SessionState::Open;
    return n;
}

}  // namespace portalis::profile
