#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>

#include "portalis/profile/profile.hpp"

namespace portalis::profile {

enum class SessionState { Open, Closed };

struct Session {
    std::string token;
    std::string persona;
    UserProfile profile;
    std::uint64_t opened_at = 0;
    SessionState state = SessionState::Open;
};

/// 128 random bits, hex encoded.
std::string generate_token();

/// Thread-safe session lifecycle. Closed sessions are kept so that their
/// tokens keep failing with SessionClosed instead of UnknownToken.
class SessionRegistry {
public:
    Session open(std::string persona, UserProfile profile);

    /// UnknownToken, or AlreadyClosed on the second close.
    void close(std::string_view token);

    /// The open session for `token`; UnknownToken or SessionClosed otherwise.
    Session validate(std::string_view token) const;

    std::size_t open_count() const;

private:
    mutable std::shared_mutex mutex_;
    std::map<std::string, Session, std::less<>> sessions_;
    std::uint64_t clock_ = 0;
};

}  // namespace portalis::profile
