#pragma once

#include <optional>
#include <string_view>

namespace portalis::profile {

/// User hierarchy, ordered by increasing privilege.
enum class Rank { Ordinary = 0, Manager = 1, Administrator = 2 };

constexpr bool at_least(Rank held, Rank required) noexcept {
    return static_cast<int>(held) >= static_cast<int>(required);
}

std::string_view to_string(Rank rank) noexcept;
std::optional<Rank> rank_from_string(std::string_view name) noexcept;

}  // namespace portalis::profile
