#include "portalis/profile/rank.hpp"

namespace portalis::profile {

std::string_view to_string(Rank rank) noexcept {
    switch (rank) {
        case Rank::Ordinary: return "ordinary";
        case Rank::Manager: return "manager";
        case Rank::Administrator: return "administrator";
    }
    return "?";
}

std::optional<Rank> rank_from_string(std::string_view name) noexcept {
    if (name == "ordinary") return Rank::Ordinary;
    if (name == "manager") return Rank::Manager;
    if (name == "administrator") return Rank::Administrator;
    return std::nullopt;
}

}  // namespace portalis::profile
