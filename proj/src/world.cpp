#include "portalis/world.hpp"

#include <functional>
#include <string>

namespace portalis {

namespace {

void mix(std::size_t& seed, std::size_t value) { seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2); }

}  // namespace

std::size_t World::content_hash() const {
    std::size_t seed = store.content_hash();
    mix(seed, tower.content_hash());
    mix(seed, frames.content_hash());
    mix(seed, warehouse.content_hash());

    std::string text;
    for (const auto& [name, dim] : dimensions.all()) {
        text += "dim " + name;
        for (const auto& v : dim.alphabet) text += " " + v;
        text += "\n";
    }
    for (const auto& [name, metric] : metrics) {
        text += "metric " + name;
        for (const auto& [chain, symbols] : metric.table) {
            text += " " + profile::to_string(chain) + "->";
            for (const auto& s : symbols) text += s + ",";
        }
        text += "\n";
    }
    for (const auto& [name, persona] : personas) {
        text += "persona " + name + " " + std::string(profile::to_string(persona.rank));
        for (const auto& [d, v] : persona.dimensions) text += " " + d + "=" + v;
        text += "\n";
    }
    for (const auto& [id, page] : events.pages()) text += "page " + id + "\n";
    for (const auto& script : events.scripts()) text += "script " + script.name + "\n";
    for (const auto& name : events.declared_events()) text += "event " + name + "\n";
    for (const auto& id : events.pending()) text += "pending " + id + "\n";
    mix(seed, std::hash<std::string>{}(text));
    return seed;
}

}  // namespace portalis
