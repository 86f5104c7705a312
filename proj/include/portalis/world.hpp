#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "portalis/core/model.hpp"
#include "portalis/events/event_engine.hpp"
#include "portalis/events/pages.hpp"
#include "portalis/frames/frame_net.hpp"
#include "portalis/meta/tower.hpp"
#include "portalis/profile/profile.hpp"
#include "portalis/warehouse/warehouse.hpp"

namespace portalis {

/// Everything a schema load installs. A plain value, so a failed write is
/// discarded by dropping the copy it was made on.
struct World {
    core::Store store;
    meta::MetaTower tower;
    frames::FrameLanguage frames;
    profile::DimensionSet dimensions = profile::DimensionSet::defaults();
    std::map<std::string, profile::MetricDenotation, std::less<>> metrics;
    std::map<std::string, profile::UserProfile, std::less<>> personas;
    warehouse::Warehouse warehouse;
    events::EventEngine events;

    events::WarehouseView view() const { return {store, tower, frames, warehouse}; }

    /// Hash over every store; equal hashes mean no observable change.
    std::size_t content_hash() const;
};

}  // namespace portalis
