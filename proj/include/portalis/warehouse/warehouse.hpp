#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "portalis/core/expr.hpp"
#include "portalis/core/model.hpp"
#include "portalis/core/value.hpp"
#include "portalis/profile/rank.hpp"

namespace portalis::warehouse {

enum class RepoKind { Hr, Finance, Media, Docs };

std::string_view to_string(RepoKind kind) noexcept;
std::optional<RepoKind> repo_kind_from_string(std::string_view name) noexcept;

/// One field of a repository's native record shape.
struct NativeField {
    std::string name;
    core::Kind kind;
    std::optional<core::Value> default_value;  // nullopt: required on insert
};

const std::vector<NativeField>& native_shape(RepoKind kind);

struct NativeRecord {
    core::ValueMap fields;
    std::size_t version = 0;
    friend bool operator==(const NativeRecord&, const NativeRecord&) = default;
};

struct Repository {
    std::string name;
    RepoKind kind = RepoKind::Hr;
    profile::Rank required = profile::Rank::Ordinary;
    std::map<std::string, NativeRecord, std::less<>> items;
    std::size_t revision = 0;

    std::size_t content_hash() const;
};

/// Presents one repository kind's native records as DataObjects of a fixed
/// concept, renaming and converting fields on the way.
class CartridgeAdapter {
public:
    struct Mapping {
        std::string native;
        std::string field;
    };

    CartridgeAdapter(RepoKind kind, core::Concept def, std::vector<Mapping> mappings)
        : kind_(kind), definition_(std::move(def)), mappings_(std::move(mappings)) {}

    RepoKind kind() const noexcept { return kind_; }
    const core::Concept& definition() const noexcept { return definition_; }
    core::DataObject adapt(std::string_view id, const NativeRecord& record) const;

private:
    RepoKind kind_;
    core::Concept definition_;
    std::vector<Mapping> mappings_;
};

const CartridgeAdapter& adapter_for(RepoKind kind);

enum class MediaCategory { Audio, Video, StaticImage };
enum class ImageSubCategory { Photos, Logos, Catalogues };

std::optional<MediaCategory> media_category_from_string(std::string_view name) noexcept;
std::optional<ImageSubCategory> image_subcategory_from_string(std::string_view name) noexcept;

struct MediaObject {
    std::string id;
    MediaCategory category = MediaCategory::Audio;
    std::optional<ImageSubCategory> sub_category;
    std::string format;
    core::MediaRef payload;
    friend bool operator==(const MediaObject&, const MediaObject&) = default;
};

struct Change {
    enum class Op { Upsert, Remove };
    Op op = Op::Upsert;
    std::string id;
    core::ValueMap fields;
};

struct MutationDescriptor {
    std::string repository;
    Change change;
    bool content_critical = false;
};

/// Missing source data. Distinct from zero, which is a legal value.
struct Unavailable {
    friend bool operator==(const Unavailable&, const Unavailable&) = default;
};

using Content = std::variant<Unavailable, core::Value, std::vector<std::string>>;

std::string render(const Content& content);

struct PortalItem {
    std::string key;
    Content value;
    std::string source;
    std::size_t as_of = 0;
    friend bool operator==(const PortalItem&, const PortalItem&) = default;
};

/// Catalog keys in display order, with the repository kind feeding each.
const std::vector<std::pair<std::string, RepoKind>>& portal_catalog();
std::optional<RepoKind> catalog_kind(std::string_view key) noexcept;

class Warehouse {
public:
    void add_repository(std::string name, RepoKind kind, profile::Rank required = profile::Rank::Ordinary);

    /// Inserts a seed record, filling defaults (MalformedChange on bad shape).
    void seed(std::string_view repository, std::string id, core::ValueMap fields);

    core::DataObject uniform_fetch(std::string_view repository, std::string_view item) const;

    std::vector<MediaObject> search_media(MediaCategory category, std::optional<ImageSubCategory> sub,
                                          const core::Expr& phi) const;

    std::vector<PortalItem> aggregate_portal_items() const;
    PortalItem portal_item(std::string_view key) const;

    /// Applies `change` atomically and, for content-critical changes, hands
    /// the descriptor to `on_critical` after the change is visible.
    void mutate(std::string_view repository, const Change& change, bool content_critical,
                const std::function<void(const MutationDescriptor&)>& on_critical = {});

    const Repository& repository(std::string_view name) const;
    const std::map<std::string, Repository, std::less<>>& repositories() const noexcept { return repos_; }
    std::vector<const Repository*> of_kind(RepoKind kind) const;

    std::size_t content_hash() const;

private:
    Repository& repository_mut(std::string_view name);

    std::map<std::string, Repository, std::less<>> repos_;
};

/// Converts `value` to `kind` where the conversion is lossless by
/// convention (integer to real, text to media); nullopt otherwise.
std::optional<core::Value> coerce(const core::Value& value, core::Kind kind);

}  // namespace portalis::warehouse
