#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "portalis/core/expr.hpp"
#include "portalis/core/model.hpp"
#include "portalis/profile/rank.hpp"

namespace portalis::meta {

/// A level-(j+1) classifier: its definition is a predicate over level-j
/// objects, its extension the level-j objects satisfying it.
struct MetaPredicate {
    std::string id;
    std::size_t level = 1;
    core::ExprPtr definition;
    core::IdSet extension;
};

struct MetadataRecord {
    std::string subject;
    std::vector<std::string> dimensions;
    std::vector<std::string> integrity_constraints;
    profile::Rank access_rights = profile::Rank::Administrator;
    /// Optional tags: browser parameters, user preferences, media types.
    std::map<std::string, std::string> extras;
    friend bool operator==(const MetadataRecord&, const MetadataRecord&) = default;
};

inline constexpr std::size_t kDefaultMaxDepth = 3;

/// Stack of predicate stores over a core::Store. Level 0 is the store
/// itself; level j >= 1 holds MetaPredicates whose objects expose
/// {id, level, extensionSize} to the level above.
///
/// Extension caches are recomputed by refresh(), which callers run inside
/// the same commit as any level-0 mutation. Definitions are never touched
/// by refresh.
class MetaTower {
public:
    explicit MetaTower(std::size_t max_depth = kDefaultMaxDepth) : max_depth_(max_depth) {}

    std::size_t max_depth() const noexcept { return max_depth_; }

    /// Creates (or, for an anonymous lift of an identical definition, returns)
    /// the level-(level+1) classifier for `phi`.
    const MetaPredicate& lift(const core::Store& store, std::size_t level, core::ExprPtr phi,
                              std::optional<std::string> name = std::nullopt);

    bool apply_meta(const core::Store& store, std::string_view predicate_id, std::string_view object_id) const;

    core::IdSet comprehend_at_level(const core::Store& store, std::size_t level, const core::Expr& phi) const;

    MetadataRecord describe(const core::Store& store, std::string_view subject) const;

    /// Registers metadata for an existing subject. Constraint ids must name
    /// classifiers exactly one level above the subject.
    void annotate(const core::Store& store, MetadataRecord record);

    /// Recomputes every extension cache bottom-up against `store`.
    void refresh(const core::Store& store);

    /// Level of an object id: 0 for individuals, the classifier level otherwise.
    std::optional<std::size_t> level_of(const core::Store& store, std::string_view object_id) const;

    core::Shape shape_at(const core::Store& store, std::size_t level) const;

    const MetaPredicate& predicate(std::string_view id) const;
    const std::map<std::string, MetaPredicate, std::less<>>& predicates() const noexcept { return predicates_; }
    std::vector<const MetaPredicate*> level(std::size_t level) const;
    const std::map<std::string, MetadataRecord, std::less<>>& records() const noexcept { return records_; }

    /// Hash over classifier ids, levels and printed definitions only.
    std::size_t definitions_hash() const;
    /// Hash over definitions, extension caches and metadata records.
    std::size_t content_hash() const;

private:
    core::IdSet extension_of(const core::Store& store, const MetaPredicate& predicate) const;
    bool evaluate_on(const core::Store& store, const core::Expr& phi, std::size_t level,
                     std::string_view object_id) const;

    std::size_t max_depth_;
    std::size_t anonymous_count_ = 0;
    std::map<std::string, MetaPredicate, std::less<>> predicates_;
    std::map<std::string, MetadataRecord, std::less<>> records_;
};

}  // namespace portalis::meta
