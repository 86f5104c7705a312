#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "portalis/profile/rank.hpp"

namespace portalis::profile {

/// An assignment dimension and the values it may take.
struct Dimension {
    std::string name;
    std::vector<std::string> alphabet;

    bool admits(std::string_view value) const noexcept;
    friend bool operator==(const Dimension&, const Dimension&) = default;
};

/// Settings (s) and registration status (p) are predeclared; browser (v)
/// and device (e) alphabets come from the schema.
class DimensionSet {
public:
    static DimensionSet defaults();

    /// Adds or replaces a dimension; alphabets must be non-empty and duplicate-free.
    void declare(Dimension dimension);
    const Dimension* find(std::string_view name) const noexcept;
    const std::map<std::string, Dimension, std::less<>>& all() const noexcept { return dims_; }

    friend bool operator==(const DimensionSet&, const DimensionSet&) = default;

private:
    std::map<std::string, Dimension, std::less<>> dims_;
};

using Assignment = std::pair<std::string, std::string>;
/// Assignment points applied left to right.
using Chain = std::vector<Assignment>;
/// A generalized value: a finite set of named symbols.
using SymbolSet = std::set<std::string>;

std::string to_string(const Chain& chain);

/// A curried value family: `table` maps assignment chains (prefixes of
/// `order`) to generalized values.
struct MetricDenotation {
    std::string name;
    std::vector<std::string> order;
    std::map<Chain, SymbolSet> table;
    std::optional<std::size_t> declared_saturation;
    friend bool operator==(const MetricDenotation&, const MetricDenotation&) = default;
};

/// Rejects out-of-order chains and values outside their dimension's alphabet.
void check_chain(const MetricDenotation& metric, const DimensionSet& dims, const Chain& chain);

/// Checks dimensions, chain well-formedness, non-empty value sets and
/// closure of the table under prefixes (IncompleteTable names the first
/// missing chain). A declared saturation level must match the computed one.
void validate_metric(const MetricDenotation& metric, const DimensionSet& dims);

/// Evaluates the metric on a chain: the entry of the longest stored prefix.
SymbolSet apply_assignment(const MetricDenotation& metric, const DimensionSet& dims, const Chain& chain);

/// Every chain of length <= max_length along the metric's order.
std::vector<Chain> enumerate_chains(const MetricDenotation& metric, const DimensionSet& dims, std::size_t max_length);

/// Least k such that every chain longer than k evaluates like its k-prefix.
/// Requires an entry for every chain up to the full order (IncompleteTable).
std::size_t saturation_level(const MetricDenotation& metric, const DimensionSet& dims);

struct UserProfile {
    std::string user_id;
    Rank rank = Rank::Ordinary;
    std::map<std::string, std::string> dimensions;
    friend bool operator==(const UserProfile&, const UserProfile&) = default;
};

void validate_profile(const UserProfile& profile, const DimensionSet& dims);

/// Visibility rule for one page: a minimum rank plus dimension conditions.
struct PagePolicy {
    std::string id;
    Rank required = Rank::Ordinary;
    std::vector<Assignment> conditions;
};

struct ObjectPolicy {
    std::string id;
    Rank required = Rank::Administrator;
};

bool page_visible(const PagePolicy& page, const UserProfile& profile) noexcept;

struct Session;

/// Rights derived for one session. Valid only while that session is open.
struct AccessProfile {
    std::string session_token;
    std::set<std::string> pages;
    std::set<std::string> objects;
    bool metadata_access = false;
    friend bool operator==(const AccessProfile&, const AccessProfile&) = default;
};

AccessProfile derive_access_profile(const UserProfile& profile, const Session& session,
                                    std::span<const PagePolicy> pages, std::span<const ObjectPolicy> objects);

/// Checks visible(ordinary) <= visible(manager) <= visible(administrator)
/// for every combination of dimension values. Returns the first violation.
std::optional<std::string> check_hierarchy_monotonicity(const DimensionSet& dims, std::span<const PagePolicy> pages);

}  // namespace portalis::profile
