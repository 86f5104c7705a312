#include "portalis/profile/profile.hpp"

#include <algorithm>

#include "portalis/error.hpp"
#include "portalis/profile/session.hpp"

namespace portalis::profile {

bool Dimension::admits(std::string_view value) const noexcept {
    return std::find(alphabet.begin(), alphabet.end(), value) != alphabet.end();
}

DimensionSet DimensionSet::defaults() {
    DimensionSet set;
    set.declare({"s", {"higraph", "mmedia"}});
    set.declare({"p", {"registered", "unregistered", "corporate"}});
    return set;
}

void DimensionSet::declare(Dimension dimension) {
    if (dimension.alphabet.empty()) {
        throw Error(ErrorCode::InvalidDeclaration, "dimension '" + dimension.name + "' has an empty alphabet");
    }
    std::set<std::string_view> seen;
    for (const auto& v : dimension.alphabet) {
        if (!seen.insert(v).second) {
            throw Error(ErrorCode::InvalidDeclaration, "value '" + v + "' repeated in dimension '" + dimension.name + "'");
        }
    }
    std::string key = dimension.name;
    dims_.insert_or_assign(std::move(key), std::move(dimension));
}

const Dimension* DimensionSet::find(std::string_view name) const noexcept {
    auto it = dims_.find(name);
    return it == dims_.end() ? nullptr : &it->second;
}

std::string to_string(const Chain& chain) {
    std::string out = "[";
    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (i) out += ", ";
        out += chain[i].first + " = " + chain[i].second;
    }
    return out + "]";
}

void check_chain(const MetricDenotation& metric, const DimensionSet& dims, const Chain& chain) {
    if (chain.size() > metric.order.size()) {
        throw Error(ErrorCode::OutOfOrderChain, "chain " + to_string(chain) + " is longer than the order of '" +
                                                    metric.name + "'");
    }
    for (std::size_t i = 0; i < chain.size(); ++i) {
        const auto& [dim, value] = chain[i];
        if (dim != metric.order[i]) {
            throw Error(ErrorCode::OutOfOrderChain, "position " + std::to_string(i) + " of " + to_string(chain) +
                                                        " must assign '" + metric.order[i] + "'");
        }
        const Dimension* d = dims.find(dim);
        if (!d || !d->admits(value)) {
            throw Error(ErrorCode::UnknownDimensionValue, "'" + value + "' is not a value of dimension '" + dim + "'");
        }
    }
}

void validate_metric(const MetricDenotation& metric, const DimensionSet& dims) {
    std::set<std::string_view> seen;
    for (const auto& dim : metric.order) {
        if (!dims.find(dim)) throw Error(ErrorCode::UnknownDimensionValue, "undeclared dimension '" + dim + "'");
        if (!seen.insert(dim).second) {
            throw Error(ErrorCode::OutOfOrderChain, "dimension '" + dim + "' repeated in the order of '" + metric.name + "'");
        }
    }
    for (const auto& [chain, values] : metric.table) {
        check_chain(metric, dims, chain);
        if (values.empty()) {
            throw Error(ErrorCode::InvalidDeclaration, "empty value set for " + to_string(chain));
        }
    }
    // Walk lengths upward so the reported chain is the shortest missing one.
    for (std::size_t len = 0; len <= metric.order.size(); ++len) {
        for (const auto& [chain, _] : metric.table) {
            if (chain.size() <= len) continue;
            Chain prefix(chain.begin(), chain.begin() + static_cast<std::ptrdiff_t>(len));
            if (!metric.table.contains(prefix)) {
                throw Error(ErrorCode::IncompleteTable,
                            "metric '" + metric.name + "' has no entry for prefix " + to_string(prefix));
            }
        }
    }
    if (metric.declared_saturation) {
        std::size_t k = saturation_level(metric, dims);
        if (k != *metric.declared_saturation) {
            throw Error(ErrorCode::InvalidDeclaration, "metric '" + metric.name + "' declares saturation " +
                                                           std::to_string(*metric.declared_saturation) +
                                                           " but saturates at " + std::to_string(k));
        }
    }
}

SymbolSet apply_assignment(const MetricDenotation& metric, const DimensionSet& dims, const Chain& chain) {
    check_chain(metric, dims, chain);
    for (std::size_t len = chain.size() + 1; len-- > 0;) {
        Chain prefix(chain.begin(), chain.begin() + static_cast<std::ptrdiff_t>(len));
        if (auto it = metric.table.find(prefix); it != metric.table.end()) return it->second;
    }
    throw Error(ErrorCode::IncompleteTable, "metric '" + metric.name + "' has no base entry");
}

std::vector<Chain> enumerate_chains(const MetricDenotation& metric, const DimensionSet& dims,
                                    std::size_t max_length) {
    std::vector<Chain> out{Chain{}};
    std::vector<Chain> frontier{Chain{}};
    for (std::size_t i = 0; i < std::min(max_length, metric.order.size()); ++i) {
        const Dimension* d = dims.find(metric.order[i]);
        if (!d) throw Error(ErrorCode::UnknownDimensionValue, "undeclared dimension '" + metric.order[i] + "'");
        std::vector<Chain> next;
        for (const auto& c : frontier) {
            for (const auto& v : d->alphabet) {
                Chain extended = c;
                extended.emplace_back(d->name, v);
                next.push_back(std::move(extended));
            }
        }
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    return out;
}

std::size_t saturation_level(const MetricDenotation& metric, const DimensionSet& dims) {
    const auto chains = enumerate_chains(metric, dims, metric.order.size());
    for (const auto& c : chains) {
        if (!metric.table.contains(c)) {
            throw Error(ErrorCode::IncompleteTable, "metric '" + metric.name + "' has no entry for " + to_string(c));
        }
    }
    for (std::size_t k = 0; k < metric.order.size(); ++k) {
        bool saturated = std::all_of(chains.begin(), chains.end(), [&](const Chain& c) {
            if (c.size() <= k) return true;
            Chain prefix(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(k));
            return metric.table.at(c) == metric.table.at(prefix);
        });
        if (saturated) return k;
    }
    return metric.order.size();
}

void validate_profile(const UserProfile& profile, const DimensionSet& dims) {
    for (const auto& [dim, value] : profile.dimensions) {
        const Dimension* d = dims.find(dim);
        if (!d) throw Error(ErrorCode::UnknownDimensionValue, "undeclared dimension '" + dim + "'");
        if (!d->admits(value)) {
            throw Error(ErrorCode::UnknownDimensionValue, "'" + value + "' is not a value of dimension '" + dim + "'");
        }
    }
}

bool page_visible(const PagePolicy& page, const UserProfile& profile) noexcept {
    if (!at_least(profile.rank, page.required)) return false;
    return std::all_of(page.conditions.begin(), page.conditions.end(), [&](const Assignment& cond) {
        auto it = profile.dimensions.find(cond.first);
        return it != profile.dimensions.end() && it->second == cond.second;
    });
}

AccessProfile derive_access_profile(const UserProfile& profile, const Session& session,
                                    std::span<const PagePolicy> pages, std::span<const ObjectPolicy> objects) {
    if (session.state != SessionState::Open) {
        throw Error(ErrorCode::SessionClosed, "session is closed");
    }
    AccessProfile access;
    access.session_token = session.token;
    for (const auto& page : pages) {
        if (page_visible(page, profile)) access.pages.insert(page.id);
    }
    for (const auto& object : objects) {
        if (at_least(profile.rank, object.required)) access.objects.insert(object.id);
    }
    access.metadata_access = profile.rank == Rank::Administrator;
    return access;
}

std::optional<std::string> check_hierarchy_monotonicity(const DimensionSet& dims, std::span<const PagePolicy> pages) {
    // Only dimensions named in some condition influence visibility.
    std::vector<const Dimension*> relevant;
    for (const auto& page : pages) {
        for (const auto& [dim, _] : page.conditions) {
            const Dimension* d = dims.find(dim);
            if (d && std::find(relevant.begin(), relevant.end(), d) == relevant.end()) relevant.push_back(d);
        }
    }
    std::vector<std::map<std::string, std::string>> combos{{}};
    for (const Dimension* d : relevant) {
        std::vector<std::map<std::string, std::string>> next;
        for (const auto& combo : combos) {
            for (const auto& v : d->alphabet) {
                auto extended = combo;
                extended[d->name] = v;
                next.push_back(std::move(extended));
            }
        }
        combos = std::move(next);
    }
    const Rank ranks[] = {Rank::Ordinary, Rank::Manager, Rank::Administrator};
    for (const auto& combo : combos) {
        for (const auto& page : pages) {
            for (int i = 0; i + 1 < 3; ++i) {
                UserProfile lower{"", ranks[i], combo};
                UserProfile upper{"", ranks[i + 1], combo};
                if (page_visible(page, lower) && !page_visible(page, upper)) {
                    return "page '" + page.id + "' is visible to " + std::string(to_string(ranks[i])) + " but not to " +
                           std::string(to_string(ranks[i + 1]));
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace portalis::profile
