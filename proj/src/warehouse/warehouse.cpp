#include "portalis/warehouse/warehouse.hpp"

#include <algorithm>
#include <set>

#include "portalis/error.hpp"

namespace portalis::warehouse {

using core::Kind;
using core::Value;

std::string_view to_string(RepoKind kind) noexcept {
    switch (kind) {
        case RepoKind::Hr: return "hr";
        case RepoKind::Finance: return "finance";
        case RepoKind::Media: return "media";
        case RepoKind::Docs: return "docs";
    }
    return "?";
}

std::optional<RepoKind> repo_kind_from_string(std::string_view name) noexcept {
    if (name == "hr") return RepoKind::Hr;
    if (name == "finance") return RepoKind::Finance;
    if (name == "media") return RepoKind::Media;
    if (name == "docs") return RepoKind::Docs;
    return std::nullopt;
}

const std::vector<NativeField>& native_shape(RepoKind kind) {
    static const std::vector<NativeField> hr{
        {"fullName", Kind::Text, core::text("")},
        {"company", Kind::Text, std::nullopt},
        {"country", Kind::Text, std::nullopt},
        {"position", Kind::Text, std::nullopt},
        {"vacancy", Kind::Boolean, core::boolean(false)},
    };
    static const std::vector<NativeField> finance{
        {"indicator", Kind::Text, std::nullopt},
        {"amount", Kind::Real, std::nullopt},
        {"period", Kind::Text, core::text("")},
    };
    static const std::vector<NativeField> media{
        {"category", Kind::Text, std::nullopt},
        {"subcategory", Kind::Text, core::text("")},
        {"format", Kind::Text, std::nullopt},
        {"location", Kind::Text, std::nullopt},
    };
    static const std::vector<NativeField> docs{
        {"person", Kind::Text, std::nullopt},
        {"phone", Kind::Text, core::text("")},
        {"email", Kind::Text, core::text("")},
    };
    switch (kind) {
        case RepoKind::Hr: return hr;
        case RepoKind::Finance: return finance;
        case RepoKind::Media: return media;
        case RepoKind::Docs: return docs;
    }
    return hr;
}

namespace {

const NativeField* find_native(RepoKind kind, std::string_view name) {
    for (const auto& f : native_shape(kind)) {
        if (f.name == name) return &f;
    }
    return nullptr;
}

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::MalformedChange, what); }

const std::string& text_of(const core::ValueMap& fields, std::string_view name) {
    return std::get<std::string>(fields.find(name)->second);
}

std::string_view media_category_label(std::string_view native) {
    if (native == "audio") return "audio record";
    if (native == "video") return "video record";
    return "static image";
}

void check_kind_rules(RepoKind kind, const core::ValueMap& fields) {
    if (kind == RepoKind::Media) {
        const auto& category = text_of(fields, "category");
        const auto& sub = text_of(fields, "subcategory");
        if (!media_category_from_string(category)) malformed("unknown media category '" + category + "'");
        if (category == "image") {
            if (!image_subcategory_from_string(sub)) malformed("static images need a subcategory, got '" + sub + "'");
        } else if (!sub.empty()) {
            malformed("only static images carry a subcategory");
        }
    } else if (kind == RepoKind::Finance) {
        const auto& indicator = text_of(fields, "indicator");
        if (catalog_kind(indicator) != RepoKind::Finance) malformed("'" + indicator + "' is not a finance indicator");
    }
}

/// Merges `changes` over `base` (or defaults when inserting) and validates.
core::ValueMap normalize(RepoKind kind, const NativeRecord* base, const core::ValueMap& changes) {
    core::ValueMap merged;
    if (base) merged = base->fields;
    for (const auto& [name, value] : changes) {
        const NativeField* f = find_native(kind, name);
        if (!f) malformed("'" + name + "' is not a field of " + std::string(to_string(kind)) + " records");
        auto converted = coerce(value, f->kind);
        if (!converted) malformed("field '" + name + "' expects " + std::string(core::to_string(f->kind)));
        merged.insert_or_assign(name, std::move(*converted));
    }
    if (!base) {
        for (const auto& f : native_shape(kind)) {
            if (merged.contains(f.name)) continue;
            if (!f.default_value) malformed("missing required field '" + f.name + "'");
            merged.emplace(f.name, *f.default_value);
        }
    }
    check_kind_rules(kind, merged);
    return merged;
}

}  // namespace

std::optional<Value> coerce(const Value& value, Kind kind) {
    if (core::kind_of(value) == kind) return value;
    if (kind == Kind::Real) {
        if (const auto* i = std::get_if<std::int64_t>(&value)) return core::real(static_cast<double>(*i));
    }
    if (kind == Kind::Media) {
        if (const auto* s = std::get_if<std::string>(&value)) return core::media(*s);
    }
    return std::nullopt;
}

std::size_t Repository::content_hash() const {
    std::string canon = name + ":" + std::string(to_string(kind)) + "\n";
    for (const auto& [id, record] : items) {
        canon += id + "@" + std::to_string(record.version) + "{";
        for (const auto& [k, v] : record.fields) canon += k + "=" + core::render(v) + ",";
        canon += "}\n";
    }
    return std::hash<std::string>{}(canon);
}

core::DataObject CartridgeAdapter::adapt(std::string_view id, const NativeRecord& record) const {
    core::DataObject object{definition_.name, std::string(id), core::StateRecord{record.version, {}, "native"}};
    for (const auto& m : mappings_) {
        const Value& native = record.fields.at(m.native);
        const core::FieldDecl* target = definition_.find(m.field);
        Value converted = native;
        if (kind_ == RepoKind::Media && m.native == "category") {
            converted = core::text(std::string(media_category_label(std::get<std::string>(native))));
        } else if (target->type.kind == Kind::Media) {
            converted = core::media(std::get<std::string>(native));
        }
        object.state.values.insert_or_assign(m.field, std::move(converted));
    }
    core::validate_values(definition_, object.state.values, true);
    return object;
}

const CartridgeAdapter& adapter_for(RepoKind kind) {
    using core::Concept;
    using core::FieldType;
    static const CartridgeAdapter hr(RepoKind::Hr,
                                     Concept{"HrRecord",
                                             {{"name", FieldType{Kind::Text, {}}},
                                              {"company", FieldType{Kind::Text, {}}},
                                              {"country", FieldType{Kind::Text, {}}},
                                              {"position", FieldType{Kind::Text, {}}},
                                              {"openVacancy", FieldType{Kind::Boolean, {}}}}},
                                     {{"fullName", "name"},
                                      {"company", "company"},
                                      {"country", "country"},
                                      {"position", "position"},
                                      {"vacancy", "openVacancy"}});
    static const CartridgeAdapter finance(RepoKind::Finance,
                                          Concept{"FinanceRecord",
                                                  {{"indicator", FieldType{Kind::Text, {}}},
                                                   {"value", FieldType{Kind::Real, {}}},
                                                   {"period", FieldType{Kind::Text, {}}}}},
                                          {{"indicator", "indicator"}, {"amount", "value"}, {"period", "period"}});
    static const CartridgeAdapter media(RepoKind::Media,
                                        Concept{"MediaObject",
                                                {{"category", FieldType{Kind::Text, {}}},
                                                 {"subCategory", FieldType{Kind::Text, {}}},
                                                 {"format", FieldType{Kind::Text, {}}},
                                                 {"payload", FieldType{Kind::Media, {}}}}},
                                        {{"category", "category"},
                                         {"subcategory", "subCategory"},
                                         {"format", "format"},
                                         {"location", "payload"}});
    static const CartridgeAdapter docs(RepoKind::Docs,
                                       Concept{"Contact",
                                               {{"name", FieldType{Kind::Text, {}}},
                                                {"phone", FieldType{Kind::Text, {}}},
                                                {"email", FieldType{Kind::Text, {}}}}},
                                       {{"person", "name"}, {"phone", "phone"}, {"email", "email"}});
    switch (kind) {
        case RepoKind::Hr: return hr;
        case RepoKind::Finance: return finance;
        case RepoKind::Media: return media;
        case RepoKind::Docs: return docs;
    }
    return hr;
}

std::optional<MediaCategory> media_category_from_string(std::string_view name) noexcept {
    if (name == "audio") return MediaCategory::Audio;
    if (name == "video") return MediaCategory::Video;
    if (name == "image") return MediaCategory::StaticImage;
    return std::nullopt;
}

std::optional<ImageSubCategory> image_subcategory_from_string(std::string_view name) noexcept {
    if (name == "photos") return ImageSubCategory::Photos;
    if (name == "logos") return ImageSubCategory::Logos;
    if (name == "catalogues") return ImageSubCategory::Catalogues;
    return std::nullopt;
}

std::string render(const Content& content) {
    if (std::holds_alternative<Unavailable>(content)) return "unavailable";
    if (const auto* v = std::get_if<Value>(&content)) return core::render(*v);
    std::string out = "[";
    const auto& list = std::get<std::vector<std::string>>(content);
    for (std::size_t i = 0; i < list.size(); ++i) {
        if (i) out += ", ";
        out += list[i];
    }
    return out + "]";
}

const std::vector<std::pair<std::string, RepoKind>>& portal_catalog() {
    static const std::vector<std::pair<std::string, RepoKind>> catalog{
        {"totalEstablishment", RepoKind::Hr},
        {"countryCount", RepoKind::Hr},
        {"companyCount", RepoKind::Hr},
        {"vacancies", RepoKind::Hr},
        {"revenues", RepoKind::Finance},
        {"profits", RepoKind::Finance},
        {"productionDynamics", RepoKind::Finance},
        {"stockValues", RepoKind::Finance},
        {"deferredCharges", RepoKind::Finance},
        {"contacts", RepoKind::Docs},
    };
    return catalog;
}

std::optional<RepoKind> catalog_kind(std::string_view key) noexcept {
    for (const auto& [k, kind] : portal_catalog()) {
        if (k == key) return kind;
    }
    return std::nullopt;
}

void Warehouse::add_repository(std::string name, RepoKind kind, profile::Rank required) {
    if (repos_.contains(name)) throw Error(ErrorCode::InvalidDeclaration, "source '" + name + "' declared twice");
    Repository repo{name, kind, required, {}, 0};
    repos_.emplace(std::move(name), std::move(repo));
}

Repository& Warehouse::repository_mut(std::string_view name) {
    auto it = repos_.find(name);
    if (it == repos_.end()) throw Error(ErrorCode::UnknownRepository, "no repository '" + std::string(name) + "'");
    return it->second;
}

const Repository& Warehouse::repository(std::string_view name) const {
    auto it = repos_.find(name);
    if (it == repos_.end()) throw Error(ErrorCode::UnknownRepository, "no repository '" + std::string(name) + "'");
    return it->second;
}

std::vector<const Repository*> Warehouse::of_kind(RepoKind kind) const {
    std::vector<const Repository*> out;
    for (const auto& [_, repo] : repos_) {
        if (repo.kind == kind) out.push_back(&repo);
    }
    return out;
}

void Warehouse::seed(std::string_view repository, std::string id, core::ValueMap fields) {
    Repository& repo = repository_mut(repository);
    if (repo.items.contains(id)) malformed("record '" + id + "' seeded twice in '" + repo.name + "'");
    repo.items.emplace(std::move(id), NativeRecord{normalize(repo.kind, nullptr, fields), 0});
}

core::DataObject Warehouse::uniform_fetch(std::string_view repository, std::string_view item) const {
    const Repository& repo = this->repository(repository);
    auto it = repo.items.find(item);
    if (it == repo.items.end()) {
        throw Error(ErrorCode::UnknownItem, "no item '" + std::string(item) + "' in '" + repo.name + "'");
    }
    return adapter_for(repo.kind).adapt(it->first, it->second);
}

std::vector<MediaObject> Warehouse::search_media(MediaCategory category, std::optional<ImageSubCategory> sub,
                                                 const core::Expr& phi) const {
    if (sub && category != MediaCategory::StaticImage) {
        throw Error(ErrorCode::InvalidCategoryCombination, "subcategories apply to static images only");
    }
    const CartridgeAdapter& adapter = adapter_for(RepoKind::Media);
    core::validate_predicate(phi, core::concept_shape(adapter.definition()));

    std::vector<MediaObject> out;
    for (const Repository* repo : of_kind(RepoKind::Media)) {
        for (const auto& [id, record] : repo->items) {
            auto cat = media_category_from_string(text_of(record.fields, "category"));
            auto sc = image_subcategory_from_string(text_of(record.fields, "subcategory"));
            if (cat != category) continue;
            if (sub && sc != sub) continue;
            core::DataObject object = adapter.adapt(id, record);
            if (!core::holds(phi, core::DataObjectBindings(object))) continue;
            out.push_back(MediaObject{id, *cat, sc, text_of(record.fields, "format"),
                                      core::MediaRef{text_of(record.fields, "location")}});
        }
    }
    std::sort(out.begin(), out.end(), [](const MediaObject& a, const MediaObject& b) { return a.id < b.id; });
    return out;
}

PortalItem Warehouse::portal_item(std::string_view key) const {
    auto kind = catalog_kind(key);
    if (!kind) throw Error(ErrorCode::UnknownItem, "no portal item '" + std::string(key) + "'");
    PortalItem item{std::string(key), Unavailable{}, "", 0};
    auto repos = of_kind(*kind);
    for (const Repository* repo : repos) {
        if (!item.source.empty()) item.source += ",";
        item.source += repo->name;
        item.as_of = std::max(item.as_of, repo->revision);
    }

    switch (*kind) {
        case RepoKind::Hr: {
            std::int64_t total = 0, vacancies = 0;
            std::set<std::string> countries, companies;
            for (const Repository* repo : repos) {
                for (const auto& [_, record] : repo->items) {
                    ++total;
                    vacancies += std::get<bool>(record.fields.at("vacancy")) ? 1 : 0;
                    countries.insert(text_of(record.fields, "country"));
                    companies.insert(text_of(record.fields, "company"));
                }
            }
            std::int64_t value = key == "totalEstablishment" ? total
                                 : key == "countryCount"     ? static_cast<std::int64_t>(countries.size())
                                 : key == "companyCount"     ? static_cast<std::int64_t>(companies.size())
                                                             : vacancies;
            item.value = core::integer(value);
            break;
        }
        case RepoKind::Finance: {
            // The current record for an indicator is the one with the latest period.
            const NativeRecord* best = nullptr;
            for (const Repository* repo : repos) {
                for (const auto& [_, record] : repo->items) {
                    if (text_of(record.fields, "indicator") != key) continue;
                    if (!best || text_of(record.fields, "period") > text_of(best->fields, "period")) best = &record;
                }
            }
            if (best) item.value = best->fields.at("amount");
            break;
        }
        case RepoKind::Docs: {
            std::vector<std::string> contacts;
            for (const Repository* repo : repos) {
                for (const auto& [_, record] : repo->items) {
                    std::string entry = text_of(record.fields, "person");
                    if (const auto& email = text_of(record.fields, "email"); !email.empty()) entry += " <" + email + ">";
                    contacts.push_back(std::move(entry));
                }
            }
            std::sort(contacts.begin(), contacts.end());
            item.value = std::move(contacts);
            break;
        }
        case RepoKind::Media:
            break;
    }
    return item;
}

std::vector<PortalItem> Warehouse::aggregate_portal_items() const {
    std::vector<PortalItem> out;
    for (const auto& [key, _] : portal_catalog()) out.push_back(portal_item(key));
    return out;
}

void Warehouse::mutate(std::string_view repository, const Change& change, bool content_critical,
                       const std::function<void(const MutationDescriptor&)>& on_critical) {
    Repository& repo = repository_mut(repository);
    auto it = repo.items.find(change.id);
    if (change.id.empty()) malformed("change names no item");

    if (change.op == Change::Op::Remove) {
        if (it == repo.items.end()) malformed("cannot remove unknown item '" + change.id + "'");
        if (!change.fields.empty()) malformed("remove carries no fields");
        repo.items.erase(it);
    } else {
        const NativeRecord* base = it == repo.items.end() ? nullptr : &it->second;
        core::ValueMap fields = normalize(repo.kind, base, change.fields);
        if (base) {
            it->second.fields = std::move(fields);
            ++it->second.version;
        } else {
            repo.items.emplace(change.id, NativeRecord{std::move(fields), 0});
        }
    }
    ++repo.revision;
    if (content_critical && on_critical) on_critical(MutationDescriptor{repo.name, change, true});
}

std::size_t Warehouse::content_hash() const {
    std::string canon;
    for (const auto& [name, repo] : repos_) canon += std::to_string(repo.content_hash()) + ";";
    return std::hash<std::string>{}(canon);
}

}  // namespace portalis::warehouse
