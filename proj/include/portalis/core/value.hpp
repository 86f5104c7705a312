#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace portalis::core {

/// The closed set of value kinds a concept field may declare.
enum class Kind { Integer, Real, Text, Boolean, Media, Reference };

std::string_view to_string(Kind kind) noexcept;
std::optional<Kind> kind_from_string(std::string_view name) noexcept;

/// Opaque pointer to a media payload (path or URL). Only =/!= are defined.
struct MediaRef {
    std::string uri;
    friend bool operator==(const MediaRef&, const MediaRef&) = default;
    friend auto operator<=>(const MediaRef&, const MediaRef&) = default;
};

/// Reference to another individual by id.
struct ObjectRef {
    std::string id;
    friend bool operator==(const ObjectRef&, const ObjectRef&) = default;
    friend auto operator<=>(const ObjectRef&, const ObjectRef&) = default;
};

/// Alternative order matches Kind.
using Value = std::variant<std::int64_t, double, std::string, bool, MediaRef, ObjectRef>;

inline Kind kind_of(const Value& value) noexcept { return static_cast<Kind>(value.index()); }

inline Value text(std::string s) { return Value{std::in_place_type<std::string>, std::move(s)}; }
inline Value integer(std::int64_t v) { return Value{v}; }
inline Value real(double v) { return Value{v}; }
inline Value boolean(bool v) { return Value{std::in_place_type<bool>, v}; }
inline Value media(std::string uri) { return Value{MediaRef{std::move(uri)}}; }
inline Value reference(std::string id) { return Value{ObjectRef{std::move(id)}}; }

/// Field kind; `target` names the concept for Reference fields.
struct FieldType {
    Kind kind = Kind::Text;
    std::string target;
    friend bool operator==(const FieldType&, const FieldType&) = default;
};

/// Whether `value` may be stored in a field of type `type`.
/// References are checked nominally against the target concept elsewhere.
bool admits(const FieldType& type, const Value& value) noexcept;

/// Canonical textual rendering, stable across runs; used for hashing and display.
std::string render(const Value& value);

using ValueMap = std::map<std::string, Value, std::less<>>;

}  // namespace portalis::core
