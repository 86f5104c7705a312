#include "portalis/core/value.hpp"

#include <array>
#include <charconv>

namespace portalis::core {

std::string_view to_string(Kind kind) noexcept {
    switch (kind) {
        case Kind::Integer: return "integer";
        case Kind::Real: return "real";
        case Kind::Text: return "text";
        case Kind::Boolean: return "boolean";
        case Kind::Media: return "media";
        case Kind::Reference: return "ref";
    }
    return "?";
}

std::optional<Kind> kind_from_string(std::string_view name) noexcept {
    if (name == "integer") return Kind::Integer;
    if (name == "real") return Kind::Real;
    if (name == "text") return Kind::Text;
    if (name == "boolean") return Kind::Boolean;
    if (name == "media") return Kind::Media;
    if (name == "ref") return Kind::Reference;
    return std::nullopt;
}

bool admits(const FieldType& type, const Value& value) noexcept {
    return kind_of(value) == type.kind;
}

namespace {

std::string quote(std::string_view s) {
    std::string out;
    out.reserve(s.size() + 2);
    out.push_back('"');
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out.push_back(c);
        }
    }
    out.push_back('"');
    return out;
}

std::string format_real(double v) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    std::string s(buf.data(), end);
    // Keep reals distinguishable from integers when printed.
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

}  // namespace

std::string render(const Value& value) {
    struct Visitor {
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(double v) const { return format_real(v); }
        std::string operator()(const std::string& v) const { return quote(v); }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
        std::string operator()(const MediaRef& v) const { return "media(" + quote(v.uri) + ")"; }
        std::string operator()(const ObjectRef& v) const { return "ref(" + v.id + ")"; }
    };
    return std::visit(Visitor{}, value);
}

}  // namespace portalis::core
