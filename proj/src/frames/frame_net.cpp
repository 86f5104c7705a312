#include "portalis/frames/frame_net.hpp"

#include <functional>

#include "portalis/error.hpp"

namespace portalis::frames {

std::string to_string(const Term& term) {
    if (const auto* v = std::get_if<Variable>(&term)) return "?" + v->name;
    return std::get<std::string>(term);
}

std::string to_string(const Pattern& pattern) {
    return to_string(pattern.relation) + "(" + to_string(pattern.subject) + ", " + to_string(pattern.object) + ")";
}

void FrameLanguage::declare_relation(std::string name) {
    extensions_.try_emplace(name);
    relations_.insert(std::move(name));
}

void FrameLanguage::declare_constant(std::string name) { constants_.insert(std::move(name)); }

void FrameLanguage::check_constant(std::string_view name) const {
    if (!constants_.contains(name)) throw Error(ErrorCode::UndeclaredSymbol, "undeclared constant '" + std::string(name) + "'");
}

void FrameLanguage::check_declared(const AtomicFrame& frame) const {
    if (!relations_.contains(frame.relation)) {
        throw Error(ErrorCode::UndeclaredSymbol, "undeclared relation '" + frame.relation + "'");
    }
    check_constant(frame.subject);
    check_constant(frame.object);
}

void FrameLanguage::assert_frame(const AtomicFrame& frame) {
    check_declared(frame);
    extensions_[frame.relation].emplace(frame.subject, frame.object);
}

bool FrameLanguage::evaluate(const AtomicFrame& frame) const {
    check_declared(frame);
    return extension(frame.relation).contains({frame.subject, frame.object});
}

BindingSet FrameLanguage::query(const Pattern& pattern) const {
    const auto* relation = std::get_if<std::string>(&pattern.relation);
    if (!relation) throw Error(ErrorCode::MalformedPattern, "relation position cannot hold a variable");
    if (!relations_.contains(*relation)) {
        throw Error(ErrorCode::UndeclaredSymbol, "undeclared relation '" + *relation + "'");
    }
    for (const Term* t : {&pattern.subject, &pattern.object}) {
        if (const auto* c = std::get_if<std::string>(t)) check_constant(*c);
        if (const auto* v = std::get_if<Variable>(t); v && v->name.empty()) {
            throw Error(ErrorCode::MalformedPattern, "variable without a name");
        }
    }

    BindingSet out;
    for (const auto& [subject, object] : extension(*relation)) {
        Binding binding;
        auto unify = [&binding](const Term& term, const std::string& value) {
            if (const auto* c = std::get_if<std::string>(&term)) return *c == value;
            const auto& name = std::get<Variable>(term).name;
            auto [it, inserted] = binding.emplace(name, value);
            return inserted || it->second == value;
        };
        if (unify(pattern.subject, subject) && unify(pattern.object, object)) out.insert(std::move(binding));
    }
    return out;
}

const FrameLanguage::Extension& FrameLanguage::extension(std::string_view relation) const {
    auto it = extensions_.find(relation);
    if (it == extensions_.end()) {
        throw Error(ErrorCode::UndeclaredSymbol, "undeclared relation '" + std::string(relation) + "'");
    }
    return it->second;
}

std::size_t FrameLanguage::frame_count() const noexcept {
    std::size_t n = 0;
    for (const auto& [_, ext] : extensions_) n += ext.size();
    return n;
}

std::size_t FrameLanguage::content_hash() const {
    std::string canon;
    for (const auto& c : constants_) canon += c + ",";
    canon += "\n";
    for (const auto& [rel, ext] : extensions_) {
        canon += rel + "{";
        for (const auto& [a, b] : ext) canon += a + " " + b + ";";
        canon += "}\n";
    }
    return std::hash<std::string>{}(canon);
}

FrameLanguage assert_frame(FrameLanguage lang, const AtomicFrame& frame) {
    lang.assert_frame(frame);
    return lang;
}

}  // namespace portalis::frames
