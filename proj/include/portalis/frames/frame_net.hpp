#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

namespace portalis::frames {

/// R(subject, object): an atomic formula of the network language.
struct AtomicFrame {
    std::string relation;
    std::string subject;
    std::string object;
    friend bool operator==(const AtomicFrame&, const AtomicFrame&) = default;
    friend auto operator<=>(const AtomicFrame&, const AtomicFrame&) = default;
};

struct Variable {
    std::string name;
    friend bool operator==(const Variable&, const Variable&) = default;
    friend auto operator<=>(const Variable&, const Variable&) = default;
};

/// A constant name or a ?variable.
using Term = std::variant<std::string, Variable>;

/// A frame with a term in each position. Only subject and object may be
/// variables; a variable relation is rejected as MalformedPattern.
struct Pattern {
    Term relation;
    Term subject;
    Term object;
    friend bool operator==(const Pattern&, const Pattern&) = default;
};

using Binding = std::map<std::string, std::string>;
using BindingSet = std::set<Binding>;

std::string to_string(const Term& term);
std::string to_string(const Pattern& pattern);

/// L = <R, C> with extensional dyadic relations.
class FrameLanguage {
public:
    using Extension = std::set<std::pair<std::string, std::string>>;

    void declare_relation(std::string name);
    void declare_constant(std::string name);

    /// Adds (subject, object) to the relation's extension. Idempotent.
    void assert_frame(const AtomicFrame& frame);

    /// ||R(a, b)|| = chi_R(a, b).
    bool evaluate(const AtomicFrame& frame) const;

    /// Every binding of the pattern's variables that yields a true frame.
    BindingSet query(const Pattern& pattern) const;

    const std::set<std::string, std::less<>>& relations() const noexcept { return relations_; }
    const std::set<std::string, std::less<>>& constants() const noexcept { return constants_; }
    const Extension& extension(std::string_view relation) const;
    std::size_t frame_count() const noexcept;

    std::size_t content_hash() const;

    friend bool operator==(const FrameLanguage&, const FrameLanguage&) = default;

private:
    void check_declared(const AtomicFrame& frame) const;
    void check_constant(std::string_view name) const;

    std::set<std::string, std::less<>> relations_;
    std::set<std::string, std::less<>> constants_;
    std::map<std::string, Extension, std::less<>> extensions_;
};

/// Value-returning form of FrameLanguage::assert_frame.
FrameLanguage assert_frame(FrameLanguage lang, const AtomicFrame& frame);

/// Maps constants to the individuals they denote.
using TermBinding = std::map<std::string, std::string>;

}  // namespace portalis::frames
