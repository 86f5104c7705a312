#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "portalis/core/expr.hpp"
#include "portalis/core/value.hpp"

namespace portalis::dsl {

using core::SourcePos;

/// Expression handle compared by structure rather than by pointer.
struct Expression {
    core::ExprPtr ptr;
    friend bool operator==(const Expression& a, const Expression& b) { return core::same_expr(a.ptr, b.ptr); }
};

/// `name = literal`. Identifiers parse as references.
struct Setting {
    std::string name;
    core::Value value;
    SourcePos pos;
    friend bool operator==(const Setting&, const Setting&) = default;
};

/// `name = IDENT`: profile settings, page conditions, chain points.
struct Symbolic {
    std::string name;
    std::string value;
    SourcePos pos;
    friend bool operator==(const Symbolic&, const Symbolic&) = default;
};

struct FieldSpec {
    std::string name;
    std::string kind;
    std::string target;  // concept name for `ref`
    SourcePos pos;
    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

struct ConceptDecl {
    std::string name;
    std::vector<FieldSpec> fields;
    SourcePos pos;
    friend bool operator==(const ConceptDecl&, const ConceptDecl&) = default;
};

struct IndividualDecl {
    std::string name;
    std::string concept_name;
    std::vector<Setting> values;
    SourcePos pos;
    friend bool operator==(const IndividualDecl&, const IndividualDecl&) = default;
};

struct RelationDecl {
    std::string name;
    SourcePos pos;
    friend bool operator==(const RelationDecl&, const RelationDecl&) = default;
};

struct FrameDecl {
    std::string relation;
    std::string subject;
    std::string object;
    SourcePos pos;
    friend bool operator==(const FrameDecl&, const FrameDecl&) = default;
};

struct DimensionDecl {
    std::string name;
    std::vector<std::string> values;
    SourcePos pos;
    friend bool operator==(const DimensionDecl&, const DimensionDecl&) = default;
};

struct ProfileDecl {
    std::string name;
    std::vector<Symbolic> settings;
    SourcePos pos;
    friend bool operator==(const ProfileDecl&, const ProfileDecl&) = default;
};

struct MetricRow {
    std::vector<Symbolic> chain;
    std::vector<std::string> symbols;
    SourcePos pos;
    friend bool operator==(const MetricRow&, const MetricRow&) = default;
};

struct MetricDecl {
    std::string name;
    std::vector<std::string> order;
    std::optional<std::uint64_t> saturation;
    std::vector<MetricRow> rows;
    SourcePos pos;
    friend bool operator==(const MetricDecl&, const MetricDecl&) = default;
};

struct EventDecl {
    std::string name;
    SourcePos pos;
    friend bool operator==(const EventDecl&, const EventDecl&) = default;
};

struct SetStmt {
    std::string page;
    std::string object;
    std::string field;
    Expression value;
    SourcePos pos;
    friend bool operator==(const SetStmt&, const SetStmt&) = default;
};

struct RefreshStmt {
    std::string page;
    SourcePos pos;
    friend bool operator==(const RefreshStmt&, const RefreshStmt&) = default;
};

struct Assign {
    std::string field;
    Expression value;
    SourcePos pos;
    friend bool operator==(const Assign&, const Assign&) = default;
};

struct TransitionStmt {
    std::string individual;
    std::vector<Assign> assignments;
    SourcePos pos;
    friend bool operator==(const TransitionStmt&, const TransitionStmt&) = default;
};

using Statement = std::variant<SetStmt, RefreshStmt, TransitionStmt>;

struct ScriptDecl {
    std::string name;
    /// Event name, or repository name when `hook`.
    std::string trigger;
    bool hook = false;
    std::vector<FrameDecl> scenario;
    std::vector<Statement> body;
    SourcePos pos;
    friend bool operator==(const ScriptDecl&, const ScriptDecl&) = default;
};

struct RecordDecl {
    std::string id;
    std::vector<Setting> fields;
    SourcePos pos;
    friend bool operator==(const RecordDecl&, const RecordDecl&) = default;
};

struct SourceDecl {
    std::string name;
    std::string kind;
    std::optional<std::string> requires_rank;
    std::vector<RecordDecl> records;
    SourcePos pos;
    friend bool operator==(const SourceDecl&, const SourceDecl&) = default;
};

/// A pattern position: a constant, or a variable when `variable`.
struct PatternTerm {
    std::string name;
    bool variable = false;
    friend bool operator==(const PatternTerm&, const PatternTerm&) = default;
};

struct KeyItemDecl {
    std::string key;
    friend bool operator==(const KeyItemDecl&, const KeyItemDecl&) = default;
};

struct QueryItemDecl {
    PatternTerm relation;
    PatternTerm subject;
    PatternTerm object;
    friend bool operator==(const QueryItemDecl&, const QueryItemDecl&) = default;
};

struct SelectItemDecl {
    bool count = false;
    std::string concept_name;
    std::optional<Expression> where;
    friend bool operator==(const SelectItemDecl&, const SelectItemDecl&) = default;
};

struct PageItemDecl {
    std::variant<KeyItemDecl, QueryItemDecl, SelectItemDecl> spec;
    SourcePos pos;
    friend bool operator==(const PageItemDecl&, const PageItemDecl&) = default;
};

struct PageObjectDecl {
    std::string name;
    std::vector<Setting> fields;
    SourcePos pos;
    friend bool operator==(const PageObjectDecl&, const PageObjectDecl&) = default;
};

struct PageDecl {
    std::string name;
    std::string rank;
    std::vector<Symbolic> conditions;
    std::vector<PageItemDecl> items;
    std::vector<PageObjectDecl> objects;
    SourcePos pos;
    friend bool operator==(const PageDecl&, const PageDecl&) = default;
};

/// `meta NAME at LEVEL where PREDICATE`: a classifier over level-LEVEL objects.
struct MetaDecl {
    std::string name;
    std::uint64_t level = 0;
    Expression predicate;
    SourcePos pos;
    friend bool operator==(const MetaDecl&, const MetaDecl&) = default;
};

/// `rights SUBJECT RANK`: minimum rank that sees the subject's content.
struct RightsDecl {
    std::string subject;
    std::string rank;
    SourcePos pos;
    friend bool operator==(const RightsDecl&, const RightsDecl&) = default;
};

/// `constraint SUBJECT CLASSIFIER`: records an integrity constraint in the
/// subject's metadata.
struct ConstraintDecl {
    std::string subject;
    std::string predicate;
    SourcePos pos;
    friend bool operator==(const ConstraintDecl&, const ConstraintDecl&) = default;
};

using Declaration = std::variant<ConceptDecl, IndividualDecl, RelationDecl, FrameDecl, DimensionDecl, ProfileDecl,
                                 MetricDecl, EventDecl, ScriptDecl, SourceDecl, PageDecl, MetaDecl, RightsDecl,
                                 ConstraintDecl>;

struct SchemaAst {
    std::vector<Declaration> declarations;
    friend bool operator==(const SchemaAst&, const SchemaAst&) = default;
};

SourcePos position(const Declaration& decl);

}  // namespace portalis::dsl
