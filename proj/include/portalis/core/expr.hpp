#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "portalis/core/value.hpp"

namespace portalis::core {

/// Position of a syntax node in its source file. Spans are not content:
/// two nodes that differ only in position compare equal.
struct SourcePos {
    std::size_t line = 0;
    std::size_t column = 0;
    friend bool operator==(const SourcePos&, const SourcePos&) { return true; }
};

enum class ExprOp {
    Literal,
    Field,
    Arg,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    And,
    Or,
    Not,
    In,
    Add,
    Sub,
    Mul,
    Neg,
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable expression node. `literal` is meaningful for Literal, `name`
/// for Field and Arg; `operands` holds children (for In: subject first,
/// then the literal members).
struct Expr {
    ExprOp op = ExprOp::Literal;
    Value literal{};
    std::string name;
    std::vector<ExprPtr> operands;
    SourcePos pos;
};

bool operator==(const Expr& a, const Expr& b);
bool same_expr(const ExprPtr& a, const ExprPtr& b);

namespace build {
ExprPtr lit(Value v);
ExprPtr field(std::string name);
ExprPtr arg(std::string name);
ExprPtr binary(ExprOp op, ExprPtr lhs, ExprPtr rhs);
ExprPtr eq(ExprPtr lhs, ExprPtr rhs);
ExprPtr ne(ExprPtr lhs, ExprPtr rhs);
ExprPtr and_(ExprPtr lhs, ExprPtr rhs);
ExprPtr or_(ExprPtr lhs, ExprPtr rhs);
ExprPtr not_(ExprPtr operand);
ExprPtr in(ExprPtr subject, std::vector<Value> members);
ExprPtr truth(bool v);
}  // namespace build

/// Names an expression may reference, with their declared types.
struct Shape {
    std::map<std::string, FieldType, std::less<>> fields;
    /// Scripts may read event arguments; their kinds are only known at run time.
    bool allow_args = false;
};

/// Static type of an expression; nullopt means "dynamic" (an event argument).
using StaticKind = std::optional<Kind>;

/// Infers the type of `expr` under `shape`, throwing IllTypedPredicate on
/// unknown names or operator/kind mismatches.
StaticKind infer(const Expr& expr, const Shape& shape);

/// Requires `expr` to be a boolean-valued predicate under `shape`.
void validate_predicate(const Expr& expr, const Shape& shape);

/// Source of field and argument values during evaluation.
class Bindings {
public:
    virtual ~Bindings() = default;
    virtual std::optional<Value> field(std::string_view name) const = 0;
    virtual std::optional<Value> arg(std::string_view) const { return std::nullopt; }
};

/// Evaluates `expr`. Total on expressions accepted by infer() against a shape
/// the bindings honor; integer arithmetic wraps.
Value evaluate(const Expr& expr, const Bindings& bindings);
bool holds(const Expr& expr, const Bindings& bindings);

/// Canonical concrete syntax, minimally parenthesized.
std::string to_source(const Expr& expr);

}  // namespace portalis::core
