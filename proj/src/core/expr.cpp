#include "portalis/core/expr.hpp"

#include <cmath>
#include <cstdint>

#include "portalis/error.hpp"

namespace portalis::core {

bool operator==(const Expr& a, const Expr& b) {
    if (a.op != b.op || a.literal != b.literal || a.name != b.name) return false;
    if (a.operands.size() != b.operands.size()) return false;
    for (std::size_t i = 0; i < a.operands.size(); ++i) {
        if (!same_expr(a.operands[i], b.operands[i])) return false;
    }
    return true;
}

bool same_expr(const ExprPtr& a, const ExprPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

namespace build {

namespace {
ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }
}  // namespace

ExprPtr lit(Value v) { return make(Expr{ExprOp::Literal, std::move(v), {}, {}, {}}); }
ExprPtr field(std::string name) { return make(Expr{ExprOp::Field, {}, std::move(name), {}, {}}); }
ExprPtr arg(std::string name) { return make(Expr{ExprOp::Arg, {}, std::move(name), {}, {}}); }
ExprPtr binary(ExprOp op, ExprPtr lhs, ExprPtr rhs) {
    return make(Expr{op, {}, {}, {std::move(lhs), std::move(rhs)}, {}});
}
ExprPtr eq(ExprPtr lhs, ExprPtr rhs) { return binary(ExprOp::Eq, std::move(lhs), std::move(rhs)); }
ExprPtr ne(ExprPtr lhs, ExprPtr rhs) { return binary(ExprOp::Ne, std::move(lhs), std::move(rhs)); }
ExprPtr and_(ExprPtr lhs, ExprPtr rhs) { return binary(ExprOp::And, std::move(lhs), std::move(rhs)); }
ExprPtr or_(ExprPtr lhs, ExprPtr rhs) { return binary(ExprOp::Or, std::move(lhs), std::move(rhs)); }
ExprPtr not_(ExprPtr operand) { return make(Expr{ExprOp::Not, {}, {}, {std::move(operand)}, {}}); }
ExprPtr in(ExprPtr subject, std::vector<Value> members) {
    Expr e{ExprOp::In, {}, {}, {std::move(subject)}, {}};
    for (auto& m : members) e.operands.push_back(lit(std::move(m)));
    return make(std::move(e));
}
ExprPtr truth(bool v) { return lit(boolean(v)); }

}  // namespace build

namespace {

bool is_numeric(Kind k) { return k == Kind::Integer || k == Kind::Real; }

bool is_textual(Kind k) { return k == Kind::Text || k == Kind::Media || k == Kind::Reference; }

std::string_view op_symbol(ExprOp op) {
    switch (op) {
        case ExprOp::Eq: return "=";
        case ExprOp::Ne: return "!=";
        case ExprOp::Lt: return "<";
        case ExprOp::Le: return "<=";
        case ExprOp::Gt: return ">";
        case ExprOp::Ge: return ">=";
        case ExprOp::And: return "and";
        case ExprOp::Or: return "or";
        case ExprOp::Not: return "not";
        case ExprOp::In: return "in";
        case ExprOp::Add: return "+";
        case ExprOp::Sub: return "-";
        case ExprOp::Mul: return "*";
        case ExprOp::Neg: return "-";
        default: return "?";
    }
}

[[noreturn]] void ill_typed(const std::string& what) { throw Error(ErrorCode::IllTypedPredicate, what); }

std::string kind_name(StaticKind k) { return k ? std::string(to_string(*k)) : std::string("dynamic"); }

bool equatable(StaticKind a, StaticKind b) {
    if (!a || !b) return true;
    if (*a == *b) return true;
    if (is_numeric(*a) && is_numeric(*b)) return true;
    // Media and reference values compare against text literals by uri / id.
    return (*a == Kind::Text && is_textual(*b)) || (*b == Kind::Text && is_textual(*a));
}

bool orderable(StaticKind a, StaticKind b) {
    if (!a && !b) return true;
    if (!a) return is_numeric(*b) || *b == Kind::Text;
    if (!b) return is_numeric(*a) || *a == Kind::Text;
    return (is_numeric(*a) && is_numeric(*b)) || (*a == Kind::Text && *b == Kind::Text);
}

void expect_boolean(StaticKind k, ExprOp op) {
    if (k && *k != Kind::Boolean) {
        ill_typed("operator '" + std::string(op_symbol(op)) + "' needs boolean operands, got " + kind_name(k));
    }
}

}  // namespace

StaticKind infer(const Expr& expr, const Shape& shape) {
    switch (expr.op) {
        case ExprOp::Literal:
            return kind_of(expr.literal);
        case ExprOp::Field: {
            auto it = shape.fields.find(expr.name);
            if (it == shape.fields.end()) ill_typed("unknown field '" + expr.name + "'");
            return it->second.kind;
        }
        case ExprOp::Arg:
            if (!shape.allow_args) ill_typed("event argument 'arg." + expr.name + "' outside a script");
            return std::nullopt;
        case ExprOp::Eq:
        case ExprOp::Ne: {
            auto a = infer(*expr.operands.at(0), shape);
            auto b = infer(*expr.operands.at(1), shape);
            if (!equatable(a, b)) {
                ill_typed("cannot compare " + kind_name(a) + " with " + kind_name(b));
            }
            return Kind::Boolean;
        }
        case ExprOp::Lt:
        case ExprOp::Le:
        case ExprOp::Gt:
        case ExprOp::Ge: {
            auto a = infer(*expr.operands.at(0), shape);
            auto b = infer(*expr.operands.at(1), shape);
            if (!orderable(a, b)) {
                ill_typed("operator '" + std::string(op_symbol(expr.op)) + "' undefined for " + kind_name(a) +
                          " and " + kind_name(b));
            }
            return Kind::Boolean;
        }
        case ExprOp::And:
        case ExprOp::Or:
            expect_boolean(infer(*expr.operands.at(0), shape), expr.op);
            expect_boolean(infer(*expr.operands.at(1), shape), expr.op);
            return Kind::Boolean;
        case ExprOp::Not:
            expect_boolean(infer(*expr.operands.at(0), shape), expr.op);
            return Kind::Boolean;
        case ExprOp::In: {
            auto subject = infer(*expr.operands.at(0), shape);
            for (std::size_t i = 1; i < expr.operands.size(); ++i) {
                auto member = infer(*expr.operands[i], shape);
                if (!equatable(subject, member)) {
                    ill_typed("set member of kind " + kind_name(member) + " never equals " + kind_name(subject));
                }
            }
            return Kind::Boolean;
        }
        case ExprOp::Add:
        case ExprOp::Sub:
        case ExprOp::Mul: {
            auto a = infer(*expr.operands.at(0), shape);
            auto b = infer(*expr.operands.at(1), shape);
            if ((a && !is_numeric(*a)) || (b && !is_numeric(*b))) {
                ill_typed("arithmetic on " + kind_name(a) + " and " + kind_name(b));
            }
            if (!a || !b) return std::nullopt;
            return (*a == Kind::Real || *b == Kind::Real) ? Kind::Real : Kind::Integer;
        }
        case ExprOp::Neg: {
            auto a = infer(*expr.operands.at(0), shape);
            if (a && !is_numeric(*a)) ill_typed("negation of " + kind_name(a));
            return a;
        }
    }
    ill_typed("malformed expression");
}

void validate_predicate(const Expr& expr, const Shape& shape) {
    auto k = infer(expr, shape);
    if (k && *k != Kind::Boolean) ill_typed("predicate has kind " + kind_name(k) + ", expected boolean");
}

namespace {

[[noreturn]] void runtime_mismatch(const std::string& what) { throw Error(ErrorCode::KindMismatch, what); }

double as_double(const Value& v) {
    if (auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
    return std::get<double>(v);
}

const std::string* textual_payload(const Value& v) {
    if (auto* s = std::get_if<std::string>(&v)) return s;
    if (auto* m = std::get_if<MediaRef>(&v)) return &m->uri;
    if (auto* r = std::get_if<ObjectRef>(&v)) return &r->id;
    return nullptr;
}

bool values_equal(const Value& a, const Value& b) {
    Kind ka = kind_of(a), kb = kind_of(b);
    if (is_numeric(ka) && is_numeric(kb)) {
        if (ka == Kind::Integer && kb == Kind::Integer) return std::get<std::int64_t>(a) == std::get<std::int64_t>(b);
        return as_double(a) == as_double(b);
    }
    if (ka == kb) return a == b;
    if (ka == Kind::Text || kb == Kind::Text) {
        const auto* pa = textual_payload(a);
        const auto* pb = textual_payload(b);
        if (pa && pb) return *pa == *pb;
    }
    runtime_mismatch("cannot compare " + render(a) + " with " + render(b));
}

int compare_ordered(const Value& a, const Value& b) {
    Kind ka = kind_of(a), kb = kind_of(b);
    if (ka == Kind::Integer && kb == Kind::Integer) {
        auto x = std::get<std::int64_t>(a), y = std::get<std::int64_t>(b);
        return x < y ? -1 : (x > y ? 1 : 0);
    }
    if (is_numeric(ka) && is_numeric(kb)) {
        double x = as_double(a), y = as_double(b);
        return x < y ? -1 : (x > y ? 1 : 0);
    }
    if (ka == Kind::Text && kb == Kind::Text) {
        // Byte order on UTF-8 coincides with code point order.
        int c = std::get<std::string>(a).compare(std::get<std::string>(b));
        return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    runtime_mismatch("no ordering between " + render(a) + " and " + render(b));
}

bool as_bool(const Value& v) {
    if (auto* b = std::get_if<bool>(&v)) return *b;
    runtime_mismatch("expected boolean, got " + render(v));
}

Value arithmetic(ExprOp op, const Value& a, const Value& b) {
    Kind ka = kind_of(a), kb = kind_of(b);
    if (!is_numeric(ka) || !is_numeric(kb)) runtime_mismatch("arithmetic on " + render(a) + " and " + render(b));
    if (ka == Kind::Integer && kb == Kind::Integer) {
        auto x = static_cast<std::uint64_t>(std::get<std::int64_t>(a));
        auto y = static_cast<std::uint64_t>(std::get<std::int64_t>(b));
        std::uint64_t r = op == ExprOp::Add ? x + y : op == ExprOp::Sub ? x - y : x * y;
        return Value{static_cast<std::int64_t>(r)};
    }
    double x = as_double(a), y = as_double(b);
    return Value{op == ExprOp::Add ? x + y : op == ExprOp::Sub ? x - y : x * y};
}

}  // namespace

Value evaluate(const Expr& expr, const Bindings& bindings) {
    switch (expr.op) {
        case ExprOp::Literal:
            return expr.literal;
        case ExprOp::Field: {
            auto v = bindings.field(expr.name);
            if (!v) throw Error(ErrorCode::UnknownField, "no value for field '" + expr.name + "'");
            return std::move(*v);
        }
        case ExprOp::Arg: {
            auto v = bindings.arg(expr.name);
            if (!v) throw Error(ErrorCode::UnknownField, "event carries no argument '" + expr.name + "'");
            return std::move(*v);
        }
        case ExprOp::Eq:
            return boolean(values_equal(evaluate(*expr.operands[0], bindings), evaluate(*expr.operands[1], bindings)));
        case ExprOp::Ne:
            return boolean(!values_equal(evaluate(*expr.operands[0], bindings), evaluate(*expr.operands[1], bindings)));
        case ExprOp::Lt:
        case ExprOp::Le:
        case ExprOp::Gt:
        case ExprOp::Ge: {
            int c = compare_ordered(evaluate(*expr.operands[0], bindings), evaluate(*expr.operands[1], bindings));
            bool r = expr.op == ExprOp::Lt ? c < 0 : expr.op == ExprOp::Le ? c <= 0 : expr.op == ExprOp::Gt ? c > 0 : c >= 0;
            return boolean(r);
        }
        case ExprOp::And:
            if (!as_bool(evaluate(*expr.operands[0], bindings))) return boolean(false);
            return boolean(as_bool(evaluate(*expr.operands[1], bindings)));
        case ExprOp::Or:
            if (as_bool(evaluate(*expr.operands[0], bindings))) return boolean(true);
            return boolean(as_bool(evaluate(*expr.operands[1], bindings)));
        case ExprOp::Not:
            return boolean(!as_bool(evaluate(*expr.operands[0], bindings)));
        case ExprOp::In: {
            Value subject = evaluate(*expr.operands[0], bindings);
            for (std::size_t i = 1; i < expr.operands.size(); ++i) {
                if (values_equal(subject, evaluate(*expr.operands[i], bindings))) return boolean(true);
            }
            return boolean(false);
        }
        case ExprOp::Add:
        case ExprOp::Sub:
        case ExprOp::Mul:
            return arithmetic(expr.op, evaluate(*expr.operands[0], bindings), evaluate(*expr.operands[1], bindings));
        case ExprOp::Neg: {
            Value v = evaluate(*expr.operands[0], bindings);
            if (auto* i = std::get_if<std::int64_t>(&v)) {
                return Value{static_cast<std::int64_t>(0 - static_cast<std::uint64_t>(*i))};
            }
            if (auto* d = std::get_if<double>(&v)) return Value{-*d};
            runtime_mismatch("negation of " + render(v));
        }
    }
    throw Error(ErrorCode::IllTypedPredicate, "malformed expression");
}

bool holds(const Expr& expr, const Bindings& bindings) { return as_bool(evaluate(expr, bindings)); }

namespace {

int precedence(const Expr& e) {
    switch (e.op) {
        case ExprOp::Or: return 1;
        case ExprOp::And: return 2;
        case ExprOp::Not: return 3;
        case ExprOp::Eq:
        case ExprOp::Ne:
        case ExprOp::Lt:
        case ExprOp::Le:
        case ExprOp::Gt:
        case ExprOp::Ge:
        case ExprOp::In: return 4;
        case ExprOp::Add:
        case ExprOp::Sub: return 5;
        case ExprOp::Mul: return 6;
        case ExprOp::Neg: return 7;
        case ExprOp::Literal:
            // A negative numeric literal prints with a leading minus and
            // binds like unary negation.
            if (auto* i = std::get_if<std::int64_t>(&e.literal); i && *i < 0) return 7;
            if (auto* d = std::get_if<double>(&e.literal); d && std::signbit(*d)) return 7;
            return 8;
        default: return 8;
    }
}

void emit(const Expr& e, int min_prec, std::string& out);

void emit_child(const ExprPtr& child, int min_prec, std::string& out) { emit(*child, min_prec, out); }

void emit(const Expr& e, int min_prec, std::string& out) {
    int p = precedence(e);
    bool paren = p < min_prec;
    if (paren) out.push_back('(');
    switch (e.op) {
        case ExprOp::Literal:
            out += render(e.literal);
            break;
        case ExprOp::Field:
            out += e.name;
            break;
        case ExprOp::Arg:
            out += "arg.";
            out += e.name;
            break;
        case ExprOp::Eq:
        case ExprOp::Ne:
        case ExprOp::Lt:
        case ExprOp::Le:
        case ExprOp::Gt:
        case ExprOp::Ge:
            emit_child(e.operands[0], p + 1, out);
            out += ' ';
            out += op_symbol(e.op);
            out += ' ';
            emit_child(e.operands[1], p + 1, out);
            break;
        case ExprOp::And:
        case ExprOp::Or:
        case ExprOp::Add:
        case ExprOp::Sub:
        case ExprOp::Mul:
            emit_child(e.operands[0], p, out);
            out += ' ';
            out += op_symbol(e.op);
            out += ' ';
            emit_child(e.operands[1], p + 1, out);
            break;
        case ExprOp::Not:
            out += "not ";
            emit_child(e.operands[0], p, out);
            break;
        case ExprOp::Neg:
            out += '-';
            emit_child(e.operands[0], p, out);
            break;
        case ExprOp::In:
            emit_child(e.operands[0], p + 1, out);
            out += " in {";
            for (std::size_t i = 1; i < e.operands.size(); ++i) {
                if (i > 1) out += ", ";
                emit_child(e.operands[i], 0, out);
            }
            out += '}';
            break;
    }
    if (paren) out.push_back(')');
}

}  // namespace

std::string to_source(const Expr& expr) {
    std::string out;
    emit(expr, 0, out);
    return out;
}

}  // namespace portalis::core
