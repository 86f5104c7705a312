#include "portalis/dsl/parser.hpp"

namespace portalis::dsl {

namespace {

std::string literal(const core::Value& v) {
    if (const auto* ref = std::get_if<core::ObjectRef>(&v)) return ref->id;
    return core::render(v);
}

std::string expr(const Expression& e) { return core::to_source(*e.ptr); }

std::string settings(const std::vector<Setting>& fields) {
    if (fields.empty()) return "{}";
    std::string out = "{ ";
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ", ";
        out += fields[i].name + " = " + literal(fields[i].value);
    }
    return out + " }";
}

std::string symbolic(const Symbolic& s) { return s.name + " = " + s.value; }

std::string frame(const FrameDecl& f) { return f.relation + "(" + f.subject + ", " + f.object + ")"; }

std::string term(const PatternTerm& t) { return t.variable ? "?" + t.name : t.name; }

template <typename T, typename F>
std::string joined(const std::vector<T>& xs, F&& show, std::string_view sep = ", ") {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += sep;
        out += show(xs[i]);
    }
    return out;
}

/// Multi-line `{ ... }` body, one entry per line with trailing commas.
std::string block(const std::vector<std::string>& lines) {
    if (lines.empty()) return "{\n}";
    std::string out = "{\n";
    for (const auto& l : lines) out += "  " + l + ",\n";
    return out + "}";
}

struct Printer {
    std::string operator()(const ConceptDecl& d) const {
        return "concept " + d.name + " (" + joined(d.fields, [](const FieldSpec& f) {
                   return f.name + ": " + f.kind + (f.kind == "ref" ? " " + f.target : "");
               }) + ")";
    }
    std::string operator()(const IndividualDecl& d) const {
        return "individual " + d.name + " : " + d.concept_name + " " + settings(d.values);
    }
    std::string operator()(const RelationDecl& d) const { return "relation " + d.name; }
    std::string operator()(const FrameDecl& d) const { return "frame " + frame(d); }
    std::string operator()(const DimensionDecl& d) const {
        return "dimension " + d.name + " { " + joined(d.values, [](const std::string& s) { return s; }) + " }";
    }
    std::string operator()(const ProfileDecl& d) const {
        if (d.settings.empty()) return "profile " + d.name + " {}";
        return "profile " + d.name + " { " + joined(d.settings, symbolic) + " }";
    }
    std::string operator()(const MetricDecl& d) const {
        std::string out = "metric " + d.name + " order (" + joined(d.order, [](const std::string& s) { return s; }) + ")";
        if (d.saturation) out += " saturation " + std::to_string(*d.saturation);
        std::vector<std::string> rows;
        for (const auto& row : d.rows) {
            rows.push_back("[" + joined(row.chain, symbolic) + "] -> { " +
                           joined(row.symbols, [](const std::string& s) { return s; }) + " }");
        }
        return out + " " + block(rows);
    }
    std::string operator()(const EventDecl& d) const { return "event " + d.name; }
    std::string operator()(const ScriptDecl& d) const {
        std::string out = "script " + d.name + " on " + (d.hook ? "update " : "") + d.trigger;
        if (!d.scenario.empty()) out += " scenario { " + joined(d.scenario, frame) + " }";
        std::vector<std::string> lines;
        for (const auto& stmt : d.body) {
            if (const auto* set = std::get_if<SetStmt>(&stmt)) {
                lines.push_back("set " + set->page + "." + set->object + "." + set->field + " = " + expr(set->value));
            } else if (const auto* refresh = std::get_if<RefreshStmt>(&stmt)) {
                lines.push_back("refresh " + refresh->page);
            } else {
                const auto& tr = std::get<TransitionStmt>(stmt);
                std::string body = tr.assignments.empty()
                                       ? "{}"
                                       : "{ " + joined(tr.assignments, [](const Assign& a) {
                                             return a.field + " = " + expr(a.value);
                                         }) + " }";
                lines.push_back("transition " + tr.individual + " " + body);
            }
        }
        return out + " " + block(lines);
    }
    std::string operator()(const SourceDecl& d) const {
        std::string out = "source " + d.name + " kind " + d.kind;
        if (d.requires_rank) out += " requires " + *d.requires_rank;
        std::vector<std::string> lines;
        for (const auto& r : d.records) lines.push_back("record " + r.id + " " + settings(r.fields));
        return out + " " + block(lines);
    }
    std::string operator()(const PageDecl& d) const {
        std::string out = "page " + d.name + " requires " + d.rank;
        if (!d.conditions.empty()) out += " when " + joined(d.conditions, symbolic, " and ");
        std::vector<std::string> lines;
        for (const auto& item : d.items) {
            if (const auto* key = std::get_if<KeyItemDecl>(&item.spec)) {
                lines.push_back("item key " + key->key);
            } else if (const auto* q = std::get_if<QueryItemDecl>(&item.spec)) {
                lines.push_back("item query " + term(q->relation) + "(" + term(q->subject) + ", " + term(q->object) + ")");
            } else {
                const auto& s = std::get<SelectItemDecl>(item.spec);
                std::string line = std::string("item ") + (s.count ? "count " : "select ") + s.concept_name;
                if (s.where) line += " where " + expr(*s.where);
                lines.push_back(line);
            }
        }
        for (const auto& o : d.objects) lines.push_back("object " + o.name + " " + settings(o.fields));
        return out + " " + block(lines);
    }
    std::string operator()(const MetaDecl& d) const {
        return "meta " + d.name + " at " + std::to_string(d.level) + " where " + expr(d.predicate);
    }
    std::string operator()(const RightsDecl& d) const { return "rights " + d.subject + " " + d.rank; }
    std::string operator()(const ConstraintDecl& d) const { return "constraint " + d.subject + " " + d.predicate; }
};

}  // namespace

std::string print(const SchemaAst& ast) {
    std::string out;
    for (const auto& decl : ast.declarations) {
        if (!out.empty()) out += "\n";
        out += std::visit(Printer{}, decl);
        out += "\n";
    }
    return out;
}

}  // namespace portalis::dsl
