#include "portalis/dsl/loader.hpp"

#include <map>
#include <set>

#include "portalis/error.hpp"

namespace portalis::dsl {

namespace {

template <typename... Fs>
struct Overload : Fs... {
    using Fs::operator()...;
};

class Loader {
public:
    explicit Loader(World& world) : w_(world) {}

    std::vector<Diagnostic> run(const SchemaAst& ast) {
        auto each = [&](auto&& fn) {
            for (const auto& decl : ast.declarations) std::visit(fn, decl);
        };
        each(Overload{[&](const DimensionDecl& d) { dimension(d); }, [](const auto&) {}});
        concepts(ast);
        each(Overload{[&](const SourceDecl& d) { source(d); }, [](const auto&) {}});
        each(Overload{[&](const IndividualDecl& d) { individual(d); }, [](const auto&) {}});
        if (errors_.empty()) guard(SourcePos{1, 1}, "", [&] { w_.store.validate_references(); });
        for (const auto& [id, _] : w_.store.individuals()) w_.frames.declare_constant(id);
        each(Overload{[&](const RelationDecl& d) { relation(d); }, [](const auto&) {}});
        each(Overload{[&](const FrameDecl& d) { frame(d); }, [](const auto&) {}});
        each(Overload{[&](const MetaDecl& d) { meta(d); }, [](const auto&) {}});
        each(Overload{[&](const RightsDecl& d) { rights(d); }, [&](const ConstraintDecl& d) { constraint(d); },
                      [](const auto&) {}});
        each(Overload{[&](const MetricDecl& d) { metric(d); }, [](const auto&) {}});
        each(Overload{[&](const ProfileDecl& d) { persona(d); }, [](const auto&) {}});
        each(Overload{[&](const EventDecl& d) { w_.events.declare_event(d.name); }, [](const auto&) {}});
        each(Overload{[&](const PageDecl& d) { page(d); }, [](const auto&) {}});
        each(Overload{[&](const ScriptDecl& d) { script(d); }, [](const auto&) {}});
        if (errors_.empty()) {
            guard(SourcePos{1, 1}, "", [&] {
                w_.tower.refresh(w_.store);
                w_.events.refresh_all(w_.view());
            });
        }
        return std::move(errors_);
    }

private:
    void error(SourcePos pos, std::string message, std::string lexeme) {
        errors_.push_back({Diagnostic::Severity::Error, std::move(message), pos.line, pos.column, std::move(lexeme)});
    }

    /// Runs `fn`, turning a thrown Error into a diagnostic at `pos`.
    template <typename F>
    bool guard(SourcePos pos, const std::string& lexeme, F&& fn) {
        try {
            fn();
            return true;
        } catch (const Error& e) {
            error(pos, e.what(), lexeme);
            return false;
        }
    }

    std::optional<profile::Rank> rank(const std::string& name, SourcePos pos) {
        auto r = profile::rank_from_string(name);
        if (!r) error(pos, "unknown rank '" + name + "'", name);
        return r;
    }

    /// Converts a parsed literal to the kind a field expects.
    std::optional<core::Value> convert(const Setting& s, const core::FieldType* type) {
        if (std::holds_alternative<core::ObjectRef>(s.value)) {
            if (type && type->kind == core::Kind::Reference) return s.value;
            error(s.pos, "KindMismatch: field '" + s.name + "' does not take an individual reference", s.name);
            return std::nullopt;
        }
        if (!type || core::kind_of(s.value) == type->kind) return s.value;
        if (auto converted = warehouse::coerce(s.value, type->kind)) return converted;
        error(s.pos,
              "KindMismatch: field '" + s.name + "' expects " + std::string(core::to_string(type->kind)) + ", got " +
                  std::string(core::to_string(core::kind_of(s.value))),
              s.name);
        return std::nullopt;
    }

    void dimension(const DimensionDecl& d) {
        if (!declared_dims_.insert(d.name).second) {
            error(d.pos, "dimension '" + d.name + "' declared twice", d.name);
            return;
        }
        guard(d.pos, d.name, [&] { w_.dimensions.declare({d.name, d.values}); });
    }

    void concepts(const SchemaAst& ast) {
        std::set<std::string, std::less<>> known;
        for (const auto& [name, _] : w_.store.concepts()) known.insert(name);
        std::vector<std::pair<core::Concept, SourcePos>> defs;
        for (const auto& decl : ast.declarations) {
            const auto* d = std::get_if<ConceptDecl>(&decl);
            if (!d) continue;
            if (!known.insert(d->name).second) {
                error(d->pos, "concept '" + d->name + "' declared twice", d->name);
                continue;
            }
            core::Concept def{d->name, {}};
            bool ok = true;
            for (const auto& f : d->fields) {
                auto kind = core::kind_from_string(f.kind);
                if (!kind) {
                    error(f.pos, "unknown kind '" + f.kind + "'", f.kind);
                    ok = false;
                    continue;
                }
                def.fields.push_back({f.name, {*kind, f.target}});
            }
            if (ok) defs.emplace_back(std::move(def), d->pos);
        }
        std::vector<core::Concept> valid;
        for (auto& [def, pos] : defs) {
            if (guard(pos, def.name, [&] { core::validate_concept(def, known); })) valid.push_back(std::move(def));
        }
        if (errors_.empty()) w_.store.add_concepts(std::move(valid));
    }

    void source(const SourceDecl& d) {
        auto kind = warehouse::repo_kind_from_string(d.kind);
        if (!kind) {
            error(d.pos, "unknown repository kind '" + d.kind + "'", d.kind);
            return;
        }
        profile::Rank required = profile::Rank::Ordinary;
        if (d.requires_rank) {
            auto r = rank(*d.requires_rank, d.pos);
            if (!r) return;
            required = *r;
        }
        if (w_.warehouse.repositories().contains(d.name)) {
            error(d.pos, "source '" + d.name + "' declared twice", d.name);
            return;
        }
        w_.warehouse.add_repository(d.name, *kind, required);
        std::map<std::string, const warehouse::NativeField*> shape;
        for (const auto& f : warehouse::native_shape(*kind)) shape[f.name] = &f;
        for (const auto& r : d.records) {
            core::ValueMap fields;
            bool ok = true;
            for (const auto& s : r.fields) {
                auto it = shape.find(s.name);
                std::optional<core::FieldType> type;
                if (it != shape.end()) type = core::FieldType{it->second->kind, {}};
                auto v = convert(s, type ? &*type : nullptr);
                if (!v) {
                    ok = false;
                    continue;
                }
                fields[s.name] = std::move(*v);
            }
            if (ok) guard(r.pos, r.id, [&] { w_.warehouse.seed(d.name, r.id, std::move(fields)); });
        }
    }

    void individual(const IndividualDecl& d) {
        const core::Concept* def = w_.store.find_concept(d.concept_name);
        if (!def) {
            error(d.pos, "UnknownConcept: individual '" + d.name + "' has undeclared concept '" + d.concept_name + "'",
                  d.concept_name);
            return;
        }
        core::ValueMap values;
        bool ok = true;
        for (const auto& s : d.values) {
            const core::FieldDecl* field = def->find(s.name);
            if (!field) {
                error(s.pos, "UnknownField: concept '" + def->name + "' has no field '" + s.name + "'", s.name);
                ok = false;
                continue;
            }
            if (values.contains(s.name)) {
                error(s.pos, "field '" + s.name + "' assigned twice", s.name);
                ok = false;
                continue;
            }
            auto v = convert(s, &field->type);
            if (!v) {
                ok = false;
                continue;
            }
            values[s.name] = std::move(*v);
        }
        if (ok) guard(d.pos, d.name, [&] { w_.store.create(d.name, def->name, std::move(values)); });
    }

    void relation(const RelationDecl& d) {
        if (w_.frames.relations().contains(d.name)) {
            error(d.pos, "relation '" + d.name + "' declared twice", d.name);
            return;
        }
        w_.frames.declare_relation(d.name);
    }

    bool frame_symbols(const FrameDecl& f) {
        bool ok = true;
        if (!w_.frames.relations().contains(f.relation)) {
            error(f.pos, "UndeclaredSymbol: relation '" + f.relation + "' is not declared", f.relation);
            ok = false;
        }
        for (const auto* c : {&f.subject, &f.object}) {
            if (!w_.frames.constants().contains(*c)) {
                error(f.pos, "UndeclaredSymbol: '" + *c + "' is not an individual", *c);
                ok = false;
            }
        }
        return ok;
    }

    void frame(const FrameDecl& f) {
        if (!frame_symbols(f)) return;
        guard(f.pos, f.relation, [&] { w_.frames.assert_frame({f.relation, f.subject, f.object}); });
    }

    void meta(const MetaDecl& d) {
        guard(d.pos, d.name, [&] { w_.tower.lift(w_.store, d.level, d.predicate.ptr, d.name); });
    }

    bool known_subject(const std::string& subject, SourcePos pos) {
        if (w_.store.find(subject) || w_.tower.predicates().contains(subject)) return true;
        error(pos, "UnknownObject: no individual or classifier '" + subject + "'", subject);
        return false;
    }

    void rights(const RightsDecl& d) {
        auto r = rank(d.rank, d.pos);
        if (!r || !known_subject(d.subject, d.pos)) return;
        guard(d.pos, d.subject, [&] {
            meta::MetadataRecord record = w_.tower.describe(w_.store, d.subject);
            record.access_rights = *r;
            w_.tower.annotate(w_.store, std::move(record));
        });
    }

    void constraint(const ConstraintDecl& d) {
        if (!known_subject(d.subject, d.pos)) return;
        guard(d.pos, d.predicate, [&] {
            meta::MetadataRecord record = w_.tower.describe(w_.store, d.subject);
            record.integrity_constraints.push_back(d.predicate);
            w_.tower.annotate(w_.store, std::move(record));
        });
    }

    void metric(const MetricDecl& d) {
        if (w_.metrics.contains(d.name)) {
            error(d.pos, "metric '" + d.name + "' declared twice", d.name);
            return;
        }
        profile::MetricDenotation m{d.name, d.order, {}, std::nullopt};
        if (d.saturation) m.declared_saturation = static_cast<std::size_t>(*d.saturation);
        bool ok = true;
        for (const auto& row : d.rows) {
            profile::Chain chain;
            for (const auto& p : row.chain) chain.emplace_back(p.name, p.value);
            profile::SymbolSet symbols(row.symbols.begin(), row.symbols.end());
            if (!m.table.emplace(chain, std::move(symbols)).second) {
                error(row.pos, "chain " + profile::to_string(chain) + " listed twice", d.name);
                ok = false;
            }
        }
        if (!ok) return;
        if (guard(d.pos, d.name, [&] { profile::validate_metric(m, w_.dimensions); })) {
            w_.metrics.emplace(d.name, std::move(m));
        }
    }

    void persona(const ProfileDecl& d) {
        if (w_.personas.contains(d.name)) {
            error(d.pos, "profile '" + d.name + "' declared twice", d.name);
            return;
        }
        profile::UserProfile p{d.name, profile::Rank::Ordinary, {}};
        for (const auto& s : d.settings) {
            if (s.name == "rank") {
                auto r = rank(s.value, s.pos);
                if (!r) return;
                p.rank = *r;
            } else if (!p.dimensions.emplace(s.name, s.value).second) {
                error(s.pos, "dimension '" + s.name + "' set twice", s.name);
                return;
            }
        }
        if (guard(d.pos, d.name, [&] { profile::validate_profile(p, w_.dimensions); })) {
            w_.personas.emplace(d.name, std::move(p));
        }
    }

    static frames::Term term(const PatternTerm& t) {
        if (t.variable) return frames::Variable{t.name};
        return t.name;
    }

    std::optional<core::ValueMap> object_fields(const PageObjectDecl& o) {
        core::ValueMap fields;
        bool ok = true;
        for (const auto& s : o.fields) {
            auto v = convert(s, nullptr);
            if (!v) {
                ok = false;
                continue;
            }
            fields[s.name] = std::move(*v);
        }
        if (!ok) return std::nullopt;
        return fields;
    }

    void page(const PageDecl& d) {
        events::PageDefinition def;
        def.id = d.name;
        auto r = rank(d.rank, d.pos);
        if (!r) return;
        def.required = *r;
        bool ok = true;
        for (const auto& c : d.conditions) {
            const auto* dim = w_.dimensions.find(c.name);
            if (!dim || !dim->admits(c.value)) {
                error(c.pos, "UnknownDimensionValue: " + c.name + " = " + c.value, c.value);
                ok = false;
                continue;
            }
            def.conditions.emplace_back(c.name, c.value);
        }
        for (const auto& item : d.items) {
            if (const auto* key = std::get_if<KeyItemDecl>(&item.spec)) {
                if (!warehouse::catalog_kind(key->key)) {
                    error(item.pos, "UnknownItem: no portal catalog key '" + key->key + "'", key->key);
                    ok = false;
                    continue;
                }
                def.items.push_back(events::KeyItem{key->key});
            } else if (const auto* q = std::get_if<QueryItemDecl>(&item.spec)) {
                if (q->relation.variable) {
                    error(item.pos, "MalformedPattern: relation position cannot be a variable", "?" + q->relation.name);
                    ok = false;
                    continue;
                }
                if (!w_.frames.relations().contains(q->relation.name)) {
                    error(item.pos, "UndeclaredSymbol: relation '" + q->relation.name + "' is not declared",
                          q->relation.name);
                    ok = false;
                    continue;
                }
                bool constants_ok = true;
                for (const auto* t : {&q->subject, &q->object}) {
                    if (!t->variable && !w_.frames.constants().contains(t->name)) {
                        error(item.pos, "UndeclaredSymbol: '" + t->name + "' is not an individual", t->name);
                        constants_ok = false;
                    }
                }
                if (!constants_ok) {
                    ok = false;
                    continue;
                }
                def.items.push_back(events::QueryItem{{term(q->relation), term(q->subject), term(q->object)}});
            } else {
                const auto& s = std::get<SelectItemDecl>(item.spec);
                const core::Concept* c = w_.store.find_concept(s.concept_name);
                if (!c) {
                    error(item.pos, "UnknownConcept: no concept '" + s.concept_name + "'", s.concept_name);
                    ok = false;
                    continue;
                }
                core::ExprPtr where = s.where ? s.where->ptr : nullptr;
                if (where && !guard(item.pos, s.concept_name,
                                    [&] { core::validate_predicate(*where, core::concept_shape(*c)); })) {
                    ok = false;
                    continue;
                }
                def.items.push_back(events::SelectItem{s.count, s.concept_name, where});
            }
        }
        std::set<std::string> object_names;
        for (const auto& o : d.objects) {
            if (!object_names.insert(o.name).second) {
                error(o.pos, "object '" + o.name + "' declared twice", o.name);
                ok = false;
                continue;
            }
            auto fields = object_fields(o);
            if (!fields) {
                ok = false;
                continue;
            }
            def.objects.push_back({o.name, std::move(*fields)});
        }
        if (!ok) return;
        profile::PagePolicy policy = def.policy();
        if (auto violation = profile::check_hierarchy_monotonicity(w_.dimensions, std::span(&policy, 1))) {
            error(d.pos, "hierarchy monotonicity violated: " + *violation, d.name);
            return;
        }
        guard(d.pos, d.name, [&] { w_.events.add_page(std::move(def)); });
    }

    /// Checks `value` against the declared field kind, allowing integer
    /// into real and dynamically typed arguments.
    bool assignable(const core::Expr& value, const core::Shape& shape, core::Kind target, SourcePos pos,
                    const std::string& field) {
        core::StaticKind kind;
        if (!guard(pos, field, [&] { kind = core::infer(value, shape); })) return false;
        if (!kind || *kind == target) return true;
        if (*kind == core::Kind::Integer && target == core::Kind::Real) return true;
        if (*kind == core::Kind::Text && target == core::Kind::Media) return true;
        error(pos,
              "KindMismatch: '" + field + "' expects " + std::string(core::to_string(target)) + ", got " +
                  std::string(core::to_string(*kind)),
              field);
        return false;
    }

    void script(const ScriptDecl& d) {
        if (!script_names_.insert(d.name).second) {
            error(d.pos, "script '" + d.name + "' declared twice", d.name);
            return;
        }
        events::Script s{d.name, d.trigger, d.hook, {}, {}};
        bool ok = true;
        if (d.hook && !w_.warehouse.repositories().contains(d.trigger)) {
            error(d.pos, "UnknownSource: hook '" + d.name + "' watches undeclared source '" + d.trigger + "'", d.trigger);
            ok = false;
        }
        for (const auto& f : d.scenario) {
            if (frame_symbols(f)) {
                s.scenario.push_back({f.relation, f.subject, f.object});
            } else {
                ok = false;
            }
        }
        core::Shape args_only{{}, true};
        for (const auto& stmt : d.body) {
            if (const auto* set = std::get_if<SetStmt>(&stmt)) {
                if (d.hook) {
                    error(set->pos, "hook '" + d.name + "' cannot set page objects; hooks run without a session",
                          "set");
                    ok = false;
                    continue;
                }
                const auto* p = w_.events.find_page(set->page);
                const auto* obj = p ? p->object(set->object) : nullptr;
                if (!obj) {
                    error(set->pos, "no page object '" + set->page + "." + set->object + "'", set->object);
                    ok = false;
                    continue;
                }
                auto field = obj->fields.find(set->field);
                if (field == obj->fields.end()) {
                    error(set->pos, "page object '" + set->object + "' has no field '" + set->field + "'", set->field);
                    ok = false;
                    continue;
                }
                if (!assignable(*set->value.ptr, args_only, core::kind_of(field->second), set->pos, set->field)) {
                    ok = false;
                    continue;
                }
                s.actions.push_back(events::SetAction{set->page, set->object, set->field, set->value.ptr});
            } else if (const auto* refresh = std::get_if<RefreshStmt>(&stmt)) {
                if (!w_.events.find_page(refresh->page)) {
                    error(refresh->pos, "UnknownPage: no page '" + refresh->page + "'", refresh->page);
                    ok = false;
                    continue;
                }
                s.actions.push_back(events::RefreshAction{refresh->page});
            } else {
                const auto& tr = std::get<TransitionStmt>(stmt);
                if (!d.hook) {
                    error(tr.pos,
                          "client script '" + d.name +
                              "' cannot transition warehouse state; use 'on update SOURCE' for warehouse hooks",
                          "transition");
                    ok = false;
                    continue;
                }
                const core::Individual* ind = w_.store.find(tr.individual);
                if (!ind) {
                    error(tr.pos, "UnknownIndividual: no individual '" + tr.individual + "'", tr.individual);
                    ok = false;
                    continue;
                }
                const core::Concept& c = w_.store.concept_of(ind->concept_name);
                core::Shape shape = core::concept_shape(c);
                shape.allow_args = true;
                events::TransitionAction action{tr.individual, {}};
                for (const auto& a : tr.assignments) {
                    const core::FieldDecl* field = c.find(a.field);
                    if (!field) {
                        error(a.pos, "UnknownField: concept '" + c.name + "' has no field '" + a.field + "'", a.field);
                        ok = false;
                        continue;
                    }
                    if (!assignable(*a.value.ptr, shape, field->type.kind, a.pos, a.field)) {
                        ok = false;
                        continue;
                    }
                    action.assignments.emplace_back(a.field, a.value.ptr);
                }
                s.actions.push_back(std::move(action));
            }
        }
        if (!ok) return;
        if (!d.hook) w_.events.declare_event(d.trigger);
        w_.events.add_script(std::move(s));
    }

    World& w_;
    std::vector<Diagnostic> errors_;
    std::set<std::string> declared_dims_;
    std::set<std::string> script_names_;
};

}  // namespace

std::vector<Diagnostic> load(const SchemaAst& ast, World& world) {
    World next = world;
    std::vector<Diagnostic> diagnostics;
    try {
        diagnostics = Loader(next).run(ast);
    } catch (const Error& e) {
        diagnostics.push_back({Diagnostic::Severity::Error, e.what(), 1, 1, ""});
    }
    if (diagnostics.empty()) world = std::move(next);
    return diagnostics;
}

std::vector<Diagnostic> load_text(std::string_view text, World& world) {
    ParseResult parsed = parse(text);
    if (!parsed.ok()) return parsed.diagnostics;
    return load(*parsed.ast, world);
}

}  // namespace portalis::dsl
