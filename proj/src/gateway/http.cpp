#include "portalis/gateway/http.hpp"

#include "httplib.h"
#include "portalis/error.hpp"

namespace portalis::gateway {

using nlohmann::json;

json to_json(const core::Value& value) {
    struct Visitor {
        json operator()(std::int64_t v) const { return v; }
        json operator()(double v) const { return v; }
        json operator()(const std::string& v) const { return v; }
        json operator()(bool v) const { return v; }
        json operator()(const core::MediaRef& v) const { return json{{"media", v.uri}}; }
        json operator()(const core::ObjectRef& v) const { return json{{"ref", v.id}}; }
    };
    return std::visit(Visitor{}, value);
}

json to_json(const warehouse::Content& content) {
    if (std::holds_alternative<warehouse::Unavailable>(content)) return json{{"unavailable", true}};
    if (const auto* v = std::get_if<core::Value>(&content)) return to_json(*v);
    return std::get<std::vector<std::string>>(content);
}

json to_json(const RenderedPage& page) {
    json items = json::array();
    for (const auto& item : page.items) {
        items.push_back({{"label", item.label}, {"value", to_json(item.value)}, {"source", item.source},
                         {"asOf", item.as_of}});
    }
    json objects = json::object();
    for (const auto& object : page.objects) {
        json fields = json::object();
        for (const auto& [name, value] : object.fields) fields[name] = to_json(value);
        objects[object.name] = std::move(fields);
    }
    return {{"page", page.page}, {"stale", page.stale}, {"items", std::move(items)}, {"objects", std::move(objects)}};
}

json to_json(const events::Effect& effect) {
    json out{{"kind", events::to_string(effect.kind)}};
    if (!effect.script.empty()) out["script"] = effect.script;
    if (!effect.target.empty()) out["target"] = effect.target;
    if (!effect.object.empty()) out["object"] = effect.object;
    if (!effect.field.empty()) out["field"] = effect.field;
    if (effect.value) out["value"] = to_json(*effect.value);
    if (!effect.message.empty()) out["message"] = effect.message;
    return out;
}

json to_json(const meta::MetadataRecord& record) {
    return {{"subject", record.subject},
            {"dimensions", record.dimensions},
            {"integrityConstraints", record.integrity_constraints},
            {"accessRights", profile::to_string(record.access_rights)},
            {"extras", record.extras}};
}

core::Value value_from_json(const json& j) {
    if (j.is_boolean()) return j.get<bool>();
    if (j.is_number_integer()) return j.get<std::int64_t>();
    if (j.is_number_float()) return j.get<double>();
    if (j.is_string()) return j.get<std::string>();
    if (j.is_object() && j.size() == 1) {
        if (j.contains("media") && j["media"].is_string()) return core::MediaRef{j["media"].get<std::string>()};
        if (j.contains("ref") && j["ref"].is_string()) return core::ObjectRef{j["ref"].get<std::string>()};
    }
    throw Error(ErrorCode::KindMismatch, "unsupported JSON value " + j.dump());
}

warehouse::Change change_from_json(const json& j) {
    if (!j.is_object() || !j.contains("id") || !j["id"].is_string()) {
        throw Error(ErrorCode::MalformedChange, "change needs a string 'id'");
    }
    warehouse::Change change;
    change.id = j["id"].get<std::string>();
    std::string op = j.value("op", "upsert");
    if (op == "upsert") {
        change.op = warehouse::Change::Op::Upsert;
    } else if (op == "remove") {
        change.op = warehouse::Change::Op::Remove;
    } else {
        throw Error(ErrorCode::MalformedChange, "unknown change op '" + op + "'");
    }
    if (j.contains("fields")) {
        if (!j["fields"].is_object()) throw Error(ErrorCode::MalformedChange, "'fields' must be an object");
        for (const auto& [name, value] : j["fields"].items()) change.fields[name] = value_from_json(value);
    }
    return change;
}

int status_for(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::UnknownToken:
        case ErrorCode::SessionClosed: return 401;
        case ErrorCode::Forbidden: return 403;
        case ErrorCode::UnknownPage:
        case ErrorCode::UnknownObject:
        case ErrorCode::UnknownProfile:
        case ErrorCode::UnknownRepository:
        case ErrorCode::UnknownItem:
        case ErrorCode::UnknownSource:
        case ErrorCode::UnknownIndividual: return 404;
        case ErrorCode::AlreadyClosed: return 409;
        case ErrorCode::Diagnostics: return 422;
        default: return 400;
    }
}

struct HttpServer::Impl {
    explicit Impl(Engine& e) : engine(e) {}
    Engine& engine;
    httplib::Server server;
};

namespace {

void reply(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

/// Runs a handler, mapping failures onto status codes with a JSON body.
template <typename F>
void guarded(httplib::Response& res, F&& fn) {
    try {
        reply(res, 200, fn());
    } catch (const Error& e) {
        reply(res, status_for(e.code()), {{"error", to_string(e.code())}, {"message", e.what()}});
    } catch (const json::exception& e) {
        reply(res, 400, {{"error", "BadRequest"}, {"message", e.what()}});
    } catch (const std::exception& e) {
        reply(res, 500, {{"error", "Internal"}, {"message", e.what()}});
    }
}

std::string token_of(const httplib::Request& req) {
    if (!req.has_param("token")) throw Error(ErrorCode::UnknownToken, "missing session token");
    return req.get_param_value("token");
}

json body_of(const httplib::Request& req) {
    json body = json::parse(req.body.empty() ? "{}" : req.body);
    if (!body.is_object()) throw Error(ErrorCode::MalformedChange, "request body must be a JSON object");
    return body;
}

}  // namespace

HttpServer::HttpServer(Engine& engine) : impl_(std::make_unique<Impl>(engine)) {
    Engine& eng = impl_->engine;
    auto& srv = impl_->server;
    // Small JSON replies; without this each one waits on delayed ACKs.
    srv.set_tcp_nodelay(true);

    srv.Post("/session", [&eng](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            json body = body_of(req);
            return json{{"token", eng.open_session(body.at("profile").get<std::string>())}};
        });
    });
    srv.Delete(R"(/session/([0-9A-Za-z]+))", [&eng](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            eng.close_session(req.matches[1].str());
            return json{{"closed", true}};
        });
    });
    srv.Get("/pages", [&eng](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] { return json{{"pages", eng.list_pages(token_of(req))}}; });
    });
    srv.Get(R"(/page/([A-Za-z0-9_]+))", [&eng](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] { return to_json(eng.get_page(token_of(req), req.matches[1].str())); });
    });
    srv.Post("/event", [&eng](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            json body = body_of(req);
            core::ValueMap args;
            if (body.contains("args")) {
                for (const auto& [name, value] : body["args"].items()) args[name] = value_from_json(value);
            }
            std::optional<std::string> key;
            if (body.contains("idempotencyKey") && !body["idempotencyKey"].is_null()) {
                key = body["idempotencyKey"].get<std::string>();
            }
            json effects = json::array();
            for (const auto& e : eng.submit_event(body.at("token").get<std::string>(),
                                                  body.at("name").get<std::string>(), std::move(args), key)) {
                effects.push_back(to_json(e));
            }
            return json{{"effects", std::move(effects)}};
        });
    });
    srv.Get(R"(/meta/([A-Za-z0-9_]+))", [&eng](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] { return to_json(eng.get_metadata(token_of(req), req.matches[1].str())); });
    });
    srv.Post(R"(/warehouse/([A-Za-z0-9_]+)/update)", [&eng](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            json body = body_of(req);
            eng.update(req.matches[1].str(), change_from_json(body.at("change")), body.value("contentCritical", false));
            return json{{"accepted", true}};
        });
    });
    srv.Post("/agent/run", [&eng](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            json body = body_of(req);
            std::vector<std::string> refreshed = eng.run_agent(body.value("tick", std::uint64_t{0}));
            // Manual policy: the driver names the page to refresh.
            if (body.contains("refresh")) {
                std::string page = body["refresh"].get<std::string>();
                eng.manual_refresh(page);
                refreshed.push_back(page);
            }
            return json{{"refreshed", refreshed}};
        });
    });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
    if (port == 0) return impl_->server.bind_to_any_port(host);
    return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
    if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

}  // namespace portalis::gateway
