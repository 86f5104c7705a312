// Command-line front end: schema checking and formatting, one-shot queries
// against a loaded schema, and the HTTP gateway.

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "portalis/dsl/loader.hpp"
#include "portalis/dsl/parser.hpp"
#include "portalis/error.hpp"
#include "portalis/gateway/engine.hpp"
#include "portalis/gateway/http.hpp"

namespace {

using namespace portalis;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kDiagnostics = 1;
constexpr int kInternal = 2;

/// Raised after diagnostics have been printed.
struct Reported {};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << path << ": error: cannot read file\n";
        throw Reported{};
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void report(const std::vector<dsl::Diagnostic>& diagnostics, const std::string& path) {
    for (const auto& d : diagnostics) std::cerr << dsl::format(d, path) << "\n";
}

World load_world(const std::string& path) {
    World world;
    auto diagnostics = dsl::load_text(read_file(path), world);
    if (!diagnostics.empty()) {
        report(diagnostics, path);
        throw Reported{};
    }
    return world;
}

events::UpdatePolicy make_policy(const std::string& mode, std::uint64_t period) {
    auto parsed = events::policy_mode_from_string(mode);
    if (!parsed) throw Error(ErrorCode::InvalidDeclaration, "unknown policy '" + mode + "'");
    if (period == 0) throw Error(ErrorCode::InvalidDeclaration, "period must be at least 1");
    return {*parsed, period};
}

profile::Chain parse_chain(const std::string& text) {
    profile::Chain chain;
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, ',')) {
        if (part.empty()) continue;
        auto eq = part.find('=');
        if (eq == std::string::npos) throw Error(ErrorCode::UnknownDimensionValue, "expected dim=value, got '" + part + "'");
        chain.emplace_back(part.substr(0, eq), part.substr(eq + 1));
    }
    return chain;
}

/// `name=value`; the value is read as JSON when it parses, as text otherwise.
core::ValueMap parse_args(const std::vector<std::string>& args) {
    core::ValueMap out;
    for (const auto& a : args) {
        auto eq = a.find('=');
        if (eq == std::string::npos) throw Error(ErrorCode::KindMismatch, "expected name=value, got '" + a + "'");
        std::string raw = a.substr(eq + 1);
        json parsed = json::parse(raw, nullptr, false);
        out[a.substr(0, eq)] = parsed.is_discarded() ? core::Value(raw) : gateway::value_from_json(parsed);
    }
    return out;
}

std::string summary(const World& w) {
    std::ostringstream out;
    out << "concepts: " << w.store.concepts().size() << "\n"
        << "individuals: " << w.store.individuals().size() << "\n"
        << "classifiers: " << w.tower.predicates().size() << "\n"
        << "relations: " << w.frames.relations().size() << "\n"
        << "frames: " << w.frames.frame_count() << "\n"
        << "sources: " << w.warehouse.repositories().size() << "\n"
        << "personas: " << w.personas.size() << "\n"
        << "metrics: " << w.metrics.size() << "\n"
        << "pages: " << w.events.pages().size() << "\n"
        << "scripts: " << w.events.scripts().size() << "\n";
    return out.str();
}

gateway::HttpServer* active_server = nullptr;

void on_signal(int) {
    if (active_server) active_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"portalis: portal definition schemas and gateway"};
    app.require_subcommand(1);

    std::string file;
    std::string schema = "schemas/demo.pds";

    auto* load = app.add_subcommand("load", "Load a schema and print what it installs");
    load->add_option("file", file, "Schema file (.pds)")->required();

    auto* check = app.add_subcommand("check", "Check a schema; prints diagnostics only");
    check->add_option("file", file, "Schema file (.pds)")->required();

    auto* fmt = app.add_subcommand("fmt", "Print a schema in canonical form");
    fmt->add_option("file", file, "Schema file (.pds)")->required();

    std::string host = "127.0.0.1";
    int port = 8080;
    std::string policy = "event";
    std::uint64_t period = 1;
    auto* serve = app.add_subcommand("serve", "Run the HTTP gateway");
    serve->add_option("--schema", schema, "Schema file");
    serve->add_option("--host", host, "Bind address");
    serve->add_option("--port", port, "Port (0 picks a free one)");
    serve->add_option("--policy", policy, "Update policy")->check(CLI::IsMember({"event", "periodic", "manual"}));
    serve->add_option("--period", period, "Ticks between periodic refreshes");

    std::size_t level = 0;
    std::string predicate;
    auto* eval = app.add_subcommand("eval", "Comprehension at a tower level");
    eval->add_option("--schema", schema, "Schema file");
    eval->add_option("--level", level, "Tower level");
    eval->add_option("--predicate", predicate, "Predicate expression")->required();

    std::string name;
    std::string chain;
    auto* metric = app.add_subcommand("metric", "Apply a metric to an assignment chain");
    metric->add_option("name", name, "Metric name")->required();
    metric->add_option("--schema", schema, "Schema file");
    metric->add_option("--chain", chain, "Chain, e.g. s=higraph,p=registered");

    std::string persona;
    std::vector<std::string> args;
    auto* event = app.add_subcommand("event", "Submit one event in a fresh session");
    event->add_option("name", name, "Event name")->required();
    event->add_option("--schema", schema, "Schema file");
    event->add_option("--profile", persona, "Persona")->required();
    event->add_option("--arg", args, "Event argument name=value");

    auto* render = app.add_subcommand("render", "Render a page for a persona");
    render->add_option("page", name, "Page id")->required();
    render->add_option("--schema", schema, "Schema file");
    render->add_option("--profile", persona, "Persona")->required();

    std::uint64_t ticks = 1;
    auto* agent = app.add_subcommand("agent", "Run the update agent for a number of ticks");
    agent->add_option("--schema", schema, "Schema file");
    agent->add_option("--mode", policy, "Update policy")->check(CLI::IsMember({"event", "periodic", "manual"}));
    agent->add_option("--period", period, "Ticks between periodic refreshes");
    agent->add_option("--ticks", ticks, "Ticks to run");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*load) {
            std::cout << summary(load_world(file));
        } else if (*check) {
            load_world(file);
        } else if (*fmt) {
            auto parsed = dsl::parse(read_file(file));
            if (!parsed.ok()) {
                report(parsed.diagnostics, file);
                return kDiagnostics;
            }
            std::cout << dsl::print(*parsed.ast);
        } else if (*serve) {
            gateway::Engine engine(load_world(schema), make_policy(policy, period));
            gateway::HttpServer server(engine);
            int bound = server.bind(host, port);
            if (bound < 0) {
                std::cerr << "portalis: cannot bind " << host << ":" << port << "\n";
                return kInternal;
            }
            active_server = &server;
            std::signal(SIGINT, on_signal);
            std::signal(SIGTERM, on_signal);
            std::cout << "listening on http://" << host << ":" << bound << std::endl;
            server.listen();
            active_server = nullptr;
        } else if (*eval) {
            World w = load_world(schema);
            auto parsed = dsl::parse("meta cli_query at " + std::to_string(level) + " where " + predicate);
            if (!parsed.ok()) {
                report(parsed.diagnostics, "<predicate>");
                return kDiagnostics;
            }
            const auto& decl = std::get<dsl::MetaDecl>(parsed.ast->declarations.at(0));
            for (const auto& id : w.tower.comprehend_at_level(w.store, level, *decl.predicate.ptr)) {
                std::cout << id << "\n";
            }
        } else if (*metric) {
            World w = load_world(schema);
            auto it = w.metrics.find(name);
            if (it == w.metrics.end()) throw Error(ErrorCode::UnknownMetric, "no metric '" + name + "'");
            std::string symbols;
            for (const auto& s : profile::apply_assignment(it->second, w.dimensions, parse_chain(chain))) {
                symbols += (symbols.empty() ? "" : ", ") + s;
            }
            std::cout << "value: {" << symbols << "}\n"
                      << "saturation: " << profile::saturation_level(it->second, w.dimensions) << "\n";
        } else if (*event) {
            gateway::Engine engine(load_world(schema));
            std::string token = engine.open_session(persona);
            json effects = json::array();
            for (const auto& e : engine.submit_event(token, name, parse_args(args))) {
                effects.push_back(gateway::to_json(e));
            }
            std::cout << json{{"effects", effects}}.dump(2) << "\n";
        } else if (*render) {
            gateway::Engine engine(load_world(schema));
            std::string token = engine.open_session(persona);
            std::cout << gateway::to_json(engine.get_page(token, name)).dump(2) << "\n";
        } else if (*agent) {
            gateway::Engine engine(load_world(schema), make_policy(policy, period));
            for (std::uint64_t t = 1; t <= ticks; ++t) {
                std::cout << json{{"tick", t}, {"refreshed", engine.run_agent(t)}}.dump() << "\n";
            }
        }
    } catch (const Reported&) {
        return kDiagnostics;
    } catch (const Error& e) {
        std::cerr << "portalis: error: " << e.what() << "\n";
        return kDiagnostics;
    } catch (const std::exception& e) {
        std::cerr << "portalis: internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kOk;
}
