#pragma once

#include <memory>
#include <string>

#include "json.hpp"

#include "portalis/error.hpp"
#include "portalis/gateway/engine.hpp"

namespace portalis::gateway {

nlohmann::json to_json(const core::Value& value);
nlohmann::json to_json(const warehouse::Content& content);
nlohmann::json to_json(const RenderedPage& page);
nlohmann::json to_json(const events::Effect& effect);
nlohmann::json to_json(const meta::MetadataRecord& record);

/// Numbers, strings and booleans map to their kinds; {"media": uri} and
/// {"ref": id} to media and references. KindMismatch otherwise.
core::Value value_from_json(const nlohmann::json& json);
warehouse::Change change_from_json(const nlohmann::json& json);

/// HTTP status for an engine error code.
int status_for(ErrorCode code) noexcept;

/// JSON-over-HTTP front end for an Engine.
class HttpServer {
public:
    explicit HttpServer(Engine& engine);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds `host:port` (port 0 picks a free one) and returns the bound port, or -1.
    int bind(const std::string& host, int port);
    /// Serves until stop(); call after bind().
    bool listen();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace portalis::gateway
