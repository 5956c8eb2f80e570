#pragma once

#include "pgp/service/session.hpp"

#include <memory>
#include <string>

namespace pgp::service {

/// HTTP transport for the session protocol: each client message is one
/// POST and its reply is the response body.
///
///   POST /session              -> {"sessionId": ...}
///   POST /session/<id>         body: client message, reply: server message
///   GET  /agents               -> ["id", ...]
///   GET  /agents/<id>          -> {"id", "nodes", "sexpr", "dot", "pseudo"}
///   GET  /traces/<id>          -> stored .trace.json
class HttpServer {
public:
    explicit HttpServer(SessionDirs dirs);
    ~HttpServer();

    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds without serving; port 0 picks a free port. Returns the port or
    /// -1 on failure.
    int bind(const std::string& host, int port);
    /// Serves until stop(); call after bind().
    bool run();
    void stop();

    SessionManager& sessions();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace pgp::service
