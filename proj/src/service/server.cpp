#include "pgp/service/server.hpp"

#include "pgp/dsl/export.hpp"
#include "pgp/dsl/sexpr.hpp"
#include "pgp/errors.hpp"

#include <httplib.h>
#include <spdlog/spdlog.h>

#include <fstream>
#include <sstream>

namespace pgp::service {

using nlohmann::json;
namespace fs = std::filesystem;

struct HttpServer::Impl {
    explicit Impl(SessionDirs dirs) : sessions(std::move(dirs)) {}

    SessionManager sessions;
    httplib::Server http;
};

namespace {

void reply_json(httplib::Response& res, const json& body, int status = 200)
{
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

} // namespace

HttpServer::HttpServer(SessionDirs dirs) : impl_(std::make_unique<Impl>(std::move(dirs)))
{
    auto& http = impl_->http;
    auto& sessions = impl_->sessions;

    http.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
    http.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
        res.status = 204;
    });

    http.Post("/session", [&sessions](const httplib::Request&, httplib::Response& res) {
        reply_json(res, {{"sessionId", sessions.open()}});
    });

    http.Post(R"(/session/([\w.-]+))",
              [&sessions](const httplib::Request& req, httplib::Response& res) {
                  const json message = json::parse(req.body, nullptr, false);
                  if (message.is_discarded()) {
                      reply_json(res, {{"type", "error"},
                                       {"code", "bad_message"},
                                       {"message", "body is not JSON"}},
                                 400);
                      return;
                  }
                  reply_json(res, sessions.dispatch(req.matches[1], message));
              });

    http.Get("/agents", [&sessions](const httplib::Request&, httplib::Response& res) {
        json ids = json::array();
        const auto& dir = sessions.dirs().agents;
        std::error_code ec;
        if (!dir.empty() && fs::is_directory(dir, ec)) {
            std::vector<std::string> names;
            for (const auto& entry : fs::directory_iterator(dir)) {
                if (entry.path().extension() == ".agent") {
                    names.push_back(entry.path().stem().string());
                }
            }
            std::sort(names.begin(), names.end());
            ids = names;
        }
        reply_json(res, ids);
    });

    http.Get(R"(/agents/([\w.-]+))",
             [&sessions](const httplib::Request& req, httplib::Response& res) {
                 try {
                     const auto agent = load_agent(sessions.dirs().agents, req.matches[1]);
                     if (!agent) {
                         reply_json(res, {{"code", "unknown_agent"}}, 404);
                         return;
                     }
                     reply_json(res, {{"id", req.matches[1]},
                                      {"nodes", agent->size()},
                                      {"sexpr", dsl::serialize(*agent)},
                                      {"dot", dsl::to_dot(*agent)},
                                      {"pseudo", dsl::to_pseudocode(*agent)}});
                 } catch (const ParseError& e) {
                     reply_json(res, {{"code", "bad_agent"}, {"message", e.what()}}, 422);
                 }
             });

    http.Get(R"(/traces/([0-9a-f]{16}))",
             [&sessions](const httplib::Request& req, httplib::Response& res) {
                 std::ifstream in(sessions.dirs().traces /
                                  (std::string(req.matches[1]) + ".trace.json"));
                 if (!in) {
                     reply_json(res, {{"code", "unknown_trace"}}, 404);
                     return;
                 }
                 std::ostringstream buf;
                 buf << in.rdbuf();
                 res.set_content(buf.str(), "application/json");
             });

    http.set_exception_handler(
        [](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
            std::string what = "internal error";
            try {
                std::rethrow_exception(ep);
            } catch (const std::exception& e) {
                what = e.what();
            } catch (...) {
            }
            spdlog::error("request failed: {}", what);
            reply_json(res, {{"type", "error"}, {"code", "internal"}, {"message", what}}, 500);
        });
}

HttpServer::~HttpServer()
{
    stop();
}

int HttpServer::bind(const std::string& host, int port)
{
    if (port == 0) {
        return impl_->http.bind_to_any_port(host);
    }
    return impl_->http.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::run()
{
    return impl_->http.listen_after_bind();
}

void HttpServer::stop()
{
    impl_->http.stop();
}

SessionManager& HttpServer::sessions()
{
    return impl_->sessions;
}

} // namespace pgp::service
