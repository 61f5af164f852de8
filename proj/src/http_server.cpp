#include "scholarviz/http_server.hpp"

#include <chrono>
#include <optional>
#include <thread>

#include <httplib.h>

namespace scholarviz {

namespace {

std::optional<std::string_view> param(const httplib::Request& req, const char* name) {
    if (!req.has_param(name)) return std::nullopt;
    // Returned view points into req, which outlives the handler call.
    auto it = req.params.find(name);
    return std::string_view(it->second);
}

void send(const httplib::Request& req, httplib::Response& res, const ApiResponse& api) {
    for (const auto& [name, value] : api.headers) res.set_header(name, value);
    auto etag = api.headers.find("ETag");
    if (api.status == 200 && etag != api.headers.end() &&
        req.get_header_value("If-None-Match") == etag->second) {
        res.status = 304;
        return;
    }
    res.status = api.status;
    res.set_content(api.body, api.content_type);
}

}  // namespace

struct HttpServer::Impl {
    ApiService& api;
    httplib::Server server;
    std::thread thread;
    int port = -1;

    explicit Impl(ApiService& a) : api(a) {}
};

HttpServer::HttpServer(ApiService& api) : impl_(std::make_unique<Impl>(api)) {
    auto& svr = impl_->server;
    ApiService& svc = api;
    const std::size_t threads = svc.config().threads;
    svr.new_task_queue = [threads] { return new httplib::ThreadPool(threads); };

    const std::string origin = svc.config().cors_origin;
    svr.set_post_routing_handler([origin](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Origin", origin);
        res.set_header("Access-Control-Expose-Headers", "ETag, Location");
    });
    svr.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type, If-None-Match");
        res.status = 204;
    });

    svr.Get("/healthz", [&svc](const httplib::Request& req, httplib::Response& res) {
        send(req, res, svc.health());
    });
    svr.Get("/api/expand", [&svc](const httplib::Request& req, httplib::Response& res) {
        send(req, res, svc.expand(param(req, "q")));
    });
    svr.Get("/api/resolve", [&svc](const httplib::Request& req, httplib::Response& res) {
        send(req, res, svc.resolve(param(req, "choice")));
    });
    svr.Get("/api/scholars", [&svc](const httplib::Request& req, httplib::Response& res) {
        send(req, res,
             svc.scholars(param(req, "keywords"), param(req, "offset"), param(req, "limit"),
                          param(req, "match")));
    });
    svr.Post("/api/session", [&svc](const httplib::Request& req, httplib::Response& res) {
        send(req, res, svc.create_session(req.body));
    });
    svr.Get(R"(/api/session/([A-Za-z0-9]+))",
            [&svc](const httplib::Request& req, httplib::Response& res) {
                send(req, res, svc.get_session(req.matches[1].str()));
            });
    svr.Delete(R"(/api/session/([A-Za-z0-9]+))",
               [&svc](const httplib::Request& req, httplib::Response& res) {
                   send(req, res, svc.delete_session(req.matches[1].str()));
               });
    svr.Post(R"(/api/session/([A-Za-z0-9]+)/event)",
             [&svc](const httplib::Request& req, httplib::Response& res) {
                 send(req, res, svc.session_event(req.matches[1].str(), req.body));
             });

    if (!svc.config().static_dir.empty()) svr.set_mount_point("/", svc.config().static_dir);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
    if (port == 0)
        impl_->port = impl_->server.bind_to_any_port(host);
    else
        impl_->port = impl_->server.bind_to_port(host, port) ? port : -1;
    return impl_->port;
}

int HttpServer::port() const noexcept { return impl_->port; }

bool HttpServer::listen() { return impl_->server.listen_after_bind(); }

void HttpServer::start() {
    impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
}

void HttpServer::stop() {
    if (!impl_) return;
    impl_->server.stop();
    if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace scholarviz
