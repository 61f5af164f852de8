#pragma once

#include <memory>
#include <string>

#include "scholarviz/service.hpp"

namespace scholarviz {

/// HTTP/1.1 front end for ApiService: JSON routes, CORS, /healthz and an
/// optional static mount for the UI bundle.
class HttpServer {
public:
    explicit HttpServer(ApiService& api);
    ~HttpServer();

    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Port 0 picks a free port. Returns the bound port, or -1 on failure.
    int bind(const std::string& host, int port);
    int port() const noexcept;

    /// Serves until stop(); call after bind().
    bool listen();
    /// listen() on a background thread; returns once the server accepts.
    void start();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace scholarviz
