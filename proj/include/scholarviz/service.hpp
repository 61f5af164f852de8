#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "scholarviz/config.hpp"
#include "scholarviz/explorer.hpp"
#include "scholarviz/scholars.hpp"
#include "scholarviz/taxonomy.hpp"

namespace scholarviz {

struct ApiResponse {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
    std::map<std::string, std::string> headers;
};

/// Strong ETag for a response body (FNV-1a 64, quoted hex).
std::string etag_for(std::string_view body);

/// JSON API over the taxonomy, explorer sessions and scholar index. Each
/// method maps one endpoint; the HTTP layer only moves bytes in and out.
class ApiService {
public:
    ApiService(ServiceConfig config, std::shared_ptr<const Taxonomy> taxonomy,
               std::shared_ptr<const ScholarIndex> scholars);

    /// Loads the data files named in the config.
    static std::unique_ptr<ApiService> from_config(const ServiceConfig& config);

    const ServiceConfig& config() const noexcept { return config_; }

    ApiResponse health() const;
    ApiResponse expand(std::optional<std::string_view> q) const;
    ApiResponse resolve(std::optional<std::string_view> choice) const;
    ApiResponse scholars(std::optional<std::string_view> keywords,
                         std::optional<std::string_view> offset,
                         std::optional<std::string_view> limit,
                         std::optional<std::string_view> match) const;

    ApiResponse create_session(std::string_view body);
    ApiResponse get_session(std::string_view id);
    ApiResponse delete_session(std::string_view id);
    ApiResponse session_event(std::string_view id, std::string_view body);

    /// Swaps in new data; requests already running keep the old snapshot.
    void reload(std::shared_ptr<const Taxonomy> taxonomy,
                std::shared_ptr<const ScholarIndex> scholars);

    std::shared_ptr<const Taxonomy> taxonomy() const;
    std::shared_ptr<const ScholarIndex> scholar_index() const;
    SessionStore& sessions() noexcept { return sessions_; }

private:
    Explorer explorer(const Taxonomy& taxonomy) const;
    std::string session_body(const ExplorerGraph& graph, const Taxonomy& taxonomy) const;

    ServiceConfig config_;
    mutable std::mutex data_mutex_;
    std::shared_ptr<const Taxonomy> taxonomy_;
    std::shared_ptr<const ScholarIndex> scholars_;
    SessionStore sessions_;
};

}  // namespace scholarviz
