#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "scholarviz/layout.hpp"
#include "scholarviz/scholars.hpp"

namespace scholarviz {

struct ServiceConfig {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string taxonomy_path = "data/taxonomy.jsonl";
    std::string scholars_path = "data/scholars.jsonl";
    std::string static_dir;  // optional UI bundle
    std::string cors_origin = "*";
    std::size_t page_size = 6;
    std::size_t session_cap = 1024;
    std::uint64_t seed = 42;
    std::string language = "zh";
    KeywordMatch scholar_match = KeywordMatch::Any;
    std::size_t scholar_limit = 20;
    std::size_t threads = 8;
    Canvas canvas;
    LayoutConfig layout;
};

/// Parses a JSON config document; unspecified keys keep their defaults.
/// Relative data paths are resolved against `base_dir` when given.
ServiceConfig parse_config(std::string_view json_text, const std::string& base_dir = {});
ServiceConfig load_config(const std::string& path);

/// SCHOLARVIZ_LISTEN (host:port), SCHOLARVIZ_TAXONOMY, SCHOLARVIZ_SCHOLARS,
/// SCHOLARVIZ_STATIC_DIR. `getenv` is injectable for tests.
void apply_env_overrides(ServiceConfig& config,
                         const std::function<std::optional<std::string>(const char*)>& getenv);
void apply_env_overrides(ServiceConfig& config);

/// Throws InvalidConfig on non-positive constants; `check_paths` also
/// requires the data files (and static dir, if set) to exist.
void validate_config(const ServiceConfig& config, bool check_paths);

}  // namespace scholarviz
