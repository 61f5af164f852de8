#include "scholarviz/config.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "scholarviz/error.hpp"

namespace scholarviz {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); }

template <typename T>
void read(const json& obj, const char* key, T& out) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return;
    try {
        out = it->get<T>();
    } catch (const json::exception&) {
        invalid(std::string("config key '") + key + "' has the wrong type");
    }
}

std::string resolve(const std::string& path, const std::string& base_dir) {
    if (path.empty() || base_dir.empty() || fs::path(path).is_absolute()) return path;
    return (fs::path(base_dir) / path).lexically_normal().string();
}

void parse_listen(ServiceConfig& config, const std::string& listen) {
    auto colon = listen.rfind(':');
    if (colon == std::string::npos) invalid("listen address must be host:port");
    config.host = listen.substr(0, colon);
    try {
        config.port = std::stoi(listen.substr(colon + 1));
    } catch (const std::exception&) {
        invalid("listen port is not a number: '" + listen + "'");
    }
}

}  // namespace

ServiceConfig parse_config(std::string_view json_text, const std::string& base_dir) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        invalid(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) invalid("config must be a JSON object");

    ServiceConfig c;
    if (auto it = doc.find("listen"); it != doc.end()) {
        if (it->is_string()) {
            parse_listen(c, it->get<std::string>());
        } else if (it->is_object()) {
            read(*it, "host", c.host);
            read(*it, "port", c.port);
        } else {
            invalid("'listen' must be \"host:port\" or {host, port}");
        }
    }
    if (auto it = doc.find("data"); it != doc.end() && it->is_object()) {
        read(*it, "taxonomy", c.taxonomy_path);
        read(*it, "scholars", c.scholars_path);
        read(*it, "static_dir", c.static_dir);
    }
    c.taxonomy_path = resolve(c.taxonomy_path, base_dir);
    c.scholars_path = resolve(c.scholars_path, base_dir);
    c.static_dir = resolve(c.static_dir, base_dir);

    read(doc, "cors_origin", c.cors_origin);
    read(doc, "page_size", c.page_size);
    read(doc, "session_cap", c.session_cap);
    read(doc, "seed", c.seed);
    read(doc, "language", c.language);
    read(doc, "scholar_limit", c.scholar_limit);
    read(doc, "threads", c.threads);
    if (auto it = doc.find("scholar_match"); it != doc.end()) {
        std::string match = it->is_string() ? it->get<std::string>() : "";
        if (match == "any") c.scholar_match = KeywordMatch::Any;
        else if (match == "all") c.scholar_match = KeywordMatch::All;
        else invalid("'scholar_match' must be \"any\" or \"all\"");
    }
    if (auto it = doc.find("layout"); it != doc.end() && it->is_object()) {
        const json& l = *it;
        read(l, "canvas_width", c.canvas.width);
        read(l, "canvas_height", c.canvas.height);
        read(l, "link_min", c.layout.link_min);
        read(l, "link_max", c.layout.link_max);
        read(l, "reference_nodes", c.layout.reference_nodes);
        read(l, "column_gap", c.layout.column_gap);
        read(l, "guard_degrees", c.layout.guard_degrees);
        read(l, "margin", c.layout.margin);
        read(l, "force_k_coefficient", c.layout.force_k_coefficient);
        read(l, "force_iterations", c.layout.force_iterations);
    }
    return c;
}

ServiceConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), fs::path(path).parent_path().string());
}

void apply_env_overrides(ServiceConfig& config,
                         const std::function<std::optional<std::string>(const char*)>& getenv) {
    if (auto v = getenv("SCHOLARVIZ_LISTEN")) parse_listen(config, *v);
    if (auto v = getenv("SCHOLARVIZ_TAXONOMY")) config.taxonomy_path = *v;
    if (auto v = getenv("SCHOLARVIZ_SCHOLARS")) config.scholars_path = *v;
    if (auto v = getenv("SCHOLARVIZ_STATIC_DIR")) config.static_dir = *v;
}

void apply_env_overrides(ServiceConfig& config) {
    apply_env_overrides(config, [](const char* name) -> std::optional<std::string> {
        if (const char* v = std::getenv(name)) return std::string(v);
        return std::nullopt;
    });
}

void validate_config(const ServiceConfig& c, bool check_paths) {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (c.port <= 0 || c.port > 65535) invalid("port must be in 1..65535");
    if (c.page_size == 0) invalid("page_size must be positive");
    if (c.session_cap == 0) invalid("session_cap must be positive");
    if (c.scholar_limit == 0) invalid("scholar_limit must be positive");
    if (c.threads == 0) invalid("threads must be positive");
    if (!positive(c.canvas.width) || !positive(c.canvas.height)) invalid("canvas must be positive");
    const LayoutConfig& l = c.layout;
    if (!positive(l.link_min) || !positive(l.link_max) || l.link_min > l.link_max)
        invalid("link lengths must be positive with link_min <= link_max");
    if (!positive(l.reference_nodes)) invalid("reference_nodes must be positive");
    if (!positive(l.column_gap)) invalid("column_gap must be positive");
    if (!positive(l.force_k_coefficient)) invalid("force_k_coefficient must be positive");
    if (l.force_iterations == 0) invalid("force_iterations must be positive");
    if (!std::isfinite(l.guard_degrees) || l.guard_degrees < 0.0 || l.guard_degrees >= 90.0)
        invalid("guard_degrees must be in [0, 90)");
    if (!std::isfinite(l.margin) || l.margin < 0.0) invalid("margin must be non-negative");
    if (check_paths) {
        if (!fs::is_regular_file(c.taxonomy_path))
            invalid("taxonomy file not found: " + c.taxonomy_path);
        if (!fs::is_regular_file(c.scholars_path))
            invalid("scholars file not found: " + c.scholars_path);
        if (!c.static_dir.empty() && !fs::is_directory(c.static_dir))
            invalid("static dir not found: " + c.static_dir);
    }
}

}  // namespace scholarviz
