#include "scholarviz/service.hpp"

#include <charconv>
#include <cstdio>

#include "scholarviz/error.hpp"
#include "scholarviz/query.hpp"
#include "scholarviz/wire.hpp"

namespace scholarviz {

namespace {

using wire::Json;

ApiResponse json_response(int status, const Json& body) {
    ApiResponse r;
    r.status = status;
    r.body = wire::dump(body);
    r.headers["ETag"] = etag_for(r.body);
    return r;
}

ApiResponse error_response(int status, std::string_view code, std::string_view message) {
    return json_response(status, wire::error(code, message));
}

int status_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::EmptyQuery:
        case ErrorCode::InvalidQuery:
        case ErrorCode::MalformedRecord:
            return 400;
        case ErrorCode::UnknownNode:
        case ErrorCode::NotRecenterable:
        case ErrorCode::WrongMode:
        case ErrorCode::IllegalEvent:
        case ErrorCode::WrongResultKind:
        case ErrorCode::UnknownConcept:
        case ErrorCode::OffsetOutOfRange:
            return 409;
        default:
            return 500;
    }
}

ApiResponse from_error(const Error& e) {
    return error_response(status_for(e.code()), error_code_name(e.code()), e.what());
}

std::optional<std::size_t> parse_count(std::string_view text) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) return std::nullopt;
    return value;
}

struct BadRequest {
    std::string message;
};

Json parse_body(std::string_view body) {
    Json doc = Json::parse(body, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) throw BadRequest{"body must be a JSON object"};
    return doc;
}

std::string string_field(const Json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end() || !it->is_string())
        throw BadRequest{std::string("missing string field '") + key + "'"};
    return it->get<std::string>();
}

LayoutMode mode_field(const Json& doc, LayoutMode fallback) {
    auto it = doc.find("mode");
    if (it == doc.end() || it->is_null()) return fallback;
    if (!it->is_string()) throw BadRequest{"'mode' must be a string"};
    auto mode = parse_layout_mode(it->get<std::string>());
    if (!mode) throw BadRequest{"unknown layout mode '" + it->get<std::string>() + "'"};
    return *mode;
}

}  // namespace

std::string etag_for(std::string_view body) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char ch : body) {
        hash ^= ch;
        hash *= 0x100000001b3ULL;
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "\"%016llx\"", static_cast<unsigned long long>(hash));
    return buf;
}

ApiService::ApiService(ServiceConfig config, std::shared_ptr<const Taxonomy> taxonomy,
                       std::shared_ptr<const ScholarIndex> scholars)
    : config_(std::move(config)),
      taxonomy_(std::move(taxonomy)),
      scholars_(std::move(scholars)),
      sessions_(config_.session_cap, config_.seed) {}

std::unique_ptr<ApiService> ApiService::from_config(const ServiceConfig& config) {
    auto taxonomy = std::make_shared<const Taxonomy>(Taxonomy::load_file(config.taxonomy_path));
    auto scholars = std::make_shared<const ScholarIndex>(ScholarIndex::load_file(config.scholars_path));
    return std::make_unique<ApiService>(config, std::move(taxonomy), std::move(scholars));
}

void ApiService::reload(std::shared_ptr<const Taxonomy> taxonomy,
                        std::shared_ptr<const ScholarIndex> scholars) {
    std::lock_guard lock(data_mutex_);
    taxonomy_ = std::move(taxonomy);
    scholars_ = std::move(scholars);
}

std::shared_ptr<const Taxonomy> ApiService::taxonomy() const {
    std::lock_guard lock(data_mutex_);
    return taxonomy_;
}

std::shared_ptr<const ScholarIndex> ApiService::scholar_index() const {
    std::lock_guard lock(data_mutex_);
    return scholars_;
}

Explorer ApiService::explorer(const Taxonomy& taxonomy) const {
    return Explorer(taxonomy, ExplorerOptions{config_.page_size, config_.language, config_.canvas});
}

std::string ApiService::session_body(const ExplorerGraph& graph, const Taxonomy& taxonomy) const {
    Explorer ex = explorer(taxonomy);
    LayoutResult layout = compute_layout(graph.mode, ex.layout_input(graph, config_.seed),
                                         config_.layout);
    Json body;
    body["session"] = wire::graph_snapshot(graph);
    body["layout"] = wire::layout_result(layout, config_.canvas);
    return wire::dump(body);
}

ApiResponse ApiService::health() const { return json_response(200, Json{{"status", "ok"}}); }

ApiResponse ApiService::expand(std::optional<std::string_view> q) const {
    if (!q || trim(*q).empty()) return error_response(400, "empty_query", "query is empty");
    auto tax = taxonomy();
    try {
        return json_response(200, wire::expand_result(expand_query(
                                      *q, *tax, QueryOptions{config_.page_size, config_.language})));
    } catch (const Error& e) {
        return from_error(e);
    }
}

ApiResponse ApiService::resolve(std::optional<std::string_view> choice) const {
    if (!choice || trim(*choice).empty())
        return error_response(400, "empty_query", "expansion choice is empty");
    auto tax = taxonomy();
    try {
        return json_response(200, wire::expand_result(resolve_expansion(
                                      *choice, *tax, QueryOptions{config_.page_size, config_.language})));
    } catch (const Error& e) {
        return from_error(e);
    }
}

ApiResponse ApiService::scholars(std::optional<std::string_view> keywords,
                                 std::optional<std::string_view> offset,
                                 std::optional<std::string_view> limit,
                                 std::optional<std::string_view> match) const {
    ScholarQuery query;
    query.limit = config_.scholar_limit;
    query.match = config_.scholar_match;
    if (keywords) {
        std::string_view rest = *keywords;
        while (true) {
            auto comma = rest.find(',');
            std::string_view part = trim(rest.substr(0, comma));
            if (!part.empty()) query.keywords.emplace_back(part);
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
    }
    if (query.keywords.empty())
        return error_response(400, "invalid_query", "'keywords' must name at least one keyword");
    if (offset) {
        auto v = parse_count(*offset);
        if (!v) return error_response(400, "invalid_query", "'offset' must be a non-negative integer");
        query.offset = *v;
    }
    if (limit) {
        auto v = parse_count(*limit);
        if (!v || *v == 0) return error_response(400, "invalid_query", "'limit' must be >= 1");
        query.limit = *v;
    }
    if (match) {
        if (*match == "any") query.match = KeywordMatch::Any;
        else if (*match == "all") query.match = KeywordMatch::All;
        else return error_response(400, "invalid_query", "'match' must be 'any' or 'all'");
    }
    auto index = scholar_index();
    try {
        return json_response(200, wire::search_page(index->search(query), query));
    } catch (const Error& e) {
        return from_error(e);
    }
}

ApiResponse ApiService::create_session(std::string_view body) {
    auto tax = taxonomy();
    try {
        Json doc = parse_body(body);
        LayoutMode mode = mode_field(doc, LayoutMode::Radial);
        QueryOptions options{config_.page_size, config_.language};

        ExpandResult result;
        if (doc.contains("concept_id")) {
            ConceptId id(string_field(doc, "concept_id"));
            if (!tax->find(id))
                return error_response(404, "not_found", "unknown concept '" + id.value + "'");
            result = expand_concept(id, *tax, options);
        } else if (doc.contains("choice")) {
            result = resolve_expansion(string_field(doc, "choice"), *tax, options);
        } else if (doc.contains("q")) {
            result = expand_query(string_field(doc, "q"), *tax, options);
        } else {
            throw BadRequest{"body needs one of 'q', 'choice' or 'concept_id'"};
        }

        if (result.kind == ResultKind::NotFound)
            return error_response(404, "not_found", "no concept labelled '" + result.query + "'");
        if (result.kind == ResultKind::Expansions) {
            Json err = wire::error("wrong_result_kind",
                                   "'" + result.query + "' is an abbreviation; pick an expansion");
            err["result"] = wire::expand_result(result);
            return json_response(409, err);
        }

        Explorer ex = explorer(*tax);
        auto session = sessions_.create(ex.start_session(result, mode));
        std::lock_guard lock(session->mutex);
        ApiResponse r;
        r.body = session_body(session->graph, *tax);
        r.headers["ETag"] = etag_for(r.body);
        r.headers["Location"] = "/api/session/" + session->graph.session_id;
        return r;
    } catch (const BadRequest& e) {
        return error_response(400, "bad_request", e.message);
    } catch (const Error& e) {
        return from_error(e);
    }
}

ApiResponse ApiService::get_session(std::string_view id) {
    auto session = sessions_.find(id);
    if (!session) return error_response(404, "unknown_session", "no session '" + std::string(id) + "'");
    auto tax = taxonomy();
    std::lock_guard lock(session->mutex);
    ApiResponse r;
    r.body = session_body(session->graph, *tax);
    r.headers["ETag"] = etag_for(r.body);
    return r;
}

ApiResponse ApiService::delete_session(std::string_view id) {
    if (!sessions_.erase(id))
        return error_response(404, "unknown_session", "no session '" + std::string(id) + "'");
    return json_response(200, Json{{"deleted", std::string(id)}});
}

ApiResponse ApiService::session_event(std::string_view id, std::string_view body) {
    auto session = sessions_.find(id);
    if (!session) return error_response(404, "unknown_session", "no session '" + std::string(id) + "'");
    auto tax = taxonomy();
    Explorer ex = explorer(*tax);
    try {
        Json doc = parse_body(body);
        std::string type = string_field(doc, "type");

        std::lock_guard lock(session->mutex);
        ExplorerGraph next = session->graph;
        if (type == "set_mode") {
            if (!doc.contains("mode")) throw BadRequest{"set_mode needs 'mode'"};
            ex.set_mode(next, mode_field(doc, next.mode));
        } else {
            std::string node = string_field(doc, "node");
            if (type == "click") {
                ex.click(next, node);
            } else if (type == "dblclick") {
                ex.double_click(next, node);
            } else if (type == "more") {
                ex.more(next, node);
            } else if (type == "pin") {
                auto p = doc.find("point");
                if (p == doc.end() || !p->is_object() || !p->contains("x") || !p->contains("y") ||
                    !(*p)["x"].is_number() || !(*p)["y"].is_number())
                    throw BadRequest{"pin needs 'point': {x, y}"};
                ex.pin(next, node, Point{(*p)["x"].get<double>(), (*p)["y"].get<double>()});
            } else if (type == "unpin") {
                ex.unpin(next, node);
            } else {
                throw BadRequest{"unknown event type '" + type + "'"};
            }
        }
        std::string response = session_body(next, *tax);
        session->graph = std::move(next);

        ApiResponse r;
        r.body = std::move(response);
        r.headers["ETag"] = etag_for(r.body);
        return r;
    } catch (const BadRequest& e) {
        return error_response(400, "bad_request", e.message);
    } catch (const Error& e) {
        return from_error(e);
    }
}

}  // namespace scholarviz
