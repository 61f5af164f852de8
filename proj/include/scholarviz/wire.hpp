#pragma once

// JSON shapes shared by the HTTP API and the CLI. Field names and order are
// part of the public contract (see API.md).

#include <string>
#include <string_view>

#include <json.hpp>

#include "scholarviz/explorer.hpp"
#include "scholarviz/layout.hpp"
#include "scholarviz/query.hpp"
#include "scholarviz/scholars.hpp"

namespace scholarviz::wire {

using Json = nlohmann::ordered_json;

Json concept_page(const ConceptPage& page);
Json expand_result(const ExpandResult& result);
Json graph_snapshot(const ExplorerGraph& graph);
Json layout_result(const LayoutResult& layout, const Canvas& canvas);
Json search_page(const SearchPage& page, const ScholarQuery& query);
Json error(std::string_view code, std::string_view message);

/// Compact, deterministic text form used for every response body.
std::string dump(const Json& value);

}  // namespace scholarviz::wire
