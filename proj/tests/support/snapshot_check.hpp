#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

namespace scholarviz::testing {

/// Expected palette index for a generation/side, written out by hand.
inline int expected_color(int generation, const std::string& side) {
    if (generation == 0) return 0;
    if (generation == 1) return side == "super" ? 1 : 2;
    if (generation == 2) return 3;
    if (generation == 3) return 4;
    static const int cycle[] = {5, 6, 7};
    return cycle[(generation - 4) % 3];
}

/// Checks a `{"session": ..., "layout": ...}` response body against the
/// explorer rules as seen from outside. Returns the problems found.
inline std::vector<std::string> check_session_body(const std::string& body) {
    std::vector<std::string> problems;
    auto fail = [&](const std::string& what) { problems.push_back(what); };

    auto doc = nlohmann::json::parse(body, nullptr, false);
    if (doc.is_discarded() || !doc.contains("session") || !doc.contains("layout")) {
        fail("not a session body");
        return problems;
    }
    const auto& s = doc["session"];
    std::map<std::string, nlohmann::json> nodes;
    int focus_count = 0;
    for (const auto& n : s["nodes"]) {
        std::string key = n["key"];
        if (!nodes.emplace(key, n).second) fail("duplicate key " + key);
        if (n["side"] == "focus") {
            ++focus_count;
            if (n["generation"] != 0) fail("focus generation");
            if (n["state"] == "fresh") fail("focus is fresh");
            if (!n["parent"].is_null()) fail("focus has a parent");
        }
        if (n["color"] != expected_color(n["generation"], n["side"])) fail("node color " + key);
        if (n["kind"] == "more") {
            if (!n.contains("more") || n["more"]["remaining"].get<int>() <= 0) fail("bad MORE " + key);
            if (n["state"] != "fresh") fail("MORE changed state " + key);
        }
    }
    if (focus_count != 1) fail("focus count");

    std::map<std::string, int> visible_children;
    std::set<std::string> children_seen;
    for (const auto& e : s["edges"]) {
        std::string parent = e["parent"];
        std::string child = e["child"];
        if (!nodes.count(parent) || !nodes.count(child)) {
            fail("edge to unknown node");
            continue;
        }
        const auto& p = nodes[parent];
        const auto& c = nodes[child];
        if (c["parent"] != parent) fail("edge/parent mismatch " + child);
        if (c["generation"].get<int>() != p["generation"].get<int>() + 1) fail("generation step " + child);
        if (e["color"] != c["color"]) fail("edge color " + child);
        if (p["kind"] != "concept") fail("non-concept parent " + parent);
        if (!children_seen.insert(child).second) fail("two edges into " + child);
        ++visible_children[parent];
    }
    if (children_seen.size() + 1 != nodes.size()) fail("edge count");

    for (const auto& [key, n] : nodes) {
        int kids = visible_children[key];
        std::string state = n["state"];
        if (state == "expanded" && kids == 0) fail("expanded without children " + key);
        if (state != "expanded" && kids != 0) fail(state + " with visible children " + key);
        if (state == "collapsed" && n.value("hidden_descendants", 0) < 1) fail("collapsed hides nothing " + key);
    }

    const auto& layout = doc["layout"];
    double w = layout["canvas"]["width"];
    double h = layout["canvas"]["height"];
    std::set<std::string> placed;
    for (const auto& p : layout["positions"]) {
        placed.insert(p["id"].get<std::string>());
        double x = p["x"];
        double y = p["y"];
        if (x < 0 || x > w || y < 0 || y > h) fail("position outside canvas");
    }
    if (placed.size() != nodes.size()) fail("layout does not cover the visible nodes");
    for (const auto& [key, n] : nodes)
        if (!placed.count(key)) fail("no position for " + key);
    return problems;
}

}  // namespace scholarviz::testing
