// Acceptance suite: one PASS/FAIL line per criterion, each timed against its
// budget. Exit status is non-zero when any criterion fails.

#include <httplib.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "scholarviz/error.hpp"
#include "scholarviz/explorer.hpp"
#include "scholarviz/fixtures.hpp"
#include "scholarviz/http_server.hpp"
#include "scholarviz/layout.hpp"
#include "scholarviz/scholars.hpp"
#include "scholarviz/service.hpp"
#include "support/random_tree.hpp"
#include "support/snapshot_check.hpp"

using namespace scholarviz;
using nlohmann::json;

namespace {

// Budgets and tolerances.
constexpr double kCaseStudySeconds = 1.0;
constexpr double kStateMachineSeconds = 30.0;
constexpr double kLayoutSeconds = 60.0;
constexpr double kScholarSeconds = 60.0;
constexpr double kServiceSeconds = 60.0;
constexpr int kRandomTrees = 500;
constexpr std::size_t kMaxTreeNodes = 60;
constexpr double kTwoNodeTolerance = 0.10;
constexpr int kFuzzEvents = 1000;
constexpr int kHammerWriters = 8;
constexpr int kHammerEvents = 1000;
constexpr int kRepeatedGets = 20;

/// Collects the first few failure reasons of a criterion.
struct Check {
    std::vector<std::string> failures;
    void expect(bool ok, const std::string& what) {
        if (!ok && failures.size() < 5) failures.push_back(what);
        if (!ok) ++failed;
    }
    std::size_t failed = 0;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string strip_newline(std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    return s;
}

std::unique_ptr<ApiService> fixture_service(std::size_t session_cap = 1024) {
    ServiceConfig cfg;
    cfg.session_cap = session_cap;
    std::ostringstream corpus;
    write_scholars_jsonl(fixtures::scholars(), corpus);
    return std::make_unique<ApiService>(
        cfg, std::make_shared<const Taxonomy>(fixtures::taxonomy()),
        std::make_shared<const ScholarIndex>(ScholarIndex::parse(corpus.str())));
}

// ---------------------------------------------------------------------------

void case_study(Check& c) {
    auto api = fixture_service();
    HttpServer server(*api);
    int port = server.bind("127.0.0.1", 0);
    c.expect(port > 0, "could not bind a port");
    if (port <= 0) return;
    server.start();
    httplib::Client client("127.0.0.1", port);

    const std::vector<std::pair<std::string, std::string>> cases = {
        {"AI", "expand_ai.json"},
        {"Data mining", "expand_data_mining.json"},
        {"Data integration", "expand_data_integration.json"},
        {"Knowledge reasoning", "expand_knowledge_reasoning.json"},
    };
    for (const auto& [query, file] : cases) {
        auto res = client.Get("/api/expand", httplib::Params{{"q", query}}, httplib::Headers{});
        c.expect(res && res->status == 200, "GET /api/expand?q=" + query + " did not return 200");
        if (!res) continue;
        std::string golden = strip_newline(slurp(SCHOLARVIZ_GOLDEN_DIR "/" + file));
        c.expect(!golden.empty(), "missing golden " + file);
        c.expect(res->body == golden, "'" + query + "' over HTTP differs from " + file);
        c.expect(api->expand(query).body == golden, "'" + query + "' from the handler differs from " + file);
    }
    server.stop();
}

// ---------------------------------------------------------------------------

const ExplorerNode* labelled(const ExplorerGraph& g, std::string_view label) {
    for (const auto* n : g.visible_nodes())
        if (n->label == label) return n;
    return nullptr;
}

void state_machine(Check& c) {
    const Taxonomy t = fixtures::taxonomy();
    Explorer ex(t, {});
    auto valid = [&](const ExplorerGraph& g, const std::string& when) {
        c.expect(check_invariants(g).empty(), "invariants broken " + when);
    };

    ExplorerGraph g = ex.start_session(resolve_expansion("Artificial Intelligence", t), LayoutMode::Radial);
    valid(g, "at start");
    for (const char* label : {"Emerging technology", "Machine learning", "Natural Language Processing",
                              "Self-Driving"})
        c.expect(labelled(g, label) != nullptr, std::string("start graph lacks ") + label);
    if (!c.failures.empty()) return;

    std::string et = labelled(g, "Emerging technology")->key;
    ex.click(g, et);
    valid(g, "after expanding Emerging technology");
    auto et_kids = g.children_of(et);
    c.expect(!et_kids.empty(), "Emerging technology revealed nothing");
    for (const auto* k : et_kids) c.expect(k->color == PaletteColor::Green, "child of Emerging technology is not green");

    std::string iot = labelled(g, "Internet of Things")->key;
    ex.click(g, iot);
    valid(g, "after expanding Internet of Things");
    auto iot_kids = g.children_of(iot);
    c.expect(!iot_kids.empty(), "Internet of Things revealed nothing");
    for (const auto* k : iot_kids) c.expect(k->color == PaletteColor::Brown, "third generation is not brown");

    std::string sd = labelled(g, "Self-Driving")->key;
    ex.click(g, sd);
    c.expect(g.find(sd)->state == NodeState::ExpandedLeaf, "Self-Driving is not EXPANDED_LEAF");

    std::string ml = labelled(g, "Machine learning")->key;
    ex.click(g, ml);
    c.expect(g.find(ml)->state == NodeState::Expanded, "Machine learning is not EXPANDED");

    std::string nlp = labelled(g, "Natural Language Processing")->key;
    ex.click(g, nlp);
    ExplorerGraph open = g;
    ex.click(g, nlp);
    valid(g, "after collapsing NLP");
    c.expect(g.find(nlp)->state == NodeState::Collapsed, "NLP is not COLLAPSED (red fill)");
    ex.click(g, nlp);
    c.expect(g.same_structure(open), "NLP collapse/expand is not a round trip");

    ex.double_click(g, et);
    valid(g, "after recentering");
    ExplorerGraph fresh = ex.start_session(expand_concept(ConceptId("emerging_technology"), t),
                                           LayoutMode::Radial);
    c.expect(g.focus.label == "Emerging technology", "recenter did not move the focus");
    c.expect(g.same_structure(fresh), "recenter differs from a fresh session");

    // Fuzz.
    SplitMix64 rng(20240601);
    ExplorerGraph f = ex.start_session(resolve_expansion("Artificial Intelligence", t), LayoutMode::Radial);
    for (int step = 0; step < kFuzzEvents; ++step) {
        auto visible = f.visible_nodes();
        std::string key = visible[rng.next() % visible.size()]->key;
        try {
            switch (rng.next() % 7) {
                case 0:
                case 1:
                case 2: ex.click(f, key); break;
                case 3: ex.more(f, key); break;
                case 4: ex.double_click(f, key); break;
                case 5: ex.set_mode(f, static_cast<LayoutMode>(rng.next() % 3)); break;
                case 6: ex.pin(f, key, {rng.next_unit() * 1200 - 100, rng.next_unit() * 1000 - 100}); break;
            }
        } catch (const Error& e) {
            bool expected = e.code() == ErrorCode::NotRecenterable || e.code() == ErrorCode::WrongMode ||
                            e.code() == ErrorCode::IllegalEvent;
            c.expect(expected, std::string("undefined transition: ") + e.what());
        }
        valid(f, "at fuzz step " + std::to_string(step));
    }
}

// ---------------------------------------------------------------------------

void layout_geometry(Check& c) {
    SplitMix64 rng(500);
    for (int trial = 0; trial < kRandomTrees; ++trial) {
        std::size_t n = 1 + rng.next() % kMaxTreeNodes;
        LayoutInput in = testing::random_tree(rng, n);
        Point center = in.canvas.center();
        LayoutResult radial = radial_layout(in);
        LayoutResult horizontal = horizontal_layout(in);
        for (std::size_t i = 0; i < in.nodes.size(); ++i) {
            int d = in.nodes[i].depth;
            double y = radial.positions[i].position.y;
            bool side_ok = d == 0 ? radial.positions[i].position == center : (d < 0 ? y < center.y : y > center.y);
            c.expect(side_ok, "radial half-plane broken in tree " + std::to_string(trial));
            c.expect(in.canvas.contains(radial.positions[i].position), "radial node off canvas");
            c.expect(in.canvas.contains(horizontal.positions[i].position), "horizontal node off canvas");
        }
        for (std::size_t i = 0; i < in.nodes.size(); ++i)
            for (std::size_t j = 0; j < in.nodes.size(); ++j)
                if (in.nodes[i].depth < in.nodes[j].depth)
                    c.expect(horizontal.positions[i].position.x < horizontal.positions[j].position.x,
                             "horizontal columns not monotone in tree " + std::to_string(trial));

        if (trial % 10 == 0) {
            LayoutResult a = force_layout(in);
            LayoutResult b = force_layout(in);
            bool same = a.positions.size() == b.positions.size();
            for (std::size_t i = 0; same && i < a.positions.size(); ++i)
                same = std::memcmp(&a.positions[i].position, &b.positions[i].position, sizeof(Point)) == 0;
            c.expect(same, "force layout not bit-identical for tree " + std::to_string(trial));
        }

        LayoutInput bigger = testing::grow(in, rng);
        c.expect(radial_layout(bigger).link_length <= radial.link_length, "radial spacing grew with N");
        c.expect(horizontal_layout(bigger).link_length <= horizontal.link_length,
                 "horizontal spacing grew with N");
    }

    LayoutConfig cfg;
    for (std::size_t n = 1; n <= 5000; ++n)
        c.expect(spacing_for(n + 1, cfg) <= spacing_for(n, cfg), "spacing rule not monotone");

    LayoutInput pair;
    pair.nodes = {{"a", 0}, {"b", 1}};
    pair.edges = {{"a", "b"}};
    LayoutResult r = force_layout(pair);
    double k = cfg.force_k_coefficient * std::sqrt(pair.canvas.width * pair.canvas.height / 2.0);
    double lo = 1e-6, hi = 10.0 * k;  // bisection on d^2/k - k^2/d
    for (int i = 0; i < 200; ++i) {
        double mid = (lo + hi) / 2.0;
        (mid * mid / k - k * k / mid > 0.0 ? hi : lo) = mid;
    }
    double target = (lo + hi) / 2.0;
    double sep = std::hypot(r.at("a").x - r.at("b").x, r.at("a").y - r.at("b").y);
    char buf[128];
    std::snprintf(buf, sizeof buf, "two-node separation %.2f vs %.2f", sep, target);
    c.expect(std::abs(sep - target) <= kTwoNodeTolerance * target, buf);
}

// ---------------------------------------------------------------------------

void scholar_oracle(Check& c) {
    std::ostringstream text;
    write_scholars_jsonl(fixtures::scholars(), text);
    ScholarIndex index = ScholarIndex::parse(text.str());
    c.expect(index.size() == fixtures::kDefaultScholarCount, "fixture corpus size");
    const auto& corpus = index.scholars();

    auto brute = [&](const std::vector<std::string>& kws) {
        std::vector<std::tuple<double, std::uint64_t, std::string, std::string>> rows;
        for (const auto& s : corpus) {
            double score = 0.0;
            for (const auto& k : kws)
                for (const auto& kw : s.keywords)
                    if (kw.label == fold_case(k)) score += kw.weight;
            if (score > 0.0) rows.emplace_back(score, s.citations, s.name, s.id);
        }
        std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
            if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
            if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) > std::get<1>(b);
            if (std::get<2>(a) != std::get<2>(b)) return std::get<2>(a) < std::get<2>(b);
            return std::get<3>(a) < std::get<3>(b);
        });
        std::vector<std::string> ids;
        for (const auto& row : rows) ids.push_back(std::get<3>(row));
        return ids;
    };
    auto indexed = [&](const std::vector<std::string>& kws, std::size_t limit) {
        std::vector<std::string> ids;
        for (std::size_t offset = 0;; offset += limit) {
            SearchPage page = index.search({kws, offset, limit});
            if (page.results.empty()) break;
            for (const auto& r : page.results) ids.push_back(r.scholar->id);
        }
        return ids;
    };

    const auto& kws = index.keywords();
    for (const auto& k : kws) {
        auto want = brute({k});
        c.expect(indexed({k}, corpus.size()) == want, "single keyword '" + k + "' differs");
        c.expect(indexed({k}, 7) == want, "paged results for '" + k + "' differ");
    }
    for (std::size_t i = 0; i < kws.size(); ++i)
        for (std::size_t j = i + 1; j < kws.size(); ++j) {
            std::vector<std::string> q{kws[i], kws[j]};
            auto want = brute(q);
            c.expect(indexed(q, corpus.size()) == want, "pair '" + kws[i] + "' + '" + kws[j] + "' differs");
            c.expect(indexed(q, 3) == want, "paged pair '" + kws[i] + "' + '" + kws[j] + "' differs");
        }
}

// ---------------------------------------------------------------------------

void service_determinism(Check& c) {
    auto api = fixture_service();
    HttpServer server(*api);
    int port = server.bind("127.0.0.1", 0);
    c.expect(port > 0, "could not bind a port");
    if (port <= 0) return;
    server.start();

    httplib::Client client("127.0.0.1", port);
    for (const char* path : {"/api/expand?q=AI", "/api/expand?q=Data%20mining",
                             "/api/resolve?choice=Artificial%20Intelligence",
                             "/api/scholars?keywords=machine%20learning,robotics&limit=50"}) {
        auto first = client.Get(path);
        c.expect(first && first->status == 200, std::string("GET ") + path + " failed");
        if (!first) continue;
        for (int i = 0; i < kRepeatedGets; ++i) {
            auto again = client.Get(path);
            c.expect(again && again->body == first->body, std::string("GET ") + path + " not byte-identical");
            c.expect(again && again->get_header_value("ETag") == first->get_header_value("ETag"),
                     std::string("ETag changed for ") + path);
        }
    }

    auto created = client.Post("/api/session", R"({"choice":"Artificial Intelligence"})", "application/json");
    c.expect(created && created->status == 200, "session creation failed");
    if (!created) return;
    std::string id = json::parse(created->body)["session"]["session_id"];
    std::string first_get = client.Get("/api/session/" + id)->body;
    c.expect(client.Get("/api/session/" + id)->body == first_get, "session GET not byte-identical");

    std::atomic<int> next_event{0};
    std::atomic<int> ok{0};
    std::atomic<int> rejected{0};
    std::mutex failure_mutex;
    std::vector<std::thread> writers;
    for (int w = 0; w < kHammerWriters; ++w) {
        writers.emplace_back([&, w] {
            httplib::Client cl("127.0.0.1", port);
            SplitMix64 rng(1000 + w);
            std::vector<std::string> keys{"n0"};
            while (next_event.fetch_add(1) < kHammerEvents) {
                static const char* types[] = {"click", "click", "click", "more", "dblclick", "set_mode"};
                std::string type = types[rng.next() % 6];
                json ev{{"type", type}};
                if (type == "set_mode")
                    ev["mode"] = std::string(layout_mode_name(static_cast<LayoutMode>(rng.next() % 3)));
                else
                    ev["node"] = keys[rng.next() % keys.size()];
                auto res = cl.Post("/api/session/" + id + "/event", ev.dump(), "application/json");
                std::lock_guard lock(failure_mutex);
                if (!res) {
                    c.expect(false, "event request failed");
                    continue;
                }
                if (res->status == 200) {
                    ++ok;
                    auto problems = testing::check_session_body(res->body);
                    c.expect(problems.empty(), "invariant-violating snapshot: " +
                                                   (problems.empty() ? std::string() : problems.front()));
                    keys.clear();
                    json doc = json::parse(res->body);
                    for (const auto& n : doc["session"]["nodes"]) keys.push_back(n["key"]);
                } else {
                    ++rejected;
                    c.expect(res->status == 409, "unexpected status " + std::to_string(res->status));
                }
            }
        });
    }
    std::thread reader([&] {
        httplib::Client cl("127.0.0.1", port);
        while (next_event.load() < kHammerEvents) {
            auto res = cl.Get("/api/session/" + id);
            std::lock_guard lock(failure_mutex);
            c.expect(res && res->status == 200, "snapshot read failed");
            if (res) {
                auto problems = testing::check_session_body(res->body);
                c.expect(problems.empty(), "invariant-violating read: " +
                                               (problems.empty() ? std::string() : problems.front()));
            }
        }
    });
    for (auto& t : writers) t.join();
    reader.join();
    c.expect(ok.load() + rejected.load() == kHammerEvents, "not every event was answered");
    c.expect(ok.load() > 0, "no event was accepted");

    auto last = client.Get("/api/session/" + id);
    c.expect(last && testing::check_session_body(last->body).empty(), "final snapshot invalid");
    server.stop();
}

struct Criterion {
    const char* name;
    double budget_seconds;
    std::function<void(Check&)> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"case-study conformance (golden /api/expand)", kCaseStudySeconds, case_study},
        {"state machine walkthrough + 1000-event fuzz", kStateMachineSeconds, state_machine},
        {"layout geometry on 500 random trees", kLayoutSeconds, layout_geometry},
        {"scholar retrieval oracle", kScholarSeconds, scholar_oracle},
        {"service determinism + 8-writer hammer", kServiceSeconds, service_determinism},
    };
    int failed = 0;
    for (const auto& criterion : criteria) {
        Check check;
        auto start = std::chrono::steady_clock::now();
        try {
            criterion.run(check);
        } catch (const std::exception& e) {
            check.expect(false, std::string("threw: ") + e.what());
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool in_time = seconds < criterion.budget_seconds;
        bool pass = check.failed == 0 && in_time;
        if (!pass) ++failed;
        std::printf("%s  %-46s %8.3f s (limit %.0f s)\n", pass ? "PASS" : "FAIL", criterion.name,
                    seconds, criterion.budget_seconds);
        for (const auto& f : check.failures) std::printf("      - %s\n", f.c_str());
        if (check.failed > check.failures.size())
            std::printf("      ... %zu failed checks in total\n", check.failed);
        if (!in_time) std::printf("      - over the time budget\n");
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
