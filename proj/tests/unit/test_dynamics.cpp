#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "kontsevich/dynamics.hpp"
#include "kontsevich/errors.hpp"
#include "scenes.hpp"

using namespace kontsevich;

namespace {

const Complex kLogRatio = std::log(2.0) / (2.0 * std::numbers::pi * Complex(0.0, 1.0));

// Brute-force segment distance by dense sampling.
double sampled_distance(Vec3 p0, Vec3 p1, Vec3 q0, Vec3 q1) {
    double best = 1e300;
    for (int i = 0; i <= 400; ++i)
        for (int j = 0; j <= 400; ++j) {
            const double s = i / 400.0;
            const double u = j / 400.0;
            double d2 = 0.0;
            for (int c = 0; c < 3; ++c) {
                const double a = p0[c] + s * (p1[c] - p0[c]) - q0[c] - u * (q1[c] - q0[c]);
                d2 += a * a;
            }
            best = std::min(best, std::sqrt(d2));
        }
    return best;
}

// Applies the same rigid motion (rotation about t, then translation) to a graph.
EmbeddedGraph moved(const EmbeddedGraph& g, double angle, Complex shift, double dt) {
    EmbeddedGraph out = g;
    for (auto& a : out.arcs)
        for (auto& p : a.points) {
            p.z = p.z * std::polar(1.0, angle) + shift;
            p.t += dt;
        }
    return out;
}

}  // namespace

TEST_CASE("configure at the origin is the identity") {
    const auto s = scenes::strand_touches_diameter();
    for (std::size_t g = 0; g < s.graphs.size(); ++g) {
        const auto c = configure(s.graphs[g], s.plans[g], 0.0, 0.0);
        CHECK_FALSE(c.flagged);
        REQUIRE(c.graph.arcs.size() == s.graphs[g].arcs.size());
        for (std::size_t a = 0; a < c.graph.arcs.size(); ++a)
            for (std::size_t k = 0; k < c.graph.arcs[a].points.size(); ++k) {
                CHECK(c.graph.arcs[a].points[k].z == s.graphs[g].arcs[a].points[k].z);
                CHECK(c.graph.arcs[a].points[k].t == s.graphs[g].arcs[a].points[k].t);
                CHECK(c.graph.arcs[a].points[k].extremum == s.graphs[g].arcs[a].points[k].extremum);
            }
    }
}

TEST_CASE("translating one strand up by a third kills every chord") {
    const auto strands = scenes::two_strands();
    Scene s{strands, {scenes::still(), {scenes::path({{0.0, {0, 0, 0}}, {1.0, {0, 0, 1.0 / 3}}}), {}, 0.0}}};
    const std::vector<Sample> samples = {{{{0.0, 0.0}}}, {{{0.0, 1.0}}}};
    const auto fam = z_family(s, samples, 2, {}, {});
    REQUIRE(fam[0].status == "ok");
    REQUIRE(fam[1].status == "ok");
    CHECK(std::abs(fam[0].table.coefficient({{1, 2}}) - kLogRatio) < 1e-12);
    for (const auto& e : fam[1].table.entries)
        if (!e.word.empty()) CHECK(std::abs(e.value) < 1e-15);
}

TEST_CASE("rotating a cup sideways changes its extrema") {
    EmbeddedGraph cup;
    cup.arcs = {{{{{0, -0.5}, 0.8, false}, {{0, 0}, 0.2, true}, {{0, 0.5}, 0.8, false}}, false}};
    cup.validate();
    const MotionPlan plan{scenes::path({{0.0, {0, 0, 0}}}), scenes::path({{0.0, {0, 0, 0.5}}}), 1.0};
    auto c = configure(cup, plan, std::numbers::pi / 2, 0.0);
    CHECK_FALSE(c.flagged);
    CHECK_FALSE(c.graph.arcs[0].points[1].extremum);
    CHECK(branches(c.graph).size() == 1);
    c = configure(cup, plan, std::numbers::pi / 4, 0.0);
    CHECK(c.graph.arcs[0].points[1].extremum);
    // Lying flat in a horizontal plane flags the configuration.
    EmbeddedGraph ring = scenes::single(scenes::circle(0, 0.5, 0.25, 16));
    const MotionPlan turn{scenes::path({{0.0, {0, 0, 0}}}), scenes::path({{0.0, {0, 0, 0.5}}}), 1.0};
    CHECK(configure(ring, turn, std::numbers::pi / 2, 0.0).flagged);
}

TEST_CASE("segment distance matches dense sampling") {
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int trial = 0; trial < 40; ++trial) {
        const Vec3 p0{u(rng), u(rng), u(rng)}, p1{u(rng), u(rng), u(rng)}, q0{u(rng), u(rng), u(rng)},
            q1{u(rng), u(rng), u(rng)};
        const auto a = scenes::segment(p0, p1);
        const auto b = scenes::segment(q0, q1);
        const double exact = graph_distance(a, b).distance;
        const double sampled = sampled_distance(p0, p1, q0, q1);
        CHECK(exact <= sampled + 1e-12);
        CHECK(exact >= sampled - 0.02);
    }
    // Parallel and degenerate cases.
    CHECK(graph_distance(scenes::segment({0, 0, 0}, {0, 0, 1}), scenes::segment({1, 0, 0.5}, {1, 0, 2})).distance ==
          doctest::Approx(1.0));
}

TEST_CASE("contact classification") {
    const double eps = 1e-3;
    const auto ring = scenes::single(scenes::circle(0, 0.5, 0.25, 64));
    // X: tilted strand through the end of the horizontal diameter.
    const auto x = scenes::segment({0.25, -0.1, 0.4}, {0.25, 0.1, 0.6});
    auto v = classify_contact(ring, x, eps);
    CHECK(v.cls == ContactClass::vanishing);
    CHECK(v.valence == 4);
    // Vertical strand through the top point.
    const auto top = scenes::segment({0, 0, 0.6}, {0, 0, 0.9});
    CHECK(classify_contact(ring, top, eps).cls == ContactClass::regular);
    // Two strands meeting end to end with equal tangents.
    v = classify_contact(scenes::segment({0, 0, 0}, {0, 0, 0.5}), scenes::segment({0, 0, 0.5}, {0, 0, 1}), eps);
    CHECK(v.cls == ContactClass::singular);
    CHECK(v.valence == 2);
    // A strand tangent to the circle away from extrema: singular and ambiguous.
    v = classify_contact(ring, scenes::segment({0.25, 0, 0.3}, {0.25, 0, 0.7}), eps);
    CHECK(v.cls == ContactClass::singular);
    CHECK(v.ambiguous);
    // An end landing on a strand: y-shaped.
    v = classify_contact(scenes::segment({0, 0, 0}, {0, 0, 1}), scenes::segment({0, 0, 0.5}, {1, 0, 1}), eps);
    CHECK(v.cls == ContactClass::vanishing);
    CHECK(v.valence == 3);

    // Invariant under a rigid motion of the whole scene.
    for (double angle : {0.3, 1.9, -2.4}) {
        CHECK(classify_contact(moved(ring, angle, {0.7, -3}, 0.4), moved(x, angle, {0.7, -3}, 0.4), eps).cls ==
              ContactClass::vanishing);
        CHECK(classify_contact(moved(ring, angle, {2, 1}, -0.1), moved(top, angle, {2, 1}, -0.1), eps).cls ==
              ContactClass::regular);
    }
}

TEST_CASE("scripted contact scenes") {
    const GridSpec grid{32, 32};
    const ContactOptions opts;

    Scene far = scenes::rotating_circles();
    far.graphs[1] = moved(far.graphs[1], 0.0, {3, 0}, 0.0);
    far.plans[1].beta = scenes::path({{0.0, {4, 0, 0.5}}, {1.0, {4, 0, 0.8}}});
    CHECK(contact_events(far, 0, 1, grid, opts).components.empty());

    auto r = contact_events(scenes::strand_touches_diameter(), 0, 1, grid, opts);
    REQUIRE(r.components.size() == 1);
    CHECK(r.components[0].type == ContactType::point);
    CHECK(r.components[0].cls == ContactClass::vanishing);
    CHECK(r.components[0].cells[0].tau == doctest::Approx(scenes::kTouchTau).epsilon(1e-2));

    r = contact_events(scenes::strand_touches_top(), 0, 1, grid, opts);
    REQUIRE(r.components.size() == 1);
    CHECK(r.components[0].cls == ContactClass::regular);
    CHECK(r.components[0].type == ContactType::arc);
    CHECK(r.components[0].cells.size() == 32);

    r = contact_events(scenes::rotating_circles(), 0, 1, grid, opts);
    REQUIRE(r.components.size() == 1);
    CHECK(r.components[0].type == ContactType::area);
    CHECK(r.components[0].cells.size() == 32 * 32);

    CHECK_THROWS_AS(contact_events(far, 0, 1, {4, 4}, opts), ValidationError);
    CHECK_THROWS_AS(contact_events(far, 0, 0, grid, opts), ValidationError);
}

TEST_CASE("identifolds") {
    const GridSpec grid{16, 16};
    Scene far = scenes::rotating_circles();
    far.graphs[1] = moved(far.graphs[1], 0.0, {3, 0}, 0.0);
    far.plans[1].beta = scenes::path({{0.0, {4, 0, 0.5}}, {1.0, {4, 0, 0.8}}});
    auto id = build_identifold(far, grid, {});
    CHECK(id.cylinders == 2);
    CHECK(id.identifications.empty());

    id = build_identifold(scenes::rotating_circles(), grid, {});
    REQUIRE(id.identifications.size() == 1);
    CHECK(id.identifications[0].component.type == ContactType::area);

    // A third circle sharing the touching point with both: iterated identification.
    Scene three = scenes::rotating_circles();
    three.graphs.push_back(scenes::single(scenes::circle(0.5, 0.0, 0.5, 64)));
    three.plans.push_back(
        {scenes::path({{0.0, {0, 0, 0}}, {1.0, {0, 0, 0.3}}}), scenes::path({{0.0, {0.5, 0, 0.5}}, {1.0, {0.5, 0, 0.8}}}), 1.0});
    id = build_identifold(three, grid, {});
    bool iterated = false;
    for (const auto& x : id.identifications) iterated = iterated || (x.depth >= 2 && x.cylinders.size() == 3);
    CHECK(iterated);

    Scene lonely;
    lonely.graphs = {scenes::single(scenes::circle(0, 0.5, 0.5, 16))};
    lonely.plans = {scenes::still()};
    CHECK_THROWS_AS(build_identifold(lonely, grid, {}), ValidationError);
}

TEST_CASE("single-graph families are constant") {
    Scene s;
    s.graphs = {scenes::trefoil()};
    s.plans = {{scenes::path({{0.0, {0, 0, 0}}, {0.5, {0.7, -0.3, 0.2}}, {1.0, {-0.4, 0.5, -0.1}}}), {}, 1.0}};
    std::vector<Sample> samples;
    for (int k = 0; k < 6; ++k) samples.push_back({{{0.0, k / 5.0}}});
    const auto fam = z_family(s, samples, 2, {}, {});
    for (const auto& e : fam) {
        REQUIRE(e.status == "ok");
        for (std::size_t k = 0; k < e.table.entries.size(); ++k)
            CHECK(std::abs(e.table.entries[k].value - fam[0].table.entries[k].value) < 1e-9);
    }
}

TEST_CASE("approaching a singular contact") {
    const auto s = scenes::ends_merge();
    std::vector<Sample> samples;
    const std::vector<double> taus = {0.5, 0.8, 0.9, 0.99, 0.996, 1.0};
    for (double tau : taus) samples.push_back({{{0.0, tau}}});
    const auto fam = z_family(s, samples, 1, {}, {});
    double prev = 0.0;
    for (std::size_t k = 0; k + 1 < taus.size(); ++k) {
        REQUIRE(fam[k].status == "ok");
        const double delta = 0.5 * (1 - taus[k]);
        const double base = 1.5 - 0.5 * taus[k];
        const double oracle = std::abs(std::log(delta / base)) / (2 * std::numbers::pi);
        const double got = std::abs(fam[k].table.coefficient({{1, 2}}));
        CHECK(got == doctest::Approx(oracle).epsilon(1e-10));
        CHECK(got > prev);
        prev = got;
        CHECK(fam[k].min_distance == doctest::Approx(delta));
    }
    CHECK(fam.back().status == "contact");
    CHECK(fam.back().detail.find("singular") != std::string::npos);
    CHECK(fam.back().detail.find("cell [0,63]") != std::string::npos);
}
