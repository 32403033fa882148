#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "kontsevich/errors.hpp"
#include "kontsevich/kz.hpp"
#include "oracles/winding.hpp"
#include "oracles/words.hpp"

using namespace kontsevich;

namespace {

const Complex kLogRatio = std::log(2.0) / (2.0 * std::numbers::pi * Complex(0.0, 1.0));

// Strand 1 fixed at 0; strand 2 moves from 1 to 2 during [1/3, 2/3].
GeometricBraid log_ratio_braid() {
    return GeometricBraid(std::vector<Polyline>{
        {{0.0, {0, 0}}, {1.0, {0, 0}}},
        {{0.0, {1, 0}}, {1.0 / 3, {1, 0}}, {2.0 / 3, {2, 0}}, {1.0, {2, 0}}}});
}

GeometricBraid word_braid(std::vector<int> w, int n, int steps = 16, double bulge = 1.0) {
    return realize_braid_word(w, n, {steps, bulge});
}

std::vector<int> random_word(std::mt19937& rng, int n, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<int> gen(1, n - 1);
    std::vector<int> w(static_cast<std::size_t>(len(rng)));
    for (auto& g : w) g = gen(rng) * (rng() % 2 ? 1 : -1);
    return w;
}

GraphArc vertical_arc(Complex z0, Complex z1, double t0, double t1) {
    return {{{z0, t0, false}, {z1, t1, false}}, false};
}

}  // namespace

TEST_CASE("degree-one log ratio") {
    const auto b = log_ratio_braid();
    const Complex v = iterated_integral(b, {{1, 2}});
    CHECK(std::abs(v - kLogRatio) < 1e-12);
    CHECK(v.imag() == doctest::Approx(-0.110318).epsilon(1e-5));
    const auto t = lambda_table(b, 2);
    CHECK(std::abs(t.coefficient({{1, 2}}) - kLogRatio) < 1e-12);
    // A single letter commutes with itself: the degree-2 term is v^2/2 exactly.
    CHECK(std::abs(t.coefficient({{1, 2}, {1, 2}}) - 0.5 * kLogRatio * kLogRatio) < 1e-12);
}

TEST_CASE("constant strands have trivial tables") {
    const auto t = lambda_table(word_braid({}, 2), 3);
    REQUIRE(t.entries.size() == 4);
    CHECK(t.entries[0].word.empty());
    CHECK(t.entries[0].value == Complex(1.0));
    for (std::size_t k = 1; k < t.entries.size(); ++k) CHECK(t.entries[k].value == Complex(0.0));
    const auto one = lambda_table(word_braid({1}, 2), 1);
    CHECK(one.entries.size() == 2);
    CHECK(lambda_table(word_braid({}, 3), 2).entries.size() == 13);
}

TEST_CASE("full twist integrates to one") {
    const auto twist = word_braid({1, 1}, 2);
    CHECK(std::abs(iterated_integral(twist, {{1, 2}}) - Complex(1.0)) < 1e-12);
    CHECK(std::abs(iterated_integral(word_braid({1, -1}, 2), {{1, 2}})) < 1e-12);
    // Degree one equals the argument-tracking winding on every pair.
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const auto b = word_braid(random_word(rng, 4, 6), 4);
        const auto t = lambda_table(b, 1);
        for (int i = 1; i <= 4; ++i)
            for (int j = i + 1; j <= 4; ++j) {
                const Complex v = t.coefficient({{i, j}});
                const auto zi0 = b.position(i, 0.0) - b.position(j, 0.0);
                const auto zi1 = b.position(i, 1.0) - b.position(j, 1.0);
                const Complex expected =
                    Complex(std::log(std::abs(zi1) / std::abs(zi0)), oracle::argument_change(b, i, j)) /
                    (2.0 * std::numbers::pi * Complex(0.0, 1.0));
                CHECK(std::abs(v - expected) < 1e-10);
            }
    }
}

TEST_CASE("shuffle identity") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 6; ++trial) {
        const auto b = word_braid(random_word(rng, 3, 4), 3);
        const auto t = lambda_table(b, 3);
        for (int lu = 1; lu <= 2; ++lu)
            for (int lv = 1; lu + lv <= 3; ++lv)
                for (const auto& u : oracle::words_of_length(t.alphabet, lu))
                    for (const auto& v : oracle::words_of_length(t.alphabet, lv)) {
                        Complex sum = 0.0;
                        for (const auto& w : oracle::shuffles(u, v)) sum += t.coefficient(w);
                        CHECK(std::abs(t.coefficient(u) * t.coefficient(v) - sum) < 1e-9);
                    }
    }
}

TEST_CASE("concatenation identity with strand relabelling") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 6; ++trial) {
        const auto b1 = word_braid(random_word(rng, 3, 3), 3);
        const auto b2 = word_braid(random_word(rng, 3, 3), 3);
        const auto s = stack(b1, b2);
        const auto perm = validate(b1).permutation;
        const auto t1 = lambda_table(b1, 3);
        const auto t2 = lambda_table(b2, 3);
        const auto ts = lambda_table(s, 3);
        for (const auto& e : ts.entries) {
            Complex conv = 0.0;
            for (std::size_t k = 0; k <= e.word.size(); ++k) {
                const PairingWord u(e.word.begin(), e.word.begin() + static_cast<std::ptrdiff_t>(k));
                const PairingWord v(e.word.begin() + static_cast<std::ptrdiff_t>(k), e.word.end());
                conv += t1.coefficient(u) * t2.coefficient(relabel(v, perm));
            }
            CHECK(std::abs(e.value - conv) < 1e-7);
        }
    }
}

TEST_CASE("error estimates bound a further halving") {
    const auto b = word_braid({1, 2, -1, 2}, 3, 6, 1.7);
    QuadratureConfig q;
    q.tol = 1e-6;
    const auto t = lambda_table(b, 3, q);
    QuadratureConfig finer = q;
    finer.kappa = t.kappa / 2;
    finer.max_refinements = 0;
    const auto f = lambda_table(b, 3, finer);
    for (std::size_t k = 0; k < t.entries.size(); ++k)
        CHECK(std::abs(t.entries[k].value - f.entries[k].value) <= t.entries[k].err);
    CHECK(t.max_err() <= q.tol);
}

TEST_CASE("degree-one values are invariant under homotopy of the realization") {
    const std::vector<std::vector<int>> words = {{1, 2, -1}, {2, 2, 1}, {1, -2, 1, 2}};
    for (const auto& w : words) {
        const auto a = lambda_table(word_braid(w, 3, 8, 1.0), 1);
        const auto b = lambda_table(word_braid(w, 3, 24, 0.4), 1);
        for (std::size_t k = 0; k < a.entries.size(); ++k) CHECK(std::abs(a.entries[k].value - b.entries[k].value) < 1e-10);
    }
}

TEST_CASE("tables are deterministic and serialize in word order") {
    const auto b = word_braid({1, -2}, 3);
    const auto csv = lambda_table(b, 2).to_csv();
    CHECK(csv == lambda_table(b, 2).to_csv());
    CHECK(csv.rfind("degree,word,re,im,err\n0,,1,0,0\n1,1-2,", 0) == 0);
    CHECK(word_from_string("1-2|2-3") == PairingWord{{1, 2}, {2, 3}});
    CHECK(word_to_string(word_from_string("3-1|1-2")) == "1-3|1-2");
    CHECK_THROWS_AS(word_from_string("1-"), ParseError);
    CHECK_THROWS_AS(word_from_string("2-2"), ValidationError);
}

TEST_CASE("near collisions exhaust the subdivision budget") {
    GeometricBraid close(std::vector<Polyline>{{{0.0, {-1, 0}}, {1.0, {1, 0}}}, {{0.0, {1, 1e-7}}, {1.0, {-1, 1e-7}}}});
    QuadratureConfig q;
    q.max_levels = 8;
    CHECK_THROWS_AS(lambda_table(close, 1, q), NumericalError);
    CHECK_NOTHROW(lambda_table(close, 1));
}

TEST_CASE("degree caps") {
    CHECK_THROWS_AS(lambda_table(word_braid({1}, 2), 5), ResourceError);
}

TEST_CASE("graph integrals match braids on the overlap span") {
    EmbeddedGraph g;
    g.arcs = {vertical_arc({0, 0}, {0, 0}, 1.0 / 3, 2.0 / 3), vertical_arc({1, 0}, {2, 0}, 1.0 / 3, 2.0 / 3)};
    const auto t = z_graph(g, 2);
    CHECK(std::abs(t.coefficient({{1, 2}}) - kLogRatio) < 1e-12);
    const auto braid = lambda_table(log_ratio_braid(), 2);
    for (std::size_t k = 0; k < t.entries.size(); ++k) CHECK(std::abs(t.entries[k].value - braid.entries[k].value) < 1e-12);

    // Translate the second strand up by 1/3: no common times remain.
    EmbeddedGraph up = g;
    for (auto& p : up.arcs[1].points) p.t += 1.0 / 3;
    for (const auto& e : z_graph(up, 3).entries)
        if (!e.word.empty()) CHECK(std::abs(e.value) < 1e-15);

    // Rigid motion of the whole graph leaves the table unchanged.
    EmbeddedGraph moved = g;
    for (auto& a : moved.arcs)
        for (auto& p : a.points) {
            p.z += Complex(3.5, -2.0);
            p.t += 0.17;
        }
    const auto tm = z_graph(moved, 2);
    for (std::size_t k = 0; k < t.entries.size(); ++k) CHECK(std::abs(t.entries[k].value - tm.entries[k].value) < 1e-12);

    // Reversing one strand puts a foot on a downward arc and flips the sign.
    EmbeddedGraph rev = g;
    std::reverse(rev.arcs[1].points.begin(), rev.arcs[1].points.end());
    const auto tr = z_graph(rev, 2);
    CHECK(std::abs(tr.coefficient({{1, 2}}) + kLogRatio) < 1e-12);
    CHECK(word_sign(branches(rev), {{1, 2}, {1, 2}, {1, 2}}) == -1);
    CHECK(word_sign(branches(g), {{1, 2}}) == 1);
}

TEST_CASE("extremum windows truncate near turning points") {
    // A cap: up from (0,0.2) to the top (0.5,0.8), down to (1,0.2); a vertical strand at x=3.
    EmbeddedGraph g;
    g.arcs = {{{{{0, 0}, 0.2, false}, {{0.5, 0}, 0.8, true}, {{1, 0}, 0.2, false}}, false},
              vertical_arc({3, 0}, {3, 0}, 0.0, 1.0)};
    const auto gp = graph_problem(g, 0.01);
    REQUIRE(gp.branches.size() == 3);
    for (const auto& slab : gp.series.slabs) CHECK((slab.t1 <= 0.79 + 1e-15 || slab.t0 >= 0.81 - 1e-15));
    const auto t = z_graph(g, 2, {}, 0.01);
    // The two cap branches meet at the top; the truncated integral of their
    // letter is finite and grows as the window shrinks.
    const double wide = std::abs(t.coefficient({{1, 2}}));
    const double narrow = std::abs(z_graph(g, 1, {}, 1e-4).coefficient({{1, 2}}));
    CHECK(narrow > wide);
    CHECK(std::isfinite(narrow));
}
