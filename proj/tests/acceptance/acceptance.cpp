// One PASS/FAIL line per acceptance criterion; exit status is the failure count.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "kontsevich/braid.hpp"
#include "kontsevich/closure.hpp"
#include "kontsevich/dynamics.hpp"
#include "kontsevich/kz.hpp"
#include "kontsevich/quotient.hpp"
#include "oracles/brute_diagrams.hpp"
#include "oracles/dense_rank.hpp"
#include "oracles/winding.hpp"
#include "oracles/words.hpp"
#include "scenes.hpp"

using namespace kontsevich;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double limit_seconds, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit_seconds > 0 && secs > limit_seconds) {
        o.pass = false;
        o.detail += " (over the time limit)";
    }
    if (!o.pass) ++failures;
    std::printf("%s %2d %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << x;
    return os.str();
}

std::vector<int> random_word(std::mt19937& rng, int n, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<int> gen(1, n - 1);
    std::vector<int> w(static_cast<std::size_t>(len(rng)));
    for (auto& g : w) g = gen(rng) * (rng() % 2 ? 1 : -1);
    return w;
}

int dense_quotient_dimension(const Skeleton& s, int m, bool fi) {
    const auto codes = enumerate_codes(s, m);
    std::map<CanonicalCode, std::size_t> index;
    for (const auto& code : codes) index.emplace(code, index.size());
    auto rels = relations_4T(s, m);
    if (fi) {
        const auto extra = relations_FI(s, m);
        rels.insert(rels.end(), extra.begin(), extra.end());
    }
    oracle::DenseMatrix dense;
    for (const auto& r : rels) {
        std::vector<oracle::Rational> row(codes.size(), oracle::Rational(0));
        for (const auto& [code, v] : r.terms()) row[index.at(code)] = v;
        dense.push_back(std::move(row));
    }
    return static_cast<int>(codes.size()) - oracle::dense_rank(dense);
}

struct SceneSummary {
    std::vector<std::pair<ContactType, ContactClass>> shape;
    std::string text;
};

SceneSummary summarize(const ContactReport& r) {
    SceneSummary s;
    for (const auto& c : r.components) {
        s.shape.emplace_back(c.type, c.cls);
        s.text += to_string(c.type) + "/" + to_string(c.cls) + (c.ambiguous ? "(ambiguous)" : "") + " ";
    }
    if (s.text.empty()) s.text = "none ";
    return s;
}

}  // namespace

int main() {
    criterion(1, "two-strand log ratio", 1.0, [] {
        const Complex expected(0.0, -std::log(2.0) / (2.0 * std::numbers::pi));
        const auto g = disjoint_union(scenes::two_strands());
        const Complex got = z_graph(g, 1).coefficient({{1, 2}});
        return Outcome{std::abs(got - expected) < 1e-6,
                       "got " + fmt(got.real()) + (got.imag() < 0 ? "" : "+") + fmt(got.imag()) + "i, expected " +
                           fmt(expected.imag()) + "i"};
    });

    criterion(2, "full-twist winding", 1.0, [] {
        const std::vector<int> twist{1, 1}, cancel{1, -1};
        const auto a = realize_braid_word(twist, 2);
        const auto b = realize_braid_word(cancel, 2);
        const Complex za = lambda_table(a, 1).coefficient({{1, 2}});
        const Complex zb = lambda_table(b, 1).coefficient({{1, 2}});
        const double wa = oracle::winding(a, 1, 2);
        const double wb = oracle::winding(b, 1, 2);
        const bool ok = std::abs(za - 1.0) < 1e-6 && std::abs(zb) < 1e-6 && std::abs(za - wa) < 1e-6 &&
                        std::abs(zb - wb) < 1e-6;
        return Outcome{ok, "[1,1] -> " + fmt(za.real()) + " (winding oracle " + fmt(wa) + "), [1,-1] -> " +
                               fmt(std::abs(zb)) + " (winding oracle " + fmt(wb) + ")"};
    });

    criterion(3, "quotient dimensions", 60.0, [] {
        const int expected[] = {1, 0, 1, 1, 3};
        bool ok = true;
        std::string dims;
        for (int m = 0; m <= 4; ++m) {
            const QuotientSpace q(Skeleton::circles(1), m, true);
            const int dense = dense_quotient_dimension(Skeleton::circles(1), m, true);
            const int brute = oracle::brute_dimension(true, 1, m, true);
            ok = ok && q.dimension() == expected[m] && dense == q.dimension() && brute == q.dimension();
            dims += std::to_string(q.dimension()) + (m < 4 ? "," : "");
        }
        return Outcome{ok, "sparse dims " + dims + "; dense and brute-force oracles agree"};
    });

    criterion(4, "Chen multiplicativity", 300.0, [] {
        std::mt19937 rng(2024);
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const auto b1 = realize_braid_word(random_word(rng, 3, 4), 3);
            const auto b2 = realize_braid_word(random_word(rng, 3, 4), 3);
            const auto perm = validate(b1).permutation;
            const auto t1 = lambda_table(b1, 3);
            const auto t2 = lambda_table(b2, 3);
            const auto ts = lambda_table(stack(b1, b2), 3);
            for (const auto& e : ts.entries) {
                Complex conv = 0.0;
                for (std::size_t k = 0; k <= e.word.size(); ++k) {
                    const PairingWord u(e.word.begin(), e.word.begin() + static_cast<std::ptrdiff_t>(k));
                    const PairingWord v(e.word.begin() + static_cast<std::ptrdiff_t>(k), e.word.end());
                    conv += t1.coefficient(u) * t2.coefficient(relabel(v, perm));
                }
                worst = std::max(worst, std::abs(e.value - conv));
            }
        }
        return Outcome{worst < 1e-5, "20 pairs, max deviation " + fmt(worst)};
    });

    criterion(5, "shuffle identity", 0.0, [] {
        std::mt19937 rng(77);
        double worst = 0.0;
        int checks = 0;
        for (int trial = 0; trial < 10; ++trial) {
            const auto t = lambda_table(realize_braid_word(random_word(rng, 3, 4), 3), 3);
            for (int lu = 0; lu <= 3; ++lu)
                for (int lv = 0; lu + lv <= 3; ++lv)
                    for (const auto& u : oracle::words_of_length(t.alphabet, lu))
                        for (const auto& v : oracle::words_of_length(t.alphabet, lv)) {
                            Complex sum = 0.0;
                            for (const auto& w : oracle::shuffles(u, v)) sum += t.coefficient(w);
                            worst = std::max(worst, std::abs(t.coefficient(u) * t.coefficient(v) - sum));
                            ++checks;
                        }
        }
        return Outcome{worst < 1e-5, std::to_string(checks) + " (u,v) pairs, max deviation " + fmt(worst)};
    });

    criterion(6, "degree-1 homotopy invariance", 0.0, [] {
        struct Pair {
            std::vector<int> word;
            int n;
        };
        const Pair pairs[] = {{{1}, 2},        {{1, 1, 1}, 2},   {{-1, -1}, 2},    {{1, -1, 1}, 2},  {{1, 1}, 2},
                              {{1, 2}, 3},     {{1, -2, 1}, 3},  {{2, 2, -1}, 3},  {{1, 2, 1, 2}, 3}, {{-2, 1}, 3}};
        double worst1 = 0.0, worst2 = 0.0;
        int seed = 0;
        for (const auto& p : pairs) {
            const auto a = realize_braid_word(p.word, p.n, {16, 1.0});
            // A second realization: other sampling and bulge, then a bump homotopy.
            const auto base = realize_braid_word(p.word, p.n, {7, 0.6});
            const auto b = bump(base, 0.1, static_cast<std::uint64_t>(++seed));
            for (int s = 0; s <= 20; ++s) require_valid(bump(base, 0.1 * s / 20.0, static_cast<std::uint64_t>(seed)), 1e-3);
            const auto rep = compare_realizations(a, b, 2);
            worst1 = std::max(worst1, rep.degrees[0].max_diff);
            worst2 = std::max(worst2, rep.degrees[1].max_diff);
        }
        return Outcome{worst1 < 1e-6 && worst2 < 1e-4,
                       "10 pairs, degree 1 max diff " + fmt(worst1) + ", projected degree 2 max diff " + fmt(worst2)};
    });

    criterion(7, "closure and framing independence", 0.0, [] {
        const std::vector<int> w1{1}, w11{1, 1};
        const auto unknot = realize_braid_word(w1, 2);
        const auto hopf = realize_braid_word(w11, 2);
        const auto zu = closed_Z(lambda_table(unknot, 1), unknot, true);
        const auto zu_raw = closed_Z(lambda_table(unknot, 1), unknot, false);
        const auto zh = closed_Z(lambda_table(hopf, 1), hopf, true);
        const auto& du = zu.degrees[1];
        double unknot_norm = 0.0;
        for (auto c : du.coordinates) unknot_norm = std::max(unknot_norm, std::abs(c));
        const Complex isolated = zu_raw.degrees[1].coordinates.at(0);
        // On the Hopf skeleton the only degree-1 class with FI is the chord between the circles.
        Complex linking = 0.0;
        for (const auto& c : zh.degrees[1].classes)
            if (decode(c.cls.closed_code).chords[0].first.component != decode(c.cls.closed_code).chords[0].second.component)
                linking = c.raw_sum;
        const double wind = oracle::winding(hopf, 1, 2);
        const bool ok = zu.components == 1 && unknot_norm < 1e-12 && zh.components == 2 &&
                        std::abs(linking - 1.0) < 1e-6 && std::abs(wind - 1.0) < 1e-9;
        return Outcome{ok, "unknot degree-1 projection " + fmt(unknot_norm) + " (raw isolated chord " +
                               fmt(isolated.real()) + " killed by FI), Hopf class coefficient " +
                               fmt(linking.real()) + " (winding oracle " + fmt(wind) + ")"};
    });

    criterion(8, "translation scene", 0.0, [] {
        Scene s{scenes::two_strands(),
                {scenes::still(), {scenes::path({{0.0, {0, 0, 0}}, {1.0, {0, 0, 1.0 / 3}}}), {}, 0.0}}};
        const auto fam = z_family(s, {{{{0.0, 0.0}}}, {{{0.0, 1.0}}}}, 3, {}, {});
        if (fam[1].status != "ok") return Outcome{false, "translated sample was " + fam[1].status};
        double worst = 0.0;
        for (const auto& e : fam[1].table.entries)
            if (!e.word.empty()) worst = std::max(worst, std::abs(e.value));
        const double before = std::abs(fam[0].table.coefficient({{1, 2}}));
        return Outcome{worst < 1e-9 && before > 0.1,
                       "degree-1 before " + fmt(before) + ", max |coefficient| after " + fmt(worst)};
    });

    criterion(9, "identifold scenes", 0.0, [] {
        struct Case {
            const char* name;
            Scene scene;
            ContactType type;
            ContactClass cls;
        };
        const Case cases[] = {
            {"(a) diameter", scenes::strand_touches_diameter(), ContactType::point, ContactClass::vanishing},
            {"(b) top", scenes::strand_touches_top(), ContactType::arc, ContactClass::regular},
            {"(c) rotating circles", scenes::rotating_circles(), ContactType::area, ContactClass::singular},
        };
        bool ok = true;
        std::string detail;
        for (const auto& c : cases) {
            const auto start = std::chrono::steady_clock::now();
            const auto coarse = summarize(contact_events(c.scene, 0, 1, {64, 64}, {}));
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            const auto fine = summarize(contact_events(c.scene, 0, 1, {128, 128}, {}));
            const bool match = coarse.shape.size() == 1 && coarse.shape[0] == std::make_pair(c.type, c.cls) &&
                               fine.shape == coarse.shape && secs < 30.0;
            ok = ok && match;
            detail += std::string(c.name) + ": " + coarse.text + "at 64x64 in " + fmt(secs) + "s, " + fine.text +
                      "at 128x128; ";
        }
        return Outcome{ok, detail};
    });

    criterion(10, "single-graph time independence", 0.0, [] {
        Scene s;
        s.graphs = {scenes::trefoil()};
        s.plans = {{scenes::path({{0.0, {0, 0, 0}}, {0.3, {0.8, -0.4, 0.15}}, {0.7, {-0.5, 0.6, -0.1}}, {1.0, {0.2, 0.2, 0.3}}}),
                    {}, 1.0}};
        std::vector<Sample> samples;
        for (int k = 0; k < 16; ++k) samples.push_back({{{0.0, k / 15.0}}});
        const auto fam = z_family(s, samples, 2, {}, {});
        double worst = 0.0;
        for (const auto& e : fam) {
            if (e.status != "ok") return Outcome{false, "sample status " + e.status};
            for (std::size_t k = 0; k < e.table.entries.size(); ++k)
                worst = std::max(worst, std::abs(e.table.entries[k].value - fam[0].table.entries[k].value));
        }
        return Outcome{worst < 1e-6, "16 samples, " + std::to_string(fam[0].table.entries.size()) +
                                         " coefficients, max variation " + fmt(worst)};
    });

    std::printf("%d failed\n", failures);
    return failures;
}
