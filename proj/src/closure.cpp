#include "kontsevich/closure.hpp"

#include <algorithm>
#include <map>

#include "kontsevich/errors.hpp"
#include "kontsevich/limits.hpp"

namespace kontsevich {

namespace {

// Per-strand chord ids bottom-up.
std::vector<std::vector<int>> strand_sequences(const PairingWord& w, int n) {
    std::vector<std::vector<int>> seq(static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (w[k].j > n) throw ValidationError("pairing " + word_to_string({w[k]}) + " refers to a missing strand");
        seq[static_cast<std::size_t>(w[k].i - 1)].push_back(static_cast<int>(k));
        seq[static_cast<std::size_t>(w[k].j - 1)].push_back(static_cast<int>(k));
    }
    return seq;
}

std::vector<PairingWord> all_words(const std::vector<Pairing>& alphabet, int m) {
    std::vector<PairingWord> out{PairingWord{}};
    for (int k = 0; k < m; ++k) {
        std::vector<PairingWord> next;
        next.reserve(out.size() * alphabet.size());
        for (const auto& w : out)
            for (const auto& p : alphabet) {
                auto x = w;
                x.push_back(p);
                next.push_back(std::move(x));
            }
        out.swap(next);
    }
    return out;
}

}  // namespace

ChordDiagram strand_diagram(const PairingWord& w, int n) {
    FootLayout layout{Skeleton::strands(n), strand_sequences(w, n), static_cast<int>(w.size())};
    return layout.to_diagram();
}

ChordDiagram closed_diagram(const PairingWord& w, const ClosureSkeleton& closure) {
    const int n = static_cast<int>(closure.component_of.size());
    const auto per_strand = strand_sequences(w, n);
    FootLayout layout{Skeleton::circles(closure.count()), {}, static_cast<int>(w.size())};
    for (const auto& cycle : closure.cycles) {
        std::vector<int> seq;
        for (int s : cycle) {
            const auto& feet = per_strand[static_cast<std::size_t>(s - 1)];
            seq.insert(seq.end(), feet.begin(), feet.end());
        }
        layout.sequences.push_back(std::move(seq));
    }
    return layout.to_diagram();
}

std::vector<TangleClassValue> act_on_braid(const CoefficientTable& table, const GeometricBraid& b) {
    if (table.source_hash != b.hash()) throw ValidationError("coefficient table was computed on a different braid");
    std::vector<TangleClassValue> out;
    out.reserve(table.entries.size());
    for (const auto& e : table.entries)
        out.push_back({e.word, strand_diagram(e.word, b.strand_count()), e.value});
    return out;
}

std::vector<SlidingClass> sliding_classes(const GeometricBraid& b, int m) {
    if (m < 0) throw ValidationError("degree must be nonnegative");
    const int cap = degree_cap(kDefaultTableDegreeCap);
    if (m > cap) throw ResourceError("degree " + std::to_string(m) + " exceeds the table cap " + std::to_string(cap));
    const auto closure = closure_skeleton(b);
    const int n = b.strand_count();
    std::vector<Pairing> alphabet;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) alphabet.emplace_back(i, j);
    if (alphabet.empty() && m > 0) return {};

    std::map<CanonicalCode, std::size_t> by_code;
    std::vector<SlidingClass> out;
    // Words arrive in lexicographic order, so the first member is the minimum.
    for (auto& w : all_words(alphabet, m)) {
        auto code = canonicalize(closed_diagram(w, closure));
        auto [it, fresh] = by_code.try_emplace(code, out.size());
        if (fresh) out.push_back({w, {}, std::move(code)});
        out[it->second].members.push_back(std::move(w));
    }
    return out;
}

ClosedZ closed_Z(const CoefficientTable& table, const GeometricBraid& b, bool use_fi, int M) {
    if (table.source_hash != b.hash()) throw ValidationError("coefficient table was computed on a different braid");
    if (M < 0) M = table.max_degree;
    if (M > table.max_degree)
        throw ValidationError("degree " + std::to_string(M) + " exceeds the table's max degree " +
                              std::to_string(table.max_degree));
    const auto closure = closure_skeleton(b);
    ClosedZ out;
    out.components = closure.count();
    out.use_fi = use_fi;
    const Skeleton skel = Skeleton::circles(closure.count());
    for (int m = 0; m <= M; ++m) {
        ClosedDegree deg;
        deg.degree = m;
        for (auto& cls : sliding_classes(b, m)) {
            Complex sum = 0.0;
            for (const auto& w : cls.members) sum += table.coefficient(w);
            deg.combination.add(cls.closed_code, sum);
            deg.classes.push_back({std::move(cls), sum});
        }
        const auto& q = cached_quotient(skel, m, use_fi);
        deg.basis = q.basis();
        deg.coordinates = q.project(deg.combination);
        out.degrees.push_back(std::move(deg));
    }
    return out;
}

ComplexCombination strand_combination(const CoefficientTable& table, int n, int m) {
    if (m > table.max_degree) throw ValidationError("degree exceeds the table's max degree");
    ComplexCombination v;
    for (const auto& e : table.entries)
        if (static_cast<int>(e.word.size()) == m) v.add(canonicalize(strand_diagram(e.word, n)), e.value);
    return v;
}

std::vector<Complex> project_strands(const CoefficientTable& table, int n, int m) {
    return cached_quotient(Skeleton::strands(n), m, false).project(strand_combination(table, n, m));
}

ComplexCombination relabel_components(const ComplexCombination& v, const std::vector<int>& map) {
    ComplexCombination out;
    for (const auto& [code, c] : v.terms()) {
        ChordDiagram d = decode(code);
        if (static_cast<int>(map.size()) != d.skeleton.count) throw ValidationError("component map has the wrong size");
        for (auto& [a, b] : d.chords) {
            a.component = map[static_cast<std::size_t>(a.component - 1)];
            b.component = map[static_cast<std::size_t>(b.component - 1)];
        }
        out.add(canonicalize(d), c);
    }
    return out;
}

InvarianceReport compare_realizations(const GeometricBraid& a, const GeometricBraid& b, int M,
                                      const QuadratureConfig& quad) {
    if (a.strand_count() != b.strand_count()) throw ValidationError("realizations have different strand counts");
    if (validate(a).permutation != validate(b).permutation)
        throw ValidationError("realizations have different endpoint permutations");
    const auto ta = lambda_table(a, M, quad);
    const auto tb = lambda_table(b, M, quad);
    const int n = a.strand_count();
    InvarianceReport out;
    out.max_err = std::max(ta.max_err(), tb.max_err());
    for (int m = 1; m <= M; ++m) {
        InvarianceDegree d{m, 0.0, m > 1};
        if (m == 1) {
            for (std::size_t k = 0; k < ta.entries.size(); ++k)
                if (ta.entries[k].word.size() == 1)
                    d.max_diff = std::max(d.max_diff, std::abs(ta.entries[k].value - tb.entries[k].value));
        } else {
            const auto pa = project_strands(ta, n, m);
            const auto pb = project_strands(tb, n, m);
            for (std::size_t k = 0; k < pa.size(); ++k) d.max_diff = std::max(d.max_diff, std::abs(pa[k] - pb[k]));
        }
        out.degrees.push_back(d);
    }
    return out;
}

}  // namespace kontsevich
