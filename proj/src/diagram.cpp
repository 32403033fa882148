#include "kontsevich/diagram.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "kontsevich/errors.hpp"
#include "kontsevich/limits.hpp"

namespace kontsevich {

namespace {

constexpr int kMaxCodeValue = 255;

// Global foot order: component-major, then position. Returns for every foot
// the global index of its partner, given per-component rotation offsets.
void encode_into(const FootLayout& layout, const std::vector<int>& rotation, CanonicalCode& out) {
    const auto& seqs = layout.sequences;
    out.clear();
    out.push_back(static_cast<std::uint8_t>(layout.skeleton.kind));
    out.push_back(static_cast<std::uint8_t>(layout.skeleton.count));
    for (const auto& s : seqs) out.push_back(static_cast<std::uint8_t>(s.size()));

    // first/second global index of every chord
    std::vector<int> first(static_cast<std::size_t>(layout.chord_count), -1);
    std::vector<int> second(static_cast<std::size_t>(layout.chord_count), -1);
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(2 * layout.chord_count));
    int g = 0;
    for (std::size_t c = 0; c < seqs.size(); ++c) {
        const auto& s = seqs[c];
        const std::size_t k = s.size();
        for (std::size_t p = 0; p < k; ++p) {
            const int chord = s[(p + static_cast<std::size_t>(rotation[c])) % k];
            order.push_back(chord);
            auto& slot = first[static_cast<std::size_t>(chord)] < 0 ? first : second;
            slot[static_cast<std::size_t>(chord)] = g++;
        }
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto chord = static_cast<std::size_t>(order[i]);
        const int partner = first[chord] == static_cast<int>(i) ? second[chord] : first[chord];
        out.push_back(static_cast<std::uint8_t>(partner));
    }
}

void check_encodable(const Skeleton& s, int chords) {
    if (s.count > kMaxCodeValue || 2 * chords > kMaxCodeValue)
        throw ResourceError("diagram too large for canonical encoding");
}

int resolve_cap(int cap) { return cap > 0 ? cap : degree_cap(kDefaultDiagramDegreeCap); }

// All weak compositions of `total` into `parts` nonnegative parts.
void compositions(int total, int parts, std::vector<int>& current, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(current.size()) == parts - 1) {
        current.push_back(total);
        out.push_back(current);
        current.pop_back();
        return;
    }
    for (int k = 0; k <= total; ++k) {
        current.push_back(k);
        compositions(total - k, parts, current, out);
        current.pop_back();
    }
}

// Enumerates perfect matchings of feet 0..2m-1; `partner` is filled in place.
template <class Fn>
void matchings(std::vector<int>& partner, Fn&& fn) {
    auto first_free = std::find(partner.begin(), partner.end(), -1);
    if (first_free == partner.end()) {
        fn(partner);
        return;
    }
    const auto i = static_cast<std::size_t>(first_free - partner.begin());
    for (std::size_t j = i + 1; j < partner.size(); ++j) {
        if (partner[j] != -1) continue;
        partner[i] = static_cast<int>(j);
        partner[j] = static_cast<int>(i);
        matchings(partner, fn);
        partner[i] = -1;
        partner[j] = -1;
    }
}

}  // namespace

std::string Skeleton::to_string() const {
    return (is_circles() ? "circles:" : "strands:") + std::to_string(count);
}

Skeleton Skeleton::parse(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ParseError("skeleton must look like circles:q or strands:n");
    const std::string kind = text.substr(0, colon);
    int count = 0;
    try {
        std::size_t used = 0;
        count = std::stoi(text.substr(colon + 1), &used);
        if (used != text.size() - colon - 1) throw std::invalid_argument(text);
    } catch (const std::exception&) {
        throw ParseError("bad skeleton component count: " + text);
    }
    if (count < 1) throw ValidationError("skeleton needs at least one component");
    if (kind == "circles") return circles(count);
    if (kind == "strands") return strands(count);
    throw ParseError("unknown skeleton kind: " + kind);
}

void ChordDiagram::validate() const {
    if (skeleton.count < 1) throw ValidationError("skeleton needs at least one component");
    std::vector<std::vector<int>> seen(static_cast<std::size_t>(skeleton.count));
    for (const auto& [a, b] : chords) {
        for (const Foot& f : {a, b}) {
            if (f.component < 1 || f.component > skeleton.count)
                throw ValidationError("chord foot on component " + std::to_string(f.component) + " out of range");
            if (f.position < 0) throw ValidationError("negative foot position");
            seen[static_cast<std::size_t>(f.component - 1)].push_back(f.position);
        }
        if (a == b) throw ValidationError("chord with coincident feet");
    }
    for (std::size_t c = 0; c < seen.size(); ++c) {
        auto& s = seen[c];
        std::sort(s.begin(), s.end());
        for (std::size_t p = 0; p < s.size(); ++p) {
            if (p > 0 && s[p] == s[p - 1])
                throw ValidationError("duplicate foot at component " + std::to_string(c + 1) + " position " +
                                      std::to_string(s[p]));
            if (s[p] != static_cast<int>(p))
                throw ValidationError("foot positions on component " + std::to_string(c + 1) +
                                      " are not 0..k-1 without gaps");
        }
    }
}

FootLayout FootLayout::from_diagram(const ChordDiagram& d) {
    d.validate();
    FootLayout layout;
    layout.skeleton = d.skeleton;
    layout.chord_count = d.degree();
    layout.sequences.resize(static_cast<std::size_t>(d.skeleton.count));
    std::vector<std::vector<std::pair<int, int>>> placed(static_cast<std::size_t>(d.skeleton.count));
    for (std::size_t id = 0; id < d.chords.size(); ++id) {
        const auto& [a, b] = d.chords[id];
        placed[static_cast<std::size_t>(a.component - 1)].emplace_back(a.position, static_cast<int>(id));
        placed[static_cast<std::size_t>(b.component - 1)].emplace_back(b.position, static_cast<int>(id));
    }
    for (std::size_t c = 0; c < placed.size(); ++c) {
        std::sort(placed[c].begin(), placed[c].end());
        for (const auto& [pos, id] : placed[c]) layout.sequences[c].push_back(id);
    }
    return layout;
}

ChordDiagram FootLayout::to_diagram() const {
    ChordDiagram d;
    d.skeleton = skeleton;
    std::vector<std::vector<Foot>> feet(static_cast<std::size_t>(chord_count));
    for (std::size_t c = 0; c < sequences.size(); ++c)
        for (std::size_t p = 0; p < sequences[c].size(); ++p)
            feet[static_cast<std::size_t>(sequences[c][p])].push_back(
                {static_cast<int>(c) + 1, static_cast<int>(p)});
    for (const auto& f : feet) {
        if (f.size() != 2) throw ValidationError("layout chord does not have exactly two feet");
        d.chords.emplace_back(f[0], f[1]);
    }
    return d;
}

CanonicalCode canonicalize(const FootLayout& layout) {
    check_encodable(layout.skeleton, layout.chord_count);
    const std::size_t q = layout.sequences.size();
    std::vector<int> rotation(q, 0);
    CanonicalCode best;
    CanonicalCode candidate;
    encode_into(layout, rotation, best);
    if (!layout.skeleton.is_circles()) return best;

    // Odometer over independent per-circle rotations.
    while (true) {
        std::size_t c = 0;
        for (; c < q; ++c) {
            const int k = static_cast<int>(layout.sequences[c].size());
            if (++rotation[c] < std::max(k, 1)) break;
            rotation[c] = 0;
        }
        if (c == q) break;
        encode_into(layout, rotation, candidate);
        if (candidate < best) best.swap(candidate);
    }
    return best;
}

CanonicalCode canonicalize(const ChordDiagram& d) { return canonicalize(FootLayout::from_diagram(d)); }

ChordDiagram decode(const CanonicalCode& code) {
    if (code.size() < 2) throw ValidationError("canonical code too short");
    ChordDiagram d;
    d.skeleton.kind = code[0] == 0 ? SkeletonKind::circles : SkeletonKind::strands;
    d.skeleton.count = code[1];
    const std::size_t q = code[1];
    if (code.size() < 2 + q) throw ValidationError("canonical code header truncated");
    std::vector<Foot> feet;
    for (std::size_t c = 0; c < q; ++c)
        for (int p = 0; p < code[2 + c]; ++p) feet.push_back({static_cast<int>(c) + 1, p});
    if (code.size() != 2 + q + feet.size()) throw ValidationError("canonical code length mismatch");
    for (std::size_t g = 0; g < feet.size(); ++g) {
        const std::size_t partner = code[2 + q + g];
        if (partner >= feet.size() || code[2 + q + partner] != g || partner == g)
            throw ValidationError("canonical code partner table is not an involution");
        if (g < partner) d.chords.emplace_back(feet[g], feet[partner]);
    }
    return d;
}

std::string code_to_hex(const CanonicalCode& code) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(code.size() * 2);
    for (auto b : code) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xf]);
    }
    return out;
}

std::vector<CanonicalCode> enumerate_codes(const Skeleton& skeleton, int m, int cap) {
    if (m < 0) throw ValidationError("degree must be nonnegative");
    if (skeleton.count < 1) throw ValidationError("skeleton needs at least one component");
    if (m > resolve_cap(cap))
        throw ResourceError("degree " + std::to_string(m) + " exceeds enumeration cap " +
                            std::to_string(resolve_cap(cap)));
    check_encodable(skeleton, m);

    std::vector<std::vector<int>> comps;
    std::vector<int> scratch;
    compositions(2 * m, skeleton.count, scratch, comps);

    std::set<CanonicalCode> codes;
    for (const auto& counts : comps) {
        std::vector<int> component_of;
        for (std::size_t c = 0; c < counts.size(); ++c)
            component_of.insert(component_of.end(), static_cast<std::size_t>(counts[c]), static_cast<int>(c));
        std::vector<int> partner(static_cast<std::size_t>(2 * m), -1);
        matchings(partner, [&](const std::vector<int>& match) {
            FootLayout layout;
            layout.skeleton = skeleton;
            layout.chord_count = m;
            layout.sequences.resize(static_cast<std::size_t>(skeleton.count));
            std::vector<int> chord_of(match.size(), -1);
            int next = 0;
            for (std::size_t g = 0; g < match.size(); ++g) {
                if (chord_of[g] < 0) {
                    chord_of[g] = next;
                    chord_of[static_cast<std::size_t>(match[g])] = next;
                    ++next;
                }
                layout.sequences[static_cast<std::size_t>(component_of[g])].push_back(chord_of[g]);
            }
            codes.insert(canonicalize(layout));
        });
    }
    return {codes.begin(), codes.end()};
}

std::vector<ChordDiagram> enumerate_diagrams(const Skeleton& skeleton, int m, int cap) {
    std::vector<ChordDiagram> out;
    for (const auto& code : enumerate_codes(skeleton, m, cap)) out.push_back(decode(code));
    return out;
}

int arc_count(const ChordDiagram& d) {
    if (!(d.skeleton.is_circles() && d.skeleton.count == 1))
        throw ValidationError("connected sum is defined on single-circle diagrams");
    return std::max(1, 2 * d.degree());
}

ChordDiagram connected_sum(const ChordDiagram& d1, const ChordDiagram& d2, int arc1, int arc2) {
    const int n1 = arc_count(d1);
    const int n2 = arc_count(d2);
    if (arc1 < 0 || arc1 >= n1 || arc2 < 0 || arc2 >= n2) throw ValidationError("arc index out of range");

    const auto cut = [](const ChordDiagram& d, int arc, int id_offset) {
        const FootLayout layout = FootLayout::from_diagram(d);
        const auto& seq = layout.sequences[0];
        std::vector<int> out;
        const std::size_t k = seq.size();
        for (std::size_t i = 0; i < k; ++i) out.push_back(seq[(static_cast<std::size_t>(arc) + 1 + i) % k] + id_offset);
        return out;
    };

    FootLayout joined;
    joined.skeleton = Skeleton::circles(1);
    joined.chord_count = d1.degree() + d2.degree();
    auto seq = cut(d1, arc1, 0);
    const auto tail = cut(d2, arc2, d1.degree());
    seq.insert(seq.end(), tail.begin(), tail.end());
    joined.sequences.push_back(std::move(seq));
    return decode(canonicalize(joined));
}

bool has_isolated_chord(const FootLayout& layout) {
    if (!layout.skeleton.is_circles()) return false;
    for (const auto& seq : layout.sequences) {
        const std::size_t k = seq.size();
        if (k < 2) continue;
        for (std::size_t p = 0; p < k; ++p)
            if (seq[p] == seq[(p + 1) % k]) return true;
    }
    return false;
}

}  // namespace kontsevich
