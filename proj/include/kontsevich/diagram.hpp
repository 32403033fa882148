#pragma once

// Chord diagrams on numbered circles or braid strands, their canonical
// encoding, and sparse linear combinations of canonical diagrams.

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace kontsevich {

using Rational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

enum class SkeletonKind : std::uint8_t { circles = 0, strands = 1 };

/// Support of a chord diagram: `count` numbered circles or `count` numbered
/// upward strands. Components are numbered 1..count.
struct Skeleton {
    SkeletonKind kind = SkeletonKind::circles;
    int count = 1;

    static Skeleton circles(int q) { return {SkeletonKind::circles, q}; }
    static Skeleton strands(int n) { return {SkeletonKind::strands, n}; }

    bool is_circles() const { return kind == SkeletonKind::circles; }
    std::string to_string() const;  // "circles:q" / "strands:n"
    static Skeleton parse(const std::string& text);

    friend bool operator==(const Skeleton&, const Skeleton&) = default;
};

/// A chord foot: component (1-based) and order index along that component.
/// On circles the index is cyclic, on strands it counts bottom-up.
struct Foot {
    int component = 1;
    int position = 0;

    friend auto operator<=>(const Foot&, const Foot&) = default;
};

using Chord = std::pair<Foot, Foot>;

/// Byte encoding of a diagram modulo per-circle rotation. Lexicographic order
/// on codes is the total order used throughout.
using CanonicalCode = std::vector<std::uint8_t>;

struct ChordDiagram {
    Skeleton skeleton;
    std::vector<Chord> chords;

    int degree() const { return static_cast<int>(chords.size()); }

    /// Throws ValidationError unless feet are distinct, in range, and the
    /// positions on each component form 0..k-1 without gaps.
    void validate() const;
};

/// Per-component sequences of chord ids in positional order. This is the
/// working representation for relation generation.
struct FootLayout {
    Skeleton skeleton;
    std::vector<std::vector<int>> sequences;  // index = component - 1
    int chord_count = 0;

    static FootLayout from_diagram(const ChordDiagram& d);
    ChordDiagram to_diagram() const;
};

CanonicalCode canonicalize(const ChordDiagram& d);
CanonicalCode canonicalize(const FootLayout& layout);

/// Representative diagram of a canonical code.
ChordDiagram decode(const CanonicalCode& code);

/// Hex rendering of a code, used as a stable textual key.
std::string code_to_hex(const CanonicalCode& code);

/// One representative per canonical class of degree `m`, sorted by code.
/// Throws ResourceError if m exceeds `cap` (<= 0 selects the default cap).
std::vector<ChordDiagram> enumerate_diagrams(const Skeleton& skeleton, int m, int cap = 0);
std::vector<CanonicalCode> enumerate_codes(const Skeleton& skeleton, int m, int cap = 0);

/// Sparse combination of canonical diagrams. Zero coefficients are never stored.
template <class Coeff>
class LinearCombination {
public:
    using Terms = std::map<CanonicalCode, Coeff>;

    LinearCombination() = default;
    explicit LinearCombination(const CanonicalCode& code, Coeff c = Coeff(1)) { add(code, c); }

    void add(const CanonicalCode& code, const Coeff& c) {
        if (c == Coeff(0)) return;
        auto [it, inserted] = terms_.try_emplace(code, c);
        if (!inserted) {
            it->second += c;
            if (it->second == Coeff(0)) terms_.erase(it);
        }
    }

    LinearCombination& operator+=(const LinearCombination& other) {
        for (const auto& [code, c] : other.terms_) add(code, c);
        return *this;
    }

    LinearCombination& operator*=(const Coeff& s) {
        if (s == Coeff(0)) {
            terms_.clear();
            return *this;
        }
        for (auto& [code, c] : terms_) c *= s;
        return *this;
    }

    friend LinearCombination operator-(const LinearCombination& a, const LinearCombination& b) {
        LinearCombination r = a;
        for (const auto& [code, c] : b.terms_) r.add(code, -c);
        return r;
    }

    const Terms& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Coeff coefficient(const CanonicalCode& code) const {
        auto it = terms_.find(code);
        return it == terms_.end() ? Coeff(0) : it->second;
    }

    friend bool operator==(const LinearCombination&, const LinearCombination&) = default;

private:
    Terms terms_;
};

using RationalCombination = LinearCombination<Rational>;
using ComplexCombination = LinearCombination<Complex>;

/// Splices two single-circle diagrams. `arc` k cuts the gap after position k
/// (cyclically); an empty diagram has the single arc 0.
ChordDiagram connected_sum(const ChordDiagram& d1, const ChordDiagram& d2, int arc1, int arc2);

/// Number of arcs available to `connected_sum` on a single-circle diagram.
int arc_count(const ChordDiagram& d);

/// True if some chord has both feet adjacent on one circle with no foot between.
bool has_isolated_chord(const FootLayout& layout);

}  // namespace kontsevich
