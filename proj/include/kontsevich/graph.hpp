#pragma once

// Piecewise-linear graphs in C x R with univalent, trivalent and 4-valent
// vertices, and their decomposition into t-monotone branches.

#include <complex>
#include <string>
#include <vector>

namespace kontsevich {

using Complex = std::complex<double>;

/// Segments whose time extent is below this are treated as horizontal.
inline constexpr double kHorizontalTol = 1e-12;
/// Arc ends glued at one vertex must agree to this distance.
inline constexpr double kGlueTol = 1e-9;

struct GraphPoint {
    Complex z;
    double t = 0.0;
    /// Local maximum or minimum of t along the arc.
    bool extremum = false;
};

struct GraphArc {
    std::vector<GraphPoint> points;  // orientation = point order
    bool closed = false;             // last point joins the first
};

struct ArcEnd {
    int arc = 0;  // 0-based
    bool at_end = false;  // false = first point, true = last point
    friend bool operator==(const ArcEnd&, const ArcEnd&) = default;
};

/// Gluing of arc ends at one point. Arc ends not listed anywhere are free
/// (univalent) ends.
struct GraphVertex {
    std::vector<ArcEnd> ends;
    int valence() const { return static_cast<int>(ends.size()); }
};

struct EmbeddedGraph {
    std::vector<GraphArc> arcs;
    std::vector<GraphVertex> vertices;

    /// Throws ValidationError on bad valence, mismatched gluing, horizontal
    /// edges, or extremum flags that disagree with the geometry.
    void validate() const;

    /// Empty when valid; otherwise the first problem found.
    std::string problem() const;

    /// Copy with extremum flags set from the direction changes of t.
    EmbeddedGraph with_recomputed_extrema() const;

    GraphPoint end_point(const ArcEnd& e) const;
};

/// Maximal t-monotone piece of an arc, stored bottom-up.
struct Branch {
    int arc = 0;
    /// True when the arc orientation runs downward along this piece.
    bool down = false;
    std::vector<std::pair<double, Complex>> samples;  // (t, z), t increasing

    double t_min() const { return samples.front().first; }
    double t_max() const { return samples.back().first; }
    Complex at(double t) const;
};

std::vector<Branch> branches(const EmbeddedGraph& g);

/// Times of extremum breakpoints and of vertices with valence >= 3, sorted.
std::vector<double> critical_times(const EmbeddedGraph& g);

/// Number of chord feet on downward branches (0, 1 or 2).
int epsilon_count(const Branch& a, const Branch& b);

/// (-1)^epsilon for a single chord.
int chord_sign(const Branch& a, const Branch& b);

}  // namespace kontsevich
