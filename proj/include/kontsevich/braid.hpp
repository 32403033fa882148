#pragma once

// Geometric braids in C x [0,1]: piecewise-linear strands, validation,
// braid-word realisation, stacking, closure structure and ruled ribbons.

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace kontsevich {

using Complex = std::complex<double>;

inline constexpr double kDefaultCollisionEps = 1e-9;

struct Breakpoint {
    double t = 0.0;
    Complex z;
};

/// A strand t -> z(t), linear between breakpoints. Times strictly increase
/// from 0 to 1.
using Polyline = std::vector<Breakpoint>;

class GeometricBraid {
public:
    GeometricBraid() = default;
    /// Throws ValidationError if a strand has fewer than two breakpoints or
    /// its times do not run strictly increasing from 0 to 1.
    explicit GeometricBraid(std::vector<Polyline> strands);

    int strand_count() const { return static_cast<int>(strands_.size()); }
    const std::vector<Polyline>& strands() const { return strands_; }
    const Polyline& strand(int i) const { return strands_.at(static_cast<std::size_t>(i - 1)); }

    /// Position of strand `i` (1-based) at time t.
    Complex position(int i, double t) const;

    /// Sorted union of every strand's breakpoint times.
    std::vector<double> refinement() const;

    /// FNV-1a over the breakpoint data.
    std::uint64_t hash() const;

private:
    std::vector<Polyline> strands_;
};

struct BraidDiagnostics {
    bool valid = false;
    double margin = 0.0;  // min over t, i != j of |z_i(t) - z_j(t)|
    double margin_t = 0.0;
    int closest_a = 0;
    int closest_b = 0;
    /// permutation[i-1] = j when the top of strand i sits on the bottom of
    /// strand j; empty when the endpoint sets differ (an open tangle).
    std::vector<int> permutation;
    std::string message;
};

/// Exact per-segment minimum distance of every strand pair.
BraidDiagnostics validate(const GeometricBraid& b, double collision_eps = kDefaultCollisionEps);

/// Throws ValidationError carrying the diagnostics message if `b` is invalid.
void require_valid(const GeometricBraid& b, double collision_eps = kDefaultCollisionEps);

struct RealizeOptions {
    int steps_per_crossing = 16;
    /// Scales the imaginary extent of each half-turn; 1 gives circular arcs.
    double bulge = 1.0;
};

/// Letter +k / -k exchanges the strands at positions k, k+1 by a
/// counter-clockwise / clockwise half-turn. Base points sit at 1..n on the
/// real axis; each letter occupies an equal time slab.
GeometricBraid realize_braid_word(std::span<const int> word, int n, const RealizeOptions& options = {});

/// Vertical concatenation: `lower` on [0, 1/2], `upper` on [1/2, 1]. Strand i
/// of the result continues into the strand of `upper` that starts where
/// strand i of `lower` ends.
GeometricBraid stack(const GeometricBraid& lower, const GeometricBraid& upper);

struct ClosureSkeleton {
    std::vector<int> component_of;          // strand (1-based index - 1) -> component (1-based)
    std::vector<std::vector<int>> cycles;   // per component, strands in closure order
    int count() const { return static_cast<int>(cycles.size()); }
};

/// Components of the closed braid = cycles of the endpoint permutation.
ClosureSkeleton closure_skeleton(const GeometricBraid& b);

/// Adds amplitude * sin(pi t) * u_i to strand i on a grid of `grid` slabs
/// (plus the original breakpoints), with unit directions u_i drawn from
/// `seed`. Endpoints stay fixed, so the result shares the permutation.
GeometricBraid bump(const GeometricBraid& b, double amplitude, std::uint64_t seed, int grid = 64);

struct QuadMesh {
    std::vector<std::array<double, 3>> vertices;  // (Re z, Im z, t)
    std::vector<std::array<int, 4>> quads;        // 0-based vertex indices
    /// `v x y z` and 1-based `f a b c d` lines.
    std::string to_obj() const;
};

/// Ruled surface swept by the horizontal chord between strands i and j.
QuadMesh ribbon_mesh(const GeometricBraid& b, int i, int j, int samples);

}  // namespace kontsevich
