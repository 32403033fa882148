#include "kontsevich/braid.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <random>
#include <sstream>

#include "kontsevich/errors.hpp"

namespace kontsevich {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

void fnv_bytes(std::uint64_t& h, const void* data, std::size_t size) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) {
        h ^= p[i];
        h *= kFnvPrime;
    }
}

void fnv_double(std::uint64_t& h, double x) {
    if (x == 0.0) x = 0.0;  // fold -0 into +0
    fnv_bytes(h, &x, sizeof x);
}

Complex interpolate(const Polyline& p, double t) {
    if (t <= p.front().t) return p.front().z;
    if (t >= p.back().t) return p.back().z;
    auto hi = std::upper_bound(p.begin(), p.end(), t, [](double v, const Breakpoint& b) { return v < b.t; });
    auto lo = hi - 1;
    const double u = (t - lo->t) / (hi->t - lo->t);
    return lo->z + u * (hi->z - lo->z);
}

// Minimum of |d0 + u (d1 - d0)| over u in [0,1], with the minimising u.
std::pair<double, double> segment_min(Complex d0, Complex d1) {
    const Complex e = d1 - d0;
    const double ee = std::norm(e);
    double u = 0.0;
    if (ee > 0.0) u = std::clamp(-(std::real(d0) * std::real(e) + std::imag(d0) * std::imag(e)) / ee, 0.0, 1.0);
    return {std::abs(d0 + u * e), u};
}

}  // namespace

GeometricBraid::GeometricBraid(std::vector<Polyline> strands) : strands_(std::move(strands)) {
    if (strands_.empty()) throw ValidationError("a braid needs at least one strand");
    for (std::size_t i = 0; i < strands_.size(); ++i) {
        const auto& p = strands_[i];
        const std::string who = "strand " + std::to_string(i + 1);
        if (p.size() < 2) throw ValidationError(who + " has fewer than two breakpoints");
        if (p.front().t != 0.0 || p.back().t != 1.0) throw ValidationError(who + " must run from t=0 to t=1");
        for (std::size_t k = 0; k < p.size(); ++k) {
            if (!std::isfinite(p[k].t) || !std::isfinite(p[k].z.real()) || !std::isfinite(p[k].z.imag()))
                throw ValidationError(who + " has a non-finite breakpoint");
            if (k > 0 && !(p[k].t > p[k - 1].t)) throw ValidationError(who + " times are not strictly increasing");
        }
    }
}

Complex GeometricBraid::position(int i, double t) const { return interpolate(strand(i), t); }

std::vector<double> GeometricBraid::refinement() const {
    std::vector<double> ts;
    for (const auto& p : strands_)
        for (const auto& b : p) ts.push_back(b.t);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    return ts;
}

std::uint64_t GeometricBraid::hash() const {
    std::uint64_t h = kFnvOffset;
    const std::uint64_t n = strands_.size();
    fnv_bytes(h, &n, sizeof n);
    for (const auto& p : strands_) {
        const std::uint64_t k = p.size();
        fnv_bytes(h, &k, sizeof k);
        for (const auto& b : p) {
            fnv_double(h, b.t);
            fnv_double(h, b.z.real());
            fnv_double(h, b.z.imag());
        }
    }
    return h;
}

BraidDiagnostics validate(const GeometricBraid& b, double collision_eps) {
    BraidDiagnostics out;
    const int n = b.strand_count();
    const auto ts = b.refinement();
    out.margin = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
                const Complex d0 = b.position(i, ts[k]) - b.position(j, ts[k]);
                const Complex d1 = b.position(i, ts[k + 1]) - b.position(j, ts[k + 1]);
                const auto [dist, u] = segment_min(d0, d1);
                if (dist < out.margin) {
                    out.margin = dist;
                    out.margin_t = ts[k] + u * (ts[k + 1] - ts[k]);
                    out.closest_a = i;
                    out.closest_b = j;
                }
            }
        }
    }
    if (n == 1) out.margin = std::numeric_limits<double>::infinity();

    out.valid = out.margin >= collision_eps;
    if (!out.valid) {
        std::ostringstream msg;
        msg << "strands " << out.closest_a << " and " << out.closest_b << " come within " << out.margin
            << " at t=" << out.margin_t << " (collision_eps " << collision_eps << ")";
        out.message = msg.str();
        return out;
    }

    // Endpoint matching: top of strand i against bottoms of all strands.
    std::vector<int> perm(static_cast<std::size_t>(n), 0);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    bool closed = true;
    for (int i = 1; i <= n && closed; ++i) {
        const Complex top = b.strand(i).back().z;
        int match = 0;
        for (int j = 1; j <= n; ++j) {
            if (std::abs(b.strand(j).front().z - top) < collision_eps) {
                match = j;
                break;
            }
        }
        if (match == 0 || used[static_cast<std::size_t>(match - 1)]) {
            closed = false;
        } else {
            used[static_cast<std::size_t>(match - 1)] = true;
            perm[static_cast<std::size_t>(i - 1)] = match;
        }
    }
    if (closed) out.permutation = std::move(perm);
    else out.message = "endpoint sets differ; treated as an open tangle";
    return out;
}

void require_valid(const GeometricBraid& b, double collision_eps) {
    const auto diag = validate(b, collision_eps);
    if (!diag.valid) throw ValidationError("invalid braid: " + diag.message);
}

GeometricBraid realize_braid_word(std::span<const int> word, int n, const RealizeOptions& options) {
    if (n < 1) throw ValidationError("strand count must be positive");
    if (options.steps_per_crossing < 1) throw ValidationError("steps_per_crossing must be positive");
    if (!(options.bulge > 0.0)) throw ValidationError("bulge must be positive");
    for (int g : word)
        if (g == 0 || std::abs(g) > n - 1)
            throw ValidationError("braid letter " + std::to_string(g) + " out of range for " + std::to_string(n) +
                                  " strands");

    std::vector<Polyline> strands(static_cast<std::size_t>(n));
    std::vector<int> at(static_cast<std::size_t>(n));  // at[position-1] = strand index (0-based)
    for (int i = 0; i < n; ++i) {
        at[static_cast<std::size_t>(i)] = i;
        strands[static_cast<std::size_t>(i)].push_back({0.0, Complex(i + 1, 0.0)});
    }
    const std::size_t L = word.size();
    const int S = options.steps_per_crossing;
    for (std::size_t l = 0; l < L; ++l) {
        const int g = word[l];
        const int k = std::abs(g);
        const double t0 = static_cast<double>(l) / static_cast<double>(L);
        const double t1 = static_cast<double>(l + 1) / static_cast<double>(L);
        const double centre = k + 0.5;
        const double dir = g > 0 ? 1.0 : -1.0;
        const int left = at[static_cast<std::size_t>(k - 1)];
        const int right = at[static_cast<std::size_t>(k)];
        for (int s : {left, right}) {
            auto& p = strands[static_cast<std::size_t>(s)];
            if (p.back().t < t0) p.push_back({t0, p.back().z});
        }
        for (int s = 1; s <= S; ++s) {
            const double t = (s == S) ? t1 : t0 + (t1 - t0) * s / S;
            const double theta = dir * std::numbers::pi * s / S;
            const Complex rl = 0.5 * std::polar(1.0, std::numbers::pi + theta);
            const Complex rr = 0.5 * std::polar(1.0, theta);
            // Snap the last sample so endpoints land on the integer lattice.
            const Complex zl = s == S ? Complex(centre + 0.5, 0.0) : Complex(centre + rl.real(), options.bulge * rl.imag());
            const Complex zr = s == S ? Complex(centre - 0.5, 0.0) : Complex(centre + rr.real(), options.bulge * rr.imag());
            strands[static_cast<std::size_t>(left)].push_back({t, zl});
            strands[static_cast<std::size_t>(right)].push_back({t, zr});
        }
        std::swap(at[static_cast<std::size_t>(k - 1)], at[static_cast<std::size_t>(k)]);
    }
    for (auto& p : strands)
        if (p.back().t != 1.0) p.push_back({1.0, p.back().z});

    GeometricBraid b(std::move(strands));
    const auto diag = validate(b);
    if (!diag.valid) throw ValidationError("realized braid collides (increase steps_per_crossing): " + diag.message);
    return b;
}

GeometricBraid stack(const GeometricBraid& lower, const GeometricBraid& upper) {
    const int n = lower.strand_count();
    if (upper.strand_count() != n) throw ValidationError("stacked braids must have the same strand count");
    std::vector<Polyline> strands;
    for (int i = 1; i <= n; ++i) {
        const Complex top = lower.strand(i).back().z;
        int next = 0;
        for (int j = 1; j <= n; ++j)
            if (std::abs(upper.strand(j).front().z - top) < kDefaultCollisionEps) next = j;
        if (next == 0) throw ValidationError("top of lower strand " + std::to_string(i) + " meets no upper strand");
        Polyline p;
        for (const auto& bp : lower.strand(i)) p.push_back({0.5 * bp.t, bp.z});
        const auto& up = upper.strand(next);
        p.back().z = up.front().z;
        for (std::size_t k = 1; k < up.size(); ++k) p.push_back({0.5 + 0.5 * up[k].t, up[k].z});
        p.back().t = 1.0;
        strands.push_back(std::move(p));
    }
    return GeometricBraid(std::move(strands));
}

ClosureSkeleton closure_skeleton(const GeometricBraid& b) {
    const auto diag = validate(b);
    if (!diag.valid) throw ValidationError("invalid braid: " + diag.message);
    if (diag.permutation.empty()) throw ValidationError("open tangle has no closure: " + diag.message);
    const int n = b.strand_count();
    ClosureSkeleton out;
    out.component_of.assign(static_cast<std::size_t>(n), 0);
    for (int i = 1; i <= n; ++i) {
        if (out.component_of[static_cast<std::size_t>(i - 1)] != 0) continue;
        std::vector<int> cycle;
        const int id = out.count() + 1;
        for (int s = i; out.component_of[static_cast<std::size_t>(s - 1)] == 0;
             s = diag.permutation[static_cast<std::size_t>(s - 1)]) {
            out.component_of[static_cast<std::size_t>(s - 1)] = id;
            cycle.push_back(s);
        }
        out.cycles.push_back(std::move(cycle));
    }
    return out;
}

std::string QuadMesh::to_obj() const {
    std::ostringstream os;
    os.precision(17);
    for (const auto& v : vertices) os << "v " << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
    for (const auto& f : quads) os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << ' ' << f[3] + 1 << '\n';
    return os.str();
}

QuadMesh ribbon_mesh(const GeometricBraid& b, int i, int j, int samples) {
    const int n = b.strand_count();
    if (i < 1 || i > n || j < 1 || j > n) throw ValidationError("ribbon strand index out of range");
    if (i == j) throw ValidationError("ribbon needs two distinct strands");
    if (samples < 1) throw ValidationError("ribbon needs at least one sample interval");
    QuadMesh mesh;
    for (int k = 0; k <= samples; ++k) {
        const double t = static_cast<double>(k) / samples;
        const Complex zi = b.position(i, t);
        const Complex zj = b.position(j, t);
        mesh.vertices.push_back({zi.real(), zi.imag(), t});
        mesh.vertices.push_back({zj.real(), zj.imag(), t});
    }
    for (int k = 0; k < samples; ++k) mesh.quads.push_back({2 * k, 2 * k + 1, 2 * k + 3, 2 * k + 2});
    return mesh;
}

GeometricBraid bump(const GeometricBraid& b, double amplitude, std::uint64_t seed, int grid) {
    if (grid < 1) throw ValidationError("bump grid must be positive");
    std::vector<double> ts = b.refinement();
    for (int k = 0; k <= grid; ++k) ts.push_back(static_cast<double>(k) / grid);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::vector<Polyline> strands;
    for (int i = 1; i <= b.strand_count(); ++i) {
        const Complex dir = std::polar(1.0, angle(rng));
        Polyline p;
        for (double t : ts) p.push_back({t, b.position(i, t) + amplitude * std::sin(std::numbers::pi * t) * dir});
        strands.push_back(std::move(p));
    }
    return GeometricBraid(std::move(strands));
}

}  // namespace kontsevich
