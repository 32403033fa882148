#include "kontsevich/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "kontsevich/errors.hpp"

namespace kontsevich {

namespace {

int sgn(double x) { return (x > 0.0) - (x < 0.0); }

// Whether point k of the arc is a turning point of t; -1 if undefined (an
// open-arc end).
int turning(const GraphArc& a, std::size_t k) {
    const std::size_t n = a.points.size();
    if (!a.closed && (k == 0 || k + 1 == n)) return -1;
    const auto& prev = a.points[(k + n - 1) % n];
    const auto& next = a.points[(k + 1) % n];
    const double din = a.points[k].t - prev.t;
    const double dout = next.t - a.points[k].t;
    return sgn(din) != sgn(dout) ? 1 : 0;
}

}  // namespace

GraphPoint EmbeddedGraph::end_point(const ArcEnd& e) const {
    if (e.arc < 0 || e.arc >= static_cast<int>(arcs.size()))
        throw ValidationError("vertex refers to missing arc " + std::to_string(e.arc));
    const auto& pts = arcs[static_cast<std::size_t>(e.arc)].points;
    if (pts.empty()) throw ValidationError("arc " + std::to_string(e.arc) + " has no points");
    return e.at_end ? pts.back() : pts.front();
}

std::string EmbeddedGraph::problem() const {
    if (arcs.empty()) return "graph has no arcs";
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        const auto& a = arcs[i];
        const std::string who = "arc " + std::to_string(i);
        if (a.points.size() < (a.closed ? 3u : 2u)) return who + " has too few points";
        for (const auto& p : a.points)
            if (!std::isfinite(p.t) || !std::isfinite(p.z.real()) || !std::isfinite(p.z.imag()))
                return who + " has a non-finite point";
        const std::size_t n = a.points.size();
        const std::size_t segs = a.closed ? n : n - 1;
        for (std::size_t k = 0; k < segs; ++k)
            if (std::abs(a.points[(k + 1) % n].t - a.points[k].t) <= kHorizontalTol)
                return who + " has a horizontal edge at point " + std::to_string(k);
        for (std::size_t k = 0; k < n; ++k) {
            const int turn = turning(a, k);
            if (turn == -1 && a.points[k].extremum) return who + " flags an end point as an extremum";
            if (turn == 1 && !a.points[k].extremum) return who + " point " + std::to_string(k) + " is an unflagged extremum";
            if (turn == 0 && a.points[k].extremum)
                return who + " point " + std::to_string(k) + " is flagged but t is monotone there";
        }
    }
    std::set<std::pair<int, bool>> seen;
    for (std::size_t v = 0; v < vertices.size(); ++v) {
        const auto& vx = vertices[v];
        const std::string who = "vertex " + std::to_string(v);
        const int val = vx.valence();
        if (val != 1 && val != 3 && val != 4)
            return who + " has valence " + std::to_string(val) + "; allowed valences are 1, 3 and 4";
        for (const auto& e : vx.ends) {
            if (e.arc < 0 || e.arc >= static_cast<int>(arcs.size())) return who + " refers to a missing arc";
            if (arcs[static_cast<std::size_t>(e.arc)].closed) return who + " glues an end of a closed arc";
            if (!seen.insert({e.arc, e.at_end}).second) return who + " reuses an arc end";
            const auto p = end_point(e);
            const auto q = end_point(vx.ends.front());
            if (std::abs(p.z - q.z) > kGlueTol || std::abs(p.t - q.t) > kGlueTol)
                return who + " glues ends that do not coincide";
        }
    }
    return {};
}

void EmbeddedGraph::validate() const {
    if (auto msg = problem(); !msg.empty()) throw ValidationError("invalid graph: " + msg);
}

EmbeddedGraph EmbeddedGraph::with_recomputed_extrema() const {
    EmbeddedGraph g = *this;
    for (auto& a : g.arcs)
        for (std::size_t k = 0; k < a.points.size(); ++k) a.points[k].extremum = turning(a, k) == 1;
    return g;
}

Complex Branch::at(double t) const {
    if (t <= samples.front().first) return samples.front().second;
    if (t >= samples.back().first) return samples.back().second;
    auto hi = std::upper_bound(samples.begin(), samples.end(), t,
                               [](double v, const std::pair<double, Complex>& s) { return v < s.first; });
    auto lo = hi - 1;
    const double u = (t - lo->first) / (hi->first - lo->first);
    return lo->second + u * (hi->second - lo->second);
}

std::vector<Branch> branches(const EmbeddedGraph& g) {
    g.validate();
    std::vector<Branch> out;
    for (std::size_t i = 0; i < g.arcs.size(); ++i) {
        const auto& a = g.arcs[i];
        std::vector<GraphPoint> pts = a.points;
        if (a.closed) {
            // Start at an extremum so every piece is bounded by turning points.
            auto it = std::find_if(pts.begin(), pts.end(), [](const GraphPoint& p) { return p.extremum; });
            std::rotate(pts.begin(), it, pts.end());
            pts.push_back(pts.front());
        }
        std::size_t start = 0;
        for (std::size_t k = 1; k < pts.size(); ++k) {
            const bool last = k + 1 == pts.size();
            if (!pts[k].extremum && !last) continue;
            Branch br;
            br.arc = static_cast<int>(i);
            br.down = pts[start + 1].t < pts[start].t;
            for (std::size_t j = start; j <= k; ++j) br.samples.emplace_back(pts[j].t, pts[j].z);
            if (br.down) std::reverse(br.samples.begin(), br.samples.end());
            out.push_back(std::move(br));
            start = k;
        }
    }
    return out;
}

std::vector<double> critical_times(const EmbeddedGraph& g) {
    std::vector<double> ts;
    for (const auto& a : g.arcs)
        for (const auto& p : a.points)
            if (p.extremum) ts.push_back(p.t);
    for (const auto& v : g.vertices)
        if (v.valence() >= 3) ts.push_back(g.end_point(v.ends.front()).t);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    return ts;
}

int epsilon_count(const Branch& a, const Branch& b) { return (a.down ? 1 : 0) + (b.down ? 1 : 0); }

int chord_sign(const Branch& a, const Branch& b) { return epsilon_count(a, b) % 2 == 0 ? 1 : -1; }

}  // namespace kontsevich
