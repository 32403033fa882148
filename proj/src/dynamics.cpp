#include "kontsevich/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include "kontsevich/errors.hpp"

namespace kontsevich {

namespace {

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 add(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 scale(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

Vec3 to_vec(const GraphPoint& p) { return {p.z.real(), p.z.imag(), p.t}; }

// Closest points of segments p0p1 and q0q1; returns (distance, s, u).
std::array<double, 3> segment_distance(const Vec3& p0, const Vec3& p1, const Vec3& q0, const Vec3& q1) {
    const Vec3 d1 = sub(p1, p0);
    const Vec3 d2 = sub(q1, q0);
    const Vec3 r = sub(p0, q0);
    const double a = dot(d1, d1);
    const double e = dot(d2, d2);
    const double f = dot(d2, r);
    double s = 0.0;
    double u = 0.0;
    constexpr double tiny = 1e-300;
    if (a <= tiny && e <= tiny) {
        s = u = 0.0;
    } else if (a <= tiny) {
        u = std::clamp(f / e, 0.0, 1.0);
    } else {
        const double c = dot(d1, r);
        if (e <= tiny) {
            s = std::clamp(-c / a, 0.0, 1.0);
        } else {
            const double b = dot(d1, d2);
            const double denom = a * e - b * b;
            s = denom > 0.0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
            u = (b * s + f) / e;
            if (u < 0.0) {
                u = 0.0;
                s = std::clamp(-c / a, 0.0, 1.0);
            } else if (u > 1.0) {
                u = 1.0;
                s = std::clamp((b - c) / a, 0.0, 1.0);
            }
        }
    }
    const Vec3 cp = add(p0, scale(d1, s));
    const Vec3 cq = add(q0, scale(d2, u));
    return {norm(sub(cp, cq)), s, u};
}

std::size_t segment_count(const GraphArc& a) { return a.closed ? a.points.size() : a.points.size() - 1; }

std::pair<Vec3, Vec3> segment_ends(const GraphArc& a, std::size_t k) {
    return {to_vec(a.points[k]), to_vec(a.points[(k + 1) % a.points.size()])};
}

Vec3 path_at(const std::vector<PathPoint>& pts, double tau) {
    if (pts.size() == 1 || tau <= pts.front().tau) return pts.front().p;
    if (tau >= pts.back().tau) return pts.back().p;
    auto hi = std::upper_bound(pts.begin(), pts.end(), tau, [](double v, const PathPoint& p) { return v < p.tau; });
    auto lo = hi - 1;
    const double w = (tau - lo->tau) / (hi->tau - lo->tau);
    return add(lo->p, scale(sub(hi->p, lo->p), w));
}

// Largest distance from any graph point to the rotation axis over the motion.
double reach(const EmbeddedGraph& g, const MotionPlan& plan) {
    const Vec3 a0 = plan.alpha.at(0.0);
    double r = 0.0;
    for (const auto& arc : g.arcs)
        for (const auto& p : arc.points) r = std::max(r, norm(sub(to_vec(p), a0)));
    double off = 0.0;
    std::vector<double> taus{0.0, 1.0};
    for (const auto& p : plan.alpha.points) taus.push_back(p.tau);
    for (const auto& p : plan.beta.points) taus.push_back(p.tau);
    for (double tau : taus) off = std::max(off, norm(sub(plan.alpha.at(tau), plan.beta.points.empty() ? plan.alpha.at(tau) : plan.beta.at(tau))));
    return r + off;
}

double tau_speed(const MotionPlan& plan) {
    return plan.alpha.max_speed() + (plan.beta.points.empty() ? 0.0 : 2.0 * plan.beta.max_speed());
}

struct LocalShape {
    int valence = 2;
    std::vector<Vec3> directions;  // one line (interior) or half-edges (ends)
    bool line = true;
    bool near_extremum = false;
};

LocalShape local_shape(const EmbeddedGraph& g, int arc, int seg, double u, double eps) {
    const auto& a = g.arcs[static_cast<std::size_t>(arc)];
    const std::size_t n = a.points.size();
    const auto [p0, p1] = segment_ends(a, static_cast<std::size_t>(seg));
    const Vec3 at = add(p0, scale(sub(p1, p0), u));
    const double radius = 10.0 * eps;
    LocalShape s;
    for (const auto& arc2 : g.arcs)
        for (const auto& p : arc2.points)
            if (p.extremum && norm(sub(to_vec(p), at)) <= radius) s.near_extremum = true;

    std::size_t vertex = n;
    if (norm(sub(at, p0)) <= radius) vertex = static_cast<std::size_t>(seg);
    else if (norm(sub(at, p1)) <= radius) vertex = (static_cast<std::size_t>(seg) + 1) % n;
    if (vertex == n) {
        s.directions = {sub(p1, p0)};
        return s;
    }
    const bool is_end = !a.closed && (vertex == 0 || vertex + 1 == n);
    if (!is_end) {
        s.directions = {sub(to_vec(a.points[(vertex + 1) % n]), to_vec(a.points[(vertex + n - 1) % n]))};
        return s;
    }
    const ArcEnd self{arc, vertex + 1 == n};
    std::vector<ArcEnd> ends{self};
    for (const auto& v : g.vertices)
        if (std::find(v.ends.begin(), v.ends.end(), self) != v.ends.end()) ends = v.ends;
    s.line = false;
    s.valence = static_cast<int>(ends.size());
    for (const auto& e : ends) {
        const auto& pts = g.arcs[static_cast<std::size_t>(e.arc)].points;
        s.directions.push_back(e.at_end ? sub(to_vec(pts[pts.size() - 2]), to_vec(pts.back()))
                                        : sub(to_vec(pts[1]), to_vec(pts.front())));
    }
    return s;
}

// Angle between two lines through the origin, in [0, pi/2].
double line_angle(const Vec3& a, const Vec3& b) {
    const double c = std::abs(dot(a, b)) / (norm(a) * norm(b));
    return std::acos(std::clamp(c, 0.0, 1.0));
}

constexpr double kTangentTol = 0.05;

bool in_cells(const std::set<Cell>& cells, int k, int l, int n_sigma) {
    return cells.count({((k % n_sigma) + n_sigma) % n_sigma, l}) > 0;
}

ContactType type_of(const std::set<Cell>& cells, const GridSpec& grid) {
    if (cells.size() == 1) return ContactType::point;
    for (const auto& c : cells)
        if (in_cells(cells, c.k + 1, c.l, grid.n_sigma) && in_cells(cells, c.k, c.l + 1, grid.n_sigma) &&
            in_cells(cells, c.k + 1, c.l + 1, grid.n_sigma))
            return ContactType::area;
    return ContactType::arc;
}

void run_rows(int rows, int threads, const std::function<void(int)>& body) {
    threads = std::max(1, std::min(threads, rows));
    if (threads == 1) {
        for (int r = 0; r < rows; ++r) body(r);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w)
        pool.emplace_back([&, w] {
            try {
                for (int r = w; r < rows; r += threads) body(r);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

ContactClass worse(ContactClass a, ContactClass b) { return static_cast<int>(a) > static_cast<int>(b) ? a : b; }

}  // namespace

Vec3 Path::at(double tau) const {
    if (points.empty()) throw ValidationError("empty path");
    return path_at(points, tau);
}

void Path::validate() const {
    if (points.empty()) throw ValidationError("path has no points");
    for (const auto& p : points)
        if (!std::isfinite(p.tau) || !std::isfinite(p.p[0]) || !std::isfinite(p.p[1]) || !std::isfinite(p.p[2]))
            throw ValidationError("path has a non-finite point");
    if (points.size() == 1) return;
    if (points.front().tau != 0.0 || points.back().tau != 1.0) throw ValidationError("path must run from tau=0 to tau=1");
    for (std::size_t k = 1; k < points.size(); ++k)
        if (!(points[k].tau > points[k - 1].tau)) throw ValidationError("path tau values must increase strictly");
}

double Path::max_speed() const {
    double v = 0.0;
    for (std::size_t k = 1; k < points.size(); ++k)
        v = std::max(v, norm(sub(points[k].p, points[k - 1].p)) / (points[k].tau - points[k - 1].tau));
    return v;
}

void MotionPlan::validate() const {
    alpha.validate();
    if (!beta.points.empty()) beta.validate();
    if (!std::isfinite(spin)) throw ValidationError("spin must be finite");
}

ConfiguredGraph configure(const EmbeddedGraph& g, const MotionPlan& plan, double sigma, double tau) {
    ConfiguredGraph out{g, false, {}};
    const Vec3 shift = sub(plan.alpha.at(tau), plan.alpha.at(0.0));
    const Vec3 centre = plan.beta.points.empty() ? plan.alpha.at(tau) : plan.beta.at(tau);
    const double theta = plan.spin * sigma;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    for (auto& arc : out.graph.arcs) {
        for (auto& p : arc.points) {
            double x = p.z.real() + shift[0];
            double y = p.z.imag() + shift[1];
            double t = p.t + shift[2];
            if (theta != 0.0) {
                const double dy = y - centre[1];
                const double dt = t - centre[2];
                y = centre[1] + c * dy - s * dt;
                t = centre[2] + s * dy + c * dt;
            }
            p.z = Complex(x, y);
            p.t = t;
        }
    }
    if (theta != 0.0) out.graph = out.graph.with_recomputed_extrema();
    if (auto msg = out.graph.problem(); !msg.empty()) {
        out.flagged = true;
        out.reason = msg;
    }
    return out;
}

GraphDistance graph_distance(const EmbeddedGraph& a, const EmbeddedGraph& b) {
    GraphDistance best;
    best.distance = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.arcs.size(); ++i)
        for (std::size_t si = 0; si < segment_count(a.arcs[i]); ++si) {
            const auto [p0, p1] = segment_ends(a.arcs[i], si);
            for (std::size_t j = 0; j < b.arcs.size(); ++j)
                for (std::size_t sj = 0; sj < segment_count(b.arcs[j]); ++sj) {
                    const auto [q0, q1] = segment_ends(b.arcs[j], sj);
                    const auto [d, s, u] = segment_distance(p0, p1, q0, q1);
                    if (d < best.distance)
                        best = {d, static_cast<int>(i), static_cast<int>(si), s, static_cast<int>(j), static_cast<int>(sj), u};
                }
        }
    return best;
}

void Scene::validate() const {
    if (graphs.size() != plans.size()) throw ValidationError("scene needs one motion plan per graph");
    if (graphs.empty()) throw ValidationError("scene has no graphs");
    for (const auto& g : graphs) g.validate();
    for (const auto& p : plans) p.validate();
}

double GridSpec::sigma(int k) const { return 2.0 * std::numbers::pi * k / n_sigma; }
double GridSpec::tau(int l) const { return n_tau == 1 ? 0.0 : static_cast<double>(l) / (n_tau - 1); }

std::string to_string(ContactType t) {
    switch (t) {
        case ContactType::point: return "point";
        case ContactType::arc: return "arc";
        case ContactType::area: return "area";
    }
    return "?";
}

std::string to_string(ContactClass c) {
    switch (c) {
        case ContactClass::regular: return "regular";
        case ContactClass::vanishing: return "vanishing";
        case ContactClass::singular: return "singular";
    }
    return "?";
}

ContactVerdict classify_contact(const EmbeddedGraph& a, const EmbeddedGraph& b, double eps) {
    const auto d = graph_distance(a, b);
    const auto sa = local_shape(a, d.arc_a, d.seg_a, d.u_a, eps);
    const auto sb = local_shape(b, d.arc_b, d.seg_b, d.u_b, eps);
    ContactVerdict v;
    v.valence = sa.valence + sb.valence;
    if (sa.near_extremum || sb.near_extremum) {
        v.cls = ContactClass::regular;
        v.detail = "contact at a t-extremum";
        return v;
    }
    double min_angle = std::numbers::pi;
    for (const auto& x : sa.directions)
        for (const auto& y : sb.directions) min_angle = std::min(min_angle, line_angle(x, y));
    const bool distinct = min_angle > kTangentTol;
    if ((v.valence == 3 || v.valence == 4) && distinct) {
        v.cls = ContactClass::vanishing;
        v.detail = v.valence == 4 ? "X-shaped union" : "y/lambda-shaped union";
        return v;
    }
    v.cls = ContactClass::singular;
    v.ambiguous = !distinct;
    std::ostringstream os;
    os << "valence " << v.valence << (distinct ? "" : ", tangents within tolerance");
    v.detail = os.str();
    return v;
}

ContactReport contact_events(const Scene& scene, int i, int j, const GridSpec& grid, const ContactOptions& options) {
    scene.validate();
    const int q = static_cast<int>(scene.graphs.size());
    if (i < 0 || j < 0 || i >= q || j >= q || i == j) throw ValidationError("contact needs two distinct graphs");
    if (grid.n_sigma < 8 || grid.n_tau < 8) throw ValidationError("contact grids must be at least 8x8");
    if (!(options.eps > 0.0)) throw ValidationError("contact eps must be positive");
    const auto& gi = scene.graphs[static_cast<std::size_t>(i)];
    const auto& gj = scene.graphs[static_cast<std::size_t>(j)];
    const auto& pi = scene.plans[static_cast<std::size_t>(i)];
    const auto& pj = scene.plans[static_cast<std::size_t>(j)];
    const double lip_sigma = std::abs(pi.spin) * reach(gi, pi) + std::abs(pj.spin) * reach(gj, pj);
    const double lip_tau = tau_speed(pi) + tau_speed(pj);

    auto f = [&](double sigma, double tau) {
        return graph_distance(configure(gi, pi, sigma, tau).graph, configure(gj, pj, sigma, tau).graph).distance;
    };

    const int ns = grid.n_sigma;
    const int nt = grid.n_tau;
    const double hs = std::numbers::pi / ns;
    const double ht = 0.5 / (nt - 1);
    struct Result {
        bool contact = false;
        bool boundary_miss = false;
        CellContact at;
    };
    std::vector<Result> results(static_cast<std::size_t>(ns * nt));
    run_rows(nt, options.threads, [&](int l) {
        for (int k = 0; k < ns; ++k) {
            Result& r = results[static_cast<std::size_t>(l * ns + k)];
            const double s0 = grid.sigma(k);
            const double t0 = grid.tau(l);
            const double tlo = std::max(0.0, t0 - ht);
            const double thi = std::min(1.0, t0 + ht);
            double best = f(s0, t0);
            double bs = s0;
            double bt = t0;
            if (best >= options.eps && best - lip_sigma * hs - lip_tau * std::max(t0 - tlo, thi - t0) <= options.eps) {
                // Zoom in on the minimum over the cell.
                double slo = s0 - hs;
                double shi = s0 + hs;
                double a = tlo;
                double b = thi;
                for (int round = 0; round < options.zoom_rounds && best >= options.eps; ++round) {
                    for (int u = 0; u <= 4; ++u)
                        for (int v = 0; v <= 4; ++v) {
                            const double ss = slo + (shi - slo) * u / 4.0;
                            const double tt = a + (b - a) * v / 4.0;
                            const double d = f(ss, tt);
                            if (d < best) {
                                best = d;
                                bs = ss;
                                bt = tt;
                            }
                        }
                    const double ws = (shi - slo) / 5.0;
                    const double wt = (b - a) / 5.0;
                    slo = std::max(s0 - hs, bs - ws);
                    shi = std::min(s0 + hs, bs + ws);
                    a = std::max(tlo, bt - wt);
                    b = std::min(thi, bt + wt);
                }
            }
            r.at = {{k, l}, bs, bt, best};
            r.contact = best < options.eps;
            const bool on_edge = std::abs(bs - s0) >= hs * (1 - 1e-9) || (bt <= tlo && tlo > 0.0) || (bt >= thi && thi < 1.0);
            r.boundary_miss = !r.contact && on_edge && best < 2.0 * options.eps;
        }
    });

    ContactReport report;
    std::set<Cell> contact;
    for (const auto& r : results) {
        if (r.contact) contact.insert(r.at.cell);
        if (r.boundary_miss) {
            std::ostringstream os;
            os << "near miss on the boundary of cell [" << r.at.cell.k << "," << r.at.cell.l << "] (distance "
               << r.at.distance << "); refine the grid";
            report.warnings.push_back(os.str());
        }
    }

    std::map<Cell, int> comp_of;
    std::vector<std::set<Cell>> comps;
    for (const auto& c : contact) {
        if (comp_of.count(c)) continue;
        const int id = static_cast<int>(comps.size());
        comps.emplace_back();
        std::vector<Cell> stack{c};
        comp_of[c] = id;
        while (!stack.empty()) {
            const Cell x = stack.back();
            stack.pop_back();
            comps.back().insert(x);
            const Cell nbrs[4] = {{(x.k + 1) % ns, x.l}, {(x.k + ns - 1) % ns, x.l}, {x.k, x.l + 1}, {x.k, x.l - 1}};
            for (const auto& y : nbrs) {
                if (y.l < 0 || y.l >= nt || !contact.count(y) || comp_of.count(y)) continue;
                comp_of[y] = id;
                stack.push_back(y);
            }
        }
    }
    // Components touching only at corners may be one contact seen too coarsely.
    std::set<std::pair<int, int>> diagonal;
    for (const auto& [c, id] : comp_of)
        for (int dk : {-1, 1})
            for (int dl : {-1, 1}) {
                const Cell y{(c.k + dk + ns) % ns, c.l + dl};
                auto it = comp_of.find(y);
                if (it != comp_of.end() && it->second != id) diagonal.insert(std::minmax(id, it->second));
            }
    for (const auto& [a, b] : diagonal) {
        std::ostringstream os;
        os << "contact components " << a << " and " << b << " touch only diagonally; refine the grid to separate them";
        report.warnings.push_back(os.str());
    }

    for (const auto& cells : comps) {
        ContactComponent comp;
        comp.type = type_of(cells, grid);
        comp.cls = ContactClass::regular;
        std::vector<Cell> ordered(cells.begin(), cells.end());
        std::sort(ordered.begin(), ordered.end(), [](const Cell& x, const Cell& y) {
            return std::tie(x.l, x.k) < std::tie(y.l, y.k);
        });
        for (const auto& c : ordered) {
            const auto& r = results[static_cast<std::size_t>(c.l * ns + c.k)];
            comp.cells.push_back(r.at);
            const auto verdict = classify_contact(configure(gi, pi, r.at.sigma, r.at.tau).graph,
                                                  configure(gj, pj, r.at.sigma, r.at.tau).graph, options.eps);
            comp.cls = worse(comp.cls, verdict.cls);
            comp.ambiguous = comp.ambiguous || verdict.ambiguous;
            if (verdict.cls == ContactClass::singular) comp.singular_cells.push_back(c);
        }
        report.components.push_back(std::move(comp));
    }
    return report;
}

Identifold build_identifold(const Scene& scene, const GridSpec& grid, const ContactOptions& options) {
    scene.validate();
    const int q = static_cast<int>(scene.graphs.size());
    if (q < 2) throw ValidationError("an identifold needs at least two cylinders");
    Identifold out;
    out.cylinders = q;
    out.grid = grid;
    out.eps = options.eps;
    for (int i = 0; i < q; ++i)
        for (int j = i + 1; j < q; ++j) {
            auto report = contact_events(scene, i, j, grid, options);
            for (auto& w : report.warnings)
                out.warnings.push_back("graphs " + std::to_string(i) + "," + std::to_string(j) + ": " + w);
            for (auto& c : report.components) out.identifications.push_back({{i, j}, std::move(c), 1});
        }

    // Iterated identifications: components that share cells and a cylinder glue
    // a further cylinder in.
    std::size_t begin = 0;
    for (int depth = 2; depth <= 3; ++depth) {
        const std::size_t end = out.identifications.size();
        std::set<std::vector<int>> made;
        for (std::size_t a = begin; a < end; ++a)
            for (std::size_t b = 0; b < end; ++b) {
                const auto& A = out.identifications[a];
                const auto& B = out.identifications[b];
                if (B.depth != 1 || a == b) continue;
                std::vector<int> shared;
                std::set_intersection(A.cylinders.begin(), A.cylinders.end(), B.cylinders.begin(), B.cylinders.end(),
                                      std::back_inserter(shared));
                std::vector<int> merged;
                std::set_union(A.cylinders.begin(), A.cylinders.end(), B.cylinders.begin(), B.cylinders.end(),
                               std::back_inserter(merged));
                if (shared.empty() || merged.size() == A.cylinders.size()) continue;
                std::set<Cell> ca;
                std::set<Cell> both;
                for (const auto& c : A.component.cells) ca.insert(c.cell);
                ContactComponent comp;
                for (const auto& c : B.component.cells)
                    if (ca.count(c.cell)) {
                        both.insert(c.cell);
                        comp.cells.push_back(c);
                    }
                if (both.empty() || !made.insert(merged).second) continue;
                comp.type = type_of(both, grid);
                comp.cls = worse(A.component.cls, B.component.cls);
                comp.ambiguous = A.component.ambiguous || B.component.ambiguous;
                for (const auto& c : A.component.singular_cells)
                    if (both.count(c)) comp.singular_cells.push_back(c);
                for (const auto& c : B.component.singular_cells)
                    if (both.count(c) && std::find(comp.singular_cells.begin(), comp.singular_cells.end(), c) == comp.singular_cells.end())
                        comp.singular_cells.push_back(c);
                out.identifications.push_back({merged, std::move(comp), depth});
            }
        begin = end;
    }
    return out;
}

EmbeddedGraph disjoint_union(const std::vector<EmbeddedGraph>& graphs) {
    EmbeddedGraph u;
    for (const auto& g : graphs) {
        const int offset = static_cast<int>(u.arcs.size());
        u.arcs.insert(u.arcs.end(), g.arcs.begin(), g.arcs.end());
        for (auto v : g.vertices) {
            for (auto& e : v.ends) e.arc += offset;
            u.vertices.push_back(std::move(v));
        }
    }
    return u;
}

std::vector<FamilyEntry> z_family(const Scene& scene, const std::vector<Sample>& samples, int M,
                                  const QuadratureConfig& quad, const ContactOptions& options, double window,
                                  const GridSpec& grid) {
    scene.validate();
    const std::size_t q = scene.graphs.size();
    for (const auto& s : samples)
        if (s.per_graph.size() != 1 && s.per_graph.size() != q)
            throw ValidationError("a sample needs one (sigma, tau) pair or one per graph");
    std::vector<FamilyEntry> out(samples.size());
    run_rows(static_cast<int>(samples.size()), options.threads, [&](int idx) {
        FamilyEntry& e = out[static_cast<std::size_t>(idx)];
        e.sample = samples[static_cast<std::size_t>(idx)];
        std::vector<EmbeddedGraph> configured;
        for (std::size_t g = 0; g < q; ++g) {
            const auto [sigma, tau] = e.sample.per_graph[e.sample.per_graph.size() == 1 ? 0 : g];
            auto c = configure(scene.graphs[g], scene.plans[g], sigma, tau);
            if (c.flagged) {
                e.status = "flagged";
                e.detail = "graph " + std::to_string(g) + ": " + c.reason;
                return;
            }
            configured.push_back(std::move(c.graph));
        }
        e.min_distance = std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < q; ++a)
            for (std::size_t b = a + 1; b < q; ++b) {
                const double d = graph_distance(configured[a], configured[b]).distance;
                e.min_distance = std::min(e.min_distance, d);
                if (d < options.eps) {
                    const auto verdict = classify_contact(configured[a], configured[b], options.eps);
                    const auto [sigma, tau] = e.sample.per_graph.front();
                    double turns = sigma / (2.0 * std::numbers::pi);
                    turns -= std::floor(turns);
                    const int k = static_cast<int>(std::lround(turns * grid.n_sigma)) % grid.n_sigma;
                    const int l = static_cast<int>(std::lround(std::clamp(tau, 0.0, 1.0) * (grid.n_tau - 1)));
                    std::ostringstream os;
                    os << "graphs " << a << "," << b << " in " << to_string(verdict.cls) << " contact (distance " << d
                       << "); identifold cell [" << k << "," << l << "] of " << grid.n_sigma << "x" << grid.n_tau;
                    e.status = "contact";
                    e.detail = os.str();
                    return;
                }
            }
        e.table = z_graph(disjoint_union(configured), M, quad, window);
        e.divergence_proxy = e.table.max_integrand;
        e.status = "ok";
    });
    return out;
}

}  // namespace kontsevich
