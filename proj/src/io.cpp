#include "kontsevich/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "kontsevich/errors.hpp"

namespace kontsevich::io {

namespace {

template <class T>
T get(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing \"" + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const Json::exception& e) {
        throw ParseError(where + ": bad \"" + key + "\": " + e.what());
    }
}

template <class T>
T as(const Json& j, const std::string& where) {
    try {
        return j.get<T>();
    } catch (const Json::exception& e) {
        throw ParseError(where + ": " + e.what());
    }
}

const Json& array_at(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key) || !j.at(key).is_array())
        throw ParseError(where + ": \"" + key + "\" must be an array");
    return j.at(key);
}

Vec3 vec3(const Json& row, std::size_t offset, const std::string& where) {
    if (!row.is_array() || row.size() < offset + 3) throw ParseError(where + ": expected a numeric row");
    return {as<double>(row[offset], where), as<double>(row[offset + 1], where), as<double>(row[offset + 2], where)};
}

std::string diagram_code(const CanonicalCode& code) { return code_to_hex(code); }

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Json parse_json(const std::string& text, const std::string& what) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(what + ": " + e.what());
    }
}

Json load_json(const std::string& path) { return parse_json(read_file(path), path); }

void write_atomic(const std::string& path, const std::string& content) {
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ResourceError("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw ResourceError("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw ResourceError("cannot rename onto " + path + ": " + ec.message());
    }
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t h) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

GeometricBraid braid_from_json(const Json& j) {
    const std::string where = "braid";
    const int n = get<int>(j, "n", where);
    if (n < 1) throw ValidationError("braid: n must be positive");
    if (j.contains("word")) {
        const auto word = get<std::vector<int>>(j, "word", where);
        RealizeOptions opts;
        if (j.contains("steps_per_crossing")) opts.steps_per_crossing = get<int>(j, "steps_per_crossing", where);
        if (j.contains("bulge")) opts.bulge = get<double>(j, "bulge", where);
        return realize_braid_word(word, n, opts);
    }
    const Json& strands = array_at(j, "strands", where);
    if (static_cast<int>(strands.size()) != n)
        throw ValidationError("braid: n = " + std::to_string(n) + " but " + std::to_string(strands.size()) +
                              " strands given");
    std::vector<Polyline> out;
    for (const auto& s : strands) {
        if (!s.is_array()) throw ParseError("braid: a strand must be an array of [t, re, im]");
        Polyline p;
        for (const auto& row : s) {
            const auto v = vec3(row, 0, where);
            p.push_back({v[0], {v[1], v[2]}});
        }
        out.push_back(std::move(p));
    }
    return GeometricBraid(std::move(out));
}

Json braid_to_json(const GeometricBraid& b) {
    Json strands = Json::array();
    for (const auto& s : b.strands()) {
        Json rows = Json::array();
        for (const auto& bp : s) rows.push_back({bp.t, bp.z.real(), bp.z.imag()});
        strands.push_back(std::move(rows));
    }
    return {{"n", b.strand_count()}, {"strands", std::move(strands)}};
}

EmbeddedGraph graph_from_json(const Json& j) {
    const std::string where = "graph";
    EmbeddedGraph g;
    bool any_flag = false;
    for (const auto& a : array_at(j, "arcs", where)) {
        GraphArc arc;
        if (a.contains("closed")) arc.closed = get<bool>(a, "closed", where);
        for (const auto& row : array_at(a, "points", where)) {
            const auto v = vec3(row, 0, where);
            GraphPoint p{{v[0], v[1]}, v[2], false};
            if (row.size() > 3) {
                p.extremum = row[3].is_boolean() ? row[3].get<bool>() : as<int>(row[3], where) != 0;
                any_flag = true;
            }
            arc.points.push_back(p);
        }
        g.arcs.push_back(std::move(arc));
    }
    if (j.contains("vertices")) {
        for (const auto& v : array_at(j, "vertices", where)) {
            GraphVertex vertex;
            for (const auto& e : v) {
                if (!e.is_array() || e.size() != 2) throw ParseError("graph: a vertex end is [arc, 0|1]");
                vertex.ends.push_back({as<int>(e[0], where), as<int>(e[1], where) != 0});
            }
            g.vertices.push_back(std::move(vertex));
        }
    }
    if (!any_flag) {
        // Validation needs ends in range before extrema can be computed.
        for (const auto& v : g.vertices)
            for (const auto& e : v.ends)
                if (e.arc < 0 || e.arc >= static_cast<int>(g.arcs.size()))
                    throw ValidationError("graph: vertex refers to arc " + std::to_string(e.arc));
        g = g.with_recomputed_extrema();
    }
    g.validate();
    return g;
}

Json graph_to_json(const EmbeddedGraph& g) {
    Json arcs = Json::array();
    for (const auto& a : g.arcs) {
        Json pts = Json::array();
        for (const auto& p : a.points) pts.push_back({p.z.real(), p.z.imag(), p.t, p.extremum ? 1 : 0});
        arcs.push_back({{"points", std::move(pts)}, {"closed", a.closed}});
    }
    Json verts = Json::array();
    for (const auto& v : g.vertices) {
        Json ends = Json::array();
        for (const auto& e : v.ends) ends.push_back({e.arc, e.at_end ? 1 : 0});
        verts.push_back(std::move(ends));
    }
    return {{"arcs", std::move(arcs)}, {"vertices", std::move(verts)}};
}

Path path_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("path: expected [[tau, x, y, t], ...]");
    Path p;
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != 4) throw ParseError("path: each point is [tau, x, y, t]");
        p.points.push_back({as<double>(row[0], "path"), vec3(row, 1, "path")});
    }
    p.validate();
    return p;
}

Json path_to_json(const Path& p) {
    Json out = Json::array();
    for (const auto& q : p.points) out.push_back({q.tau, q.p[0], q.p[1], q.p[2]});
    return out;
}

Scene scene_from_json(const Json& j) {
    Scene s;
    for (const auto& g : array_at(j, "graphs", "scene")) s.graphs.push_back(graph_from_json(g));
    for (const auto& p : array_at(j, "plans", "scene")) {
        MotionPlan plan;
        plan.alpha = path_from_json(p.contains("alpha") ? p.at("alpha") : Json::array({{0, 0, 0, 0}}));
        if (p.contains("beta") && !p.at("beta").empty()) plan.beta = path_from_json(p.at("beta"));
        if (p.contains("spin")) plan.spin = get<double>(p, "spin", "plan");
        s.plans.push_back(std::move(plan));
    }
    s.validate();
    return s;
}

Json scene_to_json(const Scene& s) {
    Json graphs = Json::array();
    for (const auto& g : s.graphs) graphs.push_back(graph_to_json(g));
    Json plans = Json::array();
    for (const auto& p : s.plans)
        plans.push_back({{"alpha", path_to_json(p.alpha)}, {"beta", path_to_json(p.beta)}, {"spin", p.spin}});
    return {{"graphs", std::move(graphs)}, {"plans", std::move(plans)}};
}

std::vector<Sample> samples_from_json(const Json& j) {
    const Json& list = j.is_object() ? array_at(j, "samples", "samples") : j;
    if (!list.is_array()) throw ParseError("samples: expected an array");
    std::vector<Sample> out;
    for (const auto& row : list) {
        Sample s;
        if (row.is_array() && row.size() == 2 && row[0].is_number()) {
            s.per_graph.emplace_back(as<double>(row[0], "samples"), as<double>(row[1], "samples"));
        } else if (row.is_array()) {
            for (const auto& pair : row) {
                if (!pair.is_array() || pair.size() != 2) throw ParseError("samples: each entry is [sigma, tau]");
                s.per_graph.emplace_back(as<double>(pair[0], "samples"), as<double>(pair[1], "samples"));
            }
        } else {
            throw ParseError("samples: each sample is [sigma, tau] or a list of them");
        }
        if (s.per_graph.empty()) throw ValidationError("samples: empty sample");
        out.push_back(std::move(s));
    }
    return out;
}

Json sample_to_json(const Sample& s) {
    if (s.per_graph.size() == 1) return {s.per_graph[0].first, s.per_graph[0].second};
    Json out = Json::array();
    for (const auto& [sigma, tau] : s.per_graph) out.push_back({sigma, tau});
    return out;
}

ChordDiagram diagram_from_json(const Json& j) {
    const std::string where = "diagram";
    if (!j.is_object() || !j.contains("skeleton")) throw ParseError("diagram: missing \"skeleton\"");
    const Json& sk = j.at("skeleton");
    const auto kind = get<std::string>(sk, "kind", where);
    const int count = get<int>(sk, "count", where);
    ChordDiagram d;
    if (kind == "circles") d.skeleton = Skeleton::circles(count);
    else if (kind == "strands") d.skeleton = Skeleton::strands(count);
    else throw ParseError("diagram: skeleton kind must be circles or strands");
    for (const auto& c : array_at(j, "chords", where)) {
        if (!c.is_array() || c.size() != 2 || !c[0].is_array() || !c[1].is_array() || c[0].size() != 2 ||
            c[1].size() != 2)
            throw ParseError("diagram: a chord is [[c, p], [c', p']]");
        d.chords.push_back({{as<int>(c[0][0], where), as<int>(c[0][1], where)},
                            {as<int>(c[1][0], where), as<int>(c[1][1], where)}});
    }
    d.validate();
    return d;
}

Json diagram_to_json(const ChordDiagram& d) {
    Json chords = Json::array();
    for (const auto& [a, b] : d.chords) chords.push_back({{a.component, a.position}, {b.component, b.position}});
    return {{"skeleton", {{"kind", d.skeleton.is_circles() ? "circles" : "strands"}, {"count", d.skeleton.count}}},
            {"chords", std::move(chords)}};
}

Json complex_to_json(Complex z) {
    // Fold negative zero so equal values serialize identically.
    return {z.real() == 0.0 ? 0.0 : z.real(), z.imag() == 0.0 ? 0.0 : z.imag()};
}

Json table_to_json(const CoefficientTable& t) {
    Json entries = Json::array();
    for (const auto& e : t.entries)
        entries.push_back({{"word", word_to_string(e.word)}, {"value", complex_to_json(e.value)}, {"err", e.err}});
    return {{"max_degree", t.max_degree},       {"substeps", t.substeps},
            {"kappa", t.kappa},                 {"tol", t.tol},
            {"max_err", t.max_err()},           {"max_integrand", t.max_integrand},
            {"extremum_window", t.extremum_window}, {"entries", std::move(entries)}};
}

Json closed_to_json(const ClosedZ& z) {
    Json degrees = Json::array();
    for (const auto& d : z.degrees) {
        Json classes = Json::array();
        for (const auto& c : d.classes) {
            Json members = Json::array();
            for (const auto& w : c.cls.members) members.push_back(word_to_string(w));
            classes.push_back({{"class_diagram", diagram_to_json(decode(c.cls.closed_code))},
                               {"code", diagram_code(c.cls.closed_code)},
                               {"representative", word_to_string(c.cls.representative)},
                               {"members", std::move(members)},
                               {"raw_sum", complex_to_json(c.raw_sum)}});
        }
        Json basis = Json::array();
        for (const auto& b : d.basis) basis.push_back(diagram_to_json(decode(b)));
        Json coords = Json::array();
        for (const auto& c : d.coordinates) coords.push_back(complex_to_json(c));
        degrees.push_back({{"degree", d.degree},
                           {"classes", std::move(classes)},
                           {"basis", std::move(basis)},
                           {"quotient_coordinates", std::move(coords)}});
    }
    return {{"components", z.components}, {"fi", z.use_fi}, {"degrees", std::move(degrees)}};
}

Json component_to_json(const ContactComponent& c) {
    Json cells = Json::array();
    for (const auto& x : c.cells)
        cells.push_back({{"cell", {x.cell.k, x.cell.l}}, {"sigma", x.sigma}, {"tau", x.tau}, {"distance", x.distance}});
    Json singular = Json::array();
    for (const auto& x : c.singular_cells) singular.push_back({x.k, x.l});
    return {{"type", to_string(c.type)},
            {"class", to_string(c.cls)},
            {"ambiguous", c.ambiguous},
            {"cells", std::move(cells)},
            {"singular_cells", std::move(singular)}};
}

Json report_to_json(const ContactReport& r) {
    Json comps = Json::array();
    for (const auto& c : r.components) comps.push_back(component_to_json(c));
    return {{"components", std::move(comps)}, {"warnings", r.warnings}};
}

Json identifold_to_json(const Identifold& id) {
    Json ids = Json::array();
    for (const auto& x : id.identifications) {
        Json j = component_to_json(x.component);
        j["cylinders"] = x.cylinders;
        j["depth"] = x.depth;
        ids.push_back(std::move(j));
    }
    return {{"cylinders", id.cylinders},
            {"grid", {id.grid.n_sigma, id.grid.n_tau}},
            {"eps", id.eps},
            {"identifications", std::move(ids)},
            {"warnings", id.warnings}};
}

Json family_entry_to_json(const FamilyEntry& e) {
    Json j{{"sample", sample_to_json(e.sample)},
           {"status", e.status},
           {"detail", e.detail},
           {"min_distance", e.min_distance},
           {"divergence_proxy", e.divergence_proxy}};
    if (e.status == "ok") j["table"] = table_to_json(e.table);
    return j;
}

}  // namespace kontsevich::io
