#include "kontsevich/cli.hpp"

#include <cmath>
#include <optional>
#include <sstream>

#include "kontsevich/closure.hpp"
#include "kontsevich/errors.hpp"
#include "kontsevich/limits.hpp"
#include "kontsevich/quotient.hpp"

namespace kontsevich::cli {

namespace {

using io::Json;

constexpr const char* kConfigPrefix = "# config=";
constexpr const char* kHashPrefix = "# config_hash=";

void positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError(std::string(name) + " must be positive");
}

std::string text_header(const RunConfig& c) {
    return std::string(kHashPrefix) + config_hash(c) + "\n" + kConfigPrefix + config_to_json(c).dump() + "\n";
}

Json json_header(const RunConfig& c) { return {{"config_hash", config_hash(c)}, {"config", config_to_json(c)}}; }

const Json& require_input(const Json& j, const char* what) {
    if (j.is_null()) throw ValidationError(std::string("missing input: ") + what);
    return j;
}

ContactOptions contact_options(const RunConfig& c) { return {c.eps, c.zoom_rounds, c.threads}; }

RunResult run_dims(const RunConfig& c) {
    const Skeleton skel = Skeleton::parse(c.skeleton);
    std::ostringstream os;
    os << text_header(c);
    for (int m = 0; m <= c.max_degree; ++m) {
        const QuotientSpace q(skel, m, c.fi);
        os << "m=" << m << " diagrams=" << q.diagram_count() << " rank=" << q.rank() << " dim=" << q.dimension()
           << '\n';
    }
    return {0, os.str(), false};
}

RunResult run_zbraid(const RunConfig& c) {
    const auto b = io::braid_from_json(require_input(c.braid, "braid"));
    const auto table = lambda_table(b, c.max_degree, c.quad);
    return {0, text_header(c) + table.to_csv(), false};
}

RunResult run_zclose(const RunConfig& c) {
    const auto b = io::braid_from_json(require_input(c.braid, "braid"));
    const auto table = lambda_table(b, c.max_degree, c.quad);
    Json out = json_header(c);
    out.update(io::closed_to_json(closed_Z(table, b, c.fi)));
    out["max_err"] = table.max_err();
    return {0, out.dump(2) + "\n", false};
}

RunResult run_invariance(const RunConfig& c) {
    const auto a = io::braid_from_json(require_input(c.braid, "braid"));
    struct Candidate {
        std::string label;
        GeometricBraid braid;
        std::optional<std::uint64_t> seed;  // set for bump perturbations
    };
    std::vector<Candidate> others;
    if (!c.other.is_null()) others.push_back({"other", io::braid_from_json(c.other), std::nullopt});
    for (int k = 0; k < c.perturbations; ++k) {
        const std::uint64_t seed = c.seed + static_cast<std::uint64_t>(k);
        others.push_back({"bump seed " + std::to_string(seed), bump(a, c.amplitude, seed), seed});
    }
    if (others.empty()) throw ValidationError("invariance-check needs --other or --perturbations");

    Json pairs = Json::array();
    bool passed = true;
    for (const auto& o : others) {
        Json p{{"label", o.label}};
        if (o.seed) {
            // The bump family must stay a braid all the way.
            double margin = validate(a).margin;
            for (int s = 1; s <= 20; ++s)
                margin = std::min(margin, validate(bump(a, c.amplitude * s / 20.0, *o.seed), c.homotopy_eps).margin);
            p["homotopy_margin"] = margin;
            p["homotopy_valid"] = margin > c.homotopy_eps;
            if (!(margin > c.homotopy_eps)) {
                passed = false;
                p["passed"] = false;
                pairs.push_back(std::move(p));
                continue;
            }
        }
        const auto rep = compare_realizations(a, o.braid, c.max_degree, c.quad);
        Json degrees = Json::array();
        bool ok = true;
        for (const auto& d : rep.degrees) {
            const double tol = d.projected ? c.tol_projected : c.tol_degree1;
            degrees.push_back(
                {{"degree", d.degree}, {"projected", d.projected}, {"max_diff", d.max_diff}, {"tol", tol}});
            ok = ok && d.max_diff <= tol;
        }
        p["degrees"] = std::move(degrees);
        p["max_err"] = rep.max_err;
        p["passed"] = ok;
        passed = passed && ok;
        pairs.push_back(std::move(p));
    }
    Json out = json_header(c);
    out["pairs"] = std::move(pairs);
    out["passed"] = passed;
    return {passed ? 0 : kCheckFailed, out.dump(2) + "\n", false};
}

RunResult run_identifold(const RunConfig& c) {
    const auto scene = io::scene_from_json(require_input(c.scene, "scene"));
    const auto id = build_identifold(scene, {c.grid_sigma, c.grid_tau}, contact_options(c));
    Json out = json_header(c);
    out.update(io::identifold_to_json(id));
    return {0, out.dump(2) + "\n", false};
}

RunResult run_zfamily(const RunConfig& c) {
    const auto scene = io::scene_from_json(require_input(c.scene, "scene"));
    const auto samples = io::samples_from_json(require_input(c.samples, "samples"));
    const GridSpec grid{c.grid_sigma, c.grid_tau};
    Json entries = Json::array();
    int status = 0;
    for (const auto& s : samples) {
        try {
            const auto fam = z_family(scene, {s}, c.max_degree, c.quad, contact_options(c), c.window, grid);
            entries.push_back(io::family_entry_to_json(fam.front()));
        } catch (const NumericalError& e) {
            // Keep going; the report is marked partial.
            entries.push_back({{"sample", io::sample_to_json(s)}, {"status", "error"}, {"detail", e.what()}});
            status = e.exit_code();
        }
    }
    Json out = json_header(c);
    out["entries"] = std::move(entries);
    if (status != 0) out["partial"] = true;
    return {status, out.dump(2) + "\n", status != 0};
}

RunResult run_ribbon(const RunConfig& c) {
    const auto b = io::braid_from_json(require_input(c.braid, "braid"));
    require_valid(b);
    return {0, text_header(c) + ribbon_mesh(b, c.strand_a, c.strand_b, c.ribbon_samples).to_obj(), false};
}

}  // namespace

void RunConfig::validate() const {
    if (max_degree < 0) throw ValidationError("max degree must be nonnegative");
    if (max_degree > kMaxDegree)
        throw ValidationError("max degree " + std::to_string(max_degree) + " exceeds " + std::to_string(kMaxDegree));
    positive(quad.tol, "tol");
    positive(quad.kappa, "kappa");
    positive(quad.max_levels, "max levels");
    if (quad.max_refinements < 0) throw ValidationError("max refinements must be nonnegative");
    positive(grid_sigma, "grid sigma");
    positive(grid_tau, "grid tau");
    positive(eps, "eps");
    positive(zoom_rounds, "zoom rounds");
    positive(window, "window");
    if (perturbations < 0) throw ValidationError("perturbations must be nonnegative");
    positive(amplitude, "amplitude");
    positive(tol_degree1, "degree-1 tolerance");
    positive(tol_projected, "projected tolerance");
    positive(homotopy_eps, "homotopy eps");
    positive(ribbon_samples, "ribbon samples");
    positive(threads, "threads");
}

Json config_to_json(const RunConfig& c) {
    Json j{{"command", c.command},
           {"skeleton", c.skeleton},
           {"fi", c.fi},
           {"max_degree", c.max_degree},
           {"quad",
            {{"tol", c.quad.tol},
             {"kappa", c.quad.kappa},
             {"max_levels", c.quad.max_levels},
             {"max_refinements", c.quad.max_refinements}}},
           {"grid", {c.grid_sigma, c.grid_tau}},
           {"eps", c.eps},
           {"zoom_rounds", c.zoom_rounds},
           {"window", c.window},
           {"perturbations", c.perturbations},
           {"amplitude", c.amplitude},
           {"seed", c.seed},
           {"tol_degree1", c.tol_degree1},
           {"tol_projected", c.tol_projected},
           {"homotopy_eps", c.homotopy_eps},
           {"strands", {c.strand_a, c.strand_b}},
           {"ribbon_samples", c.ribbon_samples},
           {"inputs", c.input_paths}};
    if (!c.braid.is_null()) j["braid"] = c.braid;
    if (!c.other.is_null()) j["other"] = c.other;
    if (!c.scene.is_null()) j["scene"] = c.scene;
    if (!c.samples.is_null()) j["samples"] = c.samples;
    return j;
}

RunConfig config_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("config must be an object");
    RunConfig c;
    try {
        c.command = j.at("command").get<std::string>();
        c.skeleton = j.value("skeleton", c.skeleton);
        c.fi = j.value("fi", c.fi);
        c.max_degree = j.value("max_degree", c.max_degree);
        if (j.contains("quad")) {
            const auto& q = j.at("quad");
            c.quad.tol = q.value("tol", c.quad.tol);
            c.quad.kappa = q.value("kappa", c.quad.kappa);
            c.quad.max_levels = q.value("max_levels", c.quad.max_levels);
            c.quad.max_refinements = q.value("max_refinements", c.quad.max_refinements);
        }
        if (j.contains("grid")) {
            c.grid_sigma = j.at("grid").at(0).get<int>();
            c.grid_tau = j.at("grid").at(1).get<int>();
        }
        c.eps = j.value("eps", c.eps);
        c.zoom_rounds = j.value("zoom_rounds", c.zoom_rounds);
        c.window = j.value("window", c.window);
        c.perturbations = j.value("perturbations", c.perturbations);
        c.amplitude = j.value("amplitude", c.amplitude);
        c.seed = j.value("seed", c.seed);
        c.tol_degree1 = j.value("tol_degree1", c.tol_degree1);
        c.tol_projected = j.value("tol_projected", c.tol_projected);
        c.homotopy_eps = j.value("homotopy_eps", c.homotopy_eps);
        if (j.contains("strands")) {
            c.strand_a = j.at("strands").at(0).get<int>();
            c.strand_b = j.at("strands").at(1).get<int>();
        }
        c.ribbon_samples = j.value("ribbon_samples", c.ribbon_samples);
        c.input_paths = j.value("inputs", c.input_paths);
    } catch (const Json::exception& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    if (j.contains("braid")) c.braid = j.at("braid");
    if (j.contains("other")) c.other = j.at("other");
    if (j.contains("scene")) c.scene = j.at("scene");
    if (j.contains("samples")) c.samples = j.at("samples");
    return c;
}

std::string config_hash(const RunConfig& c) { return io::hex64(io::fnv1a(config_to_json(c).dump())); }

RunConfig config_from_report(const std::string& text) {
    const auto start = text.find_first_not_of(" \t\r\n");
    if (start != std::string::npos && text[start] == '{') {
        const Json j = io::parse_json(text, "report");
        if (!j.contains("config")) throw ParseError("report has no embedded config");
        return config_from_json(j.at("config"));
    }
    std::istringstream in(text);
    std::string line;
    const std::string prefix = kConfigPrefix;
    while (std::getline(in, line))
        if (line.rfind(prefix, 0) == 0) return config_from_json(io::parse_json(line.substr(prefix.size()), "report"));
    throw ParseError("report has no embedded config");
}

RunResult run(const RunConfig& c) {
    c.validate();
    if (c.command == "dims") return run_dims(c);
    if (c.command == "zbraid") return run_zbraid(c);
    if (c.command == "zclose") return run_zclose(c);
    if (c.command == "invariance-check") return run_invariance(c);
    if (c.command == "identifold") return run_identifold(c);
    if (c.command == "zfamily") return run_zfamily(c);
    if (c.command == "ribbon") return run_ribbon(c);
    throw ParseError("unknown command \"" + c.command + "\"");
}

std::string error_json(const std::string& kind, int code, const std::string& message) {
    return Json{{"error", {{"kind", kind}, {"code", code}, {"message", message}}}}.dump();
}

}  // namespace kontsevich::cli
