#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "kontsevich/cli.hpp"
#include "kontsevich/errors.hpp"

using namespace kontsevich;

namespace {

io::Json load_input(cli::RunConfig& c, const std::string& path) {
    c.input_paths.push_back(path);
    return io::load_json(path);
}

void add_quadrature(CLI::App* sub, cli::RunConfig& c) {
    sub->add_option("--tol", c.quad.tol, "Target error per coefficient");
    sub->add_option("--kappa", c.quad.kappa, "Initial log-ratio bound per substep");
    sub->add_option("--max-levels", c.quad.max_levels, "Bisection depth cap");
    sub->add_option("--max-refinements", c.quad.max_refinements, "How often kappa may be halved");
}

void add_grid(CLI::App* sub, cli::RunConfig& c, std::string& grid) {
    sub->add_option("--grid", grid, "Grid as <n_sigma>x<n_tau>")->default_val("64x64");
    sub->add_option("--eps", c.eps, "Contact distance threshold");
    sub->add_option("--zoom-rounds", c.zoom_rounds, "Cell refinement rounds");
}

void parse_grid(const std::string& text, cli::RunConfig& c) {
    const auto x = text.find('x');
    try {
        if (x == std::string::npos) throw std::invalid_argument(text);
        c.grid_sigma = std::stoi(text.substr(0, x));
        c.grid_tau = std::stoi(text.substr(x + 1));
    } catch (const std::exception&) {
        throw ParseError("--grid expects <n_sigma>x<n_tau>, got \"" + text + "\"");
    }
}

int fail(const char* kind, int code, const std::string& message) {
    std::cerr << cli::error_json(kind, code, message) << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Truncated Kontsevich integrals of braids and moving graphs"};
    app.require_subcommand(0, 1);
    app.fallthrough();
    cli::RunConfig c;
    std::string replay;
    std::string braid_path, other_path, scene_path, samples_path, grid = "64x64";
    app.add_option("--replay", replay, "Re-run the configuration embedded in a report");
    app.add_option("--output,-o", c.output, "Write the report here (atomically) instead of stdout");
    app.add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);

    auto* dims = app.add_subcommand("dims", "Quotient dimensions per degree");
    dims->add_option("--skeleton", c.skeleton, "circles:<q> or strands:<n>");
    dims->add_option("--max-degree", c.max_degree)->required();
    dims->add_flag("--fi", c.fi, "Also impose framing independence");

    auto* zbraid = app.add_subcommand("zbraid", "Coefficient table of a braid as CSV");
    zbraid->add_option("--braid", braid_path)->required();
    zbraid->add_option("--max-degree", c.max_degree)->required();
    add_quadrature(zbraid, c);

    auto* zclose = app.add_subcommand("zclose", "Closure values as JSON");
    zclose->add_option("--braid", braid_path)->required();
    zclose->add_option("--max-degree", c.max_degree)->required();
    zclose->add_flag("--fi", c.fi);
    add_quadrature(zclose, c);

    auto* inv = app.add_subcommand("invariance-check", "Compare homotopic realizations after projection");
    inv->add_option("--braid", braid_path)->required();
    inv->add_option("--other", other_path, "A second realization of the same braid");
    inv->add_option("--perturbations", c.perturbations, "Random bump homotopies to try");
    inv->add_option("--amplitude", c.amplitude);
    inv->add_option("--seed", c.seed);
    inv->add_option("--max-degree", c.max_degree)->required();
    inv->add_option("--tol1", c.tol_degree1, "Tolerance for raw degree-1 coefficients");
    inv->add_option("--tol-projected", c.tol_projected, "Tolerance for projected higher degrees");
    add_quadrature(inv, c);

    auto* ident = app.add_subcommand("identifold", "Contact identifications of a scene");
    ident->add_option("--scene", scene_path)->required();
    add_grid(ident, c, grid);

    auto* family = app.add_subcommand("zfamily", "Integrals over sampled configurations of a scene");
    family->add_option("--scene", scene_path)->required();
    family->add_option("--samples", samples_path)->required();
    family->add_option("--max-degree", c.max_degree)->required();
    family->add_option("--window", c.window, "Excluded neighbourhood of extrema");
    add_grid(family, c, grid);
    add_quadrature(family, c);

    auto* ribbon = app.add_subcommand("ribbon", "Ruled ribbon between two strands as OBJ");
    ribbon->add_option("--braid", braid_path)->required();
    ribbon->add_option("--strands", c.strand_a, "First strand");
    ribbon->add_option("--with", c.strand_b, "Second strand");
    ribbon->add_option("--samples", c.ribbon_samples);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("parse", 2, e.what());
    }

    try {
        if (!replay.empty()) {
            if (!app.get_subcommands().empty()) throw ParseError("--replay takes no subcommand");
            const std::string output = c.output;
            const int threads = c.threads;
            c = cli::config_from_report(io::read_file(replay));
            c.output = output;
            c.threads = threads;
        } else {
            if (app.get_subcommands().empty()) throw ParseError("a subcommand or --replay is required");
            c.command = app.get_subcommands().front()->get_name();
            parse_grid(grid, c);
            if (!braid_path.empty()) c.braid = load_input(c, braid_path);
            if (!other_path.empty()) c.other = load_input(c, other_path);
            if (!scene_path.empty()) c.scene = load_input(c, scene_path);
            if (!samples_path.empty()) c.samples = load_input(c, samples_path);
        }
        const auto result = cli::run(c);
        if (c.output.empty()) std::cout << result.report << std::flush;
        else io::write_atomic(c.output, result.report);
        if (result.partial) std::cerr << cli::error_json("numerical", result.status, "report is partial") << '\n';
        return result.status;
    } catch (const Error& e) {
        return fail(e.kind(), e.exit_code(), e.what());
    } catch (const std::exception& e) {
        return fail("internal", 1, e.what());
    }
}
