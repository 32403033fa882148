#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kontsevich/cli.hpp"
#include "kontsevich/closure.hpp"
#include "kontsevich/dynamics.hpp"
#include "kontsevich/errors.hpp"
#include "kontsevich/io.hpp"
#include "kontsevich/quotient.hpp"

namespace py = pybind11;
using namespace kontsevich;
using io::Json;

// Structured values cross the boundary as JSON text; the Python package
// wraps these calls with json.dumps / json.loads.

namespace {

QuadratureConfig quad(double tol, double kappa) {
    QuadratureConfig q;
    q.tol = tol;
    q.kappa = kappa;
    return q;
}

std::string braid_table(const std::string& braid, int max_degree, double tol, double kappa) {
    const auto b = io::braid_from_json(io::parse_json(braid, "braid"));
    py::gil_scoped_release release;
    return io::table_to_json(lambda_table(b, max_degree, quad(tol, kappa))).dump();
}

std::string graph_table(const std::string& graph, int max_degree, double tol, double window) {
    const auto g = io::graph_from_json(io::parse_json(graph, "graph"));
    py::gil_scoped_release release;
    return io::table_to_json(z_graph(g, max_degree, quad(tol, 0.2), window)).dump();
}

std::string closed(const std::string& braid, int max_degree, bool fi) {
    const auto b = io::braid_from_json(io::parse_json(braid, "braid"));
    py::gil_scoped_release release;
    return io::closed_to_json(closed_Z(lambda_table(b, max_degree), b, fi)).dump();
}

std::string braid_info(const std::string& braid, double eps) {
    const auto b = io::braid_from_json(io::parse_json(braid, "braid"));
    const auto d = validate(b, eps);
    Json j{{"valid", d.valid},
           {"margin", d.margin},
           {"margin_t", d.margin_t},
           {"closest", {d.closest_a, d.closest_b}},
           {"permutation", d.permutation},
           {"message", d.message},
           {"hash", io::hex64(b.hash())},
           {"strands", io::braid_to_json(b)["strands"]}};
    return j.dump();
}

std::string identifold(const std::string& scene, int n_sigma, int n_tau, double eps, int threads) {
    const auto s = io::scene_from_json(io::parse_json(scene, "scene"));
    py::gil_scoped_release release;
    return io::identifold_to_json(build_identifold(s, {n_sigma, n_tau}, {eps, 10, threads})).dump();
}

std::string family(const std::string& scene, const std::string& samples, int max_degree, double eps) {
    const auto s = io::scene_from_json(io::parse_json(scene, "scene"));
    const auto smp = io::samples_from_json(io::parse_json(samples, "samples"));
    py::gil_scoped_release release;
    Json out = Json::array();
    ContactOptions opts;
    opts.eps = eps;
    for (const auto& e : z_family(s, smp, max_degree, {}, opts)) out.push_back(io::family_entry_to_json(e));
    return out.dump();
}

py::tuple run(const std::string& config) {
    auto c = cli::config_from_json(io::parse_json(config, "config"));
    cli::RunResult r;
    {
        py::gil_scoped_release release;
        r = cli::run(c);
    }
    return py::make_tuple(r.status, r.report, r.partial);
}

}  // namespace

PYBIND11_MODULE(_kontsevich, m) {
    m.doc() = "Truncated Kontsevich integrals of braids and moving graphs";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
    py::register_exception<ResourceError>(m, "ResourceError", base.ptr());
    py::register_exception<NumericalError>(m, "NumericalError", base.ptr());

    m.def(
        "quotient",
        [](const std::string& skeleton, int m, bool fi) {
            const QuotientSpace q(Skeleton::parse(skeleton), m, fi);
            return py::dict(py::arg("diagrams") = q.diagram_count(), py::arg("rank") = q.rank(),
                            py::arg("dim") = q.dimension());
        },
        py::arg("skeleton"), py::arg("m"), py::arg("fi") = false);
    m.def("braid_table", &braid_table, py::arg("braid"), py::arg("max_degree"), py::arg("tol") = 1e-8,
          py::arg("kappa") = 0.2);
    m.def("graph_table", &graph_table, py::arg("graph"), py::arg("max_degree"), py::arg("tol") = 1e-8,
          py::arg("window") = kDefaultExtremumWindow);
    m.def("closed", &closed, py::arg("braid"), py::arg("max_degree"), py::arg("fi") = false);
    m.def("braid_info", &braid_info, py::arg("braid"), py::arg("eps") = kDefaultCollisionEps);
    m.def("identifold", &identifold, py::arg("scene"), py::arg("n_sigma") = 64, py::arg("n_tau") = 64,
          py::arg("eps") = 1e-3, py::arg("threads") = 1);
    m.def("family", &family, py::arg("scene"), py::arg("samples"), py::arg("max_degree"), py::arg("eps") = 1e-3);
    m.def("run", &run, py::arg("config"));
    m.def("config_hash", [](const std::string& config) {
        return cli::config_hash(cli::config_from_json(io::parse_json(config, "config")));
    });
}
