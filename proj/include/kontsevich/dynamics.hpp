#pragma once

// Moving graphs in C x R: motion plans, configured families over (sigma, tau),
// contact detection and classification, identifolds, and sampled integrals.

#include <array>
#include <string>
#include <vector>

#include "kontsevich/graph.hpp"
#include "kontsevich/kz.hpp"

namespace kontsevich {

/// (x, y, t) with z = x + iy.
using Vec3 = std::array<double, 3>;

struct PathPoint {
    double tau = 0.0;
    Vec3 p{};
};

/// PL path over tau in [0,1]; a single point is a constant path.
struct Path {
    std::vector<PathPoint> points;

    Vec3 at(double tau) const;
    /// Throws ValidationError unless tau runs strictly increasing from 0 to 1.
    void validate() const;
    double max_speed() const;
};

struct MotionPlan {
    Path alpha;  // translation track
    Path beta;   // rotation centres
    /// Rotation angle is spin * sigma.
    double spin = 1.0;

    void validate() const;
};

struct ConfiguredGraph {
    EmbeddedGraph graph;
    bool flagged = false;
    std::string reason;
};

/// Translate by alpha(tau) - alpha(0), then rotate by spin * sigma about the
/// axis through beta(tau) parallel to the real axis. Extremum flags follow
/// the new geometry; horizontal edges flag the configuration.
ConfiguredGraph configure(const EmbeddedGraph& g, const MotionPlan& plan, double sigma, double tau);

/// Minimum distance between two graphs, with the closest points.
struct GraphDistance {
    double distance = 0.0;
    int arc_a = 0;
    int seg_a = 0;  // segment k joins point k and k+1 (wrapping on closed arcs)
    double u_a = 0.0;
    int arc_b = 0;
    int seg_b = 0;
    double u_b = 0.0;
};

GraphDistance graph_distance(const EmbeddedGraph& a, const EmbeddedGraph& b);

struct Scene {
    std::vector<EmbeddedGraph> graphs;
    std::vector<MotionPlan> plans;
    void validate() const;
};

struct GridSpec {
    int n_sigma = 64;
    int n_tau = 64;

    double sigma(int k) const;
    double tau(int l) const;
};

struct ContactOptions {
    double eps = 1e-3;
    int zoom_rounds = 10;
    int threads = 1;
};

enum class ContactType { point, arc, area };
enum class ContactClass { regular, vanishing, singular };

std::string to_string(ContactType t);
std::string to_string(ContactClass c);

struct Cell {
    int k = 0;  // sigma index
    int l = 0;  // tau index
    friend auto operator<=>(const Cell&, const Cell&) = default;
};

struct CellContact {
    Cell cell;
    double sigma = 0.0;  // where the minimum distance was found
    double tau = 0.0;
    double distance = 0.0;
};

struct ContactVerdict {
    ContactClass cls = ContactClass::singular;
    bool ambiguous = false;
    int valence = 0;
    std::string detail;
};

/// Local shape of the union at the closest points of two configured graphs.
ContactVerdict classify_contact(const EmbeddedGraph& a, const EmbeddedGraph& b, double eps);

struct ContactComponent {
    ContactType type = ContactType::point;
    ContactClass cls = ContactClass::regular;
    bool ambiguous = false;
    std::vector<CellContact> cells;  // row-major (l, then k)
    std::vector<Cell> singular_cells;
};

struct ContactReport {
    std::vector<ContactComponent> components;
    std::vector<std::string> warnings;
};

/// Contacts between graphs `i` and `j` of the scene on a shared (sigma, tau) grid.
ContactReport contact_events(const Scene& scene, int i, int j, const GridSpec& grid, const ContactOptions& options);

struct Identification {
    std::vector<int> cylinders;  // 0-based graph indices, sorted
    ContactComponent component;
    int depth = 1;  // 1 = pairwise, 2+ = iterated through a shared cell set
};

struct Identifold {
    int cylinders = 0;
    GridSpec grid;
    double eps = 0.0;
    std::vector<Identification> identifications;
    std::vector<std::string> warnings;
};

Identifold build_identifold(const Scene& scene, const GridSpec& grid, const ContactOptions& options);

/// Per-graph (sigma, tau); a single pair is broadcast to every graph.
struct Sample {
    std::vector<std::pair<double, double>> per_graph;
};

struct FamilyEntry {
    Sample sample;
    std::string status;  // "ok", "flagged" or "contact"
    std::string detail;
    double min_distance = 0.0;
    double divergence_proxy = 0.0;
    CoefficientTable table;  // empty unless status == "ok"
};

/// The disjoint union of the configured graphs, as one graph.
EmbeddedGraph disjoint_union(const std::vector<EmbeddedGraph>& graphs);

std::vector<FamilyEntry> z_family(const Scene& scene, const std::vector<Sample>& samples, int M,
                                  const QuadratureConfig& quad, const ContactOptions& options,
                                  double window = kDefaultExtremumWindow, const GridSpec& grid = {});

}  // namespace kontsevich
