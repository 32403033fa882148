#pragma once

// Batch front-end: one RunConfig per invocation, dispatched to a subcommand.
// Inputs are embedded in the config, so a report's config replays the run.

#include <cstdint>
#include <string>

#include "kontsevich/io.hpp"

namespace kontsevich::cli {

inline constexpr int kMaxDegree = 6;
/// Returned when a check ran to completion and failed (invariance-check).
inline constexpr int kCheckFailed = 1;

struct RunConfig {
    std::string command;

    std::string skeleton = "circles:1";
    bool fi = false;
    int max_degree = 2;
    QuadratureConfig quad;

    int grid_sigma = 64;
    int grid_tau = 64;
    double eps = 1e-3;
    int zoom_rounds = 10;
    double window = kDefaultExtremumWindow;

    // invariance-check
    int perturbations = 0;
    double amplitude = 0.1;
    std::uint64_t seed = 1;
    double tol_degree1 = 1e-6;
    double tol_projected = 1e-4;
    double homotopy_eps = 1e-3;

    // ribbon
    int strand_a = 1;
    int strand_b = 2;
    int ribbon_samples = 32;

    // Inputs, embedded; `input_paths` is informational only.
    io::Json braid;
    io::Json other;
    io::Json scene;
    io::Json samples;
    std::vector<std::string> input_paths;

    // Not part of the hashed config.
    std::string output;
    int threads = 1;

    /// Throws ValidationError on non-positive parameters or M > kMaxDegree.
    void validate() const;
};

io::Json config_to_json(const RunConfig& c);
RunConfig config_from_json(const io::Json& j);
std::string config_hash(const RunConfig& c);

/// Pulls the embedded config out of any report the front-end writes.
RunConfig config_from_report(const std::string& text);

struct RunResult {
    int status = 0;
    std::string report;
    bool partial = false;
};

/// Runs one command. Library errors propagate as exceptions.
RunResult run(const RunConfig& c);

/// {"error":{"kind","code","message"}}
std::string error_json(const std::string& kind, int code, const std::string& message);

}  // namespace kontsevich::cli
