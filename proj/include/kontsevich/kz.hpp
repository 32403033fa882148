#pragma once

// Iterated integrals of dlog(z_i - z_j) over the ordered-time simplex.
//
// All words of length <= M are carried at once as a truncated series in
// noncommuting letters (one letter per pairing). On each substep the series
// is multiplied on the right by exp(Omega), where Omega is the fourth-order
// Magnus logarithm of the substep transport: exact log increments plus a
// two-point Gauss commutator term. Group-likeness of exp(Omega) makes the
// shuffle and concatenation identities hold to rounding.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "kontsevich/braid.hpp"
#include "kontsevich/graph.hpp"

namespace kontsevich {

using Complex = std::complex<double>;

/// Unordered pair of strand (or branch) indices, stored with i < j.
struct Pairing {
    int i = 1;
    int j = 2;

    Pairing() = default;
    Pairing(int a, int b);

    friend auto operator<=>(const Pairing&, const Pairing&) = default;
};

/// Chords ordered bottom-up.
using PairingWord = std::vector<Pairing>;

/// `i-j|i-j|...`; the empty word is the empty string.
std::string word_to_string(const PairingWord& w);
PairingWord word_from_string(const std::string& text);

/// Applies a 1-based index map to every pairing.
PairingWord relabel(const PairingWord& w, const std::vector<int>& map);

struct QuadratureConfig {
    double tol = 1e-8;
    /// Initial bound on |Log(d(s1)/d(s0))| per substep and letter.
    double kappa = 0.2;
    int max_levels = 40;
    /// How many times kappa may be halved while chasing `tol`.
    int max_refinements = 6;
};

struct CoefficientEntry {
    PairingWord word;
    Complex value;
    double err = 0.0;
};

struct CoefficientTable {
    int max_degree = 0;
    std::vector<Pairing> alphabet;
    std::vector<CoefficientEntry> entries;  // by degree, then lexicographic word
    std::uint64_t source_hash = 0;
    int substeps = 0;
    double kappa = 0.0;
    double tol = 0.0;
    /// Largest |d'/d| met on the integration domain.
    double max_integrand = 0.0;
    /// Excluded neighbourhood of extrema (graphs only).
    double extremum_window = 0.0;

    const CoefficientEntry* find(const PairingWord& w) const;
    /// Throws ValidationError if the word is not in the table.
    Complex coefficient(const PairingWord& w) const;
    double max_err() const;

    std::string to_csv() const;
};

/// One interval of the integration domain on which every difference is
/// linear in time.
struct Slab {
    struct Letter {
        int letter = 0;  // 0-based alphabet index
        Complex d0;
        Complex d1;
        double sign = 1.0;
    };
    double t0 = 0.0;
    double t1 = 0.0;
    std::vector<Letter> active;
};

struct SeriesProblem {
    std::vector<Pairing> alphabet;
    std::vector<Slab> slabs;
};

/// Integrates a prepared problem to depth M; entries carry the (1/2 pi i)^m
/// prefactor. Throws NumericalError if a substep needs more than
/// `max_levels` bisections.
CoefficientTable integrate_series(const SeriesProblem& problem, int M, const QuadratureConfig& quad);

SeriesProblem braid_problem(const GeometricBraid& b);

/// Every word of length <= M over the strand-pair alphabet.
CoefficientTable lambda_table(const GeometricBraid& b, int M, const QuadratureConfig& quad = {});

Complex iterated_integral(const GeometricBraid& b, const PairingWord& w, const QuadratureConfig& quad = {});

inline constexpr double kDefaultExtremumWindow = 1e-3;

struct GraphProblem {
    std::vector<Branch> branches;
    SeriesProblem series;
};

/// Letters are pairs of branches (1-based ids), signed by (-1)^epsilon.
/// Slices within `window` of an extremum or of a vertex of valence >= 3
/// are dropped.
GraphProblem graph_problem(const EmbeddedGraph& g, double window = kDefaultExtremumWindow);

CoefficientTable z_graph(const EmbeddedGraph& g, int M, const QuadratureConfig& quad = {},
                         double window = kDefaultExtremumWindow);

/// Product of per-chord signs (-1)^epsilon over a word on graph branches.
int word_sign(const std::vector<Branch>& branches, const PairingWord& w);

}  // namespace kontsevich
