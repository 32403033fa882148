#pragma once

// From coefficient tables on a braid to chord-diagram values: tangle classes
// on the strands, sliding classes on the closure, and quotient coordinates.

#include <vector>

#include "kontsevich/braid.hpp"
#include "kontsevich/diagram.hpp"
#include "kontsevich/kz.hpp"
#include "kontsevich/quotient.hpp"

namespace kontsevich {

/// Chord k of the word sits at height k; feet are numbered bottom-up per strand.
ChordDiagram strand_diagram(const PairingWord& w, int n);

/// The word's chords carried to the closed skeleton: each circle runs through
/// its strands in closure order, feet bottom-up within a strand.
ChordDiagram closed_diagram(const PairingWord& w, const ClosureSkeleton& closure);

struct TangleClassValue {
    PairingWord word;       // the class on a braid skeleton
    ChordDiagram diagram;   // its strand diagram
    Complex value;
};

/// Re-keys the table by tangle classes. Throws ValidationError when the
/// table was not computed on `b`.
std::vector<TangleClassValue> act_on_braid(const CoefficientTable& table, const GeometricBraid& b);

struct SlidingClass {
    PairingWord representative;  // lexicographically smallest member
    std::vector<PairingWord> members;
    CanonicalCode closed_code;
};

/// Partition of all degree-m words by the canonical form of their closed diagram.
std::vector<SlidingClass> sliding_classes(const GeometricBraid& b, int m);

struct ClosedClassValue {
    SlidingClass cls;
    Complex raw_sum;
};

struct ClosedDegree {
    int degree = 0;
    std::vector<ClosedClassValue> classes;
    ComplexCombination combination;   // sum of raw_sum * closed diagram
    std::vector<CanonicalCode> basis; // quotient basis on Circles(q)
    std::vector<Complex> coordinates;
};

struct ClosedZ {
    int components = 0;
    bool use_fi = false;
    std::vector<ClosedDegree> degrees;  // 0..M
};

/// M < 0 means the table's own max degree.
ClosedZ closed_Z(const CoefficientTable& table, const GeometricBraid& b, bool use_fi, int M = -1);

/// Sum over degree-m words of coefficient times strand diagram.
ComplexCombination strand_combination(const CoefficientTable& table, int n, int m);

/// Degree-m part of the table in the 4T quotient on n strands.
std::vector<Complex> project_strands(const CoefficientTable& table, int n, int m);

/// Renumbers the components of every diagram (map is 1-based: old c -> map[c-1]).
ComplexCombination relabel_components(const ComplexCombination& v, const std::vector<int>& map);

struct InvarianceDegree {
    int degree = 0;
    /// Degree 1 compares raw coefficients; higher degrees compare 4T coordinates.
    double max_diff = 0.0;
    bool projected = false;
};

struct InvarianceReport {
    std::vector<InvarianceDegree> degrees;  // 1..M
    double max_err = 0.0;                   // largest quadrature estimate of either table
};

/// Compares two realizations of one braid up to degree M. Throws
/// ValidationError when their endpoint permutations differ.
InvarianceReport compare_realizations(const GeometricBraid& a, const GeometricBraid& b, int M,
                                      const QuadratureConfig& quad = {});

}  // namespace kontsevich
