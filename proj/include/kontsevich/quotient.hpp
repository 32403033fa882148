#pragma once

// Four-term and framing-independence relations, and the exact quotient of
// the degree-m diagram space by them.

#include <optional>
#include <vector>

#include "kontsevich/diagram.hpp"

namespace kontsevich {

/// Four-term relations of degree m. Each relation is
///   D(after a) - D(before a) + D(after b) - D(before b)
/// where a, b are the feet of a fixed chord and the moving foot of a second
/// chord is re-plugged immediately before/after them. Deduplicated up to an
/// overall sign; the first term (in code order) carries a positive coefficient.
std::vector<RationalCombination> relations_4T(const Skeleton& skeleton, int m, int cap = 0);

/// Framing-independence relations: one singleton per diagram with an
/// isolated chord. Empty on strand skeletons.
std::vector<RationalCombination> relations_FI(const Skeleton& skeleton, int m, int cap = 0);

/// Incremental sparse echelon form over the rationals. Each stored row is
/// normalised to 1 at its pivot, which is the row's largest column index.
class SparseEchelon {
public:
    using Row = std::vector<std::pair<int, Rational>>;  // sorted by column

    explicit SparseEchelon(int columns) : pivots_(static_cast<std::size_t>(columns)) {}

    /// Reduces `row` against the stored pivots and stores the remainder if
    /// nonzero. Returns true when the rank grew.
    bool insert(Row row);

    int rank() const { return rank_; }
    int columns() const { return static_cast<int>(pivots_.size()); }
    bool is_pivot(int column) const { return pivots_[static_cast<std::size_t>(column)].has_value(); }

    /// Eliminates every pivot column from a dense vector.
    template <class T>
    void reduce(std::vector<T>& v) const;

private:
    std::vector<std::optional<Row>> pivots_;
    int rank_ = 0;
};

/// Degree-m diagrams modulo 4T (and FI when requested). The basis is the
/// lexicographically-first set of diagram classes independent in the quotient.
class QuotientSpace {
public:
    QuotientSpace(const Skeleton& skeleton, int m, bool use_fi, int cap = 0);

    const Skeleton& skeleton() const { return skeleton_; }
    int degree() const { return degree_; }
    bool uses_fi() const { return use_fi_; }

    int diagram_count() const { return static_cast<int>(codes_.size()); }
    int rank() const { return echelon_.rank(); }
    int dimension() const { return diagram_count() - rank(); }

    const std::vector<CanonicalCode>& diagrams() const { return codes_; }
    /// Codes of the basis diagrams, in coordinate order.
    std::vector<CanonicalCode> basis() const;

    std::optional<int> index_of(const CanonicalCode& code) const;

    /// Coordinates of `v` in the quotient basis. Throws ValidationError if a
    /// term is not a degree-m diagram on this skeleton.
    std::vector<Rational> project(const RationalCombination& v) const;
    std::vector<Complex> project(const ComplexCombination& v) const;

    std::size_t relation_count() const { return relation_count_; }

private:
    template <class T, class Comb>
    std::vector<T> project_impl(const Comb& v) const;

    Skeleton skeleton_;
    int degree_;
    bool use_fi_;
    std::vector<CanonicalCode> codes_;
    std::map<CanonicalCode, int> index_;
    SparseEchelon echelon_;
    std::vector<int> basis_columns_;
    std::size_t relation_count_ = 0;
};

/// Shared, lazily built quotient; safe to call from several threads.
const QuotientSpace& cached_quotient(const Skeleton& skeleton, int m, bool use_fi);

/// dim of degree-m quotient: #diagrams - rank(relations).
int quotient_dimension(const Skeleton& skeleton, int m, bool use_fi, int cap = 0);

}  // namespace kontsevich
