#include "kontsevich/quotient.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <tuple>

#include "kontsevich/errors.hpp"

namespace kontsevich {

namespace {

// Removes occurrence `occ` (0 or 1, in component-major order) of chord `id`.
FootLayout remove_foot(const FootLayout& layout, int id, int occ) {
    FootLayout out = layout;
    int seen = 0;
    for (auto& seq : out.sequences) {
        for (auto it = seq.begin(); it != seq.end(); ++it) {
            if (*it != id) continue;
            if (seen++ == occ) {
                seq.erase(it);
                return out;
            }
        }
    }
    throw ValidationError("chord foot not found in layout");
}

struct FootRef {
    std::size_t component;
    std::size_t index;
};

std::vector<FootRef> feet_of(const FootLayout& layout, int id) {
    std::vector<FootRef> out;
    for (std::size_t c = 0; c < layout.sequences.size(); ++c)
        for (std::size_t p = 0; p < layout.sequences[c].size(); ++p)
            if (layout.sequences[c][p] == id) out.push_back({c, p});
    return out;
}

CanonicalCode plug(const FootLayout& reduced, int id, FootRef at, bool after) {
    FootLayout out = reduced;
    auto& seq = out.sequences[at.component];
    seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(at.index + (after ? 1 : 0)), id);
    return canonicalize(out);
}

RationalCombination normalized(RationalCombination r) {
    if (r.empty()) return r;
    const Rational lead = r.terms().begin()->second;
    r *= Rational(1) / lead;
    return r;
}

}  // namespace

std::vector<RationalCombination> relations_4T(const Skeleton& skeleton, int m, int cap) {
    std::set<RationalCombination::Terms> unique;
    for (const auto& code : enumerate_codes(skeleton, m, cap)) {
        const FootLayout layout = FootLayout::from_diagram(decode(code));
        for (int fixed = 0; fixed < layout.chord_count; ++fixed) {
            for (int moving = 0; moving < layout.chord_count; ++moving) {
                if (moving == fixed) continue;
                for (int occ = 0; occ < 2; ++occ) {
                    const FootLayout reduced = remove_foot(layout, moving, occ);
                    const auto ends = feet_of(reduced, fixed);
                    RationalCombination rel;
                    rel.add(plug(reduced, moving, ends[0], true), Rational(1));
                    rel.add(plug(reduced, moving, ends[0], false), Rational(-1));
                    rel.add(plug(reduced, moving, ends[1], true), Rational(1));
                    rel.add(plug(reduced, moving, ends[1], false), Rational(-1));
                    rel = normalized(std::move(rel));
                    if (!rel.empty()) unique.insert(rel.terms());
                }
            }
        }
    }
    std::vector<RationalCombination> out;
    out.reserve(unique.size());
    for (const auto& terms : unique) {
        RationalCombination r;
        for (const auto& [code, c] : terms) r.add(code, c);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<RationalCombination> relations_FI(const Skeleton& skeleton, int m, int cap) {
    std::vector<RationalCombination> out;
    const auto codes = enumerate_codes(skeleton, m, cap);
    if (!skeleton.is_circles()) return out;
    for (const auto& code : codes)
        if (has_isolated_chord(FootLayout::from_diagram(decode(code)))) out.emplace_back(code);
    return out;
}

bool SparseEchelon::insert(Row row) {
    Row scratch;
    while (!row.empty()) {
        const auto [col, lead] = row.back();
        auto& slot = pivots_[static_cast<std::size_t>(col)];
        if (!slot) {
            const Rational inv = Rational(1) / lead;
            for (auto& [c, v] : row) v *= inv;
            slot = std::move(row);
            ++rank_;
            return true;
        }
        // row -= lead * pivot_row; both sorted by column, pivot_row ends at col.
        scratch.clear();
        const Row& piv = *slot;
        std::size_t i = 0;
        std::size_t j = 0;
        while (i < row.size() || j < piv.size()) {
            if (j == piv.size() || (i < row.size() && row[i].first < piv[j].first)) {
                scratch.push_back(std::move(row[i++]));
            } else if (i == row.size() || piv[j].first < row[i].first) {
                scratch.emplace_back(piv[j].first, -lead * piv[j].second);
                ++j;
            } else {
                Rational v = row[i].second - lead * piv[j].second;
                if (v != 0) scratch.emplace_back(row[i].first, std::move(v));
                ++i;
                ++j;
            }
        }
        row.swap(scratch);
    }
    return false;
}

template <class T>
void SparseEchelon::reduce(std::vector<T>& v) const {
    for (int c = columns() - 1; c >= 0; --c) {
        const auto& slot = pivots_[static_cast<std::size_t>(c)];
        if (!slot || v[static_cast<std::size_t>(c)] == T(0)) continue;
        const T f = v[static_cast<std::size_t>(c)];
        for (const auto& [col, val] : *slot) {
            if constexpr (std::is_same_v<T, Rational>)
                v[static_cast<std::size_t>(col)] -= f * val;
            else
                v[static_cast<std::size_t>(col)] -= f * val.template convert_to<double>();
        }
        v[static_cast<std::size_t>(c)] = T(0);
    }
}

template void SparseEchelon::reduce<Rational>(std::vector<Rational>&) const;
template void SparseEchelon::reduce<Complex>(std::vector<Complex>&) const;

QuotientSpace::QuotientSpace(const Skeleton& skeleton, int m, bool use_fi, int cap)
    : skeleton_(skeleton),
      degree_(m),
      use_fi_(use_fi),
      codes_(enumerate_codes(skeleton, m, cap)),
      echelon_(static_cast<int>(codes_.size())) {
    for (std::size_t i = 0; i < codes_.size(); ++i) index_.emplace(codes_[i], static_cast<int>(i));

    auto add_all = [&](const std::vector<RationalCombination>& rels) {
        for (const auto& rel : rels) {
            SparseEchelon::Row row;
            for (const auto& [code, c] : rel.terms()) row.emplace_back(index_.at(code), c);
            std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            echelon_.insert(std::move(row));
            ++relation_count_;
        }
    };
    add_all(relations_4T(skeleton, m, cap));
    if (use_fi) add_all(relations_FI(skeleton, m, cap));

    for (int c = 0; c < echelon_.columns(); ++c)
        if (!echelon_.is_pivot(c)) basis_columns_.push_back(c);
}

std::vector<CanonicalCode> QuotientSpace::basis() const {
    std::vector<CanonicalCode> out;
    for (int c : basis_columns_) out.push_back(codes_[static_cast<std::size_t>(c)]);
    return out;
}

std::optional<int> QuotientSpace::index_of(const CanonicalCode& code) const {
    auto it = index_.find(code);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

template <class T, class Comb>
std::vector<T> QuotientSpace::project_impl(const Comb& v) const {
    std::vector<T> dense(codes_.size(), T(0));
    for (const auto& [code, c] : v.terms()) {
        const auto idx = index_of(code);
        if (!idx)
            throw ValidationError("combination term is not a degree-" + std::to_string(degree_) + " diagram on " +
                                  skeleton_.to_string());
        dense[static_cast<std::size_t>(*idx)] += c;
    }
    echelon_.reduce(dense);
    std::vector<T> out;
    out.reserve(basis_columns_.size());
    for (int c : basis_columns_) out.push_back(dense[static_cast<std::size_t>(c)]);
    return out;
}

std::vector<Rational> QuotientSpace::project(const RationalCombination& v) const {
    return project_impl<Rational>(v);
}

std::vector<Complex> QuotientSpace::project(const ComplexCombination& v) const {
    return project_impl<Complex>(v);
}

const QuotientSpace& cached_quotient(const Skeleton& skeleton, int m, bool use_fi) {
    static std::mutex mutex;
    static std::map<std::tuple<int, int, int, bool>, std::unique_ptr<QuotientSpace>> cache;
    const auto key = std::make_tuple(static_cast<int>(skeleton.kind), skeleton.count, m, use_fi);
    std::lock_guard lock(mutex);
    auto& slot = cache[key];
    if (!slot) slot = std::make_unique<QuotientSpace>(skeleton, m, use_fi);
    return *slot;
}

int quotient_dimension(const Skeleton& skeleton, int m, bool use_fi, int cap) {
    return QuotientSpace(skeleton, m, use_fi, cap).dimension();
}

}  // namespace kontsevich
