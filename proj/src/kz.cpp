#include "kontsevich/kz.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "kontsevich/errors.hpp"
#include "kontsevich/limits.hpp"

namespace kontsevich {

Pairing::Pairing(int a, int b) : i(std::min(a, b)), j(std::max(a, b)) {
    if (a == b) throw ValidationError("a pairing needs two distinct indices, got " + std::to_string(a) + " twice");
    if (i < 1) throw ValidationError("pairing indices are 1-based");
}

std::string word_to_string(const PairingWord& w) {
    std::string s;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k) s += '|';
        s += std::to_string(w[k].i) + "-" + std::to_string(w[k].j);
    }
    return s;
}

PairingWord word_from_string(const std::string& text) {
    PairingWord w;
    if (text.empty()) return w;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, '|')) {
        const auto dash = item.find('-');
        if (dash == std::string::npos) throw ParseError("bad pairing '" + item + "' (expected i-j)");
        try {
            std::size_t u = 0;
            std::size_t v = 0;
            const std::string a = item.substr(0, dash);
            const std::string b = item.substr(dash + 1);
            const int i = std::stoi(a, &u);
            const int j = std::stoi(b, &v);
            if (u != a.size() || v != b.size()) throw std::invalid_argument(item);
            w.emplace_back(i, j);
        } catch (const std::logic_error&) {
            throw ParseError("bad pairing '" + item + "' (expected i-j)");
        }
    }
    return w;
}

PairingWord relabel(const PairingWord& w, const std::vector<int>& map) {
    PairingWord out;
    for (const auto& p : w) out.emplace_back(map.at(static_cast<std::size_t>(p.i - 1)), map.at(static_cast<std::size_t>(p.j - 1)));
    return out;
}

const CoefficientEntry* CoefficientTable::find(const PairingWord& w) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), w, [](const CoefficientEntry& e, const PairingWord& key) {
        if (e.word.size() != key.size()) return e.word.size() < key.size();
        return e.word < key;
    });
    if (it == entries.end() || it->word != w) return nullptr;
    return &*it;
}

Complex CoefficientTable::coefficient(const PairingWord& w) const {
    const auto* e = find(w);
    if (e == nullptr) throw ValidationError("word '" + word_to_string(w) + "' is not in the table");
    return e->value;
}

double CoefficientTable::max_err() const {
    double m = 0.0;
    for (const auto& e : entries) m = std::max(m, e.err);
    return m;
}

std::string CoefficientTable::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "degree,word,re,im,err\n";
    for (const auto& e : entries) {
        // Fold negative zero so identical runs print identical bytes.
        const double re = e.value.real() == 0.0 ? 0.0 : e.value.real();
        const double im = e.value.imag() == 0.0 ? 0.0 : e.value.imag();
        os << e.word.size() << ',' << word_to_string(e.word) << ',' << re << ',' << im << ',' << e.err << '\n';
    }
    return os.str();
}

namespace {

struct Piece {
    const Slab* slab;
    double a;
    double b;
};

Complex diff_at(const Slab::Letter& l, double s) { return l.d0 + s * (l.d1 - l.d0); }

void bisect(const Slab& slab, double a, double b, int level, const QuadratureConfig& quad, double kappa,
            std::vector<Piece>& out) {
    bool ok = true;
    for (const auto& l : slab.active) {
        const Complex r = diff_at(l, b) / diff_at(l, a);
        if (!(std::abs(std::log(r)) <= kappa)) {
            ok = false;
            break;
        }
    }
    if (ok) {
        out.push_back({&slab, a, b});
        return;
    }
    if (level >= quad.max_levels)
        throw NumericalError("substep subdivision exceeded " + std::to_string(quad.max_levels) +
                             " levels near t=" + std::to_string(slab.t0 + a * (slab.t1 - slab.t0)) +
                             " (near-collision)");
    const double mid = 0.5 * (a + b);
    bisect(slab, a, mid, level + 1, quad, kappa, out);
    bisect(slab, mid, b, level + 1, quad, kappa, out);
}

class Series {
public:
    Series(int letters, int depth) : K_(letters), M_(depth) {
        std::size_t width = 1;
        for (int m = 0; m <= M_; ++m) {
            offset_.push_back(size_);
            size_ += width;
            width *= static_cast<std::size_t>(K_);
        }
        offset_.push_back(size_);
    }

    std::size_t size() const { return size_; }
    std::size_t offset(int m) const { return offset_[static_cast<std::size_t>(m)]; }

    // out = T * Omega, truncated at depth M.
    void times_omega(const std::vector<Complex>& T, const std::vector<int>& act, const std::vector<Complex>& lin,
                     const std::vector<Complex>& quad, std::vector<Complex>& out) const {
        std::fill(out.begin(), out.end(), Complex(0.0));
        const std::size_t K = static_cast<std::size_t>(K_);
        const std::size_t A = act.size();
        for (int m = 0; m < M_; ++m) {
            const std::size_t lo = offset(m);
            const std::size_t hi = offset(m + 1);
            for (std::size_t u = lo; u < hi; ++u) {
                const Complex x = T[u];
                if (x == 0.0) continue;
                const std::size_t base = offset(m + 1) + (u - lo) * K;
                for (std::size_t a = 0; a < A; ++a) out[base + static_cast<std::size_t>(act[a])] += x * lin[a];
                if (m + 2 > M_) continue;
                for (std::size_t a = 0; a < A; ++a) {
                    const std::size_t base2 = offset(m + 2) + ((u - lo) * K + static_cast<std::size_t>(act[a])) * K;
                    for (std::size_t c = 0; c < A; ++c) {
                        const Complex q = quad[a * A + c];
                        if (q != 0.0) out[base2 + static_cast<std::size_t>(act[c])] += x * q;
                    }
                }
            }
        }
    }

private:
    int K_;
    int M_;
    std::size_t size_ = 0;
    std::vector<std::size_t> offset_;
};

// X <- X exp(Omega) for every piece, each optionally split into `split` equal parts.
std::vector<Complex> run(const Series& series, int M, const std::vector<Piece>& pieces, int split) {
    std::vector<Complex> X(series.size(), Complex(0.0));
    X[0] = 1.0;
    std::vector<Complex> T(series.size());
    std::vector<Complex> Y(series.size());
    std::vector<int> act;
    std::vector<Complex> lin;
    std::vector<Complex> quad;
    const double c3 = std::sqrt(3.0) / 12.0;
    for (const auto& piece : pieces) {
        const Slab& slab = *piece.slab;
        const std::size_t A = slab.active.size();
        if (A == 0) continue;
        act.resize(A);
        lin.resize(A);
        quad.assign(A * A, Complex(0.0));
        for (std::size_t a = 0; a < A; ++a) act[a] = slab.active[a].letter;
        for (int part = 0; part < split; ++part) {
            const double a0 = piece.a + (piece.b - piece.a) * part / split;
            const double b0 = part + 1 == split ? piece.b : piece.a + (piece.b - piece.a) * (part + 1) / split;
            const double h = b0 - a0;
            const double mid = 0.5 * (a0 + b0);
            const double sm = mid - h / (2.0 * std::sqrt(3.0));
            const double sp = mid + h / (2.0 * std::sqrt(3.0));
            std::vector<Complex> am(A);
            std::vector<Complex> ap(A);
            for (std::size_t a = 0; a < A; ++a) {
                const auto& l = slab.active[a];
                lin[a] = l.sign * std::log(diff_at(l, b0) / diff_at(l, a0));
                am[a] = l.sign * (l.d1 - l.d0) / diff_at(l, sm);
                ap[a] = l.sign * (l.d1 - l.d0) / diff_at(l, sp);
            }
            if (M >= 2)
                for (std::size_t a = 0; a < A; ++a)
                    for (std::size_t c = 0; c < A; ++c)
                        quad[a * A + c] = a == c ? Complex(0.0) : c3 * h * h * (am[a] * ap[c] - ap[a] * am[c]);
            // Horner: X exp(Omega) = X + (X + (X + ...) Omega/2) Omega.
            T = X;
            for (int k = M; k >= 1; --k) {
                series.times_omega(T, act, lin, quad, Y);
                const double inv = 1.0 / k;
                for (std::size_t u = 0; u < T.size(); ++u) T[u] = X[u] + Y[u] * inv;
            }
            X.swap(T);
        }
    }
    return X;
}

}  // namespace

CoefficientTable integrate_series(const SeriesProblem& problem, int M, const QuadratureConfig& quad) {
    if (M < 0) throw ValidationError("max degree must be nonnegative");
    if (!(quad.tol > 0.0) || !(quad.kappa > 0.0) || quad.max_levels < 1 || quad.max_refinements < 0)
        throw ValidationError("quadrature parameters must be positive");
    const int K = static_cast<int>(problem.alphabet.size());
    double words = 0.0;
    for (int m = 0; m <= M; ++m) words += std::pow(std::max(K, 1), m);
    if (words > 4e6) throw ResourceError("coefficient table would hold " + std::to_string(words) + " words");

    CoefficientTable table;
    table.max_degree = M;
    table.alphabet = problem.alphabet;
    table.tol = quad.tol;
    for (const auto& slab : problem.slabs) {
        const double dt = slab.t1 - slab.t0;
        for (const auto& l : slab.active) {
            const Complex e = l.d1 - l.d0;
            double closest = std::min(std::abs(l.d0), std::abs(l.d1));
            if (std::norm(e) > 0.0) {
                const double u = std::clamp(-(l.d0.real() * e.real() + l.d0.imag() * e.imag()) / std::norm(e), 0.0, 1.0);
                closest = std::abs(l.d0 + u * e);
            }
            if (closest == 0.0) throw NumericalError("difference vanishes on the integration domain");
            if (dt > 0.0) table.max_integrand = std::max(table.max_integrand, std::abs(e) / dt / closest);
        }
    }

    const Series series(std::max(K, 1), M);
    double kappa = quad.kappa;
    std::vector<Complex> fine;
    std::vector<double> err;
    for (int attempt = 0;; ++attempt) {
        std::vector<Piece> pieces;
        for (const auto& slab : problem.slabs) bisect(slab, 0.0, 1.0, 0, quad, kappa, pieces);
        const auto coarse = run(series, M, pieces, 1);
        fine = run(series, M, pieces, 2);
        err.assign(fine.size(), 0.0);
        double worst = 0.0;
        double scale = 1.0;
        for (int m = 0; m <= M; ++m) {
            for (std::size_t u = series.offset(m); u < series.offset(m + 1); ++u) {
                err[u] = (std::abs(fine[u] - coarse[u]) + 1e-14 * (1.0 + std::abs(fine[u]))) * scale;
                worst = std::max(worst, err[u]);
            }
            scale /= 2.0 * std::numbers::pi;
        }
        table.substeps = static_cast<int>(2 * pieces.size());
        table.kappa = kappa;
        if (worst <= quad.tol || attempt >= quad.max_refinements) break;
        kappa *= 0.5;
    }

    Complex prefactor = 1.0;
    const Complex step = 1.0 / (2.0 * std::numbers::pi * Complex(0.0, 1.0));
    for (int m = 0; m <= M; ++m) {
        const std::size_t lo = series.offset(m);
        const std::size_t width = series.offset(m + 1) - lo;
        if (K == 0 && m > 0) break;
        for (std::size_t u = 0; u < width; ++u) {
            CoefficientEntry e;
            std::size_t code = u;
            e.word.resize(static_cast<std::size_t>(m));
            for (int k = m - 1; k >= 0; --k) {
                e.word[static_cast<std::size_t>(k)] = problem.alphabet[code % static_cast<std::size_t>(K)];
                code /= static_cast<std::size_t>(K);
            }
            e.value = m == 0 ? Complex(1.0) : fine[lo + u] * prefactor;
            e.err = m == 0 ? 0.0 : err[lo + u];
            table.entries.push_back(std::move(e));
        }
        prefactor *= step;
    }
    return table;
}

SeriesProblem braid_problem(const GeometricBraid& b) {
    require_valid(b);
    const int n = b.strand_count();
    SeriesProblem p;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) p.alphabet.emplace_back(i, j);
    const auto ts = b.refinement();
    for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
        Slab slab{ts[k], ts[k + 1], {}};
        for (std::size_t a = 0; a < p.alphabet.size(); ++a) {
            const auto [i, j] = p.alphabet[a];
            slab.active.push_back({static_cast<int>(a), b.position(i, ts[k]) - b.position(j, ts[k]),
                                   b.position(i, ts[k + 1]) - b.position(j, ts[k + 1]), 1.0});
        }
        p.slabs.push_back(std::move(slab));
    }
    return p;
}

CoefficientTable lambda_table(const GeometricBraid& b, int M, const QuadratureConfig& quad) {
    const int cap = degree_cap(kDefaultTableDegreeCap);
    if (M > cap) throw ResourceError("max degree " + std::to_string(M) + " exceeds the table cap " + std::to_string(cap));
    auto table = integrate_series(braid_problem(b), M, quad);
    table.source_hash = b.hash();
    return table;
}

Complex iterated_integral(const GeometricBraid& b, const PairingWord& w, const QuadratureConfig& quad) {
    for (const auto& p : w)
        if (p.j > b.strand_count())
            throw ValidationError("pairing " + word_to_string({p}) + " refers to a missing strand");
    SeriesProblem full = braid_problem(b);
    // Restrict to the letters that occur in w.
    std::vector<Pairing> letters(w.begin(), w.end());
    std::sort(letters.begin(), letters.end());
    letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
    SeriesProblem p;
    p.alphabet = letters;
    for (const auto& slab : full.slabs) {
        Slab s{slab.t0, slab.t1, {}};
        for (const auto& l : slab.active) {
            auto it = std::find(letters.begin(), letters.end(), full.alphabet[static_cast<std::size_t>(l.letter)]);
            if (it == letters.end()) continue;
            auto copy = l;
            copy.letter = static_cast<int>(it - letters.begin());
            s.active.push_back(copy);
        }
        p.slabs.push_back(std::move(s));
    }
    return integrate_series(p, static_cast<int>(w.size()), quad).coefficient(w);
}

GraphProblem graph_problem(const EmbeddedGraph& g, double window) {
    if (!(window >= 0.0)) throw ValidationError("extremum window must be nonnegative");
    GraphProblem out;
    out.branches = branches(g);
    const auto& bs = out.branches;
    const int B = static_cast<int>(bs.size());
    for (int i = 1; i <= B; ++i)
        for (int j = i + 1; j <= B; ++j) out.series.alphabet.emplace_back(i, j);

    std::vector<double> ts;
    for (const auto& b : bs)
        for (const auto& s : b.samples) ts.push_back(s.first);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    const auto crit = critical_times(g);

    for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
        const double ta = ts[k];
        const double tb = ts[k + 1];
        std::vector<std::pair<double, double>> parts{{ta, tb}};
        for (double c : crit) {
            std::vector<std::pair<double, double>> next;
            for (auto [a, b] : parts) {
                if (c - window > a) next.emplace_back(a, std::min(b, c - window));
                if (c + window < b) next.emplace_back(std::max(a, c + window), b);
            }
            parts.swap(next);
        }
        for (auto [a, b] : parts) {
            if (!(b - a > 1e-15)) continue;
            Slab slab{a, b, {}};
            for (std::size_t l = 0; l < out.series.alphabet.size(); ++l) {
                const auto [i, j] = out.series.alphabet[l];
                const Branch& x = bs[static_cast<std::size_t>(i - 1)];
                const Branch& y = bs[static_cast<std::size_t>(j - 1)];
                if (x.t_min() > ta || x.t_max() < tb || y.t_min() > ta || y.t_max() < tb) continue;
                const Complex d0 = x.at(a) - y.at(a);
                const Complex d1 = x.at(b) - y.at(b);
                slab.active.push_back({static_cast<int>(l), d0, d1, static_cast<double>(chord_sign(x, y))});
            }
            out.series.slabs.push_back(std::move(slab));
        }
    }
    return out;
}

CoefficientTable z_graph(const EmbeddedGraph& g, int M, const QuadratureConfig& quad, double window) {
    const int cap = degree_cap(kDefaultTableDegreeCap);
    if (M > cap) throw ResourceError("max degree " + std::to_string(M) + " exceeds the table cap " + std::to_string(cap));
    const auto problem = graph_problem(g, window);
    auto table = integrate_series(problem.series, M, quad);
    table.extremum_window = window;
    return table;
}

int word_sign(const std::vector<Branch>& branches, const PairingWord& w) {
    int s = 1;
    for (const auto& p : w) {
        if (p.j > static_cast<int>(branches.size())) throw ValidationError("pairing refers to a missing branch");
        s *= chord_sign(branches[static_cast<std::size_t>(p.i - 1)], branches[static_cast<std::size_t>(p.j - 1)]);
    }
    return s;
}

}  // namespace kontsevich
