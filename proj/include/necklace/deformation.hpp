#pragma once

#include "necklace/linalg.hpp"
#include "necklace/necklace.hpp"
#include "necklace/quiver.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

namespace necklace {

// Which part of the deformation complex a piece belongs to:
// g_can keeps cyc_deg >= coh_deg + 2, g keeps cyc_deg < coh_deg + 2, g_hat keeps
// everything. Since weight = cyc - coh, g_can is exactly the weight >= 2 part.
enum class Selector { g_can, g, g_hat };

inline bool selects(Selector s, int coh, int cyc)
{
    switch (s) {
    case Selector::g_can: return cyc >= coh + 2;
    case Selector::g: return cyc < coh + 2;
    case Selector::g_hat: return true;
    }
    return false;
}

inline std::string to_string(Selector s)
{
    switch (s) {
    case Selector::g_can: return "gcan";
    case Selector::g: return "g";
    case Selector::g_hat: return "ghat";
    }
    return "?";
}

inline std::optional<Selector> parse_selector(const std::string& s)
{
    if (s == "gcan" || s == "g_can")
        return Selector::g_can;
    if (s == "g")
        return Selector::g;
    if (s == "ghat" || s == "g_hat")
        return Selector::g_hat;
    return std::nullopt;
}

// Basis of nonzero cyclic classes at fixed (coh, cyc), canonically ordered.
struct GradedPiece {
    int coh = 0;
    int cyc = 0;
    Selector selector = Selector::g_hat;
    std::vector<Word> basis;

    std::size_t size() const noexcept { return basis.size(); }

    std::optional<std::size_t> index_of(const Word& rep) const
    {
        auto it = std::lower_bound(basis.begin(), basis.end(), rep);
        if (it == basis.end() || *it != rep)
            return std::nullopt;
        return static_cast<std::size_t>(it - basis.begin());
    }
};

// All canonical representatives of closed paths with k letters and total
// degree n whose cyclic class is nonzero, filtered by the selector.
inline GradedPiece enumerate_basis(const Alphabet& A, int n, int k, Selector sel)
{
    GradedPiece piece{n, k, sel, {}};
    if (k < 1 || !selects(sel, n, k) || A.size() == 0)
        return piece;
    int dmin = 0, dmax = 0;
    for (const auto& v : A.variables()) {
        dmin = std::min(dmin, v.coh_deg);
        dmax = std::max(dmax, v.coh_deg);
    }
    Word w;
    w.letters.reserve(static_cast<std::size_t>(k));
    auto recurse = [&](auto&& self, int deg) -> void {
        const int placed = static_cast<int>(w.size());
        if (placed == k) {
            if (deg != n || A[w.letters.back()].target != A[w.letters.front()].source)
                return;
            auto canon = canonical_cyclic(A, w);
            if (canon && canon->rep == w)
                piece.basis.push_back(w);
            return;
        }
        const int remaining = k - placed - 1;
        const VarId first = placed ? w.letters.front() : VarId(0);
        for (VarId z = first; z < A.size(); ++z) {
            if (placed && A[w.letters.back()].target != A[z].source)
                continue;
            const int nd = deg + A.degree(z);
            if (nd + remaining * dmin > n || nd + remaining * dmax < n)
                continue;
            w.letters.push_back(z);
            self(self, nd);
            w.letters.pop_back();
        }
    };
    recurse(recurse, 0);
    // DFS emits words in lexicographic order already
    return piece;
}

// Exact matrix of d : piece(n, k) -> piece(n + 1, k + 1). Column j holds the
// coordinates of d(source.basis[j]).
struct DiffMatrix {
    GradedPiece source;
    GradedPiece target;
    std::vector<SparseVec<Scalar>> columns;

    std::size_t rows() const noexcept { return target.size(); }
    std::size_t cols() const noexcept { return source.size(); }

    Scalar at(std::size_t row, std::size_t col) const
    {
        for (const auto& [r, v] : columns[col])
            if (r == row)
                return v;
        return 0;
    }

    std::size_t rank() const { return exact_rank(columns, rows()); }
};

struct CohomologyBlock {
    int n = 0;
    int w = 0;
    std::size_t dim_domain = 0;
    std::size_t dim_ker = 0;
    std::size_t rank_in = 0;
    std::size_t dim_H = 0;

    bool operator==(const CohomologyBlock&) const = default;
};

struct CohomologyReport {
    Selector selector = Selector::g_can;
    std::vector<CohomologyBlock> blocks;
};

struct DecompositionReport {
    std::size_t pieces_checked = 0;
    std::size_t basis_violations = 0;    // g_hat != g_can disjoint-union g
    std::size_t closure_violations = 0;  // d left its selector or degree
    std::size_t degree_violations = 0;   // a pure {arrows, beta} word with coh > 0
    std::vector<std::string> details;

    bool pass() const noexcept { return basis_violations + closure_violations + degree_violations == 0; }
};

inline unsigned default_thread_count()
{
    if (const char* env = std::getenv("NECKLACE_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1)
            return static_cast<unsigned>(std::min(v, 256L));
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// The truncated deformation complex of a potential W solving the master
// equation, with differential d = {W, .}. Every (coh, weight) block is finite.
class DeformationComplex {
public:
    explicit DeformationComplex(CyclicSeries W, const BracketConvention& conv = standard_convention)
        : d_(std::move(W), conv)
    {
    }

    explicit DeformationComplex(const SymmetricQuiver& q, const BracketConvention& conv = standard_convention)
        : DeformationComplex(canonical_potential(q, conv), conv)
    {
    }

    const Alphabet& alphabet() const noexcept { return *d_.alphabet_ptr(); }
    const HamiltonianDifferential& differential() const noexcept { return d_; }

    const GradedPiece& piece(int n, int k, Selector sel) const
    {
        std::lock_guard lock(mutex_);
        auto key = std::make_tuple(n, k, sel);
        auto it = pieces_.find(key);
        if (it == pieces_.end())
            it = pieces_.emplace(key, enumerate_basis(alphabet(), n, k, sel)).first;
        return it->second;
    }

    // Throws SubcomplexError if some image term is outside the selected target
    // piece (wrong degree or rejected by the selector).
    DiffMatrix differential_matrix(int n, int k, Selector sel) const
    {
        DiffMatrix m{piece(n, k, sel), piece(n + 1, k + 1, sel), {}};
        m.columns.reserve(m.source.size());
        for (const Word& b : m.source.basis) {
            CyclicSeries f(d_.alphabet_ptr());
            f.add(b, 1);
            CyclicSeries img = d_(f);
            SparseVec<Scalar> col;
            for (const auto& [rep, c] : img.terms()) {
                const auto deg = degrees_of(alphabet(), rep);
                if (deg.coh != n + 1 || deg.cyc != k + 1)
                    throw SubcomplexError("degree", "d(" + to_string(alphabet(), b) + ") has a term of degree (" +
                                                        std::to_string(deg.coh) + ", " + std::to_string(deg.cyc) +
                                                        ")");
                auto row = m.target.index_of(rep);
                if (!row)
                    throw SubcomplexError("closure", "d(" + to_string(alphabet(), b) + ") leaves " + to_string(sel) +
                                                         " at " + to_string(alphabet(), rep));
                col.emplace_back(*row, c);
            }
            std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            m.columns.push_back(std::move(col));
        }
        return m;
    }

    std::size_t transition_rank(int n, int k, Selector sel) const
    {
        if (k < 1)
            return 0;
        return differential_matrix(n, k, sel).rank();
    }

    CohomologyBlock block(int n, int w, Selector sel) const
    {
        const int k = n + w;
        CohomologyBlock b{n, w, 0, 0, 0, 0};
        b.dim_domain = k >= 1 ? piece(n, k, sel).size() : 0;
        const std::size_t rank_out = transition_rank(n, k, sel);
        b.rank_in = transition_rank(n - 1, k - 1, sel);
        b.dim_ker = b.dim_domain - rank_out;
        b.dim_H = b.dim_ker - b.rank_in;
        return b;
    }

    // Cohomology dimensions at every (n, w) with n in `ns` and w_min <= w <= w_max.
    // Ranks of distinct transitions are computed once, in parallel across at
    // most `threads` workers; the report order is deterministic.
    CohomologyReport cohomology_scan(Selector sel, const std::vector<int>& ns, int w_min, int w_max,
                                     unsigned threads = default_thread_count()) const
    {
        std::set<std::pair<int, int>> transitions; // (n, k) of the source piece
        for (int n : ns) {
            for (int w = w_min; w <= w_max; ++w) {
                transitions.emplace(n, n + w);
                transitions.emplace(n - 1, n + w - 1);
            }
        }
        std::vector<std::pair<int, int>> work(transitions.begin(), transitions.end());
        // warm the basis cache so workers only read it
        for (const auto& [n, k] : work) {
            if (k >= 1) {
                piece(n, k, sel);
                piece(n + 1, k + 1, sel);
            }
        }
        std::vector<std::size_t> ranks(work.size(), 0);
        std::vector<std::exception_ptr> errors(work.size());
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next++; i < work.size(); i = next++) {
                try {
                    ranks[i] = transition_rank(work[i].first, work[i].second, sel);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        };
        const unsigned nthreads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(work.size())));
        if (nthreads == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < nthreads; ++t)
                pool.emplace_back(worker);
            for (auto& t : pool)
                t.join();
        }
        for (const auto& e : errors)
            if (e)
                std::rethrow_exception(e);
        std::map<std::pair<int, int>, std::size_t> rank_of;
        for (std::size_t i = 0; i < work.size(); ++i)
            rank_of[work[i]] = ranks[i];

        CohomologyReport report{sel, {}};
        for (int n : ns) {
            for (int w = w_min; w <= w_max; ++w) {
                const int k = n + w;
                CohomologyBlock b{n, w, 0, 0, 0, 0};
                b.dim_domain = k >= 1 ? piece(n, k, sel).size() : 0;
                b.rank_in = rank_of.at({n - 1, k - 1});
                b.dim_ker = b.dim_domain - rank_of.at({n, k});
                b.dim_H = b.dim_ker - b.rank_in;
                report.blocks.push_back(b);
            }
        }
        return report;
    }

    // Checks g_hat = g_can (+) g on bases, that d keeps g_can and g inside
    // themselves, and that words without alpha letters have coh_deg <= 0.
    DecompositionReport decomposition_check(int n_min, int n_max, int k_max) const
    {
        DecompositionReport r;
        const Alphabet& A = alphabet();
        for (int n = n_min; n <= n_max; ++n) {
            for (int k = 1; k <= k_max; ++k) {
                ++r.pieces_checked;
                const auto& all = piece(n, k, Selector::g_hat).basis;
                const auto& can = piece(n, k, Selector::g_can).basis;
                const auto& rest = piece(n, k, Selector::g).basis;
                std::vector<Word> joined;
                std::merge(can.begin(), can.end(), rest.begin(), rest.end(), std::back_inserter(joined));
                const bool disjoint = std::adjacent_find(joined.begin(), joined.end()) == joined.end();
                if (!disjoint || joined != all) {
                    ++r.basis_violations;
                    r.details.push_back("basis split fails at (" + std::to_string(n) + ", " + std::to_string(k) + ")");
                }
                for (Selector sel : {Selector::g_can, Selector::g}) {
                    try {
                        differential_matrix(n, k, sel);
                    } catch (const SubcomplexError& e) {
                        ++r.closure_violations;
                        r.details.push_back(e.what());
                    }
                }
                for (const Word& w : all) {
                    const bool has_alpha = std::any_of(w.letters.begin(), w.letters.end(),
                                                       [&](VarId z) { return A[z].kind == VarKind::alpha; });
                    if (!has_alpha && coh_degree(A, w) > 0) {
                        ++r.degree_violations;
                        r.details.push_back("word " + to_string(A, w) + " without alpha has positive degree");
                    }
                }
            }
        }
        return r;
    }

private:
    HamiltonianDifferential d_;
    mutable std::mutex mutex_;
    mutable std::map<std::tuple<int, int, Selector>, GradedPiece> pieces_;
};

} // namespace necklace
