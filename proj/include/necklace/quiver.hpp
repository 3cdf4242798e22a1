#pragma once

#include "necklace/necklace.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace necklace {

struct QuiverArrow {
    std::string id;
    std::string src;
    std::string dst;

    bool operator==(const QuiverArrow&) const = default;
};

// Unvalidated quiver description, as read from JSON.
struct RawQuiver {
    std::vector<std::string> vertices;
    std::vector<QuiverArrow> arrows;
    std::vector<std::pair<std::string, std::string>> involution;

    bool operator==(const RawQuiver&) const = default;
};

// Symmetric quiver with an endpoint-reversing, fixed-point-free involution on
// its arrows. Only obtainable through validate_quiver().
class SymmetricQuiver {
public:
    const std::vector<std::string>& vertices() const noexcept { return raw_.vertices; }
    const std::vector<QuiverArrow>& arrows() const noexcept { return raw_.arrows; }
    const std::vector<std::pair<std::string, std::string>>& involution() const noexcept { return raw_.involution; }
    const RawQuiver& raw() const noexcept { return raw_; }

    std::size_t vertex_index(const std::string& v) const
    {
        auto it = std::find(raw_.vertices.begin(), raw_.vertices.end(), v);
        return static_cast<std::size_t>(it - raw_.vertices.begin());
    }

    // Number of arrows i -> j.
    std::vector<std::vector<int>> adjacency() const
    {
        const std::size_t n = raw_.vertices.size();
        std::vector<std::vector<int>> adj(n, std::vector<int>(n, 0));
        for (const auto& a : raw_.arrows)
            ++adj[vertex_index(a.src)][vertex_index(a.dst)];
        return adj;
    }

    bool operator==(const SymmetricQuiver&) const = default;

private:
    friend SymmetricQuiver validate_quiver(RawQuiver raw);
    explicit SymmetricQuiver(RawQuiver raw) : raw_(std::move(raw)) {}

    RawQuiver raw_;
};

namespace detail {
inline bool is_identifier(const std::string& s, bool allow_leading_digit)
{
    if (s.empty())
        return false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        const bool alpha = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
        const bool digit = c >= '0' && c <= '9';
        if (!(alpha || digit) || (i == 0 && digit && !allow_leading_digit))
            return false;
    }
    return true;
}

inline std::string alpha_name(const std::vector<std::string>& vertices, std::size_t v)
{
    return vertices.size() == 1 ? std::string("alpha") : "alpha_" + vertices[v];
}

inline std::string beta_name(const std::vector<std::string>& vertices, std::size_t v)
{
    return vertices.size() == 1 ? std::string("beta") : "beta_" + vertices[v];
}
} // namespace detail

inline SymmetricQuiver validate_quiver(RawQuiver raw)
{
    if (raw.vertices.empty())
        throw QuiverError("empty_quiver", "quiver has no vertices");
    std::set<std::string> vset;
    for (const auto& v : raw.vertices) {
        if (!detail::is_identifier(v, true))
            throw QuiverError("bad_identifier", "vertex id '" + v + "' must match [A-Za-z0-9_]+");
        if (!vset.insert(v).second)
            throw QuiverError("duplicate_id", "vertex '" + v + "' declared twice");
    }

    std::set<std::string> names;
    for (std::size_t v = 0; v < raw.vertices.size(); ++v) {
        names.insert(detail::alpha_name(raw.vertices, v));
        names.insert(detail::beta_name(raw.vertices, v));
    }
    std::map<std::string, const QuiverArrow*> by_id;
    for (const auto& a : raw.arrows) {
        if (!detail::is_identifier(a.id, false))
            throw QuiverError("bad_identifier", "arrow id '" + a.id + "' must match [A-Za-z_][A-Za-z0-9_]*");
        if (!names.insert(a.id).second)
            throw QuiverError("duplicate_id", "arrow id '" + a.id + "' clashes with another variable");
        if (!vset.count(a.src) || !vset.count(a.dst))
            throw QuiverError("unknown_vertex", "arrow '" + a.id + "' has an unknown endpoint");
        by_id[a.id] = &a;
    }

    SymmetricQuiver q(raw);
    const auto adj = q.adjacency();
    for (std::size_t i = 0; i < adj.size(); ++i)
        for (std::size_t j = i + 1; j < adj.size(); ++j)
            if (adj[i][j] != adj[j][i])
                throw QuiverError("not_symmetric", "arrow counts " + raw.vertices[i] + "->" + raw.vertices[j] +
                                                       " and back differ");
    for (std::size_t i = 0; i < adj.size(); ++i)
        if (adj[i][i] % 2 != 0)
            throw QuiverError("odd_loops", "vertex '" + raw.vertices[i] + "' has an odd number of loops");

    std::set<std::string> paired;
    for (const auto& [a, b] : raw.involution) {
        auto ia = by_id.find(a), ib = by_id.find(b);
        if (ia == by_id.end() || ib == by_id.end())
            throw QuiverError("bad_involution", "involution pair (" + a + ", " + b + ") names an unknown arrow");
        if (a == b)
            throw QuiverError("bad_involution", "arrow '" + a + "' is paired with itself");
        if (!paired.insert(a).second || !paired.insert(b).second)
            throw QuiverError("bad_involution", "arrow in pair (" + a + ", " + b + ") is paired twice");
        if (ia->second->src != ib->second->dst || ia->second->dst != ib->second->src)
            throw QuiverError("bad_involution", "pair (" + a + ", " + b + ") does not reverse endpoints");
    }
    if (paired.size() != raw.arrows.size())
        throw QuiverError("bad_involution", "involution does not cover every arrow");
    return q;
}

// Ext^1 dimension data of a finite collection of generators.
struct ExtData {
    std::vector<std::string> generators;
    std::vector<std::vector<int>> ext1_dim;

    bool operator==(const ExtData&) const = default;
};

inline ExtData ext_of(const SymmetricQuiver& q) { return {q.vertices(), q.adjacency()}; }

// The classification map: one vertex per generator, dim Ext^1(E_i, E_j) arrows
// i -> j. Loops at a vertex are paired first half with second half; arrows
// i -> j (i < j) are paired with arrows j -> i in order.
inline SymmetricQuiver phi_from_ext(const ExtData& e)
{
    const std::size_t n = e.generators.size();
    if (e.ext1_dim.size() != n)
        throw QuiverError("not_square", "ext1_dim must have one row per generator");
    long total = 0;
    for (const auto& row : e.ext1_dim) {
        if (row.size() != n)
            throw QuiverError("not_square", "ext1_dim must be square");
        for (int v : row) {
            if (v < 0)
                throw QuiverError("negative_entry", "ext1_dim entries must be nonnegative");
            total += v;
        }
    }
    if (total > 4096 || n > 1024)
        throw QuiverError("too_large", "ext1_dim describes more arrows than supported");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (e.ext1_dim[i][j] != e.ext1_dim[j][i])
                throw QuiverError("not_symmetric", "dim Ext^1(E_" + e.generators[i] + ", E_" + e.generators[j] +
                                                       ") differs from the transposed entry");
    for (std::size_t i = 0; i < n; ++i)
        if (e.ext1_dim[i][i] % 2 != 0)
            throw QuiverError("odd_diagonal", "dim Ext^1(E_" + e.generators[i] + ", E_" + e.generators[i] + ") is odd");

    RawQuiver raw;
    raw.vertices = e.generators;
    const bool single = n == 1;
    for (std::size_t i = 0; i < n; ++i) {
        const int half = e.ext1_dim[i][i] / 2;
        const std::string& g = e.generators[i];
        auto loop_name = [&](const char* stem, int k) {
            return single ? stem + std::to_string(k) : std::string(stem) + "_" + g + "_" + std::to_string(k);
        };
        for (int k = 1; k <= half; ++k)
            raw.arrows.push_back({loop_name("x", k), g, g});
        for (int k = 1; k <= half; ++k)
            raw.arrows.push_back({loop_name("xi", k), g, g});
        for (int k = 1; k <= half; ++k)
            raw.involution.emplace_back(loop_name("x", k), loop_name("xi", k));
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const std::string& gi = e.generators[i];
            const std::string& gj = e.generators[j];
            const int m = e.ext1_dim[i][j];
            auto name = [&](const char* stem, int k) {
                return std::string(stem) + "_" + gi + "_" + gj + "_" + std::to_string(k);
            };
            for (int k = 1; k <= m; ++k)
                raw.arrows.push_back({name("a", k), gi, gj});
            for (int k = 1; k <= m; ++k)
                raw.arrows.push_back({name("astar", k), gj, gi});
            for (int k = 1; k <= m; ++k)
                raw.involution.emplace_back(name("a", k), name("astar", k));
        }
    }
    return validate_quiver(std::move(raw));
}

// Graded coordinates on Ext(E,E)[1]: alpha_v (degree 1) and beta_v (degree -1)
// per vertex, then one degree-0 variable per arrow in declaration order. The
// earlier-declared member of each involution pair is the primary one.
inline AlphabetPtr shifted_alphabet(const SymmetricQuiver& q)
{
    const auto& verts = q.vertices();
    std::vector<GradedVariable> vars;
    for (std::size_t v = 0; v < verts.size(); ++v) {
        const auto vid = static_cast<VertexId>(v);
        const auto a = static_cast<VarId>(vars.size());
        vars.push_back({detail::alpha_name(verts, v), 1, vid, vid, VarKind::alpha, static_cast<VarId>(a + 1)});
        vars.push_back({detail::beta_name(verts, v), -1, vid, vid, VarKind::beta, a});
    }
    std::map<std::string, VarId> arrow_id;
    for (const auto& a : q.arrows()) {
        arrow_id[a.id] = static_cast<VarId>(vars.size());
        vars.push_back({a.id, 0, static_cast<VertexId>(q.vertex_index(a.src)),
                        static_cast<VertexId>(q.vertex_index(a.dst)), VarKind::arrow, std::nullopt});
    }
    for (const auto& [a, b] : q.involution()) {
        VarId ia = arrow_id.at(a), ib = arrow_id.at(b);
        vars[ia].dual = ib;
        vars[ib].dual = ia;
    }
    return make_alphabet(verts, std::move(vars));
}

// W = sum_v alpha_v^2 beta_v + sum_{(a, a*)} (alpha_{s(a)} a a* - alpha_{t(a)} a* a),
// with a the primary member of each pair. For a single vertex this is
// alpha^2 beta + sum_i (alpha x_i xi_i - alpha xi_i x_i). Not checked.
inline CyclicSeries build_canonical_potential(const SymmetricQuiver& q)
{
    AlphabetPtr A = shifted_alphabet(q);
    CyclicSeries W(A);
    for (std::size_t v = 0; v < q.vertices().size(); ++v) {
        const auto a = static_cast<VarId>(2 * v);
        W.add({a, a, static_cast<VarId>(a + 1)}, 1);
    }
    for (const auto& [first, second] : q.involution()) {
        VarId ix = A->id_of(first), ixi = A->id_of(second);
        if (ixi < ix)
            std::swap(ix, ixi);
        const auto alpha_src = static_cast<VarId>(2 * (*A)[ix].source);
        const auto alpha_dst = static_cast<VarId>(2 * (*A)[ix].target);
        W.add({alpha_src, ix, ixi}, 1);
        W.add({alpha_dst, ixi, ix}, -1);
    }
    return W;
}

// The canonical potential, certified by the master equation; throws
// PreconditionError if {W,W} != 0 under `conv`.
inline CyclicSeries canonical_potential(const SymmetricQuiver& q, const BracketConvention& conv = standard_convention)
{
    CyclicSeries W = build_canonical_potential(q);
    auto residual = master_residual(W, conv);
    if (!residual.is_zero())
        throw PreconditionError("master_equation",
                                "canonical potential fails {W,W} = 0; residual " + residual.to_string());
    return W;
}

} // namespace necklace
