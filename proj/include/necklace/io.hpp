#pragma once

#include "necklace/algebra.hpp"
#include "necklace/deformation.hpp"
#include "necklace/quiver.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace necklace {

using json = nlohmann::json;

namespace detail {
inline std::string id_string(const json& j, const char* what)
{
    if (j.is_string())
        return j.get<std::string>();
    if (j.is_number_integer())
        return std::to_string(j.get<long long>());
    throw QuiverError("bad_json", std::string(what) + " must be a string or an integer");
}

inline const json& member(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw QuiverError("bad_json", std::string("missing field '") + key + "'");
    return j.at(key);
}
} // namespace detail

// {"vertices":[...], "arrows":[{"id","src","dst"}...], "involution":[["a","a_star"],...]}
inline RawQuiver raw_quiver_from_json(const json& j)
{
    RawQuiver q;
    const json& verts = detail::member(j, "vertices");
    if (!verts.is_array())
        throw QuiverError("bad_json", "'vertices' must be an array");
    for (const auto& v : verts)
        q.vertices.push_back(detail::id_string(v, "vertex id"));
    if (j.contains("arrows")) {
        const json& arrows = j.at("arrows");
        if (!arrows.is_array())
            throw QuiverError("bad_json", "'arrows' must be an array");
        for (const auto& a : arrows)
            q.arrows.push_back({detail::id_string(detail::member(a, "id"), "arrow id"),
                                detail::id_string(detail::member(a, "src"), "arrow src"),
                                detail::id_string(detail::member(a, "dst"), "arrow dst")});
    }
    if (j.contains("involution")) {
        const json& inv = j.at("involution");
        if (!inv.is_array())
            throw QuiverError("bad_json", "'involution' must be an array");
        for (const auto& p : inv) {
            if (!p.is_array() || p.size() != 2)
                throw QuiverError("bad_json", "involution entries must be pairs");
            q.involution.emplace_back(detail::id_string(p[0], "arrow id"), detail::id_string(p[1], "arrow id"));
        }
    }
    return q;
}

inline json to_json(const RawQuiver& q)
{
    json arrows = json::array();
    for (const auto& a : q.arrows)
        arrows.push_back({{"id", a.id}, {"src", a.src}, {"dst", a.dst}});
    json inv = json::array();
    for (const auto& [a, b] : q.involution)
        inv.push_back(json::array({a, b}));
    return {{"vertices", q.vertices}, {"arrows", arrows}, {"involution", inv}};
}

inline json to_json(const SymmetricQuiver& q) { return to_json(q.raw()); }

// {"generators":[...], "ext1_dim":[[...]]}; generators default to "1".."m".
inline ExtData ext_data_from_json(const json& j)
{
    ExtData e;
    const json& m = detail::member(j, "ext1_dim");
    if (!m.is_array())
        throw QuiverError("bad_json", "'ext1_dim' must be an array of rows");
    for (const auto& row : m) {
        if (!row.is_array())
            throw QuiverError("bad_json", "'ext1_dim' rows must be arrays");
        std::vector<int> r;
        for (const auto& x : row) {
            if (!x.is_number_integer())
                throw QuiverError("bad_json", "'ext1_dim' entries must be integers");
            const auto v = x.get<long long>();
            if (v < 0)
                throw QuiverError("negative_entry", "ext1_dim entries must be nonnegative");
            if (v > 4096)
                throw QuiverError("too_large", "ext1_dim entry too large");
            r.push_back(static_cast<int>(v));
        }
        e.ext1_dim.push_back(std::move(r));
    }
    if (j.contains("generators")) {
        for (const auto& g : j.at("generators"))
            e.generators.push_back(detail::id_string(g, "generator id"));
    } else {
        for (std::size_t i = 0; i < e.ext1_dim.size(); ++i)
            e.generators.push_back(std::to_string(i + 1));
    }
    return e;
}

inline json to_json(const ExtData& e) { return {{"generators", e.generators}, {"ext1_dim", e.ext1_dim}}; }

// {"selector","blocks":[{"n","w","dim_domain","dim_ker","rank_in","dim_H"}...]}
inline json to_json(const CohomologyReport& r)
{
    json blocks = json::array();
    for (const auto& b : r.blocks)
        blocks.push_back({{"n", b.n},
                          {"w", b.w},
                          {"dim_domain", b.dim_domain},
                          {"dim_ker", b.dim_ker},
                          {"rank_in", b.rank_in},
                          {"dim_H", b.dim_H}});
    return {{"selector", to_string(r.selector)}, {"blocks", blocks}};
}

inline json to_json(const CheckReport& r)
{
    return {{"pass", r.pass()}, {"failures", r.failures}, {"facts", r.facts}};
}

inline json to_json(const AlgebraTable& t)
{
    json products = json::array();
    for (std::size_t a = 0; a < t.dim(); ++a)
        for (std::size_t b = 0; b < t.dim(); ++b)
            for (std::size_t c = 0; c < t.dim(); ++c)
                if (t.product[a][b][c] != 0)
                    products.push_back({{"left", t.labels[a]},
                                        {"right", t.labels[b]},
                                        {"result", t.labels[c]},
                                        {"coefficient", to_string(t.product[a][b][c])}});
    json pairing = json::array();
    for (std::size_t a = 0; a < t.dim(); ++a)
        for (std::size_t b = 0; b < t.dim(); ++b)
            if (t.pairing[a][b] != 0)
                pairing.push_back({{"left", t.labels[a]}, {"right", t.labels[b]}, {"value", to_string(t.pairing[a][b])}});
    json basis = json::array();
    for (std::size_t a = 0; a < t.dim(); ++a)
        basis.push_back({{"label", t.labels[a]}, {"degree", t.degrees[a]}});
    return {{"basis", basis}, {"products", products}, {"pairing", pairing}};
}

} // namespace necklace
