#pragma once

#include "necklace/error.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace necklace {

using VarId = std::uint16_t;
using VertexId = std::uint16_t;

// alpha: coordinate on Ext^0[1] (degree 1), beta: on Ext^2[-1] (degree -1),
// arrow: on Ext^1 (degree 0).
enum class VarKind { alpha, beta, arrow };

inline std::string_view to_string(VarKind k)
{
    switch (k) {
    case VarKind::alpha: return "alpha";
    case VarKind::beta: return "beta";
    case VarKind::arrow: return "arrow";
    }
    return "?";
}

inline VarKind kind_for_degree(int coh_deg)
{
    if (coh_deg == 1)
        return VarKind::alpha;
    if (coh_deg == -1)
        return VarKind::beta;
    if (coh_deg == 0)
        return VarKind::arrow;
    throw AlphabetError("bad_degree", "variable degree must be -1, 0 or 1, got " + std::to_string(coh_deg));
}

struct GradedVariable {
    std::string name;
    int coh_deg = 0;
    VertexId source = 0;
    VertexId target = 0;
    VarKind kind = VarKind::arrow;
    std::optional<VarId> dual;

    bool operator==(const GradedVariable&) const = default;
};

// A finite set of graded variables together with the vertices they connect.
// The position of a variable is its id and also its rank in the global order
// used for canonical cyclic representatives.
class Alphabet {
public:
    Alphabet(std::vector<std::string> vertices, std::vector<GradedVariable> vars)
        : vertices_(std::move(vertices)), vars_(std::move(vars))
    {
        validate();
        for (std::size_t i = 0; i < vars_.size(); ++i)
            by_name_.emplace(vars_[i].name, static_cast<VarId>(i));
    }

    std::size_t size() const noexcept { return vars_.size(); }
    const GradedVariable& operator[](VarId id) const { return vars_.at(id); }
    const std::vector<GradedVariable>& variables() const noexcept { return vars_; }
    const std::vector<std::string>& vertices() const noexcept { return vertices_; }

    int degree(VarId id) const { return vars_[id].coh_deg; }

    std::optional<VarId> find(std::string_view name) const
    {
        auto it = by_name_.find(std::string(name));
        if (it == by_name_.end())
            return std::nullopt;
        return it->second;
    }

    VarId id_of(std::string_view name) const
    {
        if (auto id = find(name))
            return *id;
        throw AlphabetError("unknown_variable", "unknown variable '" + std::string(name) + "'");
    }

    // For each dual pair exactly one member is primary: alpha for (alpha, beta),
    // the lower id for an arrow pair.
    bool is_primary(VarId id) const
    {
        const auto& v = vars_[id];
        if (!v.dual)
            return false;
        if (v.kind == VarKind::alpha)
            return true;
        if (v.kind == VarKind::beta)
            return false;
        return id < *v.dual;
    }

    bool operator==(const Alphabet& other) const
    {
        return vertices_ == other.vertices_ && vars_ == other.vars_;
    }

private:
    void validate() const
    {
        if (vars_.size() > 0xFFFF || vertices_.size() > 0xFFFF)
            throw AlphabetError("too_large", "alphabet too large");
        std::map<std::string, int> seen;
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            const auto& v = vars_[i];
            if (v.name.empty())
                throw AlphabetError("bad_name", "empty variable name");
            if (seen[v.name]++)
                throw AlphabetError("duplicate_variable", "variable '" + v.name + "' declared twice");
            if (v.source >= vertices_.size() || v.target >= vertices_.size())
                throw AlphabetError("unknown_vertex", "variable '" + v.name + "' has an unknown endpoint");
            if (kind_for_degree(v.coh_deg) != v.kind)
                throw AlphabetError("bad_degree", "variable '" + v.name + "' has a degree inconsistent with its kind");
            if (v.kind != VarKind::arrow && v.source != v.target)
                throw AlphabetError("bad_endpoints", "variable '" + v.name + "' must be a loop");
            if (!v.dual)
                continue;
            if (*v.dual >= vars_.size())
                throw AlphabetError("unbalanced_dual", "variable '" + v.name + "' has an unknown dual");
            const auto& d = vars_[*v.dual];
            if (d.dual != static_cast<VarId>(i))
                throw AlphabetError("unbalanced_dual", "dual of '" + v.name + "' does not point back");
            if (*v.dual == i)
                throw AlphabetError("unbalanced_dual", "variable '" + v.name + "' is its own dual");
            if (d.coh_deg != -v.coh_deg)
                throw AlphabetError("unbalanced_dual", "dual pair '" + v.name + "', '" + d.name + "' has degrees not summing to 0");
            if (d.source != v.target || d.target != v.source)
                throw AlphabetError("unbalanced_dual", "dual of '" + v.name + "' must reverse its endpoints");
        }
    }

    std::vector<std::string> vertices_;
    std::vector<GradedVariable> vars_;
    std::map<std::string, VarId> by_name_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

inline AlphabetPtr make_alphabet(std::vector<std::string> vertices, std::vector<GradedVariable> vars)
{
    return std::make_shared<const Alphabet>(std::move(vertices), std::move(vars));
}

inline bool same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b)
{
    return a == b || (a && b && *a == *b);
}

inline void require_same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b)
{
    if (!same_alphabet(a, b))
        throw AlphabetError("alphabet_mismatch", "operands are over different alphabets");
}

} // namespace necklace
