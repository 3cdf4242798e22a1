#pragma once

#include "necklace/necklace.hpp"

#include <map>
#include <string>
#include <vector>

namespace necklace {

// Associative algebra on Ext(E,E) read off a cubic potential. One basis vector
// per variable z of the shifted alphabet, of Ext degree 1 - coh_deg(z):
// alpha_v -> e_v (Ext^0), arrows -> Ext^1, beta_v -> omega_v (Ext^2).
struct AlgebraTable {
    std::vector<std::string> labels;
    std::vector<int> degrees;
    std::vector<Scalar> unit;                            // coordinates of the unit
    std::vector<std::vector<std::vector<Scalar>>> product; // product[a][b][c]: coefficient of c in a*b
    std::vector<std::vector<Scalar>> pairing;            // <a, b>

    using Vector = std::vector<Scalar>;

    std::size_t dim() const noexcept { return labels.size(); }

    Vector basis_vector(std::size_t i) const
    {
        Vector v(dim());
        v[i] = 1;
        return v;
    }

    Vector multiply(const Vector& x, const Vector& y) const
    {
        Vector out(dim());
        for (std::size_t a = 0; a < dim(); ++a) {
            if (x[a] == 0)
                continue;
            for (std::size_t b = 0; b < dim(); ++b) {
                if (y[b] == 0)
                    continue;
                const Scalar xy = x[a] * y[b];
                for (std::size_t c = 0; c < dim(); ++c)
                    if (product[a][b][c] != 0)
                        out[c] += xy * product[a][b][c];
            }
        }
        return out;
    }

    Scalar pair(const Vector& x, const Vector& y) const
    {
        Scalar s = 0;
        for (std::size_t a = 0; a < dim(); ++a)
            for (std::size_t b = 0; b < dim(); ++b)
                if (x[a] != 0 && y[b] != 0)
                    s += x[a] * pairing[a][b] * y[b];
        return s;
    }

    // Empty table of the given shape; used by tests that build tables by hand.
    static AlgebraTable zero(std::vector<std::string> labels, std::vector<int> degrees)
    {
        AlgebraTable t;
        const std::size_t n = labels.size();
        t.labels = std::move(labels);
        t.degrees = std::move(degrees);
        t.unit.assign(n, Scalar(0));
        t.product.assign(n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n)));
        t.pairing.assign(n, std::vector<Scalar>(n));
        return t;
    }
};

struct CheckReport {
    std::vector<std::string> failures;
    std::map<std::string, std::string> facts;

    bool pass() const noexcept { return failures.empty(); }
};

// Reads the product from the cyclic coefficients of W:
//   <a * b, c> = lambda * (-1)^{|b|} * coeff_W(u v y),
// with u, v, y the variables dual to the basis vectors a, b, c, and the pairing
// <b_z, b_{z*}> = -omega(z, z*) taken from the symplectic duals. lambda is
// fixed by requiring e_1 * e_1 = e_1; everything else is checked afterwards.
inline AlgebraTable extract_algebra(const CyclicSeries& W, const BracketConvention& conv = standard_convention)
{
    const Alphabet& A = W.alphabet();
    for (const auto& d : W.degrees())
        if (d.cyc != 3)
            throw PreconditionError("not_cubic", "potential has a term of length " + std::to_string(d.cyc));
    if (!master_residual(W, conv).is_zero())
        throw PreconditionError("master_equation", "potential does not satisfy {W,W} = 0");

    const std::size_t n = A.size();
    std::vector<std::string> labels;
    std::vector<int> degs;
    const bool single = A.vertices().size() == 1;
    for (VarId z = 0; z < n; ++z) {
        const auto& v = A[z];
        if (!v.dual)
            throw PreconditionError("missing_dual", "variable '" + v.name + "' has no dual; pairing would be degenerate");
        const std::string vsuffix = single ? "" : "_" + A.vertices()[v.source];
        if (v.kind == VarKind::alpha)
            labels.push_back("e" + vsuffix);
        else if (v.kind == VarKind::beta)
            labels.push_back("omega" + vsuffix);
        else
            labels.push_back(v.name);
        degs.push_back(1 - v.coh_deg);
    }
    AlgebraTable t = AlgebraTable::zero(std::move(labels), std::move(degs));
    for (VarId z = 0; z < n; ++z) {
        t.pairing[z][*A[z].dual] = -conv.omega(A, z);
        if (A[z].kind == VarKind::alpha)
            t.unit[z] = 1;
    }

    auto coeff = [&](VarId u, VarId v, VarId y) { return W.coefficient_of_word(Word{u, v, y}); };
    const VarId e = 0; // alpha of the first vertex
    const VarId first_beta = *A[e].dual;
    const Scalar c_eee = coeff(e, e, first_beta);
    if (c_eee == 0)
        throw PreconditionError("no_unit", "potential has no alpha^2 beta term; no normalization makes e a unit");
    // scale so that e*e = e
    const Scalar lambda = t.pairing[e][first_beta] / c_eee;

    for (VarId u = 0; u < n; ++u) {
        for (VarId v = 0; v < n; ++v) {
            const int sigma = (t.degrees[v] & 1) ? -1 : 1;
            for (VarId y = 0; y < n; ++y) {
                const Scalar c = coeff(u, v, y);
                if (c == 0)
                    continue;
                const VarId target = *A[y].dual;
                t.product[u][v][target] += lambda * sigma * c / t.pairing[target][y];
            }
        }
    }
    return t;
}

namespace detail {
inline std::string vec_to_string(const AlgebraTable& t, const AlgebraTable::Vector& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0)
            continue;
        if (!s.empty())
            s += " + ";
        s += to_string(v[i]) + "*" + t.labels[i];
    }
    return s.empty() ? "0" : s;
}

inline Scalar determinant(std::vector<std::vector<Scalar>> m)
{
    const std::size_t n = m.size();
    Scalar det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col] == 0)
            ++pivot;
        if (pivot == n)
            return 0;
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col] == 0)
                continue;
            const Scalar f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c)
                m[r][c] -= f * m[col][c];
        }
    }
    return det;
}
} // namespace detail

// Unit law on both sides, associativity over all basis triples, and grading of
// the structure constants.
inline CheckReport check_unit_assoc(const AlgebraTable& t)
{
    CheckReport r;
    const std::size_t n = t.dim();
    for (std::size_t z = 0; z < n; ++z) {
        const auto bz = t.basis_vector(z);
        if (t.multiply(t.unit, bz) != bz)
            r.failures.push_back("left unit fails on " + t.labels[z] + ": 1*" + t.labels[z] + " = " +
                                 detail::vec_to_string(t, t.multiply(t.unit, bz)));
        if (t.multiply(bz, t.unit) != bz)
            r.failures.push_back("right unit fails on " + t.labels[z] + ": " + t.labels[z] + "*1 = " +
                                 detail::vec_to_string(t, t.multiply(bz, t.unit)));
    }
    std::size_t triples = 0;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const auto ab = t.multiply(t.basis_vector(a), t.basis_vector(b));
            for (std::size_t c = 0; c < n; ++c) {
                ++triples;
                if (t.product[a][b][c] != 0 && t.degrees[a] + t.degrees[b] != t.degrees[c])
                    r.failures.push_back("grading: " + t.labels[a] + "*" + t.labels[b] + " has a component on " +
                                         t.labels[c]);
                const auto lhs = t.multiply(ab, t.basis_vector(c));
                const auto rhs = t.multiply(t.basis_vector(a), t.multiply(t.basis_vector(b), t.basis_vector(c)));
                if (lhs != rhs)
                    r.failures.push_back("associativity fails on (" + t.labels[a] + ", " + t.labels[b] + ", " +
                                         t.labels[c] + ")");
            }
        }
    }
    r.facts["triples_checked"] = std::to_string(triples);
    return r;
}

// Nondegeneracy (exact determinant), invariance <ab, c> = <a, bc> over all
// triples, degree p pairing with degree 2 - p, and antisymmetry of the Ext^1
// block.
inline CheckReport check_cy_pairing(const AlgebraTable& t)
{
    CheckReport r;
    const std::size_t n = t.dim();
    const Scalar det = detail::determinant(t.pairing);
    r.facts["determinant"] = to_string(det);
    if (det == 0)
        r.failures.push_back("pairing is degenerate (determinant 0)");
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (t.pairing[a][b] != 0 && t.degrees[a] + t.degrees[b] != 2)
                r.failures.push_back("pairing <" + t.labels[a] + ", " + t.labels[b] + "> violates degree 2");
            if (t.degrees[a] == 1 && t.degrees[b] == 1 && t.pairing[a][b] != -t.pairing[b][a])
                r.failures.push_back("Ext^1 block not antisymmetric at (" + t.labels[a] + ", " + t.labels[b] + ")");
        }
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const auto ab = t.multiply(t.basis_vector(a), t.basis_vector(b));
            for (std::size_t c = 0; c < n; ++c) {
                const auto bc = t.multiply(t.basis_vector(b), t.basis_vector(c));
                if (t.pair(ab, t.basis_vector(c)) != t.pair(t.basis_vector(a), bc))
                    r.failures.push_back("invariance fails: <" + t.labels[a] + "*" + t.labels[b] + ", " + t.labels[c] +
                                         "> != <" + t.labels[a] + ", " + t.labels[b] + "*" + t.labels[c] + ">");
            }
        }
    }
    return r;
}

} // namespace necklace
