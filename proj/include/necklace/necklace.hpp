#pragma once

#include "necklace/series.hpp"

#include <optional>
#include <span>
#include <vector>

namespace necklace {

// Sign data of the Poisson bivector. For a dual pair (z, z*) with z primary,
// {z, z*} = omega(z, z*) * 1 and omega(z*, z) = -(-1)^{|z||z*|} omega(z, z*):
// antisymmetric on arrow pairs, symmetric on the odd (alpha, beta) pair.
//
// The bracket itself is
//   {f, g} = sum_{a, b dual} omega(a, b) [ d^R_a f * d^L_b g ]
// where d^L is the left cyclic derivative (rotate a to the front, delete it),
// d^R the right one, and [.] the trace closure with Koszul signs.
struct BracketConvention {
    int arrow_sign = 1;       // omega(x, xi) for primary arrow x
    int alpha_beta_sign = -1; // omega(alpha, beta) = omega(beta, alpha)

    Scalar omega(const Alphabet& A, VarId z) const
    {
        const auto& v = A[z];
        if (!v.dual)
            return 0;
        if (v.kind != VarKind::arrow)
            return alpha_beta_sign;
        return A.is_primary(z) ? arrow_sign : -arrow_sign;
    }

    bool operator==(const BracketConvention&) const = default;
};

// Convention used throughout unless a caller overrides it. Fixed by the
// master equation for the canonical potential together with the displayed
// partials and the Lie axioms (see CONVENTIONS.md produced by the build).
inline constexpr BracketConvention standard_convention{1, -1};

namespace detail {

// Calls fn(rest_word, sign) for every occurrence of z in the cyclic word w,
// where sign * z * rest is the rotation of w bringing that occurrence to the
// front.
template <class Fn>
void for_each_left_occurrence(const Alphabet& A, const Word& w, VarId z, Fn&& fn)
{
    const std::size_t k = w.size();
    if (k == 0)
        return;
    std::vector<int> prefix(k + 1, 0);
    for (std::size_t i = 0; i < k; ++i)
        prefix[i + 1] = prefix[i] + A.degree(w[i]);
    for (std::size_t i = 0; i < k; ++i) {
        if (w[i] != z)
            continue;
        const int sign = koszul_sign(prefix[i], prefix[k] - prefix[i]);
        Word rest;
        rest.letters.reserve(k - 1);
        for (std::size_t j = 1; j < k; ++j)
            rest.letters.push_back(w[(i + j) % k]);
        fn(std::move(rest), sign);
    }
}

} // namespace detail

// Left cyclic derivative: for each occurrence of z rotate it to the front
// (accumulating Koszul signs) and delete it.
inline NcPoly cyclic_derivative(const CyclicSeries& s, VarId z)
{
    NcPoly out(s.alphabet_ptr());
    const Alphabet& A = s.alphabet();
    for (const auto& [w, c] : s.terms()) {
        detail::for_each_left_occurrence(A, w, z, [&](Word rest, int sign) {
            out.add(rest, sign > 0 ? c : Scalar(-c));
        });
    }
    return out;
}

// Right cyclic derivative: rotate the occurrence to the back and delete it.
// Differs from the left one by (-1)^{|z| (|w| - |z|)} per term.
inline NcPoly right_cyclic_derivative(const CyclicSeries& s, VarId z)
{
    NcPoly out(s.alphabet_ptr());
    const Alphabet& A = s.alphabet();
    const int dz = A.degree(z);
    for (const auto& [w, c] : s.terms()) {
        const int twist = koszul_sign(dz, coh_degree(A, w) - dz);
        detail::for_each_left_occurrence(A, w, z, [&](Word rest, int sign) {
            out.add(rest, sign * twist > 0 ? c : Scalar(-c));
        });
    }
    return out;
}

// Trace closure of a polynomial whose words are closed paths.
inline CyclicSeries close_cycle(const NcPoly& p)
{
    CyclicSeries out(p.alphabet_ptr());
    for (const auto& [w, c] : p.terms())
        out.add(w, c);
    return out;
}

inline CyclicSeries necklace_bracket(const CyclicSeries& f, const CyclicSeries& g,
                                     const BracketConvention& conv = standard_convention)
{
    require_same_alphabet(f.alphabet_ptr(), g.alphabet_ptr());
    const Alphabet& A = f.alphabet();
    CyclicSeries out(f.alphabet_ptr());
    for (VarId a = 0; a < A.size(); ++a) {
        const auto& dual = A[a].dual;
        if (!dual)
            continue;
        NcPoly df = right_cyclic_derivative(f, a);
        if (df.is_zero())
            continue;
        NcPoly dg = cyclic_derivative(g, *dual);
        if (dg.is_zero())
            continue;
        CyclicSeries piece = close_cycle(df * dg);
        out += piece * conv.omega(A, a);
    }
    return out;
}

// {W, W}; empty iff W solves the master equation.
inline CyclicSeries master_residual(const CyclicSeries& W, const BracketConvention& conv = standard_convention)
{
    return necklace_bracket(W, W, conv);
}

// d = {W, .} for a potential W solving the master equation. The partials of W
// are cached, so applying d costs one derivative of the argument per variable.
class HamiltonianDifferential {
public:
    explicit HamiltonianDifferential(CyclicSeries W, const BracketConvention& conv = standard_convention)
        : W_(std::move(W)), conv_(conv)
    {
        auto residual = master_residual(W_, conv_);
        if (!residual.is_zero())
            throw PreconditionError("master_equation",
                                    "potential does not satisfy {W,W} = 0; residual " + residual.to_string());
        const Alphabet& A = W_.alphabet();
        partials_.reserve(A.size());
        for (VarId a = 0; a < A.size(); ++a) {
            NcPoly d = right_cyclic_derivative(W_, a);
            d *= conv_.omega(A, a);
            partials_.push_back(std::move(d));
        }
    }

    const CyclicSeries& potential() const noexcept { return W_; }
    const BracketConvention& convention() const noexcept { return conv_; }
    const AlphabetPtr& alphabet_ptr() const noexcept { return W_.alphabet_ptr(); }

    CyclicSeries operator()(const CyclicSeries& f) const
    {
        require_same_alphabet(W_.alphabet_ptr(), f.alphabet_ptr());
        const Alphabet& A = W_.alphabet();
        CyclicSeries out(W_.alphabet_ptr());
        for (VarId a = 0; a < A.size(); ++a) {
            if (!A[a].dual || partials_[a].is_zero())
                continue;
            NcPoly dg = cyclic_derivative(f, *A[a].dual);
            if (dg.is_zero())
                continue;
            out += close_cycle(partials_[a] * dg);
        }
        return out;
    }

private:
    CyclicSeries W_;
    BracketConvention conv_;
    std::vector<NcPoly> partials_;
};

// d(f) = {W, f}. Checks the master equation on every call; use
// HamiltonianDifferential to check it once.
inline CyclicSeries differential_d(const CyclicSeries& W, const CyclicSeries& f,
                                   const BracketConvention& conv = standard_convention)
{
    return HamiltonianDifferential(W, conv)(f);
}

} // namespace necklace
