#pragma once

#include "necklace/deformation.hpp"

#include <random>
#include <vector>

namespace necklace {

// Random homogeneous cyclic series of degree (coh, cyc): up to `max_terms`
// basis classes with small nonzero rational coefficients. Empty when the
// degree has no basis.
template <class Rng>
CyclicSeries random_homogeneous_series(const AlphabetPtr& A, int coh, int cyc, std::size_t max_terms, Rng& rng)
{
    CyclicSeries s(A);
    std::vector<Word> basis;
    if (cyc == 0) {
        if (coh == 0)
            basis.push_back(Word{});
    } else {
        basis = enumerate_basis(*A, coh, cyc, Selector::g_hat).basis;
    }
    if (basis.empty())
        return s;
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    std::uniform_int_distribution<std::size_t> count(1, max_terms);
    const std::size_t n = count(rng);
    for (std::size_t i = 0; i < n; ++i) {
        int p = 0;
        while (p == 0)
            p = num(rng);
        s.add(basis[pick(rng)], make_scalar(p, den(rng)));
    }
    return s;
}

// Random (coh, cyc) with 1 <= cyc <= max_cyc that admits at least one basis class.
template <class Rng>
std::pair<int, int> random_degree(const Alphabet& A, int max_cyc, Rng& rng)
{
    std::uniform_int_distribution<int> cyc_dist(1, max_cyc);
    while (true) {
        const int cyc = cyc_dist(rng);
        std::uniform_int_distribution<int> coh_dist(-cyc, cyc);
        const int coh = coh_dist(rng);
        if (!enumerate_basis(A, coh, cyc, Selector::g_hat).basis.empty())
            return {coh, cyc};
    }
}

} // namespace necklace
