#pragma once

#include "necklace/scalar.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

namespace necklace {

// Sparse vector with strictly increasing indices and no zero entries.
template <class T>
using SparseVec = std::vector<std::pair<std::size_t, T>>;

// Clears denominators: returns an integer vector proportional to v.
inline SparseVec<BigInt> to_primitive_integer(const SparseVec<Scalar>& v)
{
    BigInt l = 1;
    for (const auto& [i, q] : v)
        l = lcm(l, BigInt(q.get_den()));
    SparseVec<BigInt> out;
    out.reserve(v.size());
    BigInt g = 0;
    for (const auto& [i, q] : v) {
        BigInt x = q.get_num() * (l / q.get_den());
        g = gcd(g, x);
        out.emplace_back(i, std::move(x));
    }
    if (g > 1)
        for (auto& e : out)
            mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
    return out;
}

// Incremental row echelon form over the integers. Rows are combined
// fraction-free (a * r - b * p with a, b the leading entries divided by their
// gcd) and divided by their content after each step, so entries stay exact
// and small.
class IntegerEchelon {
public:
    explicit IntegerEchelon(std::size_t width = 0) : width_(width) {}

    // Returns true if `row` is independent of the rows inserted so far.
    bool insert(SparseVec<BigInt> row)
    {
        while (!row.empty()) {
            auto it = pivots_.find(row.front().first);
            if (it == pivots_.end()) {
                normalize(row);
                pivots_.emplace(row.front().first, std::move(row));
                return true;
            }
            eliminate(row, it->second);
        }
        return false;
    }

    std::size_t rank() const noexcept { return pivots_.size(); }
    std::size_t width() const noexcept { return width_; }

private:
    static void normalize(SparseVec<BigInt>& row)
    {
        BigInt g = 0;
        for (const auto& e : row)
            g = gcd(g, e.second);
        if (row.front().second < 0)
            g = -g;
        if (g != 1)
            for (auto& e : row)
                mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
    }

    // row <- a * row - b * pivot, cancelling the shared leading column
    static void eliminate(SparseVec<BigInt>& row, const SparseVec<BigInt>& pivot)
    {
        BigInt g = gcd(row.front().second, pivot.front().second);
        BigInt a = pivot.front().second / g;
        BigInt b = row.front().second / g;
        SparseVec<BigInt> out;
        out.reserve(row.size() + pivot.size());
        std::size_t i = 1, j = 1;
        while (i < row.size() || j < pivot.size()) {
            if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
                out.emplace_back(row[i].first, a * row[i].second);
                ++i;
            } else if (i == row.size() || pivot[j].first < row[i].first) {
                out.emplace_back(pivot[j].first, -b * pivot[j].second);
                ++j;
            } else {
                BigInt x = a * row[i].second - b * pivot[j].second;
                if (x != 0)
                    out.emplace_back(row[i].first, std::move(x));
                ++i;
                ++j;
            }
        }
        if (!out.empty())
            normalize(out);
        row = std::move(out);
    }

    std::size_t width_;
    std::map<std::size_t, SparseVec<BigInt>> pivots_;
};

// Exact rank of the matrix whose columns (or rows; rank is the same) are `vectors`.
inline std::size_t exact_rank(const std::vector<SparseVec<Scalar>>& vectors, std::size_t width = 0)
{
    // short vectors first keeps fill-in down
    std::vector<const SparseVec<Scalar>*> order;
    order.reserve(vectors.size());
    for (const auto& v : vectors)
        if (!v.empty())
            order.push_back(&v);
    std::stable_sort(order.begin(), order.end(), [](auto* a, auto* b) { return a->size() < b->size(); });
    IntegerEchelon ech(width);
    for (const auto* v : order)
        ech.insert(to_primitive_integer(*v));
    return ech.rank();
}

} // namespace necklace
