#pragma once

#include "necklace/alphabet.hpp"

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace necklace {

struct Word {
    std::vector<VarId> letters;

    Word() = default;
    Word(std::initializer_list<VarId> l) : letters(l) {}
    explicit Word(std::vector<VarId> l) : letters(std::move(l)) {}

    std::size_t size() const noexcept { return letters.size(); }
    bool empty() const noexcept { return letters.empty(); }
    VarId operator[](std::size_t i) const { return letters[i]; }

    auto operator<=>(const Word&) const = default;
    bool operator==(const Word&) const = default;
};

inline Word concat(const Word& a, const Word& b)
{
    Word out;
    out.letters.reserve(a.size() + b.size());
    out.letters.insert(out.letters.end(), a.letters.begin(), a.letters.end());
    out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
    return out;
}

// Moves the first `shift` letters to the end.
inline Word rotate(const Word& w, std::size_t shift)
{
    Word out;
    out.letters.reserve(w.size());
    out.letters.insert(out.letters.end(), w.letters.begin() + static_cast<std::ptrdiff_t>(shift), w.letters.end());
    out.letters.insert(out.letters.end(), w.letters.begin(), w.letters.begin() + static_cast<std::ptrdiff_t>(shift));
    return out;
}

inline int koszul_sign(int deg_a, int deg_b) { return ((deg_a & 1) && (deg_b & 1)) ? -1 : 1; }

inline int coh_degree(const Alphabet& A, std::span<const VarId> letters)
{
    int d = 0;
    for (VarId z : letters)
        d += A.degree(z);
    return d;
}

inline int coh_degree(const Alphabet& A, const Word& w) { return coh_degree(A, std::span<const VarId>(w.letters)); }

inline std::string to_string(const Alphabet& A, const Word& w, std::string_view sep = "*")
{
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i)
            s += sep;
        s += A[w[i]].name;
    }
    return s;
}

inline void check_ids(const Alphabet& A, const Word& w)
{
    for (VarId z : w.letters)
        if (z >= A.size())
            throw AlphabetError("unknown_variable", "variable id " + std::to_string(z) + " not in alphabet");
}

// Consecutive letters compose when target(z) == source(z'). With `cyclic` the
// wrap-around pair (last, first) is checked as well. Throws on unknown ids.
inline bool compose_check(const Alphabet& A, const Word& w, bool cyclic = false)
{
    check_ids(A, w);
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (A[w[i]].target != A[w[i + 1]].source)
            return false;
    if (cyclic && !w.empty() && A[w.letters.back()].target != A[w.letters.front()].source)
        return false;
    return true;
}

inline bool is_closed_path(const Alphabet& A, const Word& w) { return compose_check(A, w, true); }

// Sign picked up by rotate(w, shift): the prefix moves past the suffix.
inline int rotation_sign(const Alphabet& A, const Word& w, std::size_t shift)
{
    std::span<const VarId> all(w.letters);
    return koszul_sign(coh_degree(A, all.first(shift)), coh_degree(A, all.subspan(shift)));
}

struct SignedWord {
    Word rep;
    int sign = 1;

    bool operator==(const SignedWord&) const = default;
};

// Canonical representative of the cyclic class of `w`: the lexicographically
// minimal rotation, together with the Koszul sign s such that [w] = s [rep].
// Returns nullopt when the class is zero, i.e. some rotation maps w to itself
// with sign -1.
inline std::optional<SignedWord> canonical_cyclic(const Alphabet& A, const Word& w)
{
    if (!is_closed_path(A, w))
        throw PathError("not_closed", "word '" + to_string(A, w) + "' is not a closed path");
    const std::size_t k = w.size();
    if (k == 0)
        return SignedWord{w, 1};

    // prefix degree sums give every rotation sign in O(1)
    std::vector<int> prefix(k + 1, 0);
    for (std::size_t i = 0; i < k; ++i)
        prefix[i + 1] = prefix[i] + A.degree(w[i]);
    const int total = prefix[k];
    auto sign_at = [&](std::size_t r) { return koszul_sign(prefix[r], total - prefix[r]); };
    auto less_rot = [&](std::size_t a, std::size_t b) {
        for (std::size_t i = 0; i < k; ++i) {
            VarId x = w[(a + i) % k], y = w[(b + i) % k];
            if (x != y)
                return x < y;
        }
        return false;
    };
    auto equal_rot = [&](std::size_t a, std::size_t b) {
        for (std::size_t i = 0; i < k; ++i)
            if (w[(a + i) % k] != w[(b + i) % k])
                return false;
        return true;
    };

    // smallest period p: rotations by multiples of p fix w
    std::size_t period = k;
    for (std::size_t p = 1; p < k; ++p) {
        if (k % p == 0 && equal_rot(0, p)) {
            period = p;
            break;
        }
    }
    if (period < k && sign_at(period) < 0)
        return std::nullopt;

    std::size_t best = 0;
    for (std::size_t r = 1; r < period; ++r)
        if (less_rot(r, best))
            best = r;
    // w = P Q with |P| = best; rotating gives Q P = sign * w as cyclic classes
    return SignedWord{rotate(w, best), sign_at(best)};
}

} // namespace necklace
