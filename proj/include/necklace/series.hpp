#pragma once

#include "necklace/scalar.hpp"
#include "necklace/word.hpp"

#include <algorithm>
#include <compare>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace necklace {

struct Degrees {
    int coh = 0;
    int cyc = 0;
    int weight = 0; // cyc - coh, preserved by the differential

    auto operator<=>(const Degrees&) const = default;
};

inline Degrees degrees_of(const Alphabet& A, const Word& w)
{
    const int coh = coh_degree(A, w);
    const int cyc = static_cast<int>(w.size());
    return {coh, cyc, cyc - coh};
}

namespace detail {

// Shared storage for the two linear-combination-of-words types.
class WordCombination {
public:
    using Terms = std::map<Word, Scalar>;

    explicit WordCombination(AlphabetPtr alphabet) : alphabet_(std::move(alphabet))
    {
        if (!alphabet_)
            throw AlphabetError("null_alphabet", "series requires an alphabet");
    }

    const AlphabetPtr& alphabet_ptr() const noexcept { return alphabet_; }
    const Alphabet& alphabet() const noexcept { return *alphabet_; }
    const Terms& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    Scalar coefficient(const Word& w) const
    {
        auto it = terms_.find(w);
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    std::set<Degrees> degrees() const
    {
        std::set<Degrees> out;
        for (const auto& [w, c] : terms_)
            out.insert(degrees_of(*alphabet_, w));
        return out;
    }

    // Terms sorted by (coh, cyc) then lexicographically by representative.
    std::vector<std::pair<Word, Scalar>> ordered_terms() const
    {
        std::vector<std::pair<Word, Scalar>> out(terms_.begin(), terms_.end());
        std::stable_sort(out.begin(), out.end(), [this](const auto& a, const auto& b) {
            auto da = degrees_of(*alphabet_, a.first), db = degrees_of(*alphabet_, b.first);
            return std::tie(da.coh, da.cyc) < std::tie(db.coh, db.cyc);
        });
        return out;
    }

protected:
    void accumulate(const Word& w, const Scalar& c)
    {
        if (c == 0)
            return;
        auto [it, inserted] = terms_.try_emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    void scale_in_place(const Scalar& c)
    {
        if (c == 0) {
            terms_.clear();
            return;
        }
        for (auto& [w, coef] : terms_)
            coef *= c;
    }

    AlphabetPtr alphabet_;
    Terms terms_;
};

inline std::string format_terms(const Alphabet& A, const std::vector<std::pair<Word, Scalar>>& terms,
                                 const std::string& open, const std::string& close, const std::string& unit)
{
    if (terms.empty())
        return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : terms) {
        Scalar mag = abs(c);
        if (first)
            out += c < 0 ? "-" : "";
        else
            out += c < 0 ? " - " : " + ";
        first = false;
        const bool bare_unit = w.empty() && open.empty();
        const std::string body = bare_unit ? unit : open + to_string(A, w) + close;
        if (bare_unit && mag != 1)
            out += to_string(mag);
        else if (mag != 1)
            out += to_string(mag) + "*" + body;
        else
            out += body;
    }
    return out;
}

} // namespace detail

// Noncommutative polynomial: a linear combination of composable (not
// necessarily closed) words.
class NcPoly : public detail::WordCombination {
public:
    using WordCombination::WordCombination;

    NcPoly& add(const Word& w, const Scalar& c)
    {
        if (!compose_check(alphabet(), w))
            throw PathError("not_composable", "word '" + necklace::to_string(alphabet(), w) + "' is not a composable path");
        accumulate(w, c);
        return *this;
    }

    NcPoly& operator+=(const NcPoly& o)
    {
        require_same_alphabet(alphabet_, o.alphabet_);
        for (const auto& [w, c] : o.terms_)
            accumulate(w, c);
        return *this;
    }

    NcPoly& operator-=(const NcPoly& o)
    {
        require_same_alphabet(alphabet_, o.alphabet_);
        for (const auto& [w, c] : o.terms_)
            accumulate(w, -c);
        return *this;
    }

    NcPoly& operator*=(const Scalar& c)
    {
        scale_in_place(c);
        return *this;
    }

    friend NcPoly operator+(NcPoly a, const NcPoly& b) { return a += b; }
    friend NcPoly operator-(NcPoly a, const NcPoly& b) { return a -= b; }
    friend NcPoly operator*(NcPoly a, const Scalar& c) { return a *= c; }
    friend NcPoly operator*(const Scalar& c, NcPoly a) { return a *= c; }

    // Concatenation product; non-composable products are dropped (they are zero
    // in the path algebra).
    friend NcPoly operator*(const NcPoly& a, const NcPoly& b)
    {
        require_same_alphabet(a.alphabet_, b.alphabet_);
        NcPoly out(a.alphabet_);
        const Alphabet& A = a.alphabet();
        for (const auto& [u, cu] : a.terms_) {
            for (const auto& [v, cv] : b.terms_) {
                if (!u.empty() && !v.empty() && A[u.letters.back()].target != A[v.letters.front()].source)
                    continue;
                out.accumulate(concat(u, v), cu * cv);
            }
        }
        return out;
    }

    bool operator==(const NcPoly& o) const { return same_alphabet(alphabet_, o.alphabet_) && terms_ == o.terms_; }

    // Words in lexicographic order: "-alpha*xi1 + xi1*alpha"; the empty word prints as "1".
    std::string to_string() const
    {
        std::vector<std::pair<Word, Scalar>> v(terms_.begin(), terms_.end());
        return detail::format_terms(alphabet(), v, "", "", "1");
    }
};

// Finite linear combination of cyclic words. Keys are canonical
// representatives; zero classes and zero coefficients are never stored.
class CyclicSeries : public detail::WordCombination {
public:
    using WordCombination::WordCombination;

    // Adds c [w]; `w` is canonicalized with its Koszul sign. Throws PathError
    // if `w` is not a closed path.
    CyclicSeries& add(const Word& w, const Scalar& c)
    {
        if (c == 0)
            return *this;
        auto canon = canonical_cyclic(alphabet(), w);
        if (!canon)
            return *this;
        accumulate(canon->rep, canon->sign > 0 ? c : Scalar(-c));
        return *this;
    }

    CyclicSeries& add(std::initializer_list<VarId> letters, const Scalar& c) { return add(Word(letters), c); }

    // Coefficient of the class [w] expressed through w itself, i.e. the c with
    // series = c [w] + (other classes). Zero for zero classes.
    Scalar coefficient_of_word(const Word& w) const
    {
        if (!is_closed_path(alphabet(), w))
            return 0;
        auto canon = canonical_cyclic(alphabet(), w);
        if (!canon)
            return 0;
        Scalar c = coefficient(canon->rep);
        return canon->sign > 0 ? c : Scalar(-c);
    }

    CyclicSeries& operator+=(const CyclicSeries& o)
    {
        require_same_alphabet(alphabet_, o.alphabet_);
        for (const auto& [w, c] : o.terms_)
            accumulate(w, c);
        return *this;
    }

    CyclicSeries& operator-=(const CyclicSeries& o)
    {
        require_same_alphabet(alphabet_, o.alphabet_);
        for (const auto& [w, c] : o.terms_)
            accumulate(w, -c);
        return *this;
    }

    CyclicSeries& operator*=(const Scalar& c)
    {
        scale_in_place(c);
        return *this;
    }

    friend CyclicSeries operator+(CyclicSeries a, const CyclicSeries& b) { return a += b; }
    friend CyclicSeries operator-(CyclicSeries a, const CyclicSeries& b) { return a -= b; }
    friend CyclicSeries operator-(CyclicSeries a) { return a *= Scalar(-1); }
    friend CyclicSeries operator*(CyclicSeries a, const Scalar& c) { return a *= c; }
    friend CyclicSeries operator*(const Scalar& c, CyclicSeries a) { return a *= c; }

    bool operator==(const CyclicSeries& o) const { return same_alphabet(alphabet_, o.alphabet_) && terms_ == o.terms_; }

    // Homogeneous component at fixed (coh, cyc).
    CyclicSeries component(int coh, int cyc) const
    {
        CyclicSeries out(alphabet_);
        for (const auto& [w, c] : terms_) {
            auto d = degrees_of(alphabet(), w);
            if (d.coh == coh && d.cyc == cyc)
                out.terms_.emplace(w, c);
        }
        return out;
    }

    // DSL text: "cyc(alpha*alpha*beta) + cyc(alpha*x1*xi1) - cyc(alpha*xi1*x1)".
    std::string to_string() const { return detail::format_terms(alphabet(), ordered_terms(), "cyc(", ")", ""); }
};

enum class CombineOp { add, sub };

inline CyclicSeries series_combine(CombineOp op, const CyclicSeries& a, const CyclicSeries& b)
{
    return op == CombineOp::add ? a + b : a - b;
}

inline CyclicSeries series_scale(const CyclicSeries& a, const Scalar& c) { return a * c; }

inline std::set<Degrees> degrees(const CyclicSeries& s) { return s.degrees(); }
inline std::set<Degrees> degrees(const NcPoly& p) { return p.degrees(); }

} // namespace necklace
