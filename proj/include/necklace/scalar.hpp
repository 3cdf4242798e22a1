#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace necklace {

// Exact rationals. mpq_class keeps values canonical (lowest terms, positive
// denominator) as long as every constructed value is canonicalized once.
using Scalar = mpq_class;
using BigInt = mpz_class;

inline Scalar make_scalar(long num, long den = 1)
{
    Scalar q(num, den);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Scalar& q) { return q.get_str(); }

inline int sign_of(const Scalar& q) { return sgn(q); }

namespace detail {
inline bool all_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (c < '0' || c > '9')
            return false;
    return true;
}
} // namespace detail

// Parses "[+-]p" or "[+-]p/q" with decimal digits only. Returns nullopt on
// anything else, including a zero denominator.
inline std::optional<Scalar> parse_rational(std::string_view text)
{
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den))
        return std::nullopt;
    BigInt n(std::string(num), 10);
    BigInt d(std::string(den), 10);
    if (d == 0)
        return std::nullopt;
    Scalar q(n, d);
    q.canonicalize();
    if (negative)
        q = -q;
    return q;
}

} // namespace necklace
