#include "necklace/quiver.hpp"
#include "necklace/series.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace necklace;

namespace {

AlphabetPtr loops(int pairs) { return shifted_alphabet(phi_from_ext({{"1"}, {{2 * pairs}}})); }

Word word(const Alphabet& A, std::initializer_list<const char*> names)
{
    Word w;
    for (const char* n : names)
        w.letters.push_back(A.id_of(n));
    return w;
}

// Oracle: walk all single-letter rotations and multiply stepwise signs.
std::optional<SignedWord> brute_canonical(const Alphabet& A, const Word& w)
{
    if (w.empty())
        return SignedWord{w, 1};
    std::vector<std::pair<Word, int>> orbit;
    Word cur = w;
    int sign = 1;
    for (std::size_t i = 0; i < w.size(); ++i) {
        orbit.emplace_back(cur, sign);
        const int first = A.degree(cur.letters.front());
        const int rest = coh_degree(A, cur) - first;
        sign *= koszul_sign(first, rest);
        cur = rotate(cur, 1);
    }
    // back at w: sign is the full-cycle sign
    for (const auto& [r, s] : orbit)
        if (r == w && s < 0)
            return std::nullopt;
    auto best = std::min_element(orbit.begin(), orbit.end(),
                                 [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [r, s] : orbit)
        if (r == best->first && s != best->second)
            return std::nullopt;
    // w = sign * best  <=>  best = sign * w
    return SignedWord{best->first, best->second};
}

void all_words(std::size_t alphabet, std::size_t len, const std::function<void(const Word&)>& f)
{
    Word w;
    w.letters.assign(len, 0);
    while (true) {
        f(w);
        std::size_t i = 0;
        while (i < len && ++w.letters[i] == alphabet)
            w.letters[i++] = 0;
        if (i == len)
            return;
    }
}

} // namespace

TEST(Alphabet, OneVertexLayout)
{
    auto A = loops(1);
    ASSERT_EQ(A->size(), 4u);
    EXPECT_EQ((*A)[0].name, "alpha");
    EXPECT_EQ((*A)[1].name, "beta");
    EXPECT_EQ((*A)[2].name, "x1");
    EXPECT_EQ((*A)[3].name, "xi1");
    EXPECT_EQ(A->degree(0), 1);
    EXPECT_EQ(A->degree(1), -1);
    EXPECT_EQ(A->degree(2), 0);
    EXPECT_EQ(*(*A)[2].dual, 3);
    EXPECT_TRUE(A->is_primary(0));
    EXPECT_FALSE(A->is_primary(1));
}

TEST(Alphabet, RejectsBadDeclarations)
{
    std::vector<std::string> v{"0"};
    EXPECT_THROW(Alphabet(v, {{"a", 1, 0, 0, VarKind::arrow, std::nullopt}}), AlphabetError);
    EXPECT_THROW(Alphabet(v, {{"alpha", 0, 0, 0, VarKind::alpha, std::nullopt}}), AlphabetError);
    EXPECT_THROW(Alphabet(v, {{"a", 0, 0, 0, VarKind::arrow, 0}, {"a", 0, 0, 0, VarKind::arrow, 1}}), AlphabetError);
}

TEST(CanonicalCyclic, SpecExamples)
{
    auto A = loops(1);
    auto c = canonical_cyclic(*A, word(*A, {"beta", "alpha", "alpha"}));
    ASSERT_TRUE(c);
    EXPECT_EQ(c->rep, word(*A, {"alpha", "alpha", "beta"}));
    EXPECT_EQ(c->sign, 1);

    c = canonical_cyclic(*A, word(*A, {"x1", "xi1"}));
    ASSERT_TRUE(c);
    EXPECT_EQ(c->rep, word(*A, {"x1", "xi1"}));
    EXPECT_EQ(c->sign, 1);

    EXPECT_FALSE(canonical_cyclic(*A, word(*A, {"alpha", "alpha"})));
}

TEST(CanonicalCyclic, OddRotationSign)
{
    auto A = loops(1);
    // [beta alpha] = (-1)^{(-1)(1)} [alpha beta]
    auto c = canonical_cyclic(*A, word(*A, {"beta", "alpha"}));
    ASSERT_TRUE(c);
    EXPECT_EQ(c->rep, word(*A, {"alpha", "beta"}));
    EXPECT_EQ(c->sign, -1);
}

TEST(CanonicalCyclic, EmptyWordIsUnit)
{
    auto A = loops(1);
    auto c = canonical_cyclic(*A, Word{});
    ASSERT_TRUE(c);
    EXPECT_TRUE(c->rep.empty());
    EXPECT_EQ(c->sign, 1);
}

TEST(CanonicalCyclic, RejectsOpenPath)
{
    auto q = phi_from_ext({{"1", "2"}, {{0, 1}, {1, 0}}});
    auto A = shifted_alphabet(q);
    const VarId a = A->id_of("a_1_2_1");
    EXPECT_THROW(canonical_cyclic(*A, Word{a}), PathError);
}

TEST(CanonicalCyclic, AgreesWithBruteForceUpToLength6)
{
    auto A = loops(1);
    std::size_t zeros = 0, words = 0;
    for (std::size_t len = 1; len <= 6; ++len) {
        all_words(A->size(), len, [&](const Word& w) {
            ++words;
            auto fast = canonical_cyclic(*A, w);
            auto slow = brute_canonical(*A, w);
            ASSERT_EQ(fast.has_value(), slow.has_value()) << to_string(*A, w);
            if (!fast) {
                ++zeros;
                return;
            }
            EXPECT_EQ(fast->rep, slow->rep) << to_string(*A, w);
            EXPECT_EQ(fast->sign, slow->sign) << to_string(*A, w);
        });
    }
    EXPECT_EQ(words, 4u + 16 + 64 + 256 + 1024 + 4096);
    EXPECT_GT(zeros, 0u);
}

TEST(CanonicalCyclic, IdempotentAndRotationConsistent)
{
    auto A = loops(1);
    for (std::size_t len = 1; len <= 6; ++len) {
        all_words(A->size(), len, [&](const Word& w) {
            auto c = canonical_cyclic(*A, w);
            for (std::size_t r = 0; r < len; ++r) {
                auto cr = canonical_cyclic(*A, rotate(w, r));
                ASSERT_EQ(c.has_value(), cr.has_value()) << to_string(*A, w);
                if (!c)
                    continue;
                EXPECT_EQ(cr->rep, c->rep);
                // w = s_r * rotate(w, r)
                EXPECT_EQ(cr->sign * rotation_sign(*A, w, r), c->sign) << to_string(*A, w) << " r=" << r;
            }
            if (c) {
                auto again = canonical_cyclic(*A, c->rep);
                ASSERT_TRUE(again);
                EXPECT_EQ(again->rep, c->rep);
                EXPECT_EQ(again->sign, 1);
            }
        });
    }
}

TEST(Scalar, CrossMultiplicationOracle)
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 1000000);
    for (int i = 0; i < 1000; ++i) {
        const long a = num(rng), b = den(rng), c = num(rng), d = den(rng);
        Scalar s = make_scalar(a, b) + make_scalar(c, d);
        BigInt p = BigInt(a) * d + BigInt(c) * b;
        BigInt q = BigInt(b) * d;
        EXPECT_EQ(s.get_num() * q, p * s.get_den());
        EXPECT_GT(s.get_den(), 0);
        BigInt g;
        mpz_gcd(g.get_mpz_t(), s.get_num().get_mpz_t(), s.get_den().get_mpz_t());
        EXPECT_EQ(g, 1);
    }
}

TEST(Scalar, ParseRational)
{
    EXPECT_EQ(*parse_rational("-2/4"), make_scalar(-1, 2));
    EXPECT_EQ(*parse_rational("+7"), Scalar(7));
    EXPECT_FALSE(parse_rational("1/0"));
    EXPECT_FALSE(parse_rational("1.5"));
    EXPECT_FALSE(parse_rational(""));
    EXPECT_FALSE(parse_rational("3/"));
}

TEST(Series, CombineExamples)
{
    auto A = loops(1);
    CyclicSeries s(A);
    s.add(word(*A, {"alpha", "alpha", "beta"}), 1).add(word(*A, {"alpha", "x1", "xi1"}), 3);
    CyclicSeries empty(A);
    EXPECT_EQ(series_combine(CombineOp::add, s, empty), s);
    EXPECT_TRUE(series_combine(CombineOp::sub, s, s).is_zero());

    CyclicSeries w(A);
    w.add(word(*A, {"alpha", "alpha", "beta"}), 1);
    auto scaled = series_scale(w, make_scalar(2, 3));
    EXPECT_EQ(scaled.to_string(), "2/3*cyc(alpha*alpha*beta)");
}

TEST(Series, AddCanonicalizes)
{
    auto A = loops(1);
    CyclicSeries s(A);
    s.add(word(*A, {"beta", "alpha"}), 1);
    EXPECT_EQ(s.to_string(), "-cyc(alpha*beta)");
    s.add(word(*A, {"alpha", "beta"}), 1);
    EXPECT_TRUE(s.is_zero());
    s.add(word(*A, {"alpha", "alpha"}), 5);
    EXPECT_TRUE(s.is_zero());
}

TEST(Series, Degrees)
{
    auto A = loops(1);
    auto one = [&](std::initializer_list<const char*> names) {
        CyclicSeries s(A);
        s.add(word(*A, names), 1);
        return degrees(s);
    };
    EXPECT_EQ(one({"alpha", "alpha", "beta"}), (std::set<Degrees>{{1, 3, 2}}));
    EXPECT_EQ(one({"alpha"}), (std::set<Degrees>{{1, 1, 0}}));
    EXPECT_EQ(one({"x1", "xi1", "beta"}), (std::set<Degrees>{{-1, 3, 4}}));
}

TEST(ComposeCheck, Examples)
{
    auto A1 = loops(2);
    EXPECT_TRUE(compose_check(*A1, word(*A1, {"x1", "xi2", "alpha", "x2"})));

    RawQuiver raw{{"1", "2"}, {{"a", "1", "2"}, {"astar", "2", "1"}, {"b", "1", "2"}, {"bstar", "2", "1"}},
                  {{"a", "astar"}, {"b", "bstar"}}};
    auto A = shifted_alphabet(validate_quiver(raw));
    EXPECT_TRUE(compose_check(*A, word(*A, {"a", "astar"})));
    EXPECT_FALSE(compose_check(*A, word(*A, {"a", "b"})));
    EXPECT_FALSE(is_closed_path(*A, word(*A, {"a"})));
    EXPECT_TRUE(is_closed_path(*A, word(*A, {"a", "bstar"})));
}
