#include "necklace/conventions.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace necklace;

namespace {

Word word(const Alphabet& A, std::initializer_list<const char*> names)
{
    Word w;
    for (const char* n : names)
        w.letters.push_back(A.id_of(n));
    return w;
}

CyclicSeries single(const AlphabetPtr& A, std::initializer_list<const char*> names, Scalar c = 1)
{
    CyclicSeries s(A);
    s.add(word(*A, names), c);
    return s;
}

CyclicSeries wcan(int n) { return canonical_potential(one_vertex_quiver(n)); }

} // namespace

TEST(CyclicDerivative, CanonicalPartials)
{
    auto W = wcan(1);
    const auto& A = W.alphabet();
    EXPECT_EQ(cyclic_derivative(W, A.id_of("alpha")).to_string(), "alpha*beta + beta*alpha + x1*xi1 - xi1*x1");
    EXPECT_EQ(cyclic_derivative(W, A.id_of("beta")).to_string(), "alpha*alpha");
    EXPECT_EQ(cyclic_derivative(W, A.id_of("x1")).to_string(), "-alpha*xi1 + xi1*alpha");
    EXPECT_EQ(cyclic_derivative(W, A.id_of("xi1")).to_string(), "alpha*x1 - x1*alpha");
}

TEST(CyclicDerivative, SpecExamples)
{
    auto W = wcan(1);
    auto A = W.alphabet_ptr();
    EXPECT_EQ(cyclic_derivative(single(A, {"alpha", "alpha", "beta"}), A->id_of("alpha")).to_string(),
              "alpha*beta + beta*alpha");
    auto loop = single(A, {"alpha", "x1", "xi1"}) - single(A, {"alpha", "xi1", "x1"});
    EXPECT_EQ(cyclic_derivative(loop, A->id_of("x1")).to_string(), "-alpha*xi1 + xi1*alpha");
    EXPECT_TRUE(cyclic_derivative(single(A, {"x1", "xi1", "beta"}), A->id_of("alpha")).is_zero());
}

TEST(CyclicDerivative, MatchesTermByTermOracle)
{
    for (int n = 1; n <= 3; ++n) {
        auto W = wcan(n);
        for (const auto& [z, expected] : expected_canonical_partials(W.alphabet_ptr(), n))
            EXPECT_EQ(cyclic_derivative(W, z), expected) << W.alphabet()[z].name;
    }
}

TEST(CyclicDerivative, RightDerivativeSign)
{
    auto A = wcan(1).alphabet_ptr();
    // alpha alpha beta: d^R_beta moves beta (deg -1) past alpha alpha (deg 2), sign +1
    auto s = single(A, {"alpha", "alpha", "beta"});
    EXPECT_EQ(right_cyclic_derivative(s, A->id_of("beta")), cyclic_derivative(s, A->id_of("beta")));
    // alpha beta: d^L_alpha = beta, d^R_alpha = (-1)^{1*(-1)} beta
    auto t = single(A, {"alpha", "beta"});
    EXPECT_EQ(right_cyclic_derivative(t, A->id_of("alpha")), cyclic_derivative(t, A->id_of("alpha")) * Scalar(-1));
}

TEST(CloseCycle, Examples)
{
    auto A = wcan(1).alphabet_ptr();
    NcPoly p(A);
    p.add(word(*A, {"alpha", "beta"}), 1).add(word(*A, {"beta", "alpha"}), 1);
    EXPECT_TRUE(close_cycle(p).is_zero());

    NcPoly q(A);
    q.add(word(*A, {"x1", "xi1"}), 1);
    EXPECT_EQ(close_cycle(q).to_string(), "cyc(x1*xi1)");
    q.add(word(*A, {"xi1", "x1"}), 1);
    EXPECT_EQ(close_cycle(q).to_string(), "2*cyc(x1*xi1)");

    EXPECT_TRUE(close_cycle(NcPoly(A)).is_zero());
}

TEST(Bracket, LinearPairIsConstant)
{
    auto A = wcan(1).alphabet_ptr();
    auto b = necklace_bracket(single(A, {"x1"}), single(A, {"xi1"}));
    ASSERT_EQ(b.size(), 1u);
    EXPECT_EQ(b.coefficient(Word{}), 1);
    EXPECT_EQ(b.to_string(), "cyc()");
    auto r = necklace_bracket(single(A, {"xi1"}), single(A, {"x1"}));
    EXPECT_EQ(r.coefficient(Word{}), -1);
}

TEST(Bracket, DisjointVariablesCommute)
{
    auto A = wcan(2).alphabet_ptr();
    auto f = single(A, {"x1", "x1"});
    auto g = single(A, {"x2", "xi2"});
    EXPECT_TRUE(necklace_bracket(f, g).is_zero());
}

TEST(Bracket, AlphabetMismatchThrows)
{
    auto f = single(wcan(1).alphabet_ptr(), {"x1"});
    auto g = single(wcan(2).alphabet_ptr(), {"x1"});
    EXPECT_THROW(necklace_bracket(f, g), AlphabetError);
}

TEST(Bracket, WcanAlphaIsMinusAlphaSquaredThenZero)
{
    auto s = survey_conventions(1, 4, 2, 3);
    EXPECT_EQ(s.d_alpha_unclosed, "-alpha*alpha");
    EXPECT_EQ(s.d_alpha, "0");
}

TEST(Bracket, DegreeLawPerTerm)
{
    auto A = wcan(1).alphabet_ptr();
    std::mt19937 rng(11);
    for (int i = 0; i < 60; ++i) {
        auto [cf, kf] = random_degree(*A, 4, rng);
        auto [cg, kg] = random_degree(*A, 4, rng);
        auto f = random_homogeneous_series(A, cf, kf, 3, rng);
        auto g = random_homogeneous_series(A, cg, kg, 3, rng);
        const auto b = necklace_bracket(f, g);
        for (const auto& [w, c] : b.terms()) {
            const auto d = degrees_of(*A, w);
            EXPECT_EQ(d.coh, cf + cg);
            EXPECT_EQ(d.cyc, kf + kg - 2);
        }
    }
}

TEST(MasterResidual, Examples)
{
    for (int n = 0; n <= 4; ++n)
        EXPECT_TRUE(master_residual(wcan(n)).is_zero()) << n;

    auto A = wcan(1).alphabet_ptr();
    EXPECT_TRUE(master_residual(single(A, {"alpha", "alpha", "beta"})).is_zero());

    auto r = master_residual(single(A, {"alpha", "x1", "xi1"}));
    ASSERT_EQ(r.size(), 1u);
    auto c = r.coefficient_of_word(word(*A, {"alpha", "alpha", "x1", "xi1"}));
    EXPECT_TRUE(c == 2 || c == -2) << r.to_string();
}

TEST(MasterResidual, MultiVertex)
{
    auto q = phi_from_ext({{"1", "2", "3"}, {{2, 1, 0}, {1, 0, 2}, {0, 2, 4}}});
    EXPECT_TRUE(master_residual(build_canonical_potential(q)).is_zero());
}

TEST(Differential, RejectsNonSolution)
{
    auto A = wcan(1).alphabet_ptr();
    auto W = single(A, {"alpha", "alpha", "beta"}) + single(A, {"alpha", "x1", "x1"});
    try {
        HamiltonianDifferential d(W);
        FAIL() << "expected a precondition error";
    } catch (const PreconditionError& e) {
        EXPECT_EQ(e.code(), "master_equation");
    }
}

TEST(Differential, OnGenerators)
{
    auto W = wcan(1);
    auto A = W.alphabet_ptr();
    const VarId x = A->id_of("x1"), xi = A->id_of("xi1"), beta = A->id_of("beta"), alpha = A->id_of("alpha");

    // only the xi slot fires on x1
    NcPoly dx = right_cyclic_derivative(W, xi) * cyclic_derivative(single(A, {"x1"}), x);
    dx *= standard_convention.omega(*A, xi);
    NcPoly commutator(A);
    commutator.add(word(*A, {"alpha", "x1"}), 1).add(word(*A, {"x1", "alpha"}), -1);
    EXPECT_TRUE(dx == commutator || dx == commutator * Scalar(-1)) << dx.to_string();
    EXPECT_TRUE(differential_d(W, single(A, {"x1"})).is_zero());

    // only the alpha slot fires on beta
    NcPoly db = right_cyclic_derivative(W, alpha) * cyclic_derivative(single(A, {"beta"}), beta);
    db *= standard_convention.omega(*A, alpha);
    const NcPoly expected = expected_canonical_partials(A, 1).front().second;
    EXPECT_TRUE(db == expected || db == expected * Scalar(-1)) << db.to_string();
    EXPECT_TRUE(differential_d(W, single(A, {"beta"})).is_zero());

    HamiltonianDifferential d(W);
    auto f = single(A, {"x1", "xi1", "beta"});
    EXPECT_TRUE(d(d(f)).is_zero());
}

TEST(Differential, SquareZeroOnSmallBasis)
{
    auto W = wcan(1);
    HamiltonianDifferential d(W);
    for (int k = 1; k <= 5; ++k) {
        for (int n = -k; n <= k; ++n) {
            for (const Word& b : enumerate_basis(W.alphabet(), n, k, Selector::g_hat).basis) {
                CyclicSeries f(W.alphabet_ptr());
                f.add(b, 1);
                auto df = d(f);
                for (const auto& [w, c] : df.terms())
                    EXPECT_EQ(degrees_of(W.alphabet(), w), (Degrees{n + 1, k + 1, k - n}));
                EXPECT_TRUE(d(df).is_zero()) << to_string(W.alphabet(), b);
            }
        }
    }
}

TEST(Axioms, AntisymmetryAndJacobi)
{
    auto A = wcan(1).alphabet_ptr();
    std::mt19937 rng(5);
    for (int i = 0; i < 40; ++i) {
        auto [cf, kf] = random_degree(*A, 4, rng);
        auto [cg, kg] = random_degree(*A, 4, rng);
        auto f = random_homogeneous_series(A, cf, kf, 3, rng);
        auto g = random_homogeneous_series(A, cg, kg, 3, rng);
        EXPECT_TRUE(antisymmetric_on(f, g, cf, cg, standard_convention));
    }
    for (int i = 0; i < 20; ++i) {
        auto [cf, kf] = random_degree(*A, 3, rng);
        auto [cg, kg] = random_degree(*A, 3, rng);
        auto [ch, kh] = random_degree(*A, 3, rng);
        auto f = random_homogeneous_series(A, cf, kf, 2, rng);
        auto g = random_homogeneous_series(A, cg, kg, 2, rng);
        auto h = random_homogeneous_series(A, ch, kh, 2, rng);
        EXPECT_TRUE(jacobi_on(f, g, h, cf, cg, standard_convention));
    }
}

TEST(Conventions, SurveyPicksStandard)
{
    auto s = survey_conventions();
    ASSERT_EQ(s.outcomes.size(), 4u);
    ASSERT_TRUE(s.chosen);
    EXPECT_TRUE(s.matches_standard);
    for (const auto& o : s.outcomes) {
        EXPECT_TRUE(o.partials);
        EXPECT_EQ(o.master, o.convention.arrow_sign * o.convention.alpha_beta_sign == -1);
    }
    auto md = render_conventions_markdown(s);
    EXPECT_NE(md.find("arrow_sign = 1"), std::string::npos);
    EXPECT_NE(md.find("alpha_beta_sign = -1"), std::string::npos);
}
