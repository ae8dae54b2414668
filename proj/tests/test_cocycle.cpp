#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "spt/cohomology.hpp"
#include "spt/smith.hpp"

using namespace spt;

namespace {

Phase frac(std::int64_t a, std::int64_t b) { return Phase::from_fraction(a, b); }

Cochain3 trivial(std::size_t n) { return Cochain3(make_cyclic(n)); }

} // namespace

TEST(Phase, ReducedArithmetic) {
    EXPECT_EQ(frac(2, 4), frac(1, 2));
    EXPECT_EQ(frac(-1, 3), frac(2, 3));
    EXPECT_EQ(frac(1, 2) * frac(1, 2), Phase::one());
    EXPECT_EQ(frac(1, 3) * frac(1, 6), frac(1, 2));
    EXPECT_EQ(frac(1, 4).inverse(), frac(3, 4));
    EXPECT_EQ(frac(1, 6).pow(4), frac(2, 3));
    EXPECT_EQ(frac(3, 4).numerator_over(8), 6);
    EXPECT_NEAR(frac(1, 2).to_complex().real(), -1.0, 1e-15);
    EXPECT_THROW(frac(1, 0), Error);
    EXPECT_THROW(frac(1, Phase::kMaxDenominator + 1), Error);
    // Large coprime denominators stay exact through the 128-bit product.
    const std::int64_t p = 1048573, q = 1048571;
    EXPECT_EQ((frac(1, p) * frac(1, q)).den(), p * q);
}

TEST(Cocycle, StandardRepresentativeMatchesFormula) {
    for (std::size_t n = 1; n <= 6; ++n)
        for (std::int64_t p = 0; p < static_cast<std::int64_t>(n); ++p) {
            auto w = standard_cyclic_cocycle(n, p);
            auto ref = oracle::cyclic_representative(n, p);
            EXPECT_TRUE(oracle::equal_as_phases(oracle::from_cochain(w, ref.den), ref)) << n << " " << p;
        }
    auto z2 = standard_cyclic_cocycle(2, 1);
    for (std::size_t i = 0; i < z2.size(); ++i)
        EXPECT_EQ(z2.entries()[i], i == 7 ? frac(1, 2) : Phase::one());
    EXPECT_EQ(standard_cyclic_cocycle(3, 1)(1, 2, 2), frac(1, 3));
    EXPECT_EQ(standard_cyclic_cocycle(5, 0), trivial(5));
}

TEST(Cocycle, CheckAgreesWithOracle) {
    auto w = standard_cyclic_cocycle(3, 1);
    EXPECT_TRUE(check_cocycle(w).pass);
    EXPECT_TRUE(oracle::is_cocycle(w.group(), oracle::from_cochain(w, 9)));
    EXPECT_TRUE(check_cocycle(trivial(4)).pass);

    // Clearing the only nontrivial entry of the Z2 representative leaves the
    // all-ones cochain, which is a cocycle; a quarter phase there is not.
    auto cleared = standard_cyclic_cocycle(2, 1);
    cleared.set({1, 1, 1}, Phase::one());
    EXPECT_TRUE(check_cocycle(cleared).pass);

    auto broken = standard_cyclic_cocycle(2, 1);
    broken.set({1, 1, 1}, frac(1, 4));
    auto chk = check_cocycle(broken);
    ASSERT_FALSE(chk.pass);
    EXPECT_FALSE(oracle::is_cocycle(broken.group(), oracle::from_cochain(broken, 4)));
    const auto &q = chk.quadruple;
    bool contains = (q[0] == 1 && q[1] == 1 && q[2] == 1) || (q[1] == 1 && q[2] == 1 && q[3] == 1) ||
                    (q[0] == 1 && q[1] == 0 && q[2] == 1 && q[3] == 1) || (q[0] == 1 && q[1] == 1 && q[3] == 1);
    EXPECT_TRUE(contains);
    EXPECT_FALSE(chk.residual.is_one());
}

TEST(Cocycle, SerialAndParallelScansAgree) {
    std::mt19937_64 rng(11);
    for (std::size_t n : {2u, 3u, 5u, 8u}) {
        auto w = standard_cyclic_cocycle(n, 1);
        EXPECT_EQ(check_cocycle(w).pass, check_cocycle_serial(w).pass);
        std::uniform_int_distribution<std::size_t> pick(1, w.size() - 1);
        w.entries()[pick(rng)] *= frac(1, 7);
        auto a = check_cocycle(w), b = check_cocycle_serial(w);
        EXPECT_FALSE(a.pass);
        EXPECT_EQ(a.quadruple, b.quadruple);
        EXPECT_EQ(a.residual, b.residual);
    }
}

TEST(Cocycle, CoboundaryExamples) {
    auto z2 = make_cyclic(2);
    EXPECT_EQ(coboundary(Cochain2(z2)), Cochain3(z2));

    Cochain2 mu(z2);
    mu.set({1, 1}, frac(1, 4));
    EXPECT_EQ(coboundary(mu)(1, 1, 1), Phase::one());

    std::mt19937_64 rng(3);
    auto z3 = make_cyclic(3);
    for (int i = 0; i < 10; ++i) {
        auto m = random_cochain2(z3, 12, rng);
        auto d = coboundary(m);
        EXPECT_TRUE(check_cocycle(d).pass);
        std::vector<std::int64_t> ex;
        for (const auto &p : m.entries())
            ex.push_back(p.numerator_over(12));
        EXPECT_TRUE(oracle::equal_as_phases(oracle::from_cochain(d, 12), oracle::coboundary(*z3, ex, 12)));
    }
}

TEST(Smith, SolvesAndRejects) {
    // 2x = 1 mod 4 has no solution; 2x = 2 mod 4 does.
    ModularSystem a(1, 1, 4);
    a.at(0, 0) = 2;
    a.rhs[0] = 1;
    EXPECT_FALSE(solve_mod(a).solvable);
    a.rhs[0] = 2;
    auto s = solve_mod(a);
    ASSERT_TRUE(s.solvable);
    EXPECT_EQ((2 * s.x[0]) % 4, 2);

    // A dense system checked against its own residual.
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const std::int64_t M = 36;
        ModularSystem sys(5, 4, M);
        std::uniform_int_distribution<std::int64_t> d(0, M - 1);
        std::vector<std::int64_t> x0(4);
        for (auto &v : x0)
            v = d(rng);
        for (std::size_t i = 0; i < 5; ++i) {
            std::int64_t r = 0;
            for (std::size_t j = 0; j < 4; ++j) {
                sys.at(i, j) = d(rng) % 6 * 6;
                r += sys.at(i, j) * x0[j];
            }
            sys.rhs[i] = r % M;
        }
        auto sol = solve_mod(sys);
        ASSERT_TRUE(sol.solvable);
        for (std::size_t i = 0; i < 5; ++i) {
            std::int64_t r = 0;
            for (std::size_t j = 0; j < 4; ++j)
                r += sys.at(i, j) * sol.x[j];
            EXPECT_EQ(oracle::mod(r - sys.rhs[i], M), 0);
        }
    }
}

TEST(Cohomology, SameClassWitnessesAreVerified) {
    std::mt19937_64 rng(17);
    for (std::size_t n : {2u, 3u, 4u}) {
        auto w = standard_cyclic_cocycle(n, 1);
        auto wd = w * coboundary(random_cochain2(w.group_ref(), 6, rng));
        auto cmp = same_class(wd, w);
        ASSERT_TRUE(cmp.same);
        ASSERT_TRUE(cmp.witness);
        EXPECT_EQ(coboundary(*cmp.witness), wd / w);
    }
}

TEST(Cohomology, DistinctClasses) {
    EXPECT_FALSE(same_class(standard_cyclic_cocycle(2, 1), trivial(2)).same);
    EXPECT_FALSE(same_class(standard_cyclic_cocycle(3, 1), standard_cyclic_cocycle(3, 2)).same);
    EXPECT_TRUE(same_class(standard_cyclic_cocycle(4, 2), standard_cyclic_cocycle(4, 2)).same);
}

TEST(Cohomology, AgreesWithBruteForceOnZ2) {
    auto z2 = make_cyclic(2);
    const auto w1 = oracle::from_cochain(standard_cyclic_cocycle(2, 1), 4);
    const auto w0 = oracle::from_cochain(trivial(2), 4);
    EXPECT_FALSE(oracle::brute_force_same_class(*z2, w1, w0, 4));
    EXPECT_TRUE(oracle::brute_force_same_class(*z2, w1, w1, 4));
}

TEST(Cohomology, DifferentGroupsRejected) {
    EXPECT_THROW(same_class(trivial(2), trivial(3)), Error);
}

TEST(Cohomology, CyclicLevels) {
    EXPECT_EQ(identify_cyclic_level(standard_cyclic_cocycle(4, 3)), 3);
    EXPECT_EQ(identify_cyclic_level(trivial(5)), 0);
    std::mt19937_64 rng(23);
    for (int i = 0; i < 5; ++i) {
        auto w = standard_cyclic_cocycle(2, 1) * coboundary(random_cochain2(make_cyclic(2), 8, rng));
        EXPECT_EQ(identify_cyclic_level(w), 1);
    }
    for (std::size_t n = 2; n <= 6; ++n)
        for (std::int64_t p = 0; p < static_cast<std::int64_t>(n); ++p)
            EXPECT_EQ(identify_cyclic_level(standard_cyclic_cocycle(n, p)), p);
    // Relabeling by a -> k a multiplies the level by k^2.
    EXPECT_EQ(identify_cyclic_level(standard_cyclic_cocycle(4, 1), 3), 1);
    EXPECT_EQ(identify_cyclic_level(standard_cyclic_cocycle(5, 1), 2), 4);
    Cochain3 v(parse_group_shorthand("z2*z2"));
    EXPECT_THROW(identify_cyclic_level(v), Error);
}

TEST(Cohomology, Normalize) {
    auto w = standard_cyclic_cocycle(3, 2);
    auto n = normalize(w);
    EXPECT_EQ(n.cocycle, w);

    std::mt19937_64 rng(29);
    for (std::size_t order : {2u, 3u, 4u}) {
        auto base = standard_cyclic_cocycle(order, 1);
        auto mu = random_cochain2(base.group_ref(), 4, rng);
        mu.set({0, 1}, frac(1, 4));
        auto perturbed = base * coboundary(mu);
        ASSERT_FALSE(perturbed.is_normalized());
        auto out = normalize(perturbed);
        EXPECT_TRUE(out.cocycle.is_normalized());
        EXPECT_EQ(out.cocycle, perturbed * coboundary(out.witness));
        EXPECT_TRUE(same_class(out.cocycle, base).same);
    }
}

TEST(Cohomology, CupProductsOnZ2xZ2) {
    const std::vector<std::size_t> f{2, 2};
    std::vector<Cochain3> gens{cyclic_cup_cocycle(f, 0, 0, 1), cyclic_cup_cocycle(f, 1, 1, 1),
                               cyclic_cup_cocycle(f, 0, 1, 1)};
    // The eight products are cocycles in eight distinct classes.
    std::vector<Cochain3> all;
    for (int mask = 0; mask < 8; ++mask) {
        Cochain3 w(gens[0].group_ref());
        for (int b = 0; b < 3; ++b)
            if (mask >> b & 1)
                w = w * gens[b];
        EXPECT_TRUE(check_cocycle(w).pass);
        EXPECT_TRUE(w.is_normalized());
        all.push_back(w);
    }
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            EXPECT_FALSE(same_class(all[i], all[j]).same) << i << " " << j;
    // Element 2 is (1,0): the pullback along the first factor sees it, not 1 = (0,1).
    EXPECT_EQ(gens[0](2, 2, 2), frac(1, 2));
    EXPECT_EQ(gens[0](1, 1, 1), Phase::one());
    EXPECT_EQ(gens[1](1, 1, 1), frac(1, 2));
}
