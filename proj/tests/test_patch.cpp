#include <gtest/gtest.h>

#include "oracles.hpp"
#include "spt/boundary_chain.hpp"
#include "spt/patch.hpp"

using namespace spt;

namespace {

Phase frac(std::int64_t a, std::int64_t b) { return Phase::from_fraction(a, b); }

PatchGeometry torus(std::size_t w, std::size_t h, const std::string &link = "mirrored/-x") {
    return PatchGeometry(w, h, BoundaryCondition::torus, parse_link_assignment(link));
}

} // namespace

TEST(Patch, StateSizes) {
    auto z2 = make_cyclic(2), z3 = make_cyclic(3);
    auto g = torus(2, 2);
    auto s2 = build_patch_state(z2, g);
    EXPECT_EQ(s2.size(), 16u);
    EXPECT_EQ(build_patch_state(z3, g).size(), 81u);
    auto self = inner_product(s2, s2);
    EXPECT_TRUE(self.unit());
    EXPECT_TRUE(self.phase().is_one());
    EXPECT_DOUBLE_EQ(self.magnitude(), 1.0);
    for (const auto &[c, amp] : s2.terms()) {
        EXPECT_TRUE(amp.is_one());
        for (std::uint32_t p = 0; p < g.plaquette_count(); ++p)
            for (auto leg : g.plaquette_legs(p))
                EXPECT_EQ(c[leg], c[g.plaquette_legs(p).front()]);
    }
    EXPECT_THROW(build_patch_state(z3, torus(6, 4)), Error);
}

TEST(Patch, OpenBoundaryDanglingLegs) {
    PatchGeometry g(2, 2, BoundaryCondition::open);
    EXPECT_EQ(g.site_count(), 9u);
    auto s = build_patch_state(make_cyclic(2), g);
    EXPECT_EQ(s.size(), 16u);
    for (const auto &[c, amp] : s.terms())
        for (Register r = 0; r < g.leg_count(); ++r)
            if (!g.plaquette_of_leg(r)) {
                EXPECT_EQ(c[r], 0);
            }
}

TEST(Patch, OnsiteExamples) {
    auto geom = torus(2, 2);
    auto w = standard_cyclic_cocycle(3, 1);
    auto sites = geom.all_sites();
    EXPECT_TRUE(same_action(onsite_symmetry_op(w, geom, 0, sites), MonomialOp(patch_space(w.group_ref(), geom))));
    auto triv = Cochain3(w.group_ref());
    EXPECT_TRUE(same_action(onsite_symmetry_op(triv, geom, 2, {0}),
                            [&] {
                                MonomialOp u(patch_space(w.group_ref(), geom));
                                for (int a = 1; a <= 4; ++a)
                                    u.push(Shift{geom.leg(0, a), 2});
                                return u;
                            }()));

    auto z2 = standard_cyclic_cocycle(2, 1);
    auto u = onsite_symmetry_op(z2, geom, 1, {0});
    BasisConfig c(geom.leg_count(), 0);
    const Element legs[4] = {1, 0, 1, 0};
    for (int a = 1; a <= 4; ++a)
        c[geom.leg(0, a)] = legs[a - 1];
    auto [out, ph] = u.apply(c);
    for (int a = 1; a <= 4; ++a)
        EXPECT_EQ(out[geom.leg(0, a)], 1 - legs[a - 1]);
    EXPECT_TRUE(ph.is_one());
}

TEST(Patch, OnsiteWeightMatchesFormula) {
    auto geom = torus(2, 2);
    for (std::size_t n : {2u, 3u, 4u})
        for (std::int64_t p = 0; p < static_cast<std::int64_t>(n); ++p) {
            auto w = standard_cyclic_cocycle(n, p);
            auto ref = oracle::from_cochain(w, static_cast<std::int64_t>(n * n));
            for (Element g = 0; g < n; ++g) {
                auto u = onsite_symmetry_op(w, geom, g, {3});
                BasisConfig c(geom.leg_count(), 0);
                for (std::size_t code = 0; code < n * n * n * n; ++code) {
                    std::size_t l[4], r = code;
                    for (int a = 0; a < 4; ++a) {
                        l[a] = r % n;
                        r /= n;
                        c[geom.leg(3, a + 1)] = static_cast<Element>(l[a]);
                    }
                    auto ph = u.apply(c).second;
                    EXPECT_EQ(ph, frac(oracle::site_weight(w.group(), ref, l, g), ref.den));
                }
            }
        }
}

TEST(Patch, RepresentationAndPlaquetteInvariance) {
    for (auto [n, p] : {std::pair<std::size_t, int>{2, 1}, {3, 2}, {4, 3}, {4, 0}}) {
        auto w = standard_cyclic_cocycle(n, p);
        for (auto geom : {torus(2, 2), torus(4, 4)}) {
            EXPECT_TRUE(verify_representation(w, geom).pass) << n << " " << p;
            EXPECT_TRUE(verify_plaquette_invariance(w, geom).pass) << n << " " << p;
        }
    }
}

TEST(Patch, CorruptedCocycleBreaksRepresentation) {
    auto w = standard_cyclic_cocycle(2, 1);
    w.set({1, 1, 1}, frac(1, 4));
    auto rep = verify_representation(w, torus(2, 2));
    EXPECT_FALSE(rep.pass);
    EXPECT_FALSE(rep.violations.empty());
}

TEST(Patch, GlobalSymmetryFixesState) {
    for (std::size_t n : {2u, 3u}) {
        auto w = standard_cyclic_cocycle(n, 1);
        EXPECT_TRUE(verify_global_invariance(w, torus(2, 2)).pass);
        EXPECT_TRUE(verify_global_invariance(w, torus(3, 3)).pass);
    }
}

TEST(Patch, BoundaryCompensatorExamples) {
    auto geom = torus(4, 4);
    const auto link = geom.link();
    const std::size_t row = geom.primary_boundary_row();
    auto triv = Cochain3(make_cyclic(2));
    auto k = boundary_compensator_2d(triv, geom, 1, row, link, false);
    auto [a0, b0] = link_legs(geom, row, link, 0);
    BasisConfig c(geom.leg_count(), 0);
    c[a0] = 1;
    auto [out, ph] = k.apply(c);
    EXPECT_EQ(out[a0], 1);
    EXPECT_EQ(out[b0], 0);
    EXPECT_TRUE(ph.is_one());
    c[b0] = 1;
    out = k.apply(c).first;
    EXPECT_EQ(out[a0], 0);
    EXPECT_EQ(out[b0], 0);

    // Z2 level 1, links (l_x, l_{x+1}) = (1, 1): the K'' phase is w(0, 1, 1) = 1.
    auto w = standard_cyclic_cocycle(2, 1);
    auto only_two = boundary_compensator_2d(w, geom, 1, row, link, false, 0, 2);
    BasisConfig d(geom.leg_count(), 0);
    for (std::ptrdiff_t x : {0, 1}) {
        auto [p, q] = link_legs(geom, row, link, x);
        d[p] = d[q] = 1;
    }
    EXPECT_TRUE(only_two.apply(d).second.is_one());
}

TEST(Patch, LightConeAgreesWithSparse) {
    for (auto [n, geom] : {std::pair<std::size_t, PatchGeometry>{2, torus(4, 4)}, {3, torus(3, 3)}}) {
        auto w = standard_cyclic_cocycle(n, 1);
        auto psi = build_patch_state(w.group_ref(), geom);
        bool some_fail = false, some_pass = false;
        for (const auto &cand : link_assignment_candidates()) {
            PatchGeometry g = geom;
            g.set_link(cand);
            for (Element e = 1; e < n; ++e) {
                auto u = compensated_symmetry(w, g, e);
                auto lc = light_cone_expectation(u, g);
                auto sp = sparse_expectation(psi, u);
                EXPECT_EQ(lc.unit(), sp.unit()) << cand.name();
                if (sp.unit()) {
                    EXPECT_EQ(lc.phase, sp.phase());
                    EXPECT_NEAR(sp.magnitude(), 1.0, 1e-12);
                    some_pass = true;
                } else {
                    EXPECT_LT(sp.magnitude(), 1.0 - 1e-9) << cand.name();
                    some_fail = true;
                }
            }
        }
        EXPECT_TRUE(some_pass);
        EXPECT_TRUE(some_fail);
    }
}

TEST(Patch, SerialKernelsMatchParallel) {
    auto w = standard_cyclic_cocycle(3, 1);
    auto geom = torus(3, 3, "literal/+x");
    auto psi = build_patch_state(w.group_ref(), geom);
    for (Element g = 1; g < 3; ++g) {
        auto u = compensated_symmetry(w, geom, g);
        auto a = sparse_expectation(psi, u), b = sparse_expectation_serial(psi, u);
        EXPECT_EQ(a.histogram, b.histogram);
        EXPECT_EQ(a.total, b.total);
        auto x = light_cone_expectation(u, geom), y = light_cone_expectation_serial(u, geom);
        EXPECT_EQ(x.unit(), y.unit());
        EXPECT_EQ(x.phase, y.phase);
        EXPECT_EQ(x.damaged_plaquettes, y.damaged_plaquettes);
        EXPECT_EQ(x.configs_checked, y.configs_checked);
    }
}

TEST(Patch, CompensationSelection) {
    auto z2 = standard_cyclic_cocycle(2, 1);
    auto sel = select_link_assignment(z2, torus(6, 4));
    ASSERT_TRUE(sel.selected);
    EXPECT_EQ(sel.selected->name(), "mirrored/+x");
    EXPECT_EQ(sel.candidates.size(), link_assignment_candidates().size());

    auto z3 = standard_cyclic_cocycle(3, 1);
    auto sel3 = select_link_assignment(z3, torus(6, 4));
    ASSERT_TRUE(sel3.selected);
    EXPECT_EQ(sel3.selected->name(), "mirrored/-x");

    auto wrong = verify_compensation(z2, torus(6, 4, "literal/+x"));
    EXPECT_FALSE(wrong.pass);
    bool damaged = false;
    for (const auto &lc : wrong.per_element)
        damaged = damaged || !lc.damaged_plaquettes.empty();
    EXPECT_TRUE(damaged);

    auto triv = Cochain3(make_cyclic(3));
    EXPECT_TRUE(verify_compensation(triv, torus(6, 4)).pass);
}

TEST(Patch, ArcCrossCheck) {
    auto triv = Cochain3(make_cyclic(2));
    auto t = arc_index_crosscheck(triv, torus(6, 4, "mirrored/+x"));
    EXPECT_EQ(t.table, triv);

    auto z2 = standard_cyclic_cocycle(2, 1);
    auto a2 = arc_index_crosscheck(z2, torus(6, 4, "mirrored/+x"));
    EXPECT_TRUE(a2.all_unit);
    EXPECT_EQ(a2.table(1, 1, 1), frac(1, 2));
    EXPECT_EQ(a2.table, index_table(z2, RegisterChain(z2.group_ref(), 6)).extracted);

    auto z3 = standard_cyclic_cocycle(3, 1);
    auto a3 = arc_index_crosscheck(z3, torus(6, 4));
    EXPECT_TRUE(a3.all_unit);
    EXPECT_EQ(a3.table, index_table(z3, RegisterChain(z3.group_ref(), 6)).extracted);
}

TEST(Patch, GlobalActionOnCompensators) {
    auto z3 = standard_cyclic_cocycle(3, 1);
    auto lines = global_action_on_compensators(z3, torus(6, 4));
    EXPECT_FALSE(lines.empty());
}
