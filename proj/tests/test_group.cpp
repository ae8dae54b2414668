#include <gtest/gtest.h>

#include "spt/group.hpp"

using namespace spt;

TEST(Group, CyclicTables) {
    auto z2 = make_cyclic(2);
    EXPECT_EQ(z2->table(), (std::vector<std::vector<int>>{{0, 1}, {1, 0}}));
    EXPECT_EQ(z2->inv(1), 1);
    auto z1 = make_cyclic(1);
    EXPECT_EQ(z1->order(), 1u);
    EXPECT_EQ(z1->mul(0, 0), 0);
    EXPECT_EQ(make_cyclic(4)->mul(3, 2), 1);
    EXPECT_EQ(make_cyclic(5)->inv(2), 3);
}

TEST(Group, ZeroOrderRejected) {
    try {
        make_cyclic(0);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::invalid_order);
    }
}

TEST(Group, DirectProducts) {
    auto v = direct_product(*make_cyclic(2), *make_cyclic(2));
    EXPECT_EQ(v->order(), 4u);
    EXPECT_EQ(v->mul(3, 3), 0);
    EXPECT_EQ(v->mul(1, 2), 3);

    auto z3 = make_cyclic(3);
    EXPECT_TRUE(direct_product(*make_cyclic(1), *z3)->same_table(*z3));

    auto z6 = direct_product(*make_cyclic(2), *z3);
    const Element a = 1 * 3 + 1, b = 1 * 3 + 2;
    EXPECT_EQ(z6->mul(a, b), 0);
    EXPECT_EQ(z6->element_order(a), 6u);
}

TEST(Group, Validation) {
    EXPECT_TRUE(validate(*make_cyclic(5)).ok());

    auto broken = FiniteGroup::from_table({{0, 1}, {1, 1}});
    auto rep = validate(broken);
    ASSERT_FALSE(rep.ok());
    bool at_one = false;
    for (const auto &v : rep.violations)
        at_one = at_one || (!v.witness.empty() && v.witness[0] == 1 && v.law != GroupLaw::associativity);
    EXPECT_TRUE(at_one);

    auto relabeled = FiniteGroup::from_table({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
    EXPECT_TRUE(validate(relabeled).ok());
    auto z3_alt = FiniteGroup::from_table({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
    EXPECT_EQ(z3_alt.inv(1), 2);
}

TEST(Group, NonAssociativeTableReported) {
    // A Latin square with identity 0 that is not a group.
    auto t = FiniteGroup::from_table({{0, 1, 2, 3, 4},
                                      {1, 0, 3, 4, 2},
                                      {2, 4, 0, 1, 3},
                                      {3, 2, 4, 0, 1},
                                      {4, 3, 1, 2, 0}});
    auto rep = validate(t);
    ASSERT_FALSE(rep.ok());
    EXPECT_EQ(rep.violations.front().law, GroupLaw::associativity);
    EXPECT_EQ(rep.violations.front().witness.size(), 3u);
}

TEST(Group, MalformedShape) {
    EXPECT_THROW(FiniteGroup::from_table({{0, 1}, {1}}), Error);
    EXPECT_THROW(FiniteGroup::from_table({{0, 2}, {1, 0}}), Error);
}

TEST(Group, Shorthand) {
    EXPECT_EQ(shorthand_factors("z2*z3"), (std::vector<std::size_t>{2, 3}));
    EXPECT_TRUE(parse_group_shorthand("Z4")->same_table(*make_cyclic(4)));
    EXPECT_EQ(parse_group_shorthand("z2*z2")->order(), 4u);
    EXPECT_THROW(parse_group_shorthand("q8"), Error);
    EXPECT_THROW(parse_group_shorthand("z"), Error);
    EXPECT_THROW(parse_group_shorthand("z2*"), Error);
}

TEST(Group, CyclicGenerator) {
    EXPECT_EQ(find_cyclic_generator(*make_cyclic(4)), 1);
    EXPECT_GE(find_cyclic_generator(*parse_group_shorthand("z2*z3")), 1);
    EXPECT_LT(find_cyclic_generator(*parse_group_shorthand("z2*z2")), 0);
    EXPECT_EQ(find_cyclic_generator(*make_cyclic(1)), 0);
}
