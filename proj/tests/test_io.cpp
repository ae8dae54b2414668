#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "spt/io.hpp"

using namespace spt;

namespace {

std::string temp_file(const std::string &name, const std::string &content) {
    auto p = std::filesystem::temp_directory_path() / ("spt_io_" + name);
    std::ofstream(p) << content;
    return p.string();
}

ErrorKind kind_of(auto &&fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::internal_inconsistency;
}

} // namespace

TEST(Io, GroupRoundTrip) {
    auto g = parse_group_shorthand("z2*z3");
    auto back = group_from_json(group_to_json(*g));
    EXPECT_TRUE(back->same_table(*g));
    EXPECT_EQ(group_reference(*g), json("z2*z3"));

    auto relabeled = std::make_shared<const FiniteGroup>(FiniteGroup::from_table({{0, 1}, {1, 0}}, "mine"));
    EXPECT_TRUE(group_reference(*relabeled).is_object());
}

TEST(Io, GroupErrors) {
    EXPECT_EQ(kind_of([] { group_from_json(json{{"order", 2}, {"table", {{0, 1}, {1, 1}}}}); }),
              ErrorKind::malformed_table);
    EXPECT_EQ(kind_of([] { group_from_json(json{{"order", 3}, {"table", {{0, 1}, {1, 0}}}}); }),
              ErrorKind::malformed_table);
    EXPECT_EQ(kind_of([] { group_from_json(json{{"table", {{0}}}}); }), ErrorKind::parse_error);
    EXPECT_EQ(kind_of([] { load_group("z13"); }), ErrorKind::invalid_order);
    EXPECT_EQ(load_group("z13", 13)->order(), 13u);
}

TEST(Io, FileLoading) {
    auto path = temp_file("group.json", R"({"order": 3, "table": [[0,1,2],[1,2,0],[2,0,1]]})");
    EXPECT_TRUE(load_group(path)->same_table(*make_cyclic(3)));

    auto bad = temp_file("bad.json", "{\"order\": 3,\n \"table\": [[0,1,2],");
    try {
        read_json_file(bad);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::parse_error);
        EXPECT_NE(std::string(e.what()).find("byte"), std::string::npos);
    }
    EXPECT_EQ(kind_of([] { read_json_file("/nonexistent/spt.json"); }), ErrorKind::parse_error);
}

TEST(Io, CocycleRoundTrip) {
    auto w = standard_cyclic_cocycle(4, 3);
    auto j = cochain_to_json(w);
    EXPECT_EQ(j["group"], "z4");
    EXPECT_EQ(j["denominator"], 4);
    EXPECT_EQ(j["exponents"].size(), 64u);
    EXPECT_EQ(cochain3_from_json(j), w);

    Cochain2 mu(make_cyclic(3));
    mu.set({1, 2}, Phase::from_fraction(1, 6));
    EXPECT_EQ(cochain2_from_json(cochain_to_json(mu)), mu);

    json short_table = j;
    short_table["exponents"].erase(short_table["exponents"].begin());
    EXPECT_EQ(kind_of([&] { cochain3_from_json(short_table); }), ErrorKind::malformed_table);
    json zero = j;
    zero["denominator"] = 0;
    EXPECT_EQ(kind_of([&] { cochain3_from_json(zero); }), ErrorKind::unsupported_denominator);
}

TEST(Io, ReportShape) {
    auto w = standard_cyclic_cocycle(2, 1);
    auto rep = index_table(w, RegisterChain(w.group_ref(), 4));
    auto j = report_to_json(rep);
    for (const char *k : {"group", "cocycle", "extracted_exponents", "denominator", "cocycle_check", "class",
                          "diagnostics", "timings_ms"})
        EXPECT_TRUE(j.contains(k)) << k;
    EXPECT_EQ(j["class"]["cyclic_level"], 1);
    EXPECT_EQ(j["class"]["matches_input"], true);
    EXPECT_EQ(j["extracted_exponents"][7], 1);
    EXPECT_EQ(j["denominator"], 2);

    auto op = op_to_json(MonomialOp::shift(RegisterSpace(make_cyclic(2), 2), 1, 1));
    EXPECT_EQ(op["factors"][0]["kind"], "shift");
}

TEST(Io, PatchConfig) {
    auto cfg = patch_config_from_json(
        json{{"group", "z3"}, {"cocycle", 2}, {"W", 4}, {"H", 6}, {"bc", "torus"}, {"link_assignment", "auto"}});
    EXPECT_EQ(cfg.group->order(), 3u);
    ASSERT_TRUE(cfg.cocycle);
    EXPECT_EQ(*cfg.cocycle, standard_cyclic_cocycle(3, 2));
    EXPECT_EQ(cfg.width, 4u);
    EXPECT_EQ(cfg.height, 6u);

    auto named = patch_config_from_json(json{{"group", "z2"}, {"link_assignment", "mirrored/+x"}});
    EXPECT_EQ(named.link_assignment, "mirrored/+x");
    EXPECT_FALSE(named.cocycle);
    EXPECT_THROW(patch_config_from_json(json{{"group", "z2"}, {"link_assignment", "sideways"}}), Error);
    EXPECT_THROW(patch_config_from_json(json{{"group", "z2"}, {"bc", "sphere"}}), Error);
    EXPECT_EQ(kind_of([] {
                  patch_config_from_json(json{{"group", "z2"}, {"cocycle", cochain_to_json(standard_cyclic_cocycle(3, 1))}});
              }),
              ErrorKind::group_mismatch);
}
