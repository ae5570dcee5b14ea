#include <gtest/gtest.h>

#include "mendel/constructions.hpp"
#include "mendel/design_json.hpp"

using namespace mendel;

TEST(DesignJson, CompactRoundTripIsByteStable)
{
    const auto c = construct_cyclic_with_multiplier(53, 4, 23);
    const auto text = dump_design(c.design);
    const auto back = parse_design(text);
    EXPECT_EQ(back.blocks, c.design.blocks);
    EXPECT_EQ(back.base_blocks, c.design.base_blocks);
    EXPECT_EQ(dump_design(back), text);
    EXPECT_EQ(*back.provenance.multiplier, 23u);

    const auto j = json::parse(text);
    EXPECT_EQ(j.at("v"), 53);
    EXPECT_EQ(j.at("k"), 4);
    EXPECT_EQ(j.at("lambda"), 1);
    EXPECT_EQ(j.at("points_encoding"), "residue");
    EXPECT_EQ(j.at("classes_inline"), false);
    EXPECT_FALSE(j.contains("blocks"));
    EXPECT_EQ(j.at("base_blocks").size(), 13u);
}

TEST(DesignJson, FullRoundTripKeepsClassOrder)
{
    const auto c = construct_agl(13, 3);
    const auto text = dump_design(c.design, true);
    const auto j = json::parse(text);
    EXPECT_EQ(j.at("blocks").size(), 52u);
    const auto back = parse_design(text);
    EXPECT_EQ(back.blocks, c.design.blocks);
    EXPECT_EQ(dump_design(back, true), text);
    EXPECT_TRUE(verify_resolvable(back).passed());
}

TEST(DesignJson, DirectSumProvenanceRebuildsAutomorphism)
{
    const auto c = construct_ferrero(175, 3);
    const auto text = dump_design(c.design);
    const auto j = json::parse(text);
    EXPECT_EQ(j.at("points_encoding"), "mixed_radix");
    EXPECT_EQ(j.at("group").at("kind"), "direct_sum");
    EXPECT_EQ(j.at("group").at("fields")[0].at("modulus_coeffs"), json({2, 0, 1}));

    const auto back = parse_design(text);
    EXPECT_EQ(back.group, c.design.group);
    const auto phi = provenance_automorphism(back);
    ASSERT_TRUE(phi);
    EXPECT_EQ(*phi, c.phi);
    EXPECT_TRUE(verify_automorphism_group(back, phi).passed());
    EXPECT_EQ(dump_design(back), text);
}

TEST(DesignJson, RejectsInconsistentFiles)
{
    auto j = design_to_json(construct_ferrero(175, 3).design);
    auto bad_modulus = j;
    bad_modulus["group"]["fields"][0]["modulus_coeffs"] = json({3, 0, 1});
    EXPECT_THROW(design_from_json(bad_modulus), invalid_parameter);

    auto bad_v = j;
    bad_v["v"] = 176;
    EXPECT_THROW(design_from_json(bad_v), invalid_parameter);

    auto bad_lambda = j;
    bad_lambda["lambda"] = 2;
    EXPECT_THROW(design_from_json(bad_lambda), invalid_parameter);

    EXPECT_THROW(parse_design("{not json"), invalid_parameter);
    EXPECT_THROW(parse_design("{}"), invalid_parameter);

    auto missing = design_to_json(construct_agl(7, 3).design, true);
    missing.erase("blocks");
    EXPECT_THROW(design_from_json(missing), invalid_parameter);
}

TEST(DesignJson, TamperedBlockListFailsVerification)
{
    auto j = design_to_json(construct_agl(7, 3).design, true);
    j["blocks"][0] = json({1, 4, 2});
    const auto d = design_from_json(j);
    EXPECT_FALSE(verify_md(d).passed());
}

TEST(DesignJson, ReportCarriesCounterexample)
{
    const auto d = develop(GroupSpec::cyclic(13),
                           {Block{{0, 2, 1, 10}}, Block{{0, 7, 8, 3}}, Block{{0, 4, 10, 8}}});
    const auto report = verify_l_fold_perfect(d, 2);
    ASSERT_FALSE(report.passed());
    const auto j = report_to_json(report);
    bool failing = false;
    for (const auto& check : j.at("checks")) {
        if (check.at("pass").get<bool>())
            continue;
        failing = true;
        EXPECT_EQ(check.at("name"), "t_apart_2");
        const auto& ce = check.at("counterexample");
        EXPECT_TRUE(ce.contains("x"));
        EXPECT_TRUE(ce.contains("y"));
        EXPECT_EQ(ce.at("t"), 2);
        EXPECT_NE(ce.at("count"), 1);
    }
    EXPECT_TRUE(failing);
}
