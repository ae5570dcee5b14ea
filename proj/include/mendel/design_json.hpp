#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "mendel/design.hpp"
#include "mendel/error.hpp"
#include "mendel/finite_field.hpp"
#include "mendel/group.hpp"

/*
    Design files. Keys are emitted sorted (nlohmann::json uses std::map) and
    there are no floating point values, so dumping a parsed file reproduces
    it byte for byte.

    {
      "base_blocks": [[1,23,52,30], ...],
      "blocks": [[...], ...],          // only when classes_inline is true
      "classes_inline": false,
      "group": {"kind": "cyclic", "modulus": 53}
             | {"kind": "direct_sum", "fields": [{"e","modulus_coeffs","p"}, ...]},
      "k": 4, "lambda": 1,
      "points_encoding": "residue" | "mixed_radix",
      "provenance": {"method": "cyclic", "multiplier": 23} | {"method": "ferrero", "powers": [...]},
      "v": 53
    }

    With classes_inline the full block list is stored class by class: class g
    is the g-th run of (v-1)/k blocks.
 */

namespace mendel {

using json = nlohmann::json;

inline json group_to_json(const GroupSpec& group)
{
    if (group.is_cyclic())
        return {{"kind", "cyclic"}, {"modulus", group.order()}};
    json fields = json::array();
    for (const auto& f : group.fields())
        fields.push_back({{"p", f.p()}, {"e", f.e()}, {"modulus_coeffs", f.modulus()}});
    return {{"kind", "direct_sum"}, {"fields", fields}};
}

inline GroupSpec group_from_json(const json& j)
{
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "cyclic")
        return GroupSpec::cyclic(j.at("modulus").get<u64>());
    require(kind == "direct_sum", "unknown group kind '" + kind + "'");
    std::vector<FieldSpec> fields;
    for (const auto& jf : j.at("fields")) {
        auto f = field_make(jf.at("p").get<u64>(), jf.at("e").get<unsigned>());
        require(jf.at("modulus_coeffs").get<std::vector<u64>>() == f.modulus(),
                "modulus_coeffs for " + f.name() + " is not the canonical modulus");
        fields.push_back(std::move(f));
    }
    return GroupSpec::direct_sum(std::move(fields));
}

namespace detail {

inline json blocks_to_json(const std::vector<Block>& blocks)
{
    json arr = json::array();
    for (const auto& b : blocks)
        arr.push_back(b.points);
    return arr;
}

inline std::vector<Block> blocks_from_json(const json& arr)
{
    std::vector<Block> blocks;
    blocks.reserve(arr.size());
    for (const auto& jb : arr)
        blocks.push_back(Block{jb.get<std::vector<u64>>()});
    return blocks;
}

} // namespace detail

inline json design_to_json(const Design& d, bool full = false)
{
    json prov = {{"method", d.provenance.method}};
    if (d.provenance.multiplier)
        prov["multiplier"] = *d.provenance.multiplier;
    else
        prov["powers"] = d.provenance.powers;

    json j = {
        {"v", d.v()},
        {"k", d.k},
        {"lambda", d.lambda},
        {"group", group_to_json(d.group)},
        {"points_encoding", d.group.is_cyclic() ? "residue" : "mixed_radix"},
        {"provenance", prov},
        {"base_blocks", detail::blocks_to_json(d.base_blocks)},
        {"classes_inline", full},
    };
    if (full)
        j["blocks"] = detail::blocks_to_json(d.blocks);
    return j;
}

/// Rebuilds a design. A stored block list is taken as is (so a tampered file
/// fails verification); otherwise the base blocks are developed.
inline Design design_from_json(const json& j)
{
    const auto group = group_from_json(j.at("group"));
    require(j.at("v").get<u64>() == group.order(), "v does not match the group order");
    require(j.value("lambda", u64{1}) == 1, "only lambda = 1 designs are supported");
    const u64 k = j.at("k").get<u64>();

    auto base = detail::blocks_from_json(j.at("base_blocks"));
    Design d;
    if (j.value("classes_inline", false)) {
        require(j.contains("blocks"), "classes_inline is set but there is no block list");
        d.group = group;
        d.k = k;
        d.base_blocks = std::move(base);
        for (auto& b : d.base_blocks)
            b = canonical_rotation(std::move(b));
        d.blocks = detail::blocks_from_json(j.at("blocks"));
        for (auto& b : d.blocks)
            b = canonical_rotation(std::move(b));
    } else {
        d = develop(group, std::move(base));
        require(d.k == k, "k does not match the base block size");
    }

    if (j.contains("provenance")) {
        const auto& p = j.at("provenance");
        d.provenance.method = p.value("method", std::string{});
        if (p.contains("multiplier"))
            d.provenance.multiplier = p.at("multiplier").get<u64>();
        if (p.contains("powers"))
            d.provenance.powers = p.at("powers").get<std::vector<u64>>();
    }
    return d;
}

/// The automorphism recorded in the provenance: x -> a x on Z_v, or
/// componentwise multiplication by omega_i^powers[i] on a direct sum.
inline std::optional<Automorphism> provenance_automorphism(const Design& d)
{
    if (d.group.is_cyclic()) {
        if (!d.provenance.multiplier)
            return std::nullopt;
        return Automorphism::cyclic(d.group, *d.provenance.multiplier);
    }
    if (d.provenance.powers.size() != d.group.fields().size())
        return std::nullopt;
    std::vector<FieldElement> mult;
    for (std::size_t i = 0; i < d.group.fields().size(); ++i) {
        const auto& f = d.group.fields()[i];
        mult.push_back(f.pow(primitive_element(f), d.provenance.powers[i]));
    }
    return Automorphism::componentwise(d.group, std::move(mult));
}

inline json report_to_json(const VerificationReport& report)
{
    json checks = json::array();
    for (const auto& c : report.checks) {
        json jc = {{"name", c.name}, {"pass", c.pass}};
        if (c.counterexample) {
            const auto& ce = *c.counterexample;
            json jce = {{"detail", ce.detail}};
            if (ce.x)
                jce["x"] = *ce.x;
            if (ce.y)
                jce["y"] = *ce.y;
            if (ce.t)
                jce["t"] = *ce.t;
            if (ce.count)
                jce["count"] = *ce.count;
            jc["counterexample"] = jce;
        }
        checks.push_back(jc);
    }
    return {{"checks", checks}};
}

/// Canonical text form of a design file.
inline std::string dump_design(const Design& d, bool full = false)
{
    return design_to_json(d, full).dump() + "\n";
}

inline Design parse_design(const std::string& text)
{
    try {
        return design_from_json(json::parse(text));
    } catch (const json::exception& e) {
        throw invalid_parameter(std::string("malformed design file: ") + e.what());
    }
}

} // namespace mendel
