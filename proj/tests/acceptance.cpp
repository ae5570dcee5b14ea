// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mendel/mendel.hpp"

using namespace mendel;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream notes;

    void expect(bool cond, const std::string& what)
    {
        if (!cond) {
            pass = false;
            notes << "\n    failed: " << what;
        }
    }
};

using Clock = std::chrono::steady_clock;

bool run_criterion(int id, const std::string& title, double limit_s,
                   const std::function<void(Outcome&)>& body)
{
    Outcome out;
    const auto start = Clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (limit_s > 0)
        out.expect(secs < limit_s, "runtime " + std::to_string(secs) + " s over limit " +
                                       std::to_string(limit_s) + " s");
    std::cout << (out.pass ? "PASS" : "FAIL") << " AC" << id << " " << title << " ("
              << std::to_string(secs).substr(0, 6) << " s)" << out.notes.str() << std::endl;
    return out.pass;
}

std::vector<u64> rotate_to_min(std::vector<u64> c)
{
    std::rotate(c.begin(), std::min_element(c.begin(), c.end()), c.end());
    return c;
}

std::string describe_failure(const VerificationReport& r)
{
    std::string s;
    for (const auto& c : r.checks)
        if (!c.pass)
            s += c.name + ": " + (c.counterexample ? c.counterexample->detail : "") + "; ";
    return s;
}

void ac1(Outcome& o)
{
    const auto c = construct_cyclic(53, 4, {1});
    o.expect(c.multiplier == 23, "m=(1) gives a=23, got " + std::to_string(c.multiplier));

    const std::vector<std::vector<u64>> listed{
        {1, 23, 52, 30},  {2, 46, 51, 7},   {3, 16, 50, 37},  {4, 39, 49, 14},  {24, 22, 29, 31},
        {25, 45, 28, 8},  {26, 15, 27, 38}, {47, 21, 6, 32},  {48, 44, 5, 9},   {17, 20, 36, 33},
        {18, 43, 35, 10}, {40, 19, 13, 34}, {41, 42, 12, 11}};
    const auto& base = c.construction.design.base_blocks;
    o.expect(base.size() == 13, "13 orbits");
    o.expect(base.size() >= 2 && base[0].points == listed[0] && base[1].points == listed[1],
             "first two orbits in listed order");
    std::set<std::vector<u64>> ours, theirs;
    for (const auto& b : base)
        ours.insert(rotate_to_min(b.points));
    for (const auto& l : listed)
        theirs.insert(rotate_to_min(l));
    o.expect(ours == theirs, "orbits equal the listed cycles");

    const auto cls = c.construction.design.resolution_class(1);
    const auto want = canonical_rotation(Block{{2, 24, 0, 31}});
    o.expect(std::find(cls.begin(), cls.end(), want) != cls.end(), "class 1 contains (2,24,0,31)");
}

void ac2(Outcome& o)
{
    const auto c = construct_cyclic_with_multiplier(53, 4, 23);
    const auto& d = c.design;
    o.expect(d.blocks.size() == 689, "689 blocks");
    const auto md = verify_md(d);
    o.expect(md.passed(), "2756 ordered pairs 1-apart once: " + describe_failure(md));
    o.expect(d.class_count() == 53 && d.blocks_per_class() == 13, "53 classes of 13");
    const auto res = verify_resolvable(d);
    o.expect(res.passed(), "resolvable: " + describe_failure(res));
    const auto aut = verify_automorphism_group(d, Automorphism::cyclic(d.group, 23));
    o.expect(aut.passed(), "translations and x -> 23x: " + describe_failure(aut));
    o.expect(verify_l_fold_perfect(d, 1).passed(), "1-fold perfect");
    const auto two = verify_l_fold_perfect(d, 2);
    if (!two.passed()) {
        o.notes << "\n    expected failure: " << describe_failure(two);
        return;
    }
    // independent count of 2-apart pairs for the record
    std::vector<unsigned> seen(d.v() * d.v(), 0);
    for (const auto& b : d.blocks)
        for (u64 i = 0; i < b.size(); ++i)
            ++seen[b[i] * d.v() + b[(i + 2) % b.size()]];
    u64 once = 0;
    for (u64 x = 0; x < d.v(); ++x)
        for (u64 y = 0; y < d.v(); ++y)
            once += x != y && seen[x * d.v() + y] == 1;
    o.expect(false, "verify_l_fold_perfect(2) expected to fail, but it passes; direct count: " +
                        std::to_string(once) + " of 2756 ordered pairs are 2-apart exactly once");
}

void ac3(Outcome& o)
{
    std::vector<std::pair<std::string, std::function<Construction()>>> cases{
        {"agl(13,3)", [] { return construct_agl(13, 3); }},
        {"agl(11,5)", [] { return construct_agl(11, 5); }},
        {"agl(8,7)", [] { return construct_agl(8, 7); }},
        {"ferrero(91,3)", [] { return construct_ferrero(91, 3); }},
        {"ferrero(175,3)", [] { return construct_ferrero(175, 3); }},
    };
    for (const auto& [name, make] : cases) {
        const auto c = make();
        const auto r = verify_l_fold_perfect(c.design, c.design.k - 1);
        o.expect(r.passed(), name + " perfect: " + describe_failure(r));
    }
}

void ac4(Outcome& o)
{
    const std::vector<std::tuple<u64, u64, std::size_t>> cases{
        {53, 4, 2}, {65, 4, 4}, {7, 6, 2}, {91, 6, 4}};
    for (const auto& [v, k, count] : cases) {
        const auto values = enumerate_cyclic_multipliers(v, k);
        const std::string tag = "(" + std::to_string(v) + "," + std::to_string(k) + ")";
        o.expect(values.size() == count, tag + " count " + std::to_string(values.size()));
        for (u64 a : values)
            for (u64 j = 1; j < k; ++j)
                o.expect(std::gcd((mod_pow(a, j, v) + v - 1) % v, v) == 1,
                         tag + " gcd(a^j - 1, v) for a=" + std::to_string(a));
        std::vector<u64> roots;
        for (const auto& c : (k == 4 ? construct_k4(v) : construct_k6(v)))
            roots.push_back(c.multiplier);
        o.expect(roots == values, tag + " congruence roots equal the enumeration");
    }
}

void ac5(Outcome& o)
{
    std::vector<std::pair<std::string, Construction>> matrix;
    matrix.emplace_back("agl(13,3)", construct_agl(13, 3));
    matrix.emplace_back("agl(11,5)", construct_agl(11, 5));
    matrix.emplace_back("agl(8,7)", construct_agl(8, 7));
    matrix.emplace_back("ferrero(91,3)", construct_ferrero(91, 3));
    matrix.emplace_back("ferrero(175,3)", construct_ferrero(175, 3));
    for (const auto& [v, k] : std::vector<std::pair<u64, u64>>{{53, 4}, {65, 4}, {7, 6}, {91, 6}})
        for (u64 a : enumerate_cyclic_multipliers(v, k))
            matrix.emplace_back("cyclic(" + std::to_string(v) + "," + std::to_string(a) + ")",
                                construct_cyclic_with_multiplier(v, k, a));

    for (const auto& [name, c] : matrix) {
        const auto& g = c.design.group;
        const u64 k = c.k();
        const auto& theta = c.theta.perm();
        auto power = theta;
        for (u64 t = 1; t <= smallest_prime_factor(k) - 1; ++t) {
            o.expect(is_orthomorphism(g, power).ok, name + " theta^" + std::to_string(t));
            power = compose(theta, power);
        }
        const u64 level = perfectness_level(g, theta);
        o.expect((level == k - 1) == is_prime(k),
                 name + " level " + std::to_string(level) + " vs k " + std::to_string(k));
        o.expect(is_complete_mapping(g, derived_complete_mapping(g, theta)).ok,
                 name + " derived complete mapping");
    }

    const auto m265 = enumerate_cyclic_multipliers(265, 4);
    o.expect(m265.size() == 4, "(265,4) gives 4 multipliers");
    for (u64 a : m265) {
        const auto t = from_automorphism(Automorphism::cyclic(GroupSpec::cyclic(265), a), 4);
        o.expect(regularity(t.perm()) == std::optional<u64>{4}, "(265,4) orthomorphism is 4-regular");
    }
}

struct Candidate {
    std::string name;
    std::function<Construction()> make;
};

std::vector<Candidate> constructors_for(u64 v, u64 k, std::mt19937_64& rng)
{
    const auto f = factorize(v);
    const ConstructOptions quiet{false, default_max_v, {}};
    std::vector<Candidate> out;
    const std::string tag = "(" + std::to_string(v) + "," + std::to_string(k) + ")";
    if (f.is_prime_power() && (v - 1) % k == 0)
        out.push_back({"agl" + tag, [=] { return construct_agl(v, k, quiet); }});
    bool all_q = true, all_p = true;
    for (const auto& pp : f.factors) {
        all_q = all_q && (pp.value() - 1) % k == 0;
        all_p = all_p && (pp.p - 1) % k == 0;
    }
    if (is_prime(k) && all_q) {
        const u64 power = 1 + rng() % (k - 1);
        out.push_back({"ferrero" + tag + " power " + std::to_string(power),
                       [=] { return construct_ferrero(v, k, power, quiet); }});
    }
    if (v % 2 == 1 && k % 2 == 0 && all_p) {
        std::vector<u64> m;
        std::string ms;
        for (std::size_t i = 0; i < f.size(); ++i) {
            u64 mi;
            do
                mi = 1 + rng() % k;
            while (std::gcd(mi, k) != 1);
            m.push_back(mi);
            ms += (i ? "," : "") + std::to_string(mi);
        }
        out.push_back({"cyclic" + tag + " m=" + ms,
                       [=] { return construct_cyclic(v, k, m, quiet).construction; }});
        if (k == 4 || k == 6) {
            const auto all = k == 4 ? construct_k4(v, quiet) : construct_k6(v, quiet);
            const auto pick = all[rng() % all.size()];
            out.push_back({(k == 4 ? "k4" : "k6") + tag + " a=" + std::to_string(pick.multiplier),
                           [=] { return pick.construction; }});
        }
    }
    return out;
}

void ac6(Outcome& o)
{
    std::mt19937_64 rng(20240607);
    std::set<std::pair<u64, u64>> seen;
    std::size_t designs = 0;
    while (seen.size() < 50) {
        const u64 v = 3 + rng() % 1998;
        const auto f = factorize(v);
        // k must divide every q_i - 1 (agl, ferrero) or every p_i - 1 (cyclic)
        u64 g = 0;
        for (const auto& pp : f.factors)
            g = std::gcd(g, pp.p - 1);
        std::vector<u64> ks;
        for (u64 k = 2; k <= g; ++k)
            if (g % k == 0)
                ks.push_back(k);
        if (ks.empty())
            continue;
        const u64 k = ks[rng() % ks.size()];
        auto cands = constructors_for(v, k, rng);
        if (cands.empty() || !seen.insert({v, k}).second)
            continue;
        for (const auto& cand : cands) {
            const auto c = cand.make();
            ++designs;
            auto r = verify_md(c.design);
            r.append(verify_resolvable(c.design));
            o.expect(r.passed(), cand.name + ": " + describe_failure(r));
        }
    }
    o.notes << "\n    " << seen.size() << " (v,k) pairs, " << designs << " designs";
}

void ac7(Outcome& o)
{
    std::vector<std::pair<std::string, Construction>> cases;
    cases.emplace_back("cyclic(53,23)", construct_cyclic_with_multiplier(53, 4, 23));
    cases.emplace_back("ferrero(175,3)", construct_ferrero(175, 3));
    cases.emplace_back("agl(8,7)", construct_agl(8, 7));
    cases.emplace_back("k6(91)", construct_k6(91)[0].construction);
    for (const auto& [name, c] : cases) {
        for (bool full : {false, true}) {
            const std::string tag = name + (full ? " full" : " compact");
            const auto s1 = dump_design(c.design, full);
            const auto d1 = parse_design(s1);
            const auto s2 = dump_design(d1, full);
            const auto d2 = parse_design(s2);
            o.expect(s1 == s2, tag + " byte-stable");
            o.expect(dump_design(d2, full) == s1, tag + " idempotent");
            o.expect(d1.blocks == c.design.blocks && d2.blocks == c.design.blocks,
                     tag + " same blocks");
            auto r = verify_md(d2);
            r.append(verify_l_fold_perfect(d2, guaranteed_perfectness(d2.k)));
            r.append(verify_resolvable(d2));
            r.append(verify_automorphism_group(d2, provenance_automorphism(d2)));
            o.expect(r.passed(), tag + " verifies: " + describe_failure(r));
        }
    }
}

} // namespace

int main()
{
    bool ok = true;
    ok &= run_criterion(1, "worked example (53,4), m=(1)", 1.0, ac1);
    ok &= run_criterion(2, "(53,4,1)-RMD verification", 5.0, ac2);
    ok &= run_criterion(3, "perfect designs for prime k", 30.0, ac3);
    ok &= run_criterion(4, "multiplier counting", 0, ac4);
    ok &= run_criterion(5, "orthomorphism suite", 0, ac5);
    ok &= run_criterion(6, "randomized property suite", 60.0, ac6);
    ok &= run_criterion(7, "JSON round trip", 0, ac7);
    std::cout << (ok ? "all criteria passed" : "some criteria failed") << std::endl;
    return ok ? 0 : 1;
}
