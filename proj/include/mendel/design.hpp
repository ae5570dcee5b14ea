#pragma once

#include <algorithm>
#include <chrono>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "mendel/error.hpp"
#include "mendel/group.hpp"
#include "mendel/orthomorphism.hpp"

namespace mendel {

/// Cyclically ordered k-tuple of points, stored with its smallest point first.
struct Block {
    std::vector<u64> points;

    std::size_t size() const { return points.size(); }
    u64 operator[](std::size_t i) const { return points[i]; }

    auto operator<=>(const Block&) const = default;
};

/// Rotation of b starting at its smallest point. Rotation does not change
/// which pairs are t-apart.
inline Block canonical_rotation(Block b)
{
    auto it = std::min_element(b.points.begin(), b.points.end());
    std::rotate(b.points.begin(), it, b.points.end());
    return b;
}

inline Block translate(const GroupSpec& group, const Block& b, u64 g)
{
    Block r;
    r.points.reserve(b.size());
    for (u64 x : b.points)
        r.points.push_back(group.add(g, x));
    return canonical_rotation(std::move(r));
}

struct Provenance {
    std::string method;
    std::optional<u64> multiplier; // cyclic kernels
    std::vector<u64> powers;       // direct sums: phi_i = omega_i^powers[i]
};

/// A (v, k, 1) Mendelsohn design developed from base blocks. `blocks` is
/// class-major: resolution class g is blocks[g*r, (g+1)*r) with r = (v-1)/k,
/// and holds g + B for every base block B.
struct Design {
    GroupSpec group;
    u64 k = 0;
    u64 lambda = 1;
    std::vector<Block> base_blocks;
    std::vector<Block> blocks;
    Provenance provenance;

    u64 v() const { return group.order(); }
    u64 blocks_per_class() const { return (v() - 1) / k; }
    u64 class_count() const { return blocks.size() / std::max<u64>(blocks_per_class(), 1); }

    std::span<const Block> resolution_class(u64 g) const
    {
        const u64 r = blocks_per_class();
        require((g + 1) * r <= blocks.size(), "resolution class index out of range");
        return std::span<const Block>(blocks).subspan(g * r, r);
    }
};

/// dev(B1): every translate g + B of every base block, grouped by g.
inline Design develop(const GroupSpec& group, std::vector<Block> base_blocks)
{
    require(!base_blocks.empty(), "develop: no base blocks");
    const u64 v = group.order();
    const u64 k = base_blocks.front().size();
    require(k >= 2, "develop: blocks need at least 2 points");
    require((v - 1) % k == 0, "develop: k must divide v - 1");

    for (auto& b : base_blocks) {
        require(b.size() == k, "develop: base blocks must all have k points");
        auto sorted = b.points;
        std::sort(sorted.begin(), sorted.end());
        require(sorted.back() < v, "develop: point out of range");
        require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
                "develop: base block has repeated points");
        b = canonical_rotation(std::move(b));
    }

    Design d;
    d.group = group;
    d.k = k;
    d.blocks.reserve(v * base_blocks.size());
    for (u64 g = 0; g < v; ++g)
        for (const auto& b : base_blocks)
            d.blocks.push_back(translate(group, b, g));
    d.base_blocks = std::move(base_blocks);

    std::vector<const Block*> order;
    order.reserve(d.blocks.size());
    for (const auto& b : d.blocks)
        order.push_back(&b);
    std::sort(order.begin(), order.end(), [](const Block* a, const Block* b) { return *a < *b; });
    for (std::size_t i = 1; i < order.size(); ++i)
        require(*order[i - 1] != *order[i],
                "develop: duplicate developed block (is the action semiregular?)");
    return d;
}

// ---------------------------------------------------------------------------
// Verification

struct Counterexample {
    std::optional<u64> x;
    std::optional<u64> y;
    std::optional<u64> t;
    std::optional<u64> count;
    std::string detail;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    std::optional<Counterexample> counterexample;
    double elapsed_ms = 0;
};

struct VerificationReport {
    std::vector<CheckResult> checks;

    bool passed() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
    }

    const CheckResult* find(const std::string& name) const
    {
        for (const auto& c : checks)
            if (c.name == name)
                return &c;
        return nullptr;
    }

    void append(const VerificationReport& other)
    {
        checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    }
};

struct VerifyOptions {
    unsigned threads = 1;
};

/// The single-pass stamp check needs a v*v matrix; it is used up to this order.
inline constexpr u64 dense_count_limit = 4096;

namespace detail {

class Stopwatch {
public:
    double elapsed_ms() const
    {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline std::optional<Counterexample> malformed_block(const Design& d)
{
    for (std::size_t i = 0; i < d.blocks.size(); ++i) {
        const auto& b = d.blocks[i];
        if (b.size() != d.k)
            return Counterexample{{}, {}, {}, {},
                                  "block " + std::to_string(i) + " has " + std::to_string(b.size()) +
                                      " points, expected " + std::to_string(d.k)};
        for (u64 x : b.points)
            if (x >= d.v())
                return Counterexample{{}, {}, {}, {},
                                      "block " + std::to_string(i) + " has point " +
                                          std::to_string(x) + " outside [0, v)"};
    }
    return std::nullopt;
}

// Runs body(lo, hi) over a split of [0, v) into `threads` ranges.
template <class F>
void for_each_point_range(u64 v, unsigned threads, F&& body)
{
    threads = std::max(1u, threads);
    if (threads == 1 || v < 2 * threads) {
        body(u64{0}, v, 0u);
        return;
    }
    std::vector<std::thread> pool;
    const u64 chunk = (v + threads - 1) / threads;
    for (unsigned i = 0; i < threads; ++i) {
        const u64 lo = std::min<u64>(v, i * chunk), hi = std::min<u64>(v, lo + chunk);
        pool.emplace_back([&body, lo, hi, i] { body(lo, hi, i); });
    }
    for (auto& th : pool)
        th.join();
}

inline Counterexample pair_counterexample(u64 x, u64 y, u64 t, u64 count)
{
    return Counterexample{x, y, t, count,
                          "pair (" + std::to_string(x) + "," + std::to_string(y) + ") is " +
                              std::to_string(t) + "-apart in " + std::to_string(count) + " blocks"};
}

// Full count of t-apart pairs; returns the smallest ordered pair (x, y) whose
// count differs from 1 (or from 0 when x == y). Rows x are counted in bands so
// the counter matrix stays within count_band_cells entries.
inline constexpr u64 count_band_cells = u64{1} << 25;

inline std::optional<Counterexample> smallest_t_apart_violation(const Design& d, u64 t,
                                                                unsigned threads)
{
    const u64 v = d.v(), k = d.k;
    const u64 rows = std::clamp<u64>(count_band_cells / v, 1, v);
    std::vector<std::uint16_t> counts(rows * v);
    for (u64 first = 0; first < v; first += rows) {
        const u64 last = std::min(v, first + rows);
        std::fill(counts.begin(), counts.end(), 0);
        for_each_point_range(last - first, threads, [&](u64 lo, u64 hi, unsigned) {
            lo += first;
            hi += first;
            for (const auto& b : d.blocks)
                for (u64 i = 0; i < k; ++i) {
                    const u64 x = b[i];
                    if (x < lo || x >= hi)
                        continue;
                    auto& c = counts[(x - first) * v + b[(i + t) % k]];
                    if (c != UINT16_MAX)
                        ++c;
                }
        });
        for (u64 x = first; x < last; ++x)
            for (u64 y = 0; y < v; ++y) {
                const u64 c = counts[(x - first) * v + y];
                if (c != (x == y ? 0u : 1u))
                    return pair_counterexample(x, y, t, c);
            }
    }
    return std::nullopt;
}

// Fast acceptance test for the dense case. Each t-apart occurrence stamps its
// pair with t; a pair stamped twice or a diagonal pair means failure. With no
// repeats and exactly v(v-1) occurrences, every off-diagonal pair occurs once.
class PairStamps {
public:
    explicit PairStamps(u64 v) : v_(v), stamps_(v <= dense_count_limit ? v * v : 0, 0) {}

    bool dense() const { return !stamps_.empty(); }

    bool all_pairs_once(const Design& d, u64 t, unsigned threads)
    {
        const u64 v = v_, k = d.k;
        if (d.blocks.size() * k != v * (v - 1))
            return false;
        const auto stamp = static_cast<std::uint16_t>(t);
        std::vector<char> clean(std::max(1u, threads), 1);
        for_each_point_range(v, threads, [&](u64 lo, u64 hi, unsigned slot) {
            for (const auto& b : d.blocks)
                for (u64 i = 0; i < k; ++i) {
                    const u64 x = b[i];
                    if (x < lo || x >= hi)
                        continue;
                    const u64 y = b[(i + t) % k];
                    auto& s = stamps_[x * v + y];
                    if (x == y || s == stamp) {
                        clean[slot] = 0;
                        return;
                    }
                    s = stamp;
                }
        });
        return std::all_of(clean.begin(), clean.end(), [](char c) { return c != 0; });
    }

private:
    u64 v_;
    std::vector<std::uint16_t> stamps_;
};

inline CheckResult t_apart_check(const Design& d, u64 t, const std::string& name,
                                 const VerifyOptions& opts, PairStamps& stamps)
{
    Stopwatch sw;
    CheckResult r{name, true, std::nullopt, 0};
    if (auto bad = malformed_block(d))
        r.counterexample = bad;
    else if (!stamps.dense() || !stamps.all_pairs_once(d, t, opts.threads))
        r.counterexample = smallest_t_apart_violation(d, t, opts.threads);
    r.pass = !r.counterexample.has_value();
    r.elapsed_ms = sw.elapsed_ms();
    return r;
}

} // namespace detail

/// Every ordered pair of distinct points is consecutive in exactly one block.
inline VerificationReport verify_md(const Design& d, const VerifyOptions& opts = {})
{
    detail::PairStamps stamps(d.v());
    return {{detail::t_apart_check(d, 1, "mendelsohn", opts, stamps)}};
}

/// Every ordered pair of distinct points is t-apart in exactly one block, for all t <= l.
inline VerificationReport verify_l_fold_perfect(const Design& d, u64 l, const VerifyOptions& opts = {})
{
    require(l >= 1 && l + 1 <= d.k, "verify_l_fold_perfect: l must be in [1, k-1]");
    require(l <= UINT16_MAX, "verify_l_fold_perfect: l too large");
    VerificationReport report;
    detail::PairStamps stamps(d.v());
    for (u64 t = 1; t <= l; ++t)
        report.checks.push_back(
            detail::t_apart_check(d, t, "t_apart_" + std::to_string(t), opts, stamps));
    return report;
}

/// The point of K missing from resolution class g, if the class misses exactly one.
inline std::optional<u64> class_missing_point(const Design& d, u64 g)
{
    std::vector<bool> hit(d.v(), false);
    for (const auto& b : d.resolution_class(g))
        for (u64 x : b.points)
            if (x < d.v())
                hit[x] = true;
    std::optional<u64> missing;
    for (u64 x = 0; x < d.v(); ++x)
        if (!hit[x]) {
            if (missing)
                return std::nullopt;
            missing = x;
        }
    return missing;
}

/// v resolution classes of (v-1)/k pairwise disjoint blocks each.
inline VerificationReport verify_resolvable(const Design& d)
{
    detail::Stopwatch sw;
    CheckResult r{"resolvable", true, std::nullopt, 0};
    const u64 v = d.v();
    auto fail = [&](Counterexample c) {
        r.pass = false;
        r.counterexample = std::move(c);
    };

    if (d.k < 2 || (v - 1) % d.k != 0) {
        fail({{}, {}, {}, {}, "v - 1 is not divisible by k"});
    } else if (auto bad = detail::malformed_block(d)) {
        fail(*bad);
    } else if (d.blocks.size() != v * d.blocks_per_class()) {
        fail({{}, {}, {}, d.blocks.size(),
              "expected " + std::to_string(v * d.blocks_per_class()) + " blocks in " +
                  std::to_string(v) + " classes"});
    } else {
        std::vector<u64> owner(v, 0);
        for (u64 g = 0; g < v && r.pass; ++g) {
            u64 idx = 0;
            for (const auto& b : d.resolution_class(g)) {
                for (u64 x : b.points) {
                    if (owner[x] == g + 1) {
                        fail({x, {}, {}, {},
                              "class " + std::to_string(g) + ": point " + std::to_string(x) +
                                  " occurs twice (block " + std::to_string(idx) + ")"});
                        break;
                    }
                    owner[x] = g + 1;
                }
                if (!r.pass)
                    break;
                ++idx;
            }
        }
    }
    r.elapsed_ms = sw.elapsed_ms();
    return {{r}};
}

/// Sorted canonical blocks, for membership queries.
class BlockIndex {
public:
    explicit BlockIndex(const std::vector<Block>& blocks) : sorted_(blocks)
    {
        for (auto& b : sorted_)
            b = canonical_rotation(std::move(b));
        std::sort(sorted_.begin(), sorted_.end());
    }

    bool contains(const Block& b) const
    {
        return std::binary_search(sorted_.begin(), sorted_.end(), canonical_rotation(b));
    }

    const std::vector<Block>& sorted() const { return sorted_; }

private:
    std::vector<Block> sorted_;
};

inline Block map_block(const Permutation& perm, const Block& b)
{
    Block r;
    r.points.reserve(b.size());
    for (u64 x : b.points)
        r.points.push_back(perm.at(x));
    return canonical_rotation(std::move(r));
}

/// Index of a block whose image under perm is not a block, if any.
inline std::optional<std::size_t> non_automorphic_block(const Design& d, const BlockIndex& index,
                                                        const Permutation& perm)
{
    require(perm.size() == d.v() && is_bijection(perm), "perm must be a bijection on [0, v)");
    for (std::size_t i = 0; i < d.blocks.size(); ++i)
        if (!index.contains(map_block(perm, d.blocks[i])))
            return i;
    return std::nullopt;
}

/// perm maps every block (as a cyclic sequence) onto a block.
inline bool is_automorphism(const Design& d, const Permutation& perm)
{
    return !non_automorphic_block(d, BlockIndex(d.blocks), perm).has_value();
}

inline Permutation translation_perm(const GroupSpec& group, u64 g)
{
    Permutation p(group.order());
    for (u64 x = 0; x < p.size(); ++x)
        p[x] = group.add(x, g);
    return p;
}

/// Checks the translations by a generating set of K and, when given, phi.
/// Together they generate K x| <phi>.
inline VerificationReport verify_automorphism_group(const Design& d,
                                                    const std::optional<Automorphism>& phi)
{
    VerificationReport report;
    const BlockIndex index(d.blocks);
    auto run = [&](const std::string& name, const Permutation& perm) {
        detail::Stopwatch sw;
        CheckResult r{name, true, std::nullopt, 0};
        if (auto bad = non_automorphic_block(d, index, perm)) {
            r.pass = false;
            r.counterexample = Counterexample{{}, {}, {}, {},
                                              "image of block " + std::to_string(*bad) +
                                                  " is not a block"};
        }
        r.elapsed_ms = sw.elapsed_ms();
        report.checks.push_back(std::move(r));
    };
    for (u64 g : d.group.generators())
        run("translation_" + std::to_string(g), translation_perm(d.group, g));
    if (phi) {
        require(phi->group() == d.group, "automorphism acts on a different group");
        run("multiplier", phi->table());
    }
    return report;
}

/// psi maps the block multiset of d1 onto that of d2.
inline bool isomorphism_via(const Permutation& psi, const Design& d1, const Design& d2)
{
    if (d1.v() != d2.v() || d1.k != d2.k || d1.blocks.size() != d2.blocks.size())
        return false;
    require(psi.size() == d1.v() && is_bijection(psi), "psi must be a bijection on [0, v)");
    std::vector<Block> image;
    image.reserve(d1.blocks.size());
    for (const auto& b : d1.blocks)
        image.push_back(map_block(psi, b));
    std::sort(image.begin(), image.end());
    return image == BlockIndex(d2.blocks).sorted();
}

} // namespace mendel
