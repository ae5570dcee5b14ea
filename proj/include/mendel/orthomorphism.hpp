#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mendel/error.hpp"
#include "mendel/group.hpp"

namespace mendel {

/// Permutation of K as an index array: perm[x] is the image of x.
using Permutation = std::vector<u64>;
using Cycle = std::vector<u64>;

inline bool is_bijection(const Permutation& perm)
{
    std::vector<bool> hit(perm.size(), false);
    for (u64 y : perm) {
        if (y >= perm.size() || hit[y])
            return false;
        hit[y] = true;
    }
    return true;
}

/// Nontrivial cycles, each starting at its smallest element, ordered by that element.
inline std::vector<Cycle> cycle_decomposition(const Permutation& perm)
{
    std::vector<Cycle> cycles;
    std::vector<bool> seen(perm.size(), false);
    for (u64 x = 0; x < perm.size(); ++x) {
        if (seen[x] || perm[x] == x)
            continue;
        Cycle c;
        for (u64 y = x; !seen[y]; y = perm[y]) {
            seen[y] = true;
            c.push_back(y);
        }
        cycles.push_back(std::move(c));
    }
    return cycles;
}

/// "(1 23 52 30)(2 46 51 7)..." notation.
inline std::string format_cycles(const std::vector<Cycle>& cycles)
{
    std::ostringstream os;
    for (const auto& c : cycles) {
        os << '(';
        for (std::size_t i = 0; i < c.size(); ++i)
            os << (i ? " " : "") << c[i];
        os << ')';
    }
    return os.str();
}

inline Permutation compose(const Permutation& outer, const Permutation& inner)
{
    Permutation r(inner.size());
    for (u64 x = 0; x < inner.size(); ++x)
        r[x] = outer[inner[x]];
    return r;
}

/// Outcome of a bijectivity test on a derived map; on failure x and y are
/// distinct elements with the same image.
struct MappingCheck {
    bool ok = false;
    std::optional<std::pair<u64, u64>> collision;

    explicit operator bool() const { return ok; }
};

namespace detail {

template <class F>
MappingCheck check_injective(u64 v, F&& f)
{
    std::vector<u64> preimage(v, v);
    for (u64 x = 0; x < v; ++x) {
        const u64 y = f(x);
        if (preimage[y] != v)
            return {false, std::pair{preimage[y], x}};
        preimage[y] = x;
    }
    return {true, std::nullopt};
}

inline void require_permutation_of(const GroupSpec& group, const Permutation& perm)
{
    require(perm.size() == group.order(), "permutation length does not match group order");
    require(is_bijection(perm), "map is not a bijection");
}

} // namespace detail

/// x -> -x + perm(x) is a bijection.
inline MappingCheck is_orthomorphism(const GroupSpec& group, const Permutation& perm)
{
    detail::require_permutation_of(group, perm);
    return detail::check_injective(group.order(),
                                   [&](u64 x) { return group.sub(perm[x], x); });
}

/// x -> x + perm(x) is a bijection.
inline MappingCheck is_complete_mapping(const GroupSpec& group, const Permutation& perm)
{
    detail::require_permutation_of(group, perm);
    return detail::check_injective(group.order(),
                                   [&](u64 x) { return group.add(x, perm[x]); });
}

/// The complete mapping x -> -x + perm(x) associated with an orthomorphism.
inline Permutation derived_complete_mapping(const GroupSpec& group, const Permutation& perm)
{
    const auto check = is_orthomorphism(group, perm);
    require(check.ok, "derived_complete_mapping: input is not an orthomorphism");
    Permutation bar(perm.size());
    for (u64 x = 0; x < perm.size(); ++x)
        bar[x] = group.sub(perm[x], x);
    return bar;
}

/// Common length of the nontrivial cycles; nullopt when lengths are mixed or
/// there are no nontrivial cycles at all (the identity).
inline std::optional<u64> regularity(const Permutation& perm)
{
    require(is_bijection(perm), "regularity: map is not a bijection");
    std::optional<u64> k;
    for (const auto& c : cycle_decomposition(perm)) {
        if (k && *k != c.size())
            return std::nullopt;
        k = c.size();
    }
    return k;
}

inline constexpr u64 max_perfectness_k = 64;

/// Largest l in [1, k-1] such that perm^t is a k-regular orthomorphism for
/// every t <= l. Returns 0 when perm itself is not an orthomorphism.
inline u64 perfectness_level(const GroupSpec& group, const Permutation& perm)
{
    const auto k = regularity(perm);
    require(k.has_value(), "perfectness_level: permutation is irregular");
    require(*k <= max_perfectness_k, "perfectness_level: k exceeds 64");
    Permutation power = perm;
    u64 level = 0;
    for (u64 t = 1; t < *k; ++t) {
        if (regularity(power) != k || !is_orthomorphism(group, power))
            break;
        level = t;
        power = compose(perm, power);
    }
    return level;
}

/// Orthomorphism in canonical form (fixes 0) together with its cycles.
class Orthomorphism {
public:
    Orthomorphism(GroupSpec group, Permutation perm) : group_(std::move(group)), perm_(std::move(perm))
    {
        detail::require_permutation_of(group_, perm_);
        require(perm_[0] == 0, "orthomorphism must fix 0 (canonical form)");
        cycles_ = cycle_decomposition(perm_);
    }

    const GroupSpec& group() const { return group_; }
    const Permutation& perm() const { return perm_; }
    const std::vector<Cycle>& cycles() const { return cycles_; }
    u64 operator()(u64 x) const { return perm_.at(x); }

    std::string to_string() const { return format_cycles(cycles_); }

private:
    GroupSpec group_;
    Permutation perm_;
    std::vector<Cycle> cycles_;
};

/// The k-regular orthomorphism x -> phi(x) of a semiregular automorphism.
/// Its cycles are exactly the <phi>-orbits on K \ {0}.
inline Orthomorphism from_automorphism(const Automorphism& phi, u64 k)
{
    const auto check = is_semiregular(phi, k);
    require(check.semiregular, "from_automorphism: automorphism is not semiregular");
    return Orthomorphism(phi.group(), phi.table());
}

} // namespace mendel
