#pragma once

#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "mendel/error.hpp"
#include "mendel/finite_field.hpp"
#include "mendel/numtheory.hpp"

/*
    The Frobenius kernel K, written additively: either Z_v or a direct sum of
    additive groups of finite fields. Elements are canonical indices in [0, v).
    For a direct sum the index is mixed-radix over the components, and each
    component index is itself base-p over the polynomial coefficients, so an
    element is just a vector of base-p digits.
 */

namespace mendel {

class GroupSpec {
public:
    GroupSpec() = default;

    static GroupSpec cyclic(u64 v)
    {
        require(v >= 3, "group order must be at least 3, got " + std::to_string(v));
        require(v <= max_modulus, "group order exceeds 2^31");
        GroupSpec g;
        g.order_ = v;
        g.radices_ = {v};
        return g;
    }

    static GroupSpec direct_sum(std::vector<FieldSpec> fields)
    {
        require(!fields.empty(), "direct sum needs at least one field");
        GroupSpec g;
        g.order_ = 1;
        for (const auto& f : fields) {
            g.order_ *= f.order();
            require(g.order_ <= max_modulus, "group order exceeds 2^31");
            for (unsigned i = 0; i < f.e(); ++i)
                g.radices_.push_back(f.p());
        }
        require(g.order_ >= 3, "group order must be at least 3");
        g.fields_ = std::move(fields);
        return g;
    }

    bool is_cyclic() const { return fields_.empty(); }
    u64 order() const { return order_; }
    const std::vector<FieldSpec>& fields() const { return fields_; }

    bool operator==(const GroupSpec& o) const
    {
        return order_ == o.order_ && fields_ == o.fields_;
    }

    u64 add(u64 x, u64 y) const
    {
        if (is_cyclic())
            return (x + y) % order_;
        u64 r = 0, place = 1;
        for (u64 radix : radices_) {
            r += ((x % radix + y % radix) % radix) * place;
            x /= radix;
            y /= radix;
            place *= radix;
        }
        return r;
    }

    u64 neg(u64 x) const
    {
        if (is_cyclic())
            return (order_ - x % order_) % order_;
        u64 r = 0, place = 1;
        for (u64 radix : radices_) {
            r += ((radix - x % radix) % radix) * place;
            x /= radix;
            place *= radix;
        }
        return r;
    }

    u64 sub(u64 x, u64 y) const { return add(x, neg(y)); }

    /// Component indices of x (one per field; the residue itself for Z_v).
    std::vector<u64> components(u64 x) const
    {
        if (is_cyclic())
            return {x};
        std::vector<u64> parts;
        for (const auto& f : fields_) {
            parts.push_back(x % f.order());
            x /= f.order();
        }
        return parts;
    }

    u64 from_components(const std::vector<u64>& parts) const
    {
        if (is_cyclic())
            return parts.at(0) % order_;
        require(parts.size() == fields_.size(), "component count mismatch");
        u64 x = 0, place = 1;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            x += parts[i] * place;
            place *= fields_[i].order();
        }
        return x;
    }

    /// A generating set of K: 1 for Z_v, every unit digit vector for a direct sum.
    std::vector<u64> generators() const
    {
        std::vector<u64> gens;
        u64 place = 1;
        for (u64 radix : radices_) {
            gens.push_back(place);
            place *= radix;
        }
        return gens;
    }

    std::string describe() const
    {
        if (is_cyclic())
            return "Z_" + std::to_string(order_);
        std::string s;
        for (const auto& f : fields_)
            s += (s.empty() ? "" : " + ") + f.name();
        return s;
    }

private:
    u64 order_ = 0;
    std::vector<u64> radices_;
    std::vector<FieldSpec> fields_;
};

/// Automorphism of K acting by multiplication: a unit a of Z_v, or a nonzero
/// multiplier per field component.
class Automorphism {
public:
    static Automorphism cyclic(const GroupSpec& group, u64 a)
    {
        require(group.is_cyclic(), "cyclic multiplier on a non-cyclic group");
        const u64 v = group.order();
        require(std::gcd(a % v, v) == 1,
                "multiplier " + std::to_string(a) + " is not a unit mod " + std::to_string(v));
        Automorphism phi;
        phi.group_ = group;
        phi.multiplier_ = a % v;
        return phi;
    }

    static Automorphism componentwise(const GroupSpec& group, std::vector<FieldElement> multipliers)
    {
        require(!group.is_cyclic(), "componentwise multipliers need a direct-sum group");
        require(multipliers.size() == group.fields().size(), "one multiplier per field required");
        for (std::size_t i = 0; i < multipliers.size(); ++i)
            require(!group.fields()[i].is_zero(multipliers[i]), "field multipliers must be nonzero");
        Automorphism phi;
        phi.group_ = group;
        phi.field_multipliers_ = std::move(multipliers);
        return phi;
    }

    static Automorphism identity(const GroupSpec& group)
    {
        if (group.is_cyclic())
            return cyclic(group, 1);
        std::vector<FieldElement> ones;
        for (const auto& f : group.fields())
            ones.push_back(f.one());
        return componentwise(group, std::move(ones));
    }

    const GroupSpec& group() const { return group_; }
    bool is_cyclic() const { return group_.is_cyclic(); }
    u64 multiplier() const { return multiplier_; }
    const std::vector<FieldElement>& field_multipliers() const { return field_multipliers_; }

    bool operator==(const Automorphism&) const = default;

    u64 apply(u64 x) const
    {
        require(x < group_.order(), "element " + std::to_string(x) + " not in " + group_.describe());
        if (is_cyclic())
            return mul_mod(multiplier_, x, group_.order());
        auto parts = group_.components(x);
        for (std::size_t i = 0; i < parts.size(); ++i) {
            const auto& f = group_.fields()[i];
            parts[i] = f.to_index(f.mul(field_multipliers_[i], f.from_index(parts[i])));
        }
        return group_.from_components(parts);
    }

    Automorphism power(u64 j) const
    {
        Automorphism r = *this;
        if (is_cyclic()) {
            r.multiplier_ = mod_pow(multiplier_, j, group_.order());
        } else {
            for (std::size_t i = 0; i < r.field_multipliers_.size(); ++i)
                r.field_multipliers_[i] = group_.fields()[i].pow(field_multipliers_[i], j);
        }
        return r;
    }

    /// (*this) after other: x -> this(other(x)).
    Automorphism compose(const Automorphism& other) const
    {
        require(group_ == other.group_, "automorphisms act on different groups");
        Automorphism r = *this;
        if (is_cyclic()) {
            r.multiplier_ = mul_mod(multiplier_, other.multiplier_, group_.order());
        } else {
            for (std::size_t i = 0; i < r.field_multipliers_.size(); ++i)
                r.field_multipliers_[i] =
                    group_.fields()[i].mul(field_multipliers_[i], other.field_multipliers_[i]);
        }
        return r;
    }

    Automorphism inverse() const
    {
        Automorphism r = *this;
        if (is_cyclic()) {
            r.multiplier_ = mod_inverse(multiplier_, group_.order());
        } else {
            for (std::size_t i = 0; i < r.field_multipliers_.size(); ++i)
                r.field_multipliers_[i] = group_.fields()[i].inv(field_multipliers_[i]);
        }
        return r;
    }

    /// Least k >= 1 with phi^k = id: the lcm of the component multiplicative orders.
    u64 order() const
    {
        if (is_cyclic())
            return multiplicative_order(multiplier_, group_.order());
        u64 k = 1;
        for (std::size_t i = 0; i < field_multipliers_.size(); ++i)
            k = std::lcm(k, group_.fields()[i].multiplicative_order(field_multipliers_[i]));
        return k;
    }

    /// The action as a permutation table of length v.
    std::vector<u64> table() const
    {
        std::vector<u64> t(group_.order());
        for (u64 x = 0; x < t.size(); ++x)
            t[x] = apply(x);
        return t;
    }

private:
    Automorphism() = default;

    GroupSpec group_;
    u64 multiplier_ = 1;
    std::vector<FieldElement> field_multipliers_;
};

inline u64 apply(const Automorphism& phi, u64 x) { return phi.apply(x); }

inline u64 automorphism_order(const Automorphism& phi) { return phi.order(); }

struct SemiregularityCheck {
    bool semiregular = false;
    std::optional<u64> witness; // nonzero x fixed by phi^power
    std::optional<u64> power;

    explicit operator bool() const { return semiregular; }
};

/// Groups up to this order are cross-checked by a direct orbit scan.
inline constexpr u64 semiregular_scan_limit = 10000;

namespace detail {

// Semiregular iff every <phi>-orbit on K \ {0} has exactly k elements.
inline SemiregularityCheck semiregular_by_scan(const Automorphism& phi, u64 k)
{
    const auto perm = phi.table();
    std::vector<bool> seen(perm.size(), false);
    for (u64 x = 1; x < perm.size(); ++x) {
        if (seen[x])
            continue;
        u64 len = 0, y = x;
        do {
            seen[y] = true;
            y = perm[y];
            ++len;
        } while (y != x);
        if (len != k)
            return {false, x, len};
    }
    return {true, std::nullopt, std::nullopt};
}

} // namespace detail

/// True iff phi^j fixes no nonzero element for 1 <= j <= k-1, where k is
/// the order of phi. Fails with a witness otherwise.
inline SemiregularityCheck is_semiregular(const Automorphism& phi, u64 k)
{
    require(k == phi.order(), "is_semiregular: k = " + std::to_string(k) +
                                  " is not the order of the automorphism");
    const GroupSpec& group = phi.group();
    const u64 v = group.order();
    if (k < 2)
        return {false, u64{1}, u64{1}};

    SemiregularityCheck fast{true, std::nullopt, std::nullopt};
    if (phi.is_cyclic()) {
        // gcd(a^j - 1, v) = 1 for all 1 <= j < k
        for (u64 j = 1; j < k; ++j) {
            const u64 aj = mod_pow(phi.multiplier(), j, v);
            const u64 g = std::gcd((aj + v - 1) % v, v);
            if (g != 1) {
                fast = {false, v / g, j};
                break;
            }
        }
    } else {
        // fixed-point-free iff every component multiplier has order exactly k
        for (std::size_t i = 0; i < group.fields().size(); ++i) {
            const auto& f = group.fields()[i];
            const u64 ord = f.multiplicative_order(phi.field_multipliers()[i]);
            if (ord != k) {
                std::vector<u64> parts(group.fields().size(), 0);
                parts[i] = 1;
                fast = {false, group.from_components(parts), ord};
                break;
            }
        }
    }

    if (v <= semiregular_scan_limit) {
        const auto scan = detail::semiregular_by_scan(phi, k);
        if (scan.semiregular != fast.semiregular)
            throw std::logic_error("semiregularity fast path disagrees with orbit scan on " +
                                   group.describe());
    }
    return fast;
}

/// The <phi>-orbits on K \ {0}, each listed as (x, phi x, ..., phi^{k-1} x).
/// Representatives are the smallest uncovered index, in ascending order.
inline std::vector<std::vector<u64>> orbits(const Automorphism& phi, u64 k)
{
    const auto check = is_semiregular(phi, k);
    require(check.semiregular, "orbits: automorphism is not semiregular (x = " +
                                   std::to_string(check.witness.value_or(0)) + " is fixed by power " +
                                   std::to_string(check.power.value_or(0)) + ")");
    const u64 v = phi.group().order();
    require((v - 1) % k == 0, "orbits: k must divide v - 1");

    std::vector<std::vector<u64>> result;
    result.reserve((v - 1) / k);
    std::vector<bool> covered(v, false);
    for (u64 x = 1; x < v; ++x) {
        if (covered[x])
            continue;
        std::vector<u64> orbit;
        orbit.reserve(k);
        u64 y = x;
        for (u64 i = 0; i < k; ++i) {
            orbit.push_back(y);
            covered[y] = true;
            y = phi.apply(y);
        }
        result.push_back(std::move(orbit));
    }
    return result;
}

} // namespace mendel
