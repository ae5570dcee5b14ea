#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "mendel/design.hpp"
#include "mendel/error.hpp"
#include "mendel/finite_field.hpp"
#include "mendel/group.hpp"
#include "mendel/numtheory.hpp"
#include "mendel/orthomorphism.hpp"

/*
    Resolvable Mendelsohn designs from fixed-point-free automorphisms.

    Every construction follows the same route: a semiregular automorphism phi
    of order k on K gives the k-regular orthomorphism x -> phi(x); its cycles
    are the base blocks, and developing them over K yields a (v, k, 1)-RMD
    with resolution classes g + B_1. The result is (p(k)-1)-fold perfect, and
    perfect when k is prime. Constructors re-verify all of this on the
    instance before returning.
 */

namespace mendel {

/// Default largest v a verifying constructor accepts.
inline constexpr u64 default_max_v = 20000;

struct ConstructOptions {
    bool verify = true;
    u64 max_v = default_max_v;
    VerifyOptions verify_options;
};

struct Construction {
    Design design;
    Automorphism phi;
    Orthomorphism theta;
    VerificationReport report; // empty when built with verify = false

    u64 k() const { return design.k; }
};

/// Perfectness level guaranteed for a semiregular automorphism of order k.
inline u64 guaranteed_perfectness(u64 k)
{
    return is_prime(k) ? k - 1 : smallest_prime_factor(k) - 1;
}

/// Design-level checks every construction must pass.
inline VerificationReport verify_construction(const Design& d, const Automorphism& phi,
                                              const VerifyOptions& opts = {})
{
    VerificationReport report = verify_l_fold_perfect(d, guaranteed_perfectness(d.k), opts);
    report.append(verify_md(d, opts));
    report.append(verify_resolvable(d));
    report.append(verify_automorphism_group(d, phi));
    return report;
}

inline Construction build_from_automorphism(const Automorphism& phi, u64 k, Provenance provenance,
                                            const ConstructOptions& opts)
{
    const GroupSpec& group = phi.group();
    const u64 v = group.order();
    if (opts.verify)
        require(v <= opts.max_v, "v = " + std::to_string(v) + " exceeds the verification cap " +
                                      std::to_string(opts.max_v));
    require(k >= 2, "k must be at least 2");
    require(phi.order() == k, "automorphism has order " + std::to_string(phi.order()) +
                                  ", expected " + std::to_string(k));
    const auto semi = is_semiregular(phi, k);
    if (!semi)
        throw verification_failure("automorphism is not semiregular: phi^" +
                                   std::to_string(*semi.power) + " fixes " +
                                   std::to_string(*semi.witness));

    std::vector<Block> base;
    for (auto& orbit : orbits(phi, k))
        base.push_back(Block{std::move(orbit)});

    Construction c{develop(group, std::move(base)), phi, from_automorphism(phi, k), {}};
    c.design.provenance = std::move(provenance);

    if (opts.verify) {
        if (!is_orthomorphism(group, c.theta.perm()))
            throw verification_failure("x -> phi(x) is not an orthomorphism");
        c.report = verify_construction(c.design, phi, opts.verify_options);
        for (const auto& check : c.report.checks)
            if (!check.pass)
                throw verification_failure(
                    "check " + check.name + " failed" +
                    (check.counterexample ? ": " + check.counterexample->detail : std::string{}));
    }
    return c;
}

namespace detail {

inline void require_prime_power_divisible(const Factorization& f, u64 k, const std::string& who)
{
    for (const auto& pp : f.factors)
        require((pp.value() - 1) % k == 0, who + ": k = " + std::to_string(k) + " does not divide " +
                                               std::to_string(pp.value()) + " - 1");
}

} // namespace detail

/// AGL(1, q): K = (GF(q), +), phi = multiplication by omega^((q-1)/k).
inline Construction construct_agl(u64 q, u64 k, const ConstructOptions& opts = {})
{
    require(q >= 3, "construct_agl: q must be a prime power >= 3");
    const auto f = factorize(q);
    require(f.is_prime_power(), "construct_agl: q = " + std::to_string(q) + " is not a prime power");
    require(k >= 2 && (q - 1) % k == 0,
            "construct_agl: k = " + std::to_string(k) + " must be >= 2 and divide q - 1");

    const auto field = field_make(f.factors[0].p, f.factors[0].e);
    const auto group = GroupSpec::direct_sum({field});
    const auto phi = Automorphism::componentwise(group, {element_of_order(field, k)});
    return build_from_automorphism(phi, k, {"agl", std::nullopt, {(q - 1) / k}}, opts);
}

/// Ferrero pair on K = GF(q_1) + ... + GF(q_t), v = q_1 ... q_t, with H of prime order k
/// acting componentwise; the design uses the element omega^power of H.
inline Construction construct_ferrero(u64 v, u64 k, u64 power = 1, const ConstructOptions& opts = {})
{
    require(v >= 3, "construct_ferrero: v must be >= 3");
    require(is_prime(k), "construct_ferrero: k = " + std::to_string(k) + " is not prime");
    require(power >= 1 && power < k, "construct_ferrero: power must be in [1, k-1]");
    const auto f = factorize(v);
    detail::require_prime_power_divisible(f, k, "construct_ferrero");

    std::vector<FieldSpec> fields;
    std::vector<FieldElement> multipliers;
    std::vector<u64> powers;
    for (const auto& pp : f.factors) {
        auto field = field_make(pp.p, pp.e);
        const u64 r = (field.order() - 1) / k;
        const u64 exponent = power * r % (field.order() - 1);
        multipliers.push_back(field.pow(primitive_element(field), exponent));
        powers.push_back(exponent);
        fields.push_back(std::move(field));
    }
    const auto group = GroupSpec::direct_sum(std::move(fields));
    const auto phi = Automorphism::componentwise(group, std::move(multipliers));
    return build_from_automorphism(phi, k, {"ferrero", std::nullopt, std::move(powers)}, opts);
}

namespace detail {

inline Factorization cyclic_preconditions(u64 v, u64 k, const std::string& who)
{
    require(v >= 3 && v % 2 == 1, who + ": v must be odd and >= 3");
    require(v <= max_modulus, who + ": v exceeds 2^31");
    require(k >= 2 && k % 2 == 0, who + ": k must be even");
    auto f = factorize(v);
    for (const auto& pp : f.factors)
        require((pp.p - 1) % k == 0, who + ": k = " + std::to_string(k) + " does not divide " +
                                         std::to_string(pp.p) + " - 1");
    return f;
}

} // namespace detail

/// Generator eta of the units mod q used by the cyclic construction: the
/// inverse of the smallest primitive root. With it m = (1) gives a = 23 for
/// (v, k) = (53, 4).
inline u64 cyclic_generator(u64 q)
{
    return mod_inverse(primitive_root(q), q);
}

/// a = sum_i (v/q_i) a_i b_i mod v with a_i = eta_i^(m_i phi(q_i)/k) and
/// b_i = (v/q_i)^{-1} mod q_i, i.e. the CRT lift of the a_i.
inline u64 cyclic_multiplier(u64 v, u64 k, const std::vector<u64>& m)
{
    const auto f = detail::cyclic_preconditions(v, k, "cyclic_multiplier");
    require(m.size() == f.size(), "cyclic_multiplier: need one m_i per prime factor of v (" +
                                      std::to_string(f.size()) + ")");
    std::vector<Residue> residues;
    for (std::size_t i = 0; i < f.size(); ++i) {
        require(std::gcd(m[i], k) == 1, "cyclic_multiplier: m_i must be coprime to k");
        const u64 q = f.factors[i].value();
        const u64 ai = mod_pow(cyclic_generator(q), m[i] * (euler_phi(q) / k), q);
        residues.push_back({ai, q});
    }
    return crt_combine(residues);
}

/// Z_v x| <a> for an explicit multiplier a of order k.
inline Construction construct_cyclic_with_multiplier(u64 v, u64 k, u64 a,
                                                     const ConstructOptions& opts = {},
                                                     const std::string& method = "cyclic")
{
    require(v >= 3 && v <= max_modulus, "construct_cyclic: v out of range");
    const auto group = GroupSpec::cyclic(v);
    const auto phi = Automorphism::cyclic(group, a);
    require(phi.order() == k, "multiplier " + std::to_string(a) + " has order " +
                                  std::to_string(phi.order()) + " mod " + std::to_string(v) +
                                  ", expected " + std::to_string(k));
    return build_from_automorphism(phi, k, {method, a % v, {}}, opts);
}

struct CyclicConstruction {
    u64 multiplier;
    Construction construction;
};

/// The cyclic construction for odd v and even k dividing every p_i - 1.
/// Aborts if the multiplier built from m is not of order k or not semiregular.
inline CyclicConstruction construct_cyclic(u64 v, u64 k, const std::vector<u64>& m,
                                           const ConstructOptions& opts = {})
{
    const u64 a = cyclic_multiplier(v, k, m);
    const auto group = GroupSpec::cyclic(v);
    const auto phi = Automorphism::cyclic(group, a);
    if (phi.order() != k)
        throw verification_failure("constructed multiplier " + std::to_string(a) + " has order " +
                                   std::to_string(phi.order()) + ", expected " + std::to_string(k));
    if (!is_semiregular(phi, k))
        throw verification_failure("constructed multiplier " + std::to_string(a) +
                                   " is not semiregular");
    return {a, construct_cyclic_with_multiplier(v, k, a, opts)};
}

/// All multipliers the cyclic construction produces, over every m-vector
/// with m_i in [1, k] coprime to k. There are phi(k)^t of them.
inline std::vector<u64> enumerate_cyclic_multipliers(u64 v, u64 k)
{
    const auto f = detail::cyclic_preconditions(v, k, "enumerate_cyclic_multipliers");
    std::vector<u64> units;
    for (u64 m = 1; m <= k; ++m)
        if (std::gcd(m, k) == 1)
            units.push_back(m);

    const auto group = GroupSpec::cyclic(v);
    std::vector<u64> result;
    std::vector<std::size_t> pick(f.size(), 0);
    std::vector<u64> m(f.size());
    for (;;) {
        for (std::size_t i = 0; i < f.size(); ++i)
            m[i] = units[pick[i]];
        const u64 a = cyclic_multiplier(v, k, m);
        const auto phi = Automorphism::cyclic(group, a);
        if (phi.order() != k || !is_semiregular(phi, k))
            throw verification_failure("multiplier " + std::to_string(a) +
                                       " from the cyclic construction is not semiregular of order " +
                                       std::to_string(k));
        result.push_back(a);
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == units.size())
            pick[i++] = 0;
        if (i == pick.size())
            break;
    }
    std::sort(result.begin(), result.end());
    result.erase(std::unique(result.begin(), result.end()), result.end());
    return result;
}

namespace detail {

inline std::vector<CyclicConstruction> construct_from_roots(u64 v, u64 k,
                                                            const std::vector<u64>& roots,
                                                            const std::string& method,
                                                            const ConstructOptions& opts)
{
    require(!roots.empty(), method + ": congruence has no roots mod " + std::to_string(v));
    std::vector<CyclicConstruction> out;
    for (u64 a : roots)
        out.push_back({a, construct_cyclic_with_multiplier(v, k, a, opts, method)});
    return out;
}

} // namespace detail

/// One (v, 4, 1)-RMD per root of x^2 + 1 = 0 (mod v); every p_i = 1 (mod 4).
inline std::vector<CyclicConstruction> construct_k4(u64 v, const ConstructOptions& opts = {})
{
    require(v >= 5 && v % 2 == 1, "construct_k4: v must be odd and >= 5");
    for (const auto& pp : factorize(v).factors)
        require(pp.p % 4 == 1, "construct_k4: prime factor " + std::to_string(pp.p) +
                                   " is not 1 mod 4");
    return detail::construct_from_roots(v, 4, solve_quadratic_congruence(0, 1, v), "k4", opts);
}

/// One (v, 6, 1)-RMD per root of x^2 - x + 1 = 0 (mod v); every p_i = 1 (mod 6).
inline std::vector<CyclicConstruction> construct_k6(u64 v, const ConstructOptions& opts = {})
{
    require(v >= 7 && v % 2 == 1, "construct_k6: v must be odd and >= 7");
    for (const auto& pp : factorize(v).factors)
        require(pp.p % 6 == 1, "construct_k6: prime factor " + std::to_string(pp.p) +
                                   " is not 1 mod 6");
    return detail::construct_from_roots(v, 6, solve_quadratic_congruence(-1, 1, v), "k6", opts);
}

} // namespace mendel
