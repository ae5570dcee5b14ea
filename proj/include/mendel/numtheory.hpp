#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "mendel/error.hpp"

/*
    Exact integer arithmetic for moduli below 2^31: trial-division factorization,
    CRT, modular inverses/powers/orders, primitive roots and quadratic
    congruences. Everything fits in 64 bits; products go through 128-bit
    intermediates.
 */

namespace mendel {

using u64 = std::uint64_t;
using i64 = std::int64_t;

/// Largest modulus any construction accepts.
inline constexpr u64 max_modulus = u64{1} << 31;

struct PrimePower {
    u64 p = 0;
    unsigned e = 0;

    u64 value() const
    {
        u64 q = 1;
        for (unsigned i = 0; i < e; ++i)
            q *= p;
        return q;
    }

    bool operator==(const PrimePower&) const = default;
};

struct Factorization {
    u64 n = 1;
    std::vector<PrimePower> factors; // ascending primes

    std::size_t size() const { return factors.size(); }
    bool is_prime_power() const { return factors.size() == 1; }
};

inline u64 mul_mod(u64 a, u64 b, u64 m)
{
    return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

inline u64 mod_pow(u64 a, u64 e, u64 m)
{
    require(m >= 1, "mod_pow: modulus must be positive");
    u64 result = 1 % m;
    a %= m;
    while (e != 0) {
        if (e & 1)
            result = mul_mod(result, a, m);
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    return result;
}

/// Reduces a signed value into [0, m).
inline u64 reduce(i64 x, u64 m)
{
    const i64 sm = static_cast<i64>(m);
    i64 r = x % sm;
    return static_cast<u64>(r < 0 ? r + sm : r);
}

inline bool is_prime(u64 n)
{
    if (n < 2)
        return false;
    if (n % 2 == 0)
        return n == 2;
    for (u64 d = 3; d * d <= n; d += 2)
        if (n % d == 0)
            return false;
    return true;
}

inline Factorization factorize(u64 n)
{
    require(n >= 2, "factorize: n must be at least 2, got " + std::to_string(n));
    Factorization f;
    f.n = n;
    auto take = [&](u64 d) {
        unsigned e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        if (e != 0)
            f.factors.push_back({d, e});
    };
    take(2);
    for (u64 d = 3; d * d <= n; d += 2)
        take(d);
    if (n > 1)
        f.factors.push_back({n, 1});
    return f;
}

/// Smallest prime factor p(k).
inline u64 smallest_prime_factor(u64 k)
{
    return factorize(k).factors.front().p;
}

inline u64 euler_phi(const Factorization& f)
{
    u64 phi = 1;
    for (const auto& pp : f.factors)
        phi *= pp.value() / pp.p * (pp.p - 1);
    return phi;
}

inline u64 euler_phi(u64 n)
{
    return n == 1 ? 1 : euler_phi(factorize(n));
}

inline u64 mod_inverse(u64 a, u64 m)
{
    require(m >= 1, "mod_inverse: modulus must be positive");
    i64 old_r = static_cast<i64>(a % m), r = static_cast<i64>(m);
    i64 old_s = 1, s = 0;
    while (r != 0) {
        const i64 q = old_r / r;
        old_r = std::exchange(r, old_r - q * r);
        old_s = std::exchange(s, old_s - q * s);
    }
    require(old_r == 1 || m == 1,
            "mod_inverse: " + std::to_string(a) + " is not a unit mod " + std::to_string(m));
    return reduce(old_s, m);
}

/// Least d >= 1 with a^d = 1 (mod m).
inline u64 multiplicative_order(u64 a, u64 m)
{
    require(m >= 2, "multiplicative_order: modulus must be at least 2");
    require(std::gcd(a % m, m) == 1,
            "multiplicative_order: " + std::to_string(a) + " is not a unit mod " + std::to_string(m));
    const u64 phi = euler_phi(m);
    u64 order = phi;
    if (phi == 1)
        return 1;
    for (const auto& pp : factorize(phi).factors) {
        for (unsigned i = 0; i < pp.e && order % pp.p == 0; ++i) {
            if (mod_pow(a, order / pp.p, m) != 1)
                break;
            order /= pp.p;
        }
    }
    return order;
}

struct Residue {
    u64 r = 0;
    u64 m = 1;
};

/// Unique x in [0, prod m_i) with x = r_i (mod m_i).
inline u64 crt_combine(std::span<const Residue> residues)
{
    u64 x = 0, modulus = 1;
    for (const auto& [r, m] : residues) {
        require(m >= 1, "crt_combine: moduli must be positive");
        require(std::gcd(modulus, m) == 1, "crt_combine: moduli are not pairwise coprime");
        require(modulus <= max_modulus && m <= max_modulus && modulus * m <= max_modulus,
                "crt_combine: combined modulus exceeds 2^31");
        // x' = x + modulus * ((r - x) * modulus^{-1} mod m)
        const u64 inv = mod_inverse(modulus % m, m);
        const u64 delta = mul_mod((r % m + m - x % m) % m, inv, m);
        x += modulus * delta;
        modulus *= m;
    }
    return x % modulus;
}

inline u64 crt_combine(std::initializer_list<Residue> residues)
{
    return crt_combine(std::span<const Residue>(residues.begin(), residues.size()));
}

/// Smallest generator g >= 2 of the unit group mod q = p^e, p odd.
inline u64 primitive_root(u64 q)
{
    require(q >= 3, "primitive_root: q must be an odd prime power");
    const auto f = factorize(q);
    require(f.is_prime_power() && f.factors[0].p != 2,
            "primitive_root: q must be a power of an odd prime, got " + std::to_string(q));
    const u64 phi = euler_phi(f);
    const auto phi_primes = factorize(phi).factors;
    for (u64 g = 2; g < q; ++g) {
        if (g % f.factors[0].p == 0)
            continue;
        bool generator = true;
        for (const auto& r : phi_primes) {
            if (mod_pow(g, phi / r.p, q) == 1) {
                generator = false;
                break;
            }
        }
        if (generator)
            return g;
    }
    throw invalid_parameter("primitive_root: no generator found");
}

/// All x in [0, v) with x^2 + c1 x + c0 = 0 (mod v), ascending.
/// Solved per prime power by scanning, then lifted with CRT.
inline std::vector<u64> solve_quadratic_congruence(i64 c1, i64 c0, u64 v)
{
    require(v >= 3 && v % 2 == 1, "solve_quadratic_congruence: v must be odd and >= 3");
    require(v <= max_modulus, "solve_quadratic_congruence: v exceeds 2^31");

    std::vector<std::vector<Residue>> local;
    for (const auto& pp : factorize(v).factors) {
        const u64 q = pp.value();
        const u64 b = reduce(c1, q), c = reduce(c0, q);
        std::vector<Residue> roots;
        for (u64 x = 0; x < q; ++x) {
            if ((mul_mod(x, x, q) + mul_mod(b, x, q) + c) % q == 0)
                roots.push_back({x, q});
        }
        if (roots.empty())
            return {};
        local.push_back(std::move(roots));
    }

    std::vector<u64> solutions;
    std::vector<std::size_t> pick(local.size(), 0);
    std::vector<Residue> combo(local.size());
    for (;;) {
        for (std::size_t i = 0; i < local.size(); ++i)
            combo[i] = local[i][pick[i]];
        solutions.push_back(crt_combine(combo));
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == local[i].size())
            pick[i++] = 0;
        if (i == pick.size())
            break;
    }
    std::sort(solutions.begin(), solutions.end());
    return solutions;
}

} // namespace mendel
