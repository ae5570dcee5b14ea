#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "mendel/error.hpp"
#include "mendel/numtheory.hpp"

namespace mendel {

/// Element of GF(p^e): coefficient i is the coefficient of X^i.
/// (p, e) identify the field, since the modulus is a function of them.
struct FieldElement {
    u64 p = 0;
    unsigned e = 0;
    std::vector<u64> coeffs;

    bool operator==(const FieldElement&) const = default;
};

namespace detail {

// Remainder of a by the monic polynomial m over GF(p). Coefficients low-first.
inline std::vector<u64> poly_rem(std::vector<u64> a, const std::vector<u64>& m, u64 p)
{
    const std::size_t dm = m.size() - 1;
    for (std::size_t i = a.size(); i-- > dm;) {
        const u64 c = a[i] % p;
        if (c == 0)
            continue;
        for (std::size_t j = 0; j <= dm; ++j)
            a[i - dm + j] = (a[i - dm + j] + (p - c) * m[j]) % p;
    }
    a.resize(dm);
    return a;
}

// Monic polynomial of the given degree whose lower coefficients spell idx in base p.
inline std::vector<u64> monic_from_index(u64 idx, unsigned degree, u64 p)
{
    std::vector<u64> f(degree + 1, 0);
    for (unsigned i = 0; i < degree; ++i) {
        f[i] = idx % p;
        idx /= p;
    }
    f[degree] = 1;
    return f;
}

inline u64 ipow(u64 base, unsigned e)
{
    u64 r = 1;
    for (unsigned i = 0; i < e; ++i)
        r *= base;
    return r;
}

inline bool is_irreducible(const std::vector<u64>& f, u64 p)
{
    const unsigned degree = static_cast<unsigned>(f.size() - 1);
    for (unsigned d = 1; 2 * d <= degree; ++d) {
        const u64 count = ipow(p, d);
        for (u64 idx = 0; idx < count; ++idx) {
            const auto rem = poly_rem(f, monic_from_index(idx, d, p), p);
            bool zero = true;
            for (u64 c : rem)
                zero = zero && c == 0;
            if (zero)
                return false;
        }
    }
    return true;
}

} // namespace detail

/// GF(p^e) as GF(p)[X] modulo a fixed monic irreducible.
/// Prime fields use the degree-one modulus X, so every element is a
/// constant polynomial and there is a single code path.
class FieldSpec {
public:
    FieldSpec() = default;

    FieldSpec(u64 p, unsigned e, std::vector<u64> modulus)
        : p_(p), e_(e), q_(detail::ipow(p, e)), modulus_(std::move(modulus))
    {
    }

    u64 p() const { return p_; }
    unsigned e() const { return e_; }
    u64 order() const { return q_; }
    const std::vector<u64>& modulus() const { return modulus_; }

    bool operator==(const FieldSpec& o) const { return p_ == o.p_ && e_ == o.e_; }

    FieldElement zero() const { return {p_, e_, std::vector<u64>(e_, 0)}; }
    FieldElement one() const { return from_index(1); }

    /// Canonical index sum_i coeff_i p^i.
    u64 to_index(const FieldElement& x) const
    {
        check(x);
        u64 idx = 0;
        for (std::size_t i = e_; i-- > 0;)
            idx = idx * p_ + x.coeffs[i];
        return idx;
    }

    FieldElement from_index(u64 idx) const
    {
        require(idx < q_, "field element index " + std::to_string(idx) + " out of range for GF(" +
                              std::to_string(q_) + ")");
        FieldElement x{p_, e_, std::vector<u64>(e_, 0)};
        for (unsigned i = 0; i < e_; ++i) {
            x.coeffs[i] = idx % p_;
            idx /= p_;
        }
        return x;
    }

    FieldElement add(const FieldElement& a, const FieldElement& b) const
    {
        check(a);
        check(b);
        FieldElement r = a;
        for (unsigned i = 0; i < e_; ++i)
            r.coeffs[i] = (a.coeffs[i] + b.coeffs[i]) % p_;
        return r;
    }

    FieldElement neg(const FieldElement& a) const
    {
        check(a);
        FieldElement r = a;
        for (auto& c : r.coeffs)
            c = (p_ - c) % p_;
        return r;
    }

    FieldElement sub(const FieldElement& a, const FieldElement& b) const { return add(a, neg(b)); }

    FieldElement mul(const FieldElement& a, const FieldElement& b) const
    {
        check(a);
        check(b);
        std::vector<u64> prod(2 * e_ - 1, 0);
        for (unsigned i = 0; i < e_; ++i) {
            if (a.coeffs[i] == 0)
                continue;
            for (unsigned j = 0; j < e_; ++j)
                prod[i + j] = (prod[i + j] + mul_mod(a.coeffs[i], b.coeffs[j], p_)) % p_;
        }
        return {p_, e_, detail::poly_rem(std::move(prod), modulus_, p_)};
    }

    FieldElement pow(FieldElement base, u64 n) const
    {
        FieldElement r = one();
        while (n != 0) {
            if (n & 1)
                r = mul(r, base);
            base = mul(base, base);
            n >>= 1;
        }
        return r;
    }

    FieldElement inv(const FieldElement& a) const
    {
        require(!is_zero(a), "field inverse of zero");
        return pow(a, q_ - 2);
    }

    bool is_zero(const FieldElement& a) const
    {
        check(a);
        for (u64 c : a.coeffs)
            if (c != 0)
                return false;
        return true;
    }

    u64 multiplicative_order(const FieldElement& a) const
    {
        require(!is_zero(a), "multiplicative order of zero");
        u64 order = q_ - 1;
        if (order == 1)
            return 1;
        for (const auto& pp : factorize(q_ - 1).factors) {
            for (unsigned i = 0; i < pp.e; ++i) {
                if (pow(a, order / pp.p) != one())
                    break;
                order /= pp.p;
            }
        }
        return order;
    }

    u64 mul_index(u64 a, u64 b) const { return to_index(mul(from_index(a), from_index(b))); }

    std::string name() const { return "GF(" + std::to_string(p_) + "^" + std::to_string(e_) + ")"; }

private:
    void check(const FieldElement& x) const
    {
        require(x.p == p_ && x.e == e_ && x.coeffs.size() == e_,
                "field element does not belong to " + name());
    }

    u64 p_ = 0;
    unsigned e_ = 0;
    u64 q_ = 0;
    std::vector<u64> modulus_;
};

/// GF(p^e) with the smallest monic irreducible modulus of degree e, where
/// candidates are ordered by the base-p index of their lower coefficients.
inline FieldSpec field_make(u64 p, unsigned e)
{
    require(is_prime(p), "field_make: p = " + std::to_string(p) + " is not prime");
    require(e >= 1 && e <= 8, "field_make: exponent must be in [1, 8]");
    u64 q = 1;
    for (unsigned i = 0; i < e; ++i) {
        q *= p;
        require(q <= max_modulus, "field_make: field order exceeds 2^31");
    }
    for (u64 idx = 0; idx < q; ++idx) {
        auto f = detail::monic_from_index(idx, e, p);
        if (detail::is_irreducible(f, p))
            return FieldSpec(p, e, std::move(f));
    }
    throw invalid_parameter("field_make: no irreducible polynomial found");
}

/// Primitive element with the smallest canonical index.
inline FieldElement primitive_element(const FieldSpec& field)
{
    const u64 q = field.order();
    for (u64 idx = 1; idx < q; ++idx) {
        auto x = field.from_index(idx);
        if (field.multiplicative_order(x) == q - 1)
            return x;
    }
    throw invalid_parameter("primitive_element: none found");
}

/// primitive_element^((q-1)/k), the unique cyclic subgroup generator of order k it determines.
inline FieldElement element_of_order(const FieldSpec& field, u64 k)
{
    const u64 q = field.order();
    require(k >= 2 && (q - 1) % k == 0,
            "element_of_order: k = " + std::to_string(k) + " must be >= 2 and divide " +
                std::to_string(q - 1));
    return field.pow(primitive_element(field), (q - 1) / k);
}

inline std::ostream& operator<<(std::ostream& os, const FieldElement& x)
{
    bool first = true;
    for (std::size_t i = x.coeffs.size(); i-- > 0;) {
        if (x.coeffs[i] == 0)
            continue;
        if (!first)
            os << '+';
        first = false;
        if (i == 0 || x.coeffs[i] != 1)
            os << x.coeffs[i];
        if (i >= 1)
            os << 'X';
        if (i >= 2)
            os << '^' << i;
    }
    if (first)
        os << '0';
    return os;
}

} // namespace mendel
