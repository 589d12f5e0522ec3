#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <map>
#include <string>

#include "qwirt/quaternion.hpp"

namespace qwirt {

/// Largest supported number of quaternionic variables.
inline constexpr int kMaxVars = 8;

/// A subset K of {1,...,n}; bit h-1 is set iff h is in K. Indexes the
/// basis e_K of R^{2^n}.
struct SubsetMask {
    std::uint32_t bits = 0;

    constexpr SubsetMask() = default;
    constexpr explicit SubsetMask(std::uint32_t b) : bits(b) {}

    /// {h} for a 1-based variable index.
    static constexpr SubsetMask single(int h) { return SubsetMask(1u << (h - 1)); }
    /// {1,...,m}.
    static constexpr SubsetMask prefix(int m) { return SubsetMask((1u << m) - 1u); }

    constexpr bool contains(int h) const { return (bits >> (h - 1)) & 1u; }
    constexpr SubsetMask with(int h) const { return SubsetMask(bits | (1u << (h - 1))); }
    constexpr SubsetMask without(int h) const { return SubsetMask(bits & ~(1u << (h - 1))); }
    constexpr int size() const { return std::popcount(bits); }
    constexpr bool empty() const { return bits == 0; }
    constexpr bool intersects(SubsetMask o) const { return (bits & o.bits) != 0; }

    constexpr SubsetMask operator&(SubsetMask o) const { return SubsetMask(bits & o.bits); }
    constexpr SubsetMask operator|(SubsetMask o) const { return SubsetMask(bits | o.bits); }
    constexpr SubsetMask operator^(SubsetMask o) const { return SubsetMask(bits ^ o.bits); }

    constexpr auto operator<=>(const SubsetMask&) const = default;
};

/// Human-readable `{1,3}` form.
std::string to_string(SubsetMask k);

struct BasisProduct {
    int sign;
    SubsetMask mask;
};

/// e_H e_K = (-1)^{|H∩K|} e_{HΔK}.
constexpr BasisProduct basis_mul(SubsetMask h, SubsetMask k) {
    return {(h & k).size() % 2 == 0 ? 1 : -1, h ^ k};
}

/// Element Σ_K e_K a_K of H ⊗ R^{2^n}, stored sparsely (absent = 0, and no
/// zero coefficient is ever stored).
class StemElement {
public:
    using Map = std::map<SubsetMask, QuatQ>;

    StemElement() = default;
    StemElement(SubsetMask k, QuatQ a) { add(k, a); }

    static StemElement scalar(QuatQ a) { return StemElement(SubsetMask{}, std::move(a)); }

    const Map& components() const { return components_; }
    bool is_zero() const { return components_.empty(); }
    QuatQ component(SubsetMask k) const;

    void add(SubsetMask k, const QuatQ& a);

    StemElement& operator+=(const StemElement& o);
    StemElement& operator-=(const StemElement& o);
    StemElement operator-() const;
    friend StemElement operator+(StemElement a, const StemElement& b) { return a += b; }
    friend StemElement operator-(StemElement a, const StemElement& b) { return a -= b; }

    /// Right multiplication of every coefficient by a quaternion.
    StemElement times_right(const QuatQ& a) const;
    StemElement scaled(const Rational& s) const;

    friend bool operator==(const StemElement& a, const StemElement& b) {
        return a.components_ == b.components_;
    }

private:
    Map components_;
};

/// Tensor product: (a⊗e_H)(b⊗e_K) = (ab)⊗e_H e_K, extended bilinearly.
StemElement stem_mul(const StemElement& u, const StemElement& v);

/// Complex structure J_h: e_K -> e_{K∪{h}} if h∉K, -e_{K∖{h}} if h∈K;
/// quaternion coefficients are untouched.
StemElement apply_J(int h, const StemElement& u);

}  // namespace qwirt
