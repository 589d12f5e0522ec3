#include "qwirt/stem_algebra.hpp"

namespace qwirt {

std::string to_string(SubsetMask k) {
    std::string out = "{";
    bool first = true;
    for (int h = 1; h <= 32; ++h) {
        if (!k.contains(h)) continue;
        if (!first) out += ',';
        out += std::to_string(h);
        first = false;
    }
    return out + "}";
}

QuatQ StemElement::component(SubsetMask k) const {
    auto it = components_.find(k);
    return it == components_.end() ? QuatQ{} : it->second;
}

void StemElement::add(SubsetMask k, const QuatQ& a) {
    if (a.is_zero()) return;
    auto [it, inserted] = components_.try_emplace(k, a);
    if (inserted) return;
    it->second += a;
    if (it->second.is_zero()) components_.erase(it);
}

StemElement& StemElement::operator+=(const StemElement& o) {
    for (const auto& [k, a] : o.components_) add(k, a);
    return *this;
}

StemElement& StemElement::operator-=(const StemElement& o) {
    for (const auto& [k, a] : o.components_) add(k, -a);
    return *this;
}

StemElement StemElement::operator-() const {
    StemElement r;
    for (const auto& [k, a] : components_) r.components_.emplace(k, -a);
    return r;
}

StemElement StemElement::times_right(const QuatQ& a) const {
    StemElement r;
    for (const auto& [k, c] : components_) r.add(k, c * a);
    return r;
}

StemElement StemElement::scaled(const Rational& s) const {
    StemElement r;
    if (s == 0) return r;
    for (const auto& [k, c] : components_) r.components_.emplace(k, c * s);
    return r;
}

StemElement stem_mul(const StemElement& u, const StemElement& v) {
    StemElement r;
    for (const auto& [h, a] : u.components()) {
        for (const auto& [k, b] : v.components()) {
            const BasisProduct p = basis_mul(h, k);
            QuatQ ab = a * b;
            if (p.sign < 0) ab = -ab;
            r.add(p.mask, ab);
        }
    }
    return r;
}

StemElement apply_J(int h, const StemElement& u) {
    StemElement r;
    for (const auto& [k, a] : u.components()) {
        if (k.contains(h)) {
            r.add(k.without(h), -a);
        } else {
            r.add(k.with(h), a);
        }
    }
    return r;
}

}  // namespace qwirt
