#include "qwirt/almansi.hpp"

#include <algorithm>
#include <cmath>

namespace qwirt {

namespace {

void check_level(int n, int m) {
    if (m < 1 || m > n) throw ArityError("level " + std::to_string(m) + " outside 1.." + std::to_string(n));
}

int n_of(const FamilyEntry& e) {
    return std::visit([](const auto& v) { return v.n(); }, e);
}

// x_m^{1_K(m)} F applied to every entry of the previous level.
template <class Entry, class Step>
std::vector<Entry> recurse(std::vector<Entry> level0, int m, Step step) {
    std::vector<Entry> prev = std::move(level0);
    for (int h = 1; h <= m; ++h) {
        std::vector<Entry> next;
        next.reserve(std::size_t{1} << h);
        for (std::uint32_t bits = 0; bits < (1u << h); ++bits) {
            const SubsetMask k(bits);
            next.push_back(step(h, k.contains(h), prev[k.without(h).bits]));
        }
        prev = std::move(next);
    }
    return prev;
}

}  // namespace

std::string to_string(Flavor f) {
    switch (f) {
        case Flavor::SP: return "sp";
        case Flavor::A: return "a";
        default: return "gamma";
    }
}

ComponentFamily::ComponentFamily(Flavor flavor, int level, std::vector<FamilyEntry> entries)
    : flavor_(flavor), level_(level), entries_(std::move(entries)) {
    if (entries_.size() != (std::size_t{1} << level)) throw InvalidArgument("family needs 2^level entries");
    n_ = n_of(entries_.front());
    check_level(n_, level);
    fields_.reserve(entries_.size());
    for (const auto& e : entries_) {
        if (n_of(e) != n_) throw InvalidArgument("family entries disagree on n");
        if (const auto* s = std::get_if<SliceFunction>(&e)) {
            fields_.push_back(NumericField::lift(*s));
        } else {
            fields_.push_back(std::get<NumericField>(e));
        }
    }
}

const SliceFunction& ComponentFamily::slice_entry(SubsetMask k) const {
    const auto* s = std::get_if<SliceFunction>(&entry(k));
    if (!s) throw InvalidArgument("family entry is numeric");
    return *s;
}

ComponentFamily sp_components(const SliceFunction& f, int m) {
    check_level(f.n(), m);
    const int n = f.n();
    auto entries = recurse<SliceFunction>({f}, m, [n](int h, bool with_x, const SliceFunction& g) {
        return spherical_derivative(with_x ? slice_product(SliceFunction::variable(n, h), g) : g, h);
    });
    return ComponentFamily(Flavor::SP, m, std::vector<FamilyEntry>(entries.begin(), entries.end()));
}

ComponentFamily a_components(const NumericField& f, int m) {
    check_level(f.n(), m);
    auto entries = recurse<NumericField>({f}, m, [](int h, bool with_x, const NumericField& g) {
        const NumericField d = crf(with_x ? left_mul_variable(g, h) : g, h);
        return d.map([d](std::span<const QuatD> p) { return -d(p); });
    });
    return ComponentFamily(Flavor::A, m, std::vector<FamilyEntry>(entries.begin(), entries.end()));
}

ComponentFamily gamma_components(const NumericField& f, int m) {
    check_level(f.n(), m);
    auto entries = recurse<NumericField>({f}, m, [](int h, bool with_x, const NumericField& g) {
        const NumericField d = gamma(with_x ? left_mul_variable(g, h) : g, h);
        const double delta = d.config().delta;
        return d.map([d, h, delta](std::span<const QuatD> p) {
            require_off_axis(p, h, delta);
            return qinv(2.0 * p[h - 1].imag()) * d(p);
        });
    });
    return ComponentFamily(Flavor::Gamma, m, std::vector<FamilyEntry>(entries.begin(), entries.end()));
}

QuatD ordered_conj_product(SubsetMask k, std::span<const QuatD> x) {
    QuatD r(1.0);
    for (int h = 1; h <= kMaxVars; ++h) {
        if (k.contains(h)) r = r * -x[h - 1].conj();
    }
    return r;
}

QuatD reconstruct(const ComponentFamily& family, std::span<const QuatD> x) {
    const SubsetMask all = SubsetMask::prefix(family.level());
    if (!family.symbolic()) {
        for (int h = 1; h <= family.level(); ++h) require_off_axis(x, h, family.field(SubsetMask{}).config().delta);
    }
    QuatD sum;
    for (std::uint32_t bits = 0; bits < family.size(); ++bits) {
        const SubsetMask k(bits);
        sum += ordered_conj_product(all ^ k, x) * family.field(k)(x);
    }
    return sum;
}

SliceFunction reconstruct(const ComponentFamily& family) {
    const int n = family.n();
    const SubsetMask all = SubsetMask::prefix(family.level());
    SliceFunction sum = SliceFunction::zero(n);
    for (std::uint32_t bits = 0; bits < family.size(); ++bits) {
        const SubsetMask k(bits), kc = all ^ k;
        SliceFunction term = SliceFunction::constant(n, QuatQ(Rational(1)));
        for (int h = 1; h <= family.level(); ++h) {
            if (kc.contains(h)) term = slice_product(term, -SliceFunction::conj_variable(n, h));
        }
        sum += slice_product(term, family.slice_entry(k));
    }
    return sum;
}

UniquenessReport check_uniqueness(const SliceFunction& f, const ComponentFamily& candidate) {
    const SubsetMask all = SubsetMask::prefix(candidate.level());
    for (std::uint32_t bits = 0; bits < candidate.size(); ++bits) {
        if (!candidate.slice_entry(SubsetMask(bits)).stem().avoids_masks(all)) {
            throw InvalidArgument("candidate entry " + to_string(SubsetMask(bits)) + " has a mask meeting {1.." +
                                  std::to_string(candidate.level()) + "}");
        }
    }
    const ComponentFamily sp = sp_components(f, candidate.level());
    bool equal = true;
    for (std::uint32_t bits = 0; bits < candidate.size() && equal; ++bits) {
        equal = candidate.slice_entry(SubsetMask(bits)) == sp.slice_entry(SubsetMask(bits));
    }
    return {reconstruct(candidate) == f, equal};
}

SliceFunction truncated_sd(const SliceFunction& f, std::span<const int> eps, int h) {
    if (h < 2 || h > f.n()) throw ArityError("truncation index must satisfy 2 <= h <= n");
    if (static_cast<int>(eps.size()) != h - 1) throw InvalidArgument("ε needs h-1 entries");
    SliceFunction g = f;
    for (int m = 1; m < h; ++m) {
        if (eps[m - 1] != 0 && eps[m - 1] != 1) throw InvalidArgument("ε takes values in {0,1}");
        g = eps[m - 1] ? spherical_derivative(g, m) : spherical_value(g, m);
    }
    return g;
}

double check_zonal(const ComponentFamily& family, std::span<const QuatD> y, int rotations, Rng& rng) {
    const double delta = family.field(SubsetMask{}).config().delta;
    if (!family.symbolic()) {
        for (int h = 1; h <= family.level(); ++h) require_off_axis(y, h, delta);
    }
    std::vector<QuatD> base(family.size());
    for (std::uint32_t bits = 0; bits < family.size(); ++bits) base[bits] = family.field(SubsetMask(bits))(y);
    double worst = 0.0;
    Point z(y.begin(), y.end());
    for (int r = 0; r < rotations; ++r) {
        for (int h = 1; h <= family.level(); ++h) {
            z[h - 1] = QuatD(y[h - 1].w) + random_unit(rng) * std::sqrt(y[h - 1].imag_norm2());
        }
        for (std::uint32_t bits = 0; bits < family.size(); ++bits) {
            worst = std::max(worst, abs(family.field(SubsetMask(bits))(z) - base[bits]));
        }
    }
    return worst;
}

}  // namespace qwirt
