#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qwirt/numeric_ops.hpp"
#include "qwirt/sampling.hpp"
#include "qwirt/slice_function.hpp"

namespace qwirt {

enum class Flavor { SP, A, Gamma };

std::string to_string(Flavor f);

using FamilyEntry = std::variant<SliceFunction, NumericField>;

/// 2^m components indexed by K ⊆ {1,...,m}.
class ComponentFamily {
public:
    ComponentFamily(Flavor flavor, int level, std::vector<FamilyEntry> entries);

    Flavor flavor() const { return flavor_; }
    int level() const { return level_; }
    int n() const { return n_; }
    bool symbolic() const { return flavor_ == Flavor::SP; }

    const FamilyEntry& entry(SubsetMask k) const { return entries_.at(k.bits); }
    /// Symbolic entry; throws InvalidArgument for numeric families.
    const SliceFunction& slice_entry(SubsetMask k) const;
    /// Entry as a numeric field (symbolic entries are lifted once).
    const NumericField& field(SubsetMask k) const { return fields_.at(k.bits); }
    std::size_t size() const { return entries_.size(); }

private:
    Flavor flavor_;
    int level_;
    int n_;
    std::vector<FamilyEntry> entries_;
    std::vector<NumericField> fields_;
};

/// SP^m_K(f) = (x_m^{1_K(m)} SP^{m-1}_{K∖{m}}(f))'_{s,x_m}.
ComponentFamily sp_components(const SliceFunction& f, int m);

/// A^m_K(f) = -∂_{CF,x_m}(x_m^{1_K(m)} A^{m-1}_{K∖{m}}(f)).
ComponentFamily a_components(const NumericField& f, int m);

/// Γ^m_K(f) = (2 Im(x_m))^{-1} Γ_{x_m}(x_m^{1_K(m)} Γ^{m-1}_{K∖{m}}(f)).
ComponentFamily gamma_components(const NumericField& f, int m);

/// (-x̄_{k_1}) ... (-x̄_{k_p}) over k_1 < ... < k_p in `k`.
QuatD ordered_conj_product(SubsetMask k, std::span<const QuatD> x);

/// Σ_K (-x̄)_{K^c} entry_K(x), complements taken in {1,...,level}.
QuatD reconstruct(const ComponentFamily& family, std::span<const QuatD> x);

/// The same sum formed with slice products; symbolic families only.
SliceFunction reconstruct(const ComponentFamily& family);

struct UniquenessReport {
    bool reconstructs;
    bool equals_sp;

    bool holds() const { return reconstructs && equals_sp; }
    /// The two conditions agree, as uniqueness predicts.
    bool consistent() const { return reconstructs == equals_sp; }
};

/// Compares a symbolic candidate against f. Throws InvalidArgument if an
/// entry has a component whose mask meets {1,...,level}.
UniquenessReport check_uniqueness(const SliceFunction& f, const ComponentFamily& candidate);

/// SD_ε f: spherical value (ε = 0) or derivative (ε = 1) in x_1, ..., x_{h-1}.
SliceFunction truncated_sd(const SliceFunction& f, std::span<const int> eps, int h);

/// Largest |entry_K(y') - entry_K(y)| over `rotations` points y' that
/// replace the units of y_1..y_level by random ones.
double check_zonal(const ComponentFamily& family, std::span<const QuatD> y, int rotations, Rng& rng);

}  // namespace qwirt
