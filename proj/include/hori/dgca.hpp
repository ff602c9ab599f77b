#pragma once

#include "hori/algebra.hpp"
#include "hori/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hori {

/// A free graded-commutative algebra with a differential given on
/// generators and extended by the graded Leibniz rule. Construction checks
/// that each d(g) is homogeneous of degree |g|+1 (or zero); d∘d = 0 is a
/// separate, reportable check so that defective presentations can be
/// diagnosed rather than rejected blindly.
class FreeDGCA {
public:
    FreeDGCA() = default;
    FreeDGCA(std::string name, SignaturePtr sig, std::vector<GradedElement> diffs);

    const std::string& name() const { return name_; }
    const SignaturePtr& signature() const { return sig_; }
    const GradedElement& diff_of(int ordinal) const { return diffs_.at(static_cast<std::size_t>(ordinal)); }

    /// Leibniz extension of the generator differential.
    GradedElement d(const GradedElement& a) const;

    CheckReport check_d_squared() const;

    /// Same presentation under a different display name.
    FreeDGCA with_name(std::string name) const;

    /// Zero element / constants / single generators over this algebra.
    GradedElement zero() const { return GradedElement::zero(sig_); }
    GradedElement one() const { return GradedElement::constant(sig_, Scalar(1)); }
    GradedElement gen(int ordinal) const { return GradedElement::generator(sig_, ordinal); }
    GradedElement gen(std::string_view name) const;

    bool same_as(const FreeDGCA& other) const;

private:
    std::string name_;
    SignaturePtr sig_;
    std::vector<GradedElement> diffs_;
};

/// A degree-shifted element: displayed degree = degree(underlying) - shift,
/// following A[s]^k = A^{k+s}; the shifted differential is (-1)^s d.
struct ShiftedElement {
    GradedElement underlying;
    int shift = 0;

    DegreeInfo displayed_degree() const;
    bool operator==(const ShiftedElement& rhs) const
    {
        return shift == rhs.shift && underlying == rhs.underlying;
    }
};

/// Applies the shifted differential d_[s] = (-1)^s d.
ShiftedElement shifted_d(const FreeDGCA& A, const ShiftedElement& b);

/// A generator-image assignment between two free DGCAs.
class DgcaMorphism {
public:
    DgcaMorphism() = default;
    DgcaMorphism(std::string name, FreeDGCA source, FreeDGCA target,
                 std::vector<GradedElement> images);

    static DgcaMorphism identity(const FreeDGCA& A);

    const std::string& name() const { return name_; }
    const FreeDGCA& source() const { return source_; }
    const FreeDGCA& target() const { return target_; }
    const GradedElement& image_of(int ordinal) const { return images_.at(static_cast<std::size_t>(ordinal)); }

    /// Substitutes generator images into an element of the source algebra.
    GradedElement apply(const GradedElement& a) const;

    /// Degree preservation and the chain-map condition on every generator.
    /// Checking on generators is sound and complete for free presentations;
    /// homogeneity of odd-generator images makes the odd-square relation
    /// automatic in the target.
    CheckReport check() const;

    DgcaMorphism compose_after(const DgcaMorphism& first) const; // this ∘ first

private:
    std::string name_;
    FreeDGCA source_;
    FreeDGCA target_;
    std::vector<GradedElement> images_;
};

/// The extension A ↦ A_t: one new generator e of degree n-1 with d(e) = t.
struct CocycleExtension {
    FreeDGCA base;
    GradedElement cocycle;
    int cocycle_degree = 0;
    int new_ordinal = 0;
    FreeDGCA extended;
    DgcaMorphism inclusion;

    GradedElement new_generator() const { return extended.gen(new_ordinal); }
    const std::string& generator_name() const
    {
        return extended.signature()->gen(new_ordinal).name;
    }
};

/// Adjoins a generator trivialising the closed homogeneous element t.
/// When t = 0 the cocycle degree cannot be inferred and must be supplied.
CocycleExtension extend_by_cocycle(const FreeDGCA& A, const GradedElement& t,
                                   const std::string& name,
                                   std::optional<int> cocycle_degree = std::nullopt);

/// Functorial extension of f : (A,t) -> (B,s) with f(t) = s to the
/// trivialising extensions.
DgcaMorphism extend_morphism(const DgcaMorphism& f, const CocycleExtension& extA,
                             const CocycleExtension& extB);

/// The projection A_t -> A[-n+1], alpha + e*beta ↦ beta, defined for even
/// cocycle degree n (so that e is odd and the decomposition is binary).
ShiftedElement projection_pi(const CocycleExtension& E, const GradedElement& a);

/// The section e·(-) : A[-n+1] -> A_t of projection_pi.
GradedElement section_e(const CocycleExtension& E, const ShiftedElement& b);

} // namespace hori
