#pragma once

#include "hori/error.hpp"
#include "hori/scalar.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hori {

/// One generator of a free graded-commutative algebra.
/// Generators marked invertible must be of even degree; their monomial
/// exponents may be negative (formal Laurent monomials in that generator).
struct GeneratorInfo {
    std::string name;
    int degree = 0;
    bool invertible = false;
};

class AlgebraSignature;
using SignaturePtr = std::shared_ptr<const AlgebraSignature>;

/// An ordered list of named graded generators. The order is the canonical
/// monomial order used for all normal forms, so a signature is immutable
/// and shared by every element built over it.
class AlgebraSignature {
public:
    /// Public constructor: names distinct, degrees >= 1.
    static SignaturePtr make(const std::vector<std::pair<std::string, int>>& gens);

    /// Internal constructor used by the q-series layer, which needs
    /// degree-0 coefficient symbols and invertible generators.
    static SignaturePtr make_full(std::vector<GeneratorInfo> gens, bool allow_degree_zero);

    std::size_t size() const { return gens_.size(); }
    const GeneratorInfo& gen(int ordinal) const { return gens_.at(static_cast<std::size_t>(ordinal)); }
    bool odd(int ordinal) const { return gen(ordinal).degree % 2 != 0; }
    std::optional<int> find(std::string_view name) const;

    bool same_as(const AlgebraSignature& other) const;
    /// True when `base`'s generators are an initial prefix of ours
    /// (extension algebras keep the ordinals of the base).
    bool extends(const AlgebraSignature& base) const;

    SignaturePtr extended(GeneratorInfo extra) const;

    const std::vector<GeneratorInfo>& generators() const { return gens_; }

private:
    explicit AlgebraSignature(std::vector<GeneratorInfo> gens) : gens_(std::move(gens)) {}
    std::vector<GeneratorInfo> gens_;
};

/// A normal-form monomial: factors strictly increasing in ordinal,
/// odd generators with exponent exactly 1, non-invertible generators with
/// positive exponents. The empty monomial is the unit.
class Monomial {
public:
    struct Factor {
        int ordinal;
        int exponent;
        bool operator==(const Factor&) const = default;
    };

    Monomial() = default;
    /// Validates canonical form against the signature.
    Monomial(const AlgebraSignature& sig, std::vector<Factor> factors);

    const std::vector<Factor>& factors() const { return factors_; }
    int degree() const { return degree_; }
    bool is_unit() const { return factors_.empty(); }
    int exponent_of(int ordinal) const;

    /// Term order: by degree, then lexicographically on the factor list.
    bool operator<(const Monomial& other) const;
    bool operator==(const Monomial& other) const = default;

private:
    friend class GradedElement;
    std::vector<Factor> factors_;
    int degree_ = 0;
};

/// degree_of() result: a common degree, "any degree" (zero element),
/// or inhomogeneous.
struct DegreeInfo {
    enum class Kind { homogeneous, any, mixed };
    Kind kind = Kind::any;
    int value = 0; // meaningful for homogeneous only

    bool is(int k) const { return kind != Kind::mixed && (kind == Kind::any || value == k); }
    std::string to_string() const;
};

/// An element of a free graded-commutative algebra over the rationals:
/// a finite rational-linear combination of monomials in canonical form.
/// Immutable value type; all operations return new values.
class GradedElement {
public:
    GradedElement() = default; // unusable until given a signature

    static GradedElement zero(SignaturePtr sig);
    static GradedElement constant(SignaturePtr sig, const Scalar& c);
    static GradedElement generator(SignaturePtr sig, int ordinal);
    static GradedElement term(SignaturePtr sig, Monomial m, const Scalar& c);

    const SignaturePtr& signature() const { return sig_; }
    const std::map<Monomial, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    GradedElement operator+(const GradedElement& rhs) const;
    GradedElement operator-(const GradedElement& rhs) const;
    GradedElement operator-() const;
    GradedElement operator*(const GradedElement& rhs) const;
    GradedElement operator*(const Scalar& c) const;
    bool operator==(const GradedElement& rhs) const;
    bool operator!=(const GradedElement& rhs) const { return !(*this == rhs); }

    GradedElement pow(int exponent) const;

    DegreeInfo degree() const;
    GradedElement homogeneous_part(int k) const;
    /// Splits into homogeneous components, ascending degree.
    std::vector<std::pair<int, GradedElement>> homogeneous_parts() const;

    bool uses(int ordinal) const;
    /// Largest exponent of `ordinal` over all terms (0 when absent).
    int max_exponent(int ordinal) const;

    /// Unique binary decomposition a = alpha + g*beta with alpha, beta free
    /// of g. Requires that no term carries g with exponent > 1; beta absorbs
    /// the Koszul sign so that g*beta reproduces the g-part exactly.
    std::pair<GradedElement, GradedElement> decompose(int ordinal) const;

    std::string to_string() const;

private:
    GradedElement(SignaturePtr sig, std::map<Monomial, Scalar> terms)
        : sig_(std::move(sig)), terms_(std::move(terms)) {}
    void add_term(const Monomial& m, const Scalar& c);

    SignaturePtr sig_;
    std::map<Monomial, Scalar> terms_;
};

inline GradedElement operator*(const Scalar& c, const GradedElement& e) { return e * c; }

/// make_algebra from the public surface: returns the signature fixing the
/// generator order used for all normal forms.
SignaturePtr make_algebra(const std::vector<std::pair<std::string, int>>& gens);

/// Re-tags an element over an extension of its signature (base generators
/// keep their ordinals, so terms are unchanged).
GradedElement promote(const GradedElement& e, SignaturePtr target);

/// Maps an element into a (generally unrelated) signature by generator
/// name; throws if a used generator is absent or has a different degree.
GradedElement restrict_to(const GradedElement& e, SignaturePtr target);

/// Picks the finer of the two signatures when one extends the other and
/// returns both elements over it.
std::pair<GradedElement, GradedElement> harmonize(const GradedElement& a, const GradedElement& b);

} // namespace hori
