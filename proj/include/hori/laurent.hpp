#pragma once

#include "hori/tduality.hpp"

#include <map>
#include <optional>

namespace hori {

/// A DGCA together with one even generator formally inverted; the ambient
/// ring of the graded Laurent series built below. The differential of
/// negative powers follows d(xi^m) = m xi^{m-1} d(xi) for all integers m.
struct LaurentContext {
    FreeDGCA algebra;
    int xi = 0;

    const GeneratorInfo& xi_info() const { return algebra.signature()->gen(xi); }
    bool same_as(const LaurentContext& other) const
    {
        return xi == other.xi && algebra.same_as(other.algebra);
    }
};

LaurentContext invert_generator(const FreeDGCA& G, std::string_view xi_name);

/// A finitely supported graded Laurent series sum_n c_n xi^{-n}, with each
/// coefficient c_n free of xi. `shift` is the degree-shift bookkeeping of
/// the ambient complex: the displayed degree of a homogeneous element is
/// its underlying degree minus the shift. `known_up_to`, when present,
/// marks the element as a truncation: coefficients with key > known_up_to
/// are unknown rather than zero (used by the q-expansion layer).
class LaurentElement {
public:
    LaurentElement() = default;
    explicit LaurentElement(LaurentContext ctx, int shift = 0);

    static LaurentElement from_element(const LaurentContext& ctx, const GradedElement& a,
                                       int shift = 0);

    const LaurentContext& context() const { return ctx_; }
    const std::map<int, GradedElement>& coefficients() const { return coeffs_; }
    int shift() const { return shift_; }
    std::optional<int> known_up_to() const { return known_up_to_; }

    LaurentElement& set_coefficient(int n, GradedElement c);
    LaurentElement& set_known_up_to(std::optional<int> bound);
    GradedElement coefficient(int n) const;

    /// xi^{-n} as an element of the context (with shift bookkeeping tag).
    static LaurentElement xi_power(const LaurentContext& ctx, int neg_exponent, int shift = 0);

    bool is_zero() const { return coeffs_.empty(); }
    LaurentElement operator+(const LaurentElement& rhs) const;
    LaurentElement operator-(const LaurentElement& rhs) const;
    LaurentElement operator-() const;
    LaurentElement operator*(const LaurentElement& rhs) const;
    LaurentElement operator*(const Scalar& c) const;
    /// Coefficient-wise left multiplication by an element free of xi.
    LaurentElement scale_left(const GradedElement& a) const;

    bool operator==(const LaurentElement& rhs) const;
    /// Equality of all coefficients with key <= window (for truncated data).
    bool agrees_up_to(const LaurentElement& rhs, int window) const;

    /// The differential of the ambient DGCA, extended by
    /// d(xi^{-n}) = -n xi^{-n-1} d(xi).
    LaurentElement d() const;

    /// Formal derivative d/dxi; lowers the underlying degree by 2, so the
    /// result carries shift - 2.
    LaurentElement xi_derivative() const;

    /// Underlying degree: degree(c_n) - 2n, common over all terms.
    DegreeInfo underlying_degree() const;
    DegreeInfo displayed_degree() const;

    std::string to_string() const;

private:
    void prune();
    LaurentContext ctx_;
    std::map<int, GradedElement> coeffs_; // key n <-> xi^{-n}
    int shift_ = 0;
    std::optional<int> known_up_to_;
};

/// The four component series of an element of a doubly extended gerbe:
/// c_n = alpha_n + e1L*beta_n + e1R*gamma_n + e1L*e1R*delta_n.
struct HoriComponents {
    std::map<int, GradedElement> alpha, beta, gamma, delta;
};

/// The Laurent extensions of one gerbe tower and the maps between them:
/// the inclusions, the extended isomorphism, the projections, and the
/// left/right graded Hori transforms they compose to.
class HoriTransformer {
public:
    explicit HoriTransformer(GerbeTower tower);

    const GerbeTower& tower() const { return tower_; }
    const LaurentContext& GL_hat() const { return GL_hat_; }
    const LaurentContext& GR_hat() const { return GR_hat_; }
    const LaurentContext& GLext_hat() const { return GLext_hat_; }
    const LaurentContext& GRext_hat() const { return GRext_hat_; }

    /// Inclusion of the left gerbe into its double extension (adds the
    /// e1R direction; components (alpha, beta) become (alpha, beta, 0, 0)).
    LaurentElement hat_iota_R(const LaurentElement& w) const;
    /// Mirror inclusion on the right.
    LaurentElement hat_iota_L(const LaurentElement& w) const;

    /// The extended gerbe isomorphism:
    /// xi2L^{-n} ↦ xi2R^{-n} - n e1L e1R xi2R^{-n-1}.
    LaurentElement hat_nu(const LaurentElement& w) const;
    /// Its inverse: xi2R^{-n} ↦ xi2L^{-n} + n e1L e1R xi2L^{-n-1}.
    LaurentElement hat_nu_inv(const LaurentElement& w) const;

    /// Projection along e1L: alpha + e1L*beta ↦ beta, into the right gerbe
    /// with shift -1.
    LaurentElement hat_pi_to_GR(const LaurentElement& w) const;
    /// Projection along e1R into the left gerbe with shift -1.
    LaurentElement hat_pi_to_GL(const LaurentElement& w) const;

    /// The graded Hori transforms: pull-iso-push composites.
    LaurentElement hori_LR(const LaurentElement& w) const;
    LaurentElement hori_RL(const LaurentElement& w) const;

    /// Closed forms (sum beta_n xi^{-n} + e1* sum -n alpha_n xi^{-n-1}),
    /// kept separate so tests can pit them against the composites.
    LaurentElement hori_LR_closed_form(const LaurentElement& w) const;
    LaurentElement hori_RL_closed_form(const LaurentElement& w) const;

    /// Component split of an element over one of the doubly extended
    /// contexts.
    HoriComponents components(const LaurentElement& w) const;
    LaurentElement from_components(const LaurentContext& ctx, const HoriComponents& comps,
                                   int shift) const;

    /// Restricts a doubly extended element that does not use the extra
    /// degree-1 generator back to the plain gerbe (and conversely the
    /// inclusions hat_iota_* promote).
    LaurentElement to_left_gerbe(const LaurentElement& w) const;   // needs no e1R
    LaurentElement to_right_gerbe(const LaurentElement& w) const;  // needs no e1L

    /// Coefficients of a series whose entries lie in the base algebra A,
    /// re-tagged over A: the manifest identification of both gerbes with
    /// pairs of A-series, under which the transforms become matrices.
    std::map<int, GradedElement> base_series(const LaurentElement& w) const;

    /// Pack a pair of xi-series with coefficients free of e1L/e1R as
    /// first + e1L*second (over the left gerbe) or first + e1R*second.
    LaurentElement pack_pair(const LaurentContext& ctx, const LaurentElement& first,
                             const LaurentElement& second) const;
    std::pair<LaurentElement, LaurentElement> unpack_pair(const LaurentElement& w) const;

private:
    GerbeTower tower_;
    LaurentContext GL_hat_, GR_hat_, GLext_hat_, GRext_hat_;
    DgcaMorphism nu_, nu_inv_;
};

} // namespace hori
