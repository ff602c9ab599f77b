#pragma once

#include "hori/laurent.hpp"

namespace hori {

/// A formal q-series with graded coefficients: sum_{n >= n0} c_n q^n with
/// every c_n homogeneous of one fixed degree, support bounded below, and
/// coefficients known up to a finite truncation order N.
class QSeries {
public:
    QSeries() = default;
    QSeries(FreeDGCA coeff_ring, int component_degree, int truncation);

    const FreeDGCA& coeff_ring() const { return ring_; }
    int component_degree() const { return degree_; }
    int truncation() const { return trunc_; }
    const std::map<int, GradedElement>& coefficients() const { return coeffs_; }

    QSeries& set_coefficient(int n, GradedElement c);
    GradedElement coefficient(int n) const;
    /// First index that can be nonzero (truncation+1 for the zero window).
    int lower_bound() const;

    QSeries operator+(const QSeries& rhs) const;
    QSeries operator-(const QSeries& rhs) const;
    QSeries operator-() const;
    QSeries operator*(const QSeries& rhs) const;
    QSeries operator*(const Scalar& c) const;

    /// Equality of every coefficient on the common known window.
    bool agrees(const QSeries& rhs) const;

    std::string to_string() const;

private:
    FreeDGCA ring_;
    std::map<int, GradedElement> coeffs_;
    int degree_ = 0;
    int trunc_ = 0;
};

/// The operator -q d/dq: coefficient map n ↦ -n c_n.
QSeries q_log_derivative(const QSeries& f);

/// A pair of series modelling the two components of the extended gerbe:
/// (degree k, degree k-1 in the shifted slot).
struct QPair {
    QSeries first;
    QSeries second;
};

/// The graded Hori transform at the q-series level: the antidiagonal
/// matrix (0 1; -q d/dq 0).
QPair hori_on_qpairs(const QPair& p);

/// A q-expansion tagged with a Jacobi-form weight; the weight is pure
/// bookkeeping (modularity of opaque coefficients is not verifiable).
struct JacobiElement {
    int weight = 0;
    QSeries expansion;
};

JacobiElement jacobi_mul(const JacobiElement& a, const JacobiElement& b); // weights add
JacobiElement jacobi_add(const JacobiElement& a, const JacobiElement& b); // equal weight
/// -(1/2πi) ∂/∂z acts on q-expansions as -q d/dq and raises the weight by 1.
JacobiElement jacobi_q_log_derivative(const JacobiElement& a);

struct JacobiPair {
    JacobiElement first;
    JacobiElement second;
};

/// Weight bookkeeping (s1, s2) ↦ (s2, s1+1); expansions transform exactly
/// as hori_on_qpairs.
JacobiPair jacobi_hori(const JacobiPair& p);

/// Tensors a coefficient DGCA with a polynomial ring on named degree-0
/// symbols standing for opaque functions of tau.
FreeDGCA with_tau_symbols(const FreeDGCA& A0, const std::vector<std::string>& names);

/// The ambient ring of the mu maps: A = A0[u^{-1},u]] with an extra formal
/// degree-2 Laurent variable xi carrying the zero differential.
struct QSetup {
    FreeDGCA A0;
    LaurentContext plain; // algebra A0 + u + xi, xi inverted
    int u_ordinal = 0;
};

QSetup make_q_setup(const FreeDGCA& A0);

/// mu_{2i}: f(q) ↦ xi^i f(u xi^{-1}); coefficient f_n q^n lands at
/// f_n u^n xi^{i-n}. The result carries shift 2i and inherits f's window.
LaurentElement mu(const QSetup& setup, int i, const QSeries& f);

/// Same map emitted into an arbitrary Laurent context containing the
/// u variable and extending f's coefficient ring.
LaurentElement mu_into(int i, const QSeries& f, const LaurentContext& ctx);

/// Inverse of mu_{2i} on elements of the expected shape: each coefficient
/// at xi^{-m} must equal (element of A0)·u^{m+i}.
QSeries mu_inverse(int i, const LaurentElement& w, const FreeDGCA& A0, int component_degree);

/// The gerbe tower over A = A0[u^{-1},u]] induced by a configuration on
/// A0, with its Laurent transforms: the setting in which the q-level
/// matrix action is conjugate to the gerbe-level Hori transform.
struct QTransport {
    QSetup setup;
    TDualityConfig config;
    GerbeTower tower;
    HoriTransformer machine;

    explicit QTransport(const TDualityConfig& config_on_A0);

    /// first + e1L * second through mu_0 ⊕ mu_0[-1] into the left gerbe.
    LaurentElement pack_left(const QPair& p) const;
    /// Pull a right-gerbe element back through mu_0[-1] ⊕ mu_{-2}.
    QPair unpack_right(const LaurentElement& w, int first_degree, int second_degree) const;
};

} // namespace hori
