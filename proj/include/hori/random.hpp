#pragma once

#include "hori/qseries.hpp"

#include <cstdint>
#include <random>

namespace hori {

/// Deterministic RNG for the property suites. Bounded draws go through
/// modulo reduction rather than std distributions so that a seed pins the
/// byte-exact report across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }
    int uniform(int lo, int hi) // inclusive
    {
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    bool chance(int percent) { return uniform(1, 100) <= percent; }
    Scalar small_scalar(bool nonzero = false)
    {
        int num = uniform(-4, 4);
        if (nonzero && num == 0)
            num = 1;
        int den = uniform(1, 3);
        return make_scalar(num, den);
    }

private:
    std::mt19937_64 eng_;
};

/// All monomials of the given degree over the non-invertible positive-degree
/// generators of the signature.
std::vector<Monomial> monomials_of_degree(const SignaturePtr& sig, int degree);

/// Random homogeneous element of the given degree with small rational
/// coefficients (possibly zero).
GradedElement random_homogeneous(Rng& rng, const SignaturePtr& sig, int degree,
                                 int max_terms = 3);

/// Random element supported in a degree range.
GradedElement random_element(Rng& rng, const SignaturePtr& sig, int min_degree, int max_degree,
                             int max_terms = 4);

/// Random valid T-duality configuration on a small free algebra: mixed
/// even/odd generators with zero differential, extended when necessary by
/// one generator trivialising fxL*fxR so that fy exists.
TDualityConfig random_config(Rng& rng);

/// Random morphism phi from the classifying algebra decorated on the given
/// side, valid for the hofib/cyc adjunction over E = (A, t2): a random
/// closed degree-2 image for the other cocycle and a compatible degree-3
/// image of y3 built from the tower data.
struct AdjunctionInstance {
    TDualityConfig config;
    CocycleExtension extension; // A extended by the decorated cocycle
    DgcaMorphism phi;
};
AdjunctionInstance random_adjunction_instance(Rng& rng, Side side);

/// Random degree-3 cocycle in the extension of an adjunction instance.
GradedElement random_degree3_cocycle(Rng& rng, const AdjunctionInstance& inst, Side side);

/// Random finite-support Laurent element over the context, keys in
/// [-max_abs_key, max_abs_key], homogeneous of the given displayed degree
/// when `degree` is set.
LaurentElement random_laurent(Rng& rng, const LaurentContext& ctx, int max_abs_key,
                              std::optional<int> degree = std::nullopt, int max_terms = 4);

/// Random q-series of the given component degree on the window
/// [n0, truncation].
QSeries random_qseries(Rng& rng, const FreeDGCA& ring, int component_degree, int n0,
                       int truncation, int max_terms = 6);

} // namespace hori
