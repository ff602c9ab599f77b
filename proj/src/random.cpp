#include "hori/random.hpp"

namespace hori {

namespace {

void enumerate_monomials(const AlgebraSignature& sig, int ordinal, int remaining,
                         std::vector<Monomial::Factor>& acc, std::vector<Monomial>& out)
{
    if (remaining == 0) {
        out.emplace_back(sig, acc);
        return;
    }
    if (ordinal >= static_cast<int>(sig.size()))
        return;
    const GeneratorInfo& g = sig.gen(ordinal);
    // skip this generator
    enumerate_monomials(sig, ordinal + 1, remaining, acc, out);
    if (g.invertible || g.degree < 1)
        return;
    int max_exp = g.degree % 2 != 0 ? 1 : remaining / g.degree;
    for (int e = 1; e <= max_exp; ++e) {
        if (e * g.degree > remaining)
            break;
        acc.push_back({ordinal, e});
        enumerate_monomials(sig, ordinal + 1, remaining - e * g.degree, acc, out);
        acc.pop_back();
    }
}

} // namespace

std::vector<Monomial> monomials_of_degree(const SignaturePtr& sig, int degree)
{
    std::vector<Monomial> out;
    if (degree < 0)
        return out;
    std::vector<Monomial::Factor> acc;
    enumerate_monomials(*sig, 0, degree, acc, out);
    return out;
}

GradedElement random_homogeneous(Rng& rng, const SignaturePtr& sig, int degree, int max_terms)
{
    std::vector<Monomial> basis = monomials_of_degree(sig, degree);
    GradedElement out = GradedElement::zero(sig);
    if (basis.empty())
        return out;
    int terms = rng.uniform(0, max_terms);
    for (int i = 0; i < terms; ++i) {
        const Monomial& m = basis[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(basis.size()) - 1))];
        out = out + GradedElement::term(sig, m, rng.small_scalar());
    }
    return out;
}

GradedElement random_element(Rng& rng, const SignaturePtr& sig, int min_degree, int max_degree,
                             int max_terms)
{
    GradedElement out = GradedElement::zero(sig);
    for (int i = 0; i < max_terms; ++i) {
        int k = rng.uniform(min_degree, max_degree);
        out = out + random_homogeneous(rng, sig, k, 1);
    }
    return out;
}

TDualityConfig random_config(Rng& rng)
{
    // small free base with zero differential: everything in it is closed
    std::vector<std::pair<std::string, int>> gens;
    int n_even = rng.uniform(1, 3);
    for (int i = 0; i < n_even; ++i)
        gens.push_back({"w" + std::to_string(i + 1), 2});
    int n_odd = rng.uniform(0, 2);
    for (int i = 0; i < n_odd; ++i)
        gens.push_back({"s" + std::to_string(i + 1), 1});
    SignaturePtr sig = make_algebra(gens);
    std::vector<GradedElement> zero_diffs(sig->size(), GradedElement::zero(sig));
    FreeDGCA A0("A0", sig, zero_diffs);

    GradedElement fxL = random_homogeneous(rng, sig, 2, 2);
    GradedElement fxR = random_homogeneous(rng, sig, 2, 2);
    if (rng.chance(20))
        fxL = A0.zero();
    if (rng.chance(20))
        fxR = A0.zero();

    GradedElement t = fxL * fxR;
    if (t.is_zero()) {
        // fy only needs to be closed, which is automatic here
        return TDualityConfig(A0, fxL, fxR, random_homogeneous(rng, sig, 3, 2));
    }
    // trivialise fxL*fxR so that a degree-3 element with d(fy) = fxL*fxR exists
    CocycleExtension ext = extend_by_cocycle(A0, t, "v3");
    FreeDGCA A = ext.extended.with_name("A");
    GradedElement fy = ext.new_generator() +
                       promote(random_homogeneous(rng, sig, 3, 2), A.signature());
    return TDualityConfig(A, promote(fxL, A.signature()), promote(fxR, A.signature()), fy);
}

AdjunctionInstance random_adjunction_instance(Rng& rng, Side side)
{
    TDualityConfig config = random_config(rng);
    const FreeDGCA& A = config.target();
    const GradedElement& t2 = side == Side::left ? config.fxL() : config.fxR();
    const GradedElement& other = side == Side::left ? config.fxR() : config.fxL();
    CocycleExtension ext = extend_by_cocycle(A, t2, "e1", 2);
    DgcaMorphism phi =
        side == Side::left
            ? DgcaMorphism("phi", classifying().algebra, A, {t2, other, config.fy()})
            : DgcaMorphism("phi", classifying().algebra, A, {other, t2, config.fy()});
    return {std::move(config), std::move(ext), std::move(phi)};
}

GradedElement random_degree3_cocycle(Rng& rng, const AdjunctionInstance& inst, Side side)
{
    // t3 = a3 - e1 b2 is closed iff d(a3) = t2*b2 and d(b2) = 0; scale the
    // configuration's own solution and add closed strays
    const TDualityConfig& cfg = inst.config;
    Scalar c = rng.small_scalar();
    const GradedElement& other = side == Side::left ? cfg.fxR() : cfg.fxL();
    GradedElement b2 = other * c;
    GradedElement a3 = cfg.fy() * c;
    // add a closed degree-3 element of the zero-differential part
    GradedElement stray = GradedElement::zero(cfg.target().signature());
    for (const Monomial& m : monomials_of_degree(cfg.target().signature(), 3)) {
        GradedElement cand = GradedElement::term(cfg.target().signature(), m, rng.small_scalar());
        if (cfg.target().d(cand).is_zero() && rng.chance(40))
            stray = stray + cand;
    }
    a3 = a3 + stray;
    GradedElement lifted_a3 = promote(a3, inst.extension.extended.signature());
    GradedElement lifted_b2 = promote(b2, inst.extension.extended.signature());
    return lifted_a3 - inst.extension.new_generator() * lifted_b2;
}

LaurentElement random_laurent(Rng& rng, const LaurentContext& ctx, int max_abs_key,
                              std::optional<int> degree, int max_terms)
{
    const int xi_degree = ctx.xi_info().degree;
    LaurentElement out(ctx);
    for (int i = 0; i < max_terms; ++i) {
        int n = rng.uniform(-max_abs_key, max_abs_key);
        int k = degree ? *degree + n * xi_degree : rng.uniform(0, 6);
        GradedElement c = random_homogeneous(rng, ctx.algebra.signature(), k, 2);
        if (c.uses(ctx.xi) || c.is_zero())
            continue;
        out = out + LaurentElement::xi_power(ctx, n).scale_left(c);
    }
    return out;
}

QSeries random_qseries(Rng& rng, const FreeDGCA& ring, int component_degree, int n0,
                       int truncation, int max_terms)
{
    QSeries out(ring, component_degree, truncation);
    for (int i = 0; i < max_terms; ++i) {
        int n = rng.uniform(n0, truncation);
        GradedElement c = random_homogeneous(rng, ring.signature(), component_degree, 2);
        if (!c.is_zero())
            out.set_coefficient(n, out.coefficient(n) + c);
    }
    return out;
}

} // namespace hori
