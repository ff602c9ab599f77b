#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hori/qseries.hpp"
#include "hori/random.hpp"

using namespace hori;

namespace {

FreeDGCA scalar_ring()
{
    SignaturePtr sig = make_algebra({});
    return FreeDGCA("K", sig, {});
}

QSeries q_power(const FreeDGCA& ring, int n, int trunc, const Scalar& c = Scalar(1))
{
    QSeries f(ring, 0, trunc);
    f.set_coefficient(n, GradedElement::constant(ring.signature(), c));
    return f;
}

} // namespace

TEST_CASE("q-series arithmetic respects the truncation window")
{
    FreeDGCA K = scalar_ring();
    QSeries f = q_power(K, -2, 10) + q_power(K, 3, 10, make_scalar(5, 2));
    CHECK(f.lower_bound() == -2);
    CHECK(f.truncation() == 10);
    CHECK(f.to_string() == "1*q^-2 + 5/2*q^3 + O(q^11)");

    QSeries g = q_power(K, 1, 4);
    QSeries prod = f * g;
    // min(10 + 1, 4 + (-2)) = 2
    CHECK(prod.truncation() == 2);
    CHECK(prod.coefficient(-1) == GradedElement::constant(K.signature(), Scalar(1)));
    // the q^4 coefficient is beyond the certified window and must be absent
    CHECK(prod.coefficients().count(4) == 0);

    CHECK_THROWS_AS(f.set_coefficient(11, K.one()), Error);
}

TEST_CASE("coefficients must be homogeneous of the component degree")
{
    SignaturePtr sig = make_algebra({{"w", 2}});
    FreeDGCA A0("A0", sig, {GradedElement::zero(sig)});
    QSeries f(A0, 2, 5);
    f.set_coefficient(0, A0.gen("w"));
    CHECK_THROWS_AS(f.set_coefficient(1, A0.one()), Error);
}

TEST_CASE("q_log_derivative: power rule, constants, window")
{
    FreeDGCA K = scalar_ring();
    for (int n = -5; n <= 5; ++n) {
        QSeries f = q_power(K, n, 12);
        QSeries d = q_log_derivative(f);
        CHECK(d.coefficient(n) ==
              GradedElement::constant(K.signature(), Scalar(-n)));
        CHECK(d.truncation() == 12);
    }
    QSeries c = q_power(K, 0, 12, make_scalar(7, 3));
    CHECK(q_log_derivative(c).coefficients().empty());
}

TEST_CASE("q_log_derivative is a derivation on products")
{
    SignaturePtr sig = make_algebra({{"w", 2}});
    FreeDGCA A0("A0", sig, {GradedElement::zero(sig)});
    Rng rng(5);
    for (int i = 0; i < 40; ++i) {
        QSeries f = random_qseries(rng, A0, 2, -3, 8);
        QSeries g = random_qseries(rng, A0, 0, -2, 8);
        QSeries lhs = q_log_derivative(f * g);
        QSeries rhs = q_log_derivative(f) * g + f * q_log_derivative(g);
        CHECK(lhs.agrees(rhs));
    }
}

TEST_CASE("mu maps q-powers to u-weighted xi-powers")
{
    FreeDGCA K = scalar_ring();
    QSetup setup = make_q_setup(K);
    const SignaturePtr& sig = setup.plain.algebra.signature();
    int u = setup.u_ordinal;

    // i = 0: q^m -> u^m xi^{-m}
    for (int mth : {-3, -1, 0, 2, 5}) {
        LaurentElement w = mu(setup, 0, q_power(K, mth, 9));
        GradedElement expected =
            mth == 0 ? GradedElement::constant(sig, Scalar(1))
                     : GradedElement::term(sig, Monomial(*sig, {{u, mth}}), Scalar(1));
        CHECK(w.coefficient(mth) == expected);
        CHECK(w.shift() == 0);
        CHECK(w.known_up_to() == 9);
    }

    // f = 1 -> xi^i for any i
    for (int i : {-2, 0, 3}) {
        LaurentElement w = mu(setup, i, q_power(K, 0, 6));
        CHECK(w.coefficient(-i) == GradedElement::constant(sig, Scalar(1)));
        CHECK(w.shift() == 2 * i);
        CHECK(w.known_up_to() == 6 - i);
    }

    // i = -1: q^m -> u^m xi^{-m-1}
    LaurentElement w = mu(setup, -1, q_power(K, 4, 9));
    CHECK(w.coefficient(5) == GradedElement::term(sig, Monomial(*sig, {{u, 4}}), Scalar(1)));
    CHECK(w.shift() == -2);
}

TEST_CASE("mu_inverse undoes mu and checks the u-shape")
{
    SignaturePtr sig = make_algebra({{"w", 2}});
    FreeDGCA A0("A0", sig, {GradedElement::zero(sig)});
    QSetup setup = make_q_setup(A0);
    Rng rng(7);
    for (int i = -2; i <= 2; ++i) {
        QSeries f = random_qseries(rng, A0, 2, -4, 9);
        QSeries back = mu_inverse(i, mu(setup, i, f), A0, 2);
        CHECK(back.agrees(f));
        CHECK(back.truncation() == f.truncation());
    }
    // an element that is not in the image of mu_i is rejected
    LaurentElement bad(setup.plain);
    bad.set_coefficient(2, GradedElement::constant(setup.plain.algebra.signature(), Scalar(1)));
    CHECK_THROWS_AS(mu_inverse(0, bad, A0, 0), Error);
}

TEST_CASE("the commuting square mu_{-2} (-q d/dq) = d/dxi mu_0")
{
    SignaturePtr sig = make_algebra({{"w", 2}, {"s", 1}});
    FreeDGCA A0("A0", sig, {GradedElement::zero(sig), GradedElement::zero(sig)});
    QSetup setup = make_q_setup(A0);
    Rng rng(11);

    // every monomial q^n in the window, with a random coefficient
    for (int n = -5; n <= 20; ++n) {
        QSeries f(A0, 2, 20);
        GradedElement c = random_homogeneous(rng, sig, 2, 2);
        if (c.is_zero())
            c = A0.gen("w");
        f.set_coefficient(n, c);
        LaurentElement lhs = mu(setup, -1, q_log_derivative(f));
        LaurentElement rhs = mu(setup, 0, f).xi_derivative();
        CHECK(lhs.shift() == rhs.shift());
        CHECK(lhs.agrees_up_to(rhs, std::min(*lhs.known_up_to(), *rhs.known_up_to())));
    }

    // and on random multi-term series
    for (int i = 0; i < 25; ++i) {
        QSeries f = random_qseries(rng, A0, rng.uniform(0, 3), -5, 20);
        LaurentElement lhs = mu(setup, -1, q_log_derivative(f));
        LaurentElement rhs = mu(setup, 0, f).xi_derivative();
        CHECK(lhs.agrees_up_to(rhs, std::min(*lhs.known_up_to(), *rhs.known_up_to())));
    }
}

TEST_CASE("hori_on_qpairs is the antidiagonal matrix")
{
    FreeDGCA K = scalar_ring();
    // (q^n, 0) -> (0, -n q^n)
    for (int n : {-3, 1, 4}) {
        QPair p{q_power(K, n, 8), QSeries(K, -1, 8)};
        QPair out = hori_on_qpairs(p);
        CHECK(out.first.coefficients().empty());
        CHECK(out.second.coefficient(n) ==
              GradedElement::constant(K.signature(), Scalar(-n)));
    }
    // (0, g) -> (g, 0)
    QSeries g = q_power(K, 2, 8, make_scalar(3, 4));
    QPair swapped = hori_on_qpairs({QSeries(K, 1, 8), g});
    CHECK(swapped.first.agrees(g));
    CHECK(swapped.second.coefficients().empty());

    // double application is the diagonal -q d/dq
    SignaturePtr sig = make_algebra({{"w", 2}});
    FreeDGCA A0("A0", sig, {GradedElement::zero(sig)});
    Rng rng(13);
    for (int i = 0; i < 30; ++i) {
        QPair p{random_qseries(rng, A0, 2, -4, 10), random_qseries(rng, A0, 1, -4, 10)};
        QPair twice = hori_on_qpairs(hori_on_qpairs(p));
        CHECK(twice.first.agrees(q_log_derivative(p.first)));
        CHECK(twice.second.agrees(q_log_derivative(p.second)));
    }
}

TEST_CASE("the transported gerbe-level operator matches the matrix")
{
    Rng rng(17);
    std::vector<TDualityConfig> configs{universal_config()};
    for (int i = 0; i < 4; ++i)
        configs.push_back(random_config(rng));

    for (const TDualityConfig& cfg : configs) {
        QTransport transport(cfg);
        const FreeDGCA& A0 = transport.setup.A0;
        for (int i = 0; i < 8; ++i) {
            int k = rng.uniform(1, 3);
            QSeries f = random_qseries(rng, A0, k, -5, 12);
            QSeries g = random_qseries(rng, A0, k - 1, -5, 12);
            QPair direct = hori_on_qpairs({f, g});

            LaurentElement packed = transport.pack_left({f, g});
            LaurentElement transformed = transport.machine.hori_LR(packed);
            QPair through = transport.unpack_right(transformed, k - 1, k);

            CHECK(through.first.agrees(direct.first));
            CHECK(through.second.agrees(direct.second));
        }
    }
}

TEST_CASE("tau symbols are opaque degree-0 coefficients")
{
    SignaturePtr sig = make_algebra({{"w", 2}});
    FreeDGCA A0("A0", sig, {GradedElement::zero(sig)});
    FreeDGCA ring = with_tau_symbols(A0, {"E4", "E6"});
    CHECK(ring.signature()->size() == 3);
    CHECK(ring.signature()->gen(1).degree == 0);
    GradedElement e4 = ring.gen("E4");
    CHECK(ring.d(e4).is_zero());
    CHECK((e4 * e4).degree().value == 0);

    // q-expansions with symbolic coefficients multiply within degree 0
    QSeries f(ring, 0, 6);
    f.set_coefficient(0, ring.one());
    f.set_coefficient(1, e4 * Scalar(-24));
    QSeries sq = f * f;
    CHECK(sq.coefficient(1) == e4 * Scalar(-48));
}

TEST_CASE("jacobi weight bookkeeping")
{
    SignaturePtr sig = make_algebra({{"w", 2}});
    FreeDGCA A0("A0", sig, {GradedElement::zero(sig)});
    FreeDGCA ring = with_tau_symbols(A0, {"E4"});
    Rng rng(19);

    // products add weights, the derivation raises weight by one
    JacobiElement a{4, random_qseries(rng, ring, 0, -2, 8)};
    JacobiElement b{6, random_qseries(rng, ring, 0, -1, 8)};
    CHECK(jacobi_mul(a, b).weight == 10);
    CHECK(jacobi_q_log_derivative(a).weight == 5);
    CHECK(jacobi_q_log_derivative(a).expansion.agrees(q_log_derivative(a.expansion)));
    CHECK_THROWS_AS(jacobi_add(a, b), Error);

    // (s1, s2) -> (s2, s1+1), acting on expansions as hori_on_qpairs
    for (int i = 0; i < 25; ++i) {
        int s1 = rng.uniform(-3, 6), s2 = rng.uniform(-3, 6);
        JacobiPair p{{s1, random_qseries(rng, ring, 0, -3, 9)},
                     {s2, random_qseries(rng, ring, 0, -3, 9)}};
        JacobiPair once = jacobi_hori(p);
        CHECK(once.first.weight == s2);
        CHECK(once.second.weight == s1 + 1);
        QPair plain = hori_on_qpairs({p.first.expansion, p.second.expansion});
        CHECK(once.first.expansion.agrees(plain.first));
        CHECK(once.second.expansion.agrees(plain.second));

        // double application: the diagonal with weights (s1+1, s2+1)
        JacobiPair twice = jacobi_hori(once);
        CHECK(twice.first.weight == s1 + 1);
        CHECK(twice.second.weight == s2 + 1);
        CHECK(twice.first.expansion.agrees(q_log_derivative(p.first.expansion)));
        CHECK(twice.second.expansion.agrees(q_log_derivative(p.second.expansion)));
    }
}

TEST_CASE("the reserved name u is rejected; a user xi is sidestepped")
{
    SignaturePtr sig = make_algebra({{"u", 2}});
    FreeDGCA A0("A0", sig, {GradedElement::zero(sig)});
    CHECK_THROWS_AS(make_q_setup(A0), Error);

    SignaturePtr sig2 = make_algebra({{"xi", 2}});
    FreeDGCA B0("B0", sig2, {GradedElement::zero(sig2)});
    QSetup setup = make_q_setup(B0);
    CHECK(setup.plain.xi_info().name == "xi0");
    QSeries f(B0, 2, 5);
    f.set_coefficient(1, B0.gen("xi"));
    CHECK(mu_inverse(0, mu(setup, 0, f), B0, 2).agrees(f));
}

TEST_CASE("mu degree bookkeeping across random i")
{
    SignaturePtr sig = make_algebra({{"w", 2}});
    FreeDGCA A0("A0", sig, {GradedElement::zero(sig)});
    QSetup setup = make_q_setup(A0);
    Rng rng(23);
    for (int i = -3; i <= 3; ++i) {
        QSeries f = random_qseries(rng, A0, 2, -3, 7);
        if (f.coefficients().empty())
            continue;
        LaurentElement w = mu(setup, i, f);
        CHECK(w.shift() == 2 * i);
        // underlying degree k + 2i, displayed degree k
        CHECK(w.underlying_degree().is(2 + 2 * i));
        CHECK(w.displayed_degree().is(2));
    }
}
