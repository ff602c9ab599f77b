#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hori/algebra.hpp"
#include "hori/random.hpp"
#include "oracle.hpp"

using namespace hori;

namespace {

// the mixed-parity playground used throughout: e1L, e1R odd; the rest even
SignaturePtr playground()
{
    return make_algebra({{"e1L", 1}, {"e1R", 1}, {"x2L", 2}, {"x2R", 2}, {"y3", 3}, {"w4", 4}});
}

GradedElement gen(const SignaturePtr& sig, const char* name)
{
    return GradedElement::generator(sig, *sig->find(name));
}

} // namespace

TEST_CASE("make_algebra fixes the generator order")
{
    SignaturePtr sig = make_algebra({{"x2L", 2}, {"x2R", 2}, {"y3", 3}});
    CHECK(sig->size() == 3);
    CHECK(sig->gen(0).name == "x2L");
    CHECK(sig->gen(2).degree == 3);
    CHECK(sig->find("x2R") == 1);
    CHECK(!sig->find("nope"));
}

TEST_CASE("make_algebra on the empty presentation gives the ground field")
{
    SignaturePtr sig = make_algebra({});
    CHECK(sig->size() == 0);
    GradedElement half = GradedElement::constant(sig, make_scalar(1, 2));
    CHECK((half + half) == GradedElement::constant(sig, Scalar(1)));
}

TEST_CASE("make_algebra rejects duplicate names and nonpositive degrees")
{
    CHECK_THROWS_AS(make_algebra({{"a", 2}, {"a", 3}}), Error);
    CHECK_THROWS_AS(make_algebra({{"a", 0}}), Error);
    CHECK_THROWS_AS(make_algebra({{"a", -1}}), Error);
}

TEST_CASE("Koszul signs on degree-1 generators")
{
    SignaturePtr sig = playground();
    GradedElement e1L = gen(sig, "e1L");
    GradedElement e1R = gen(sig, "e1R");

    GradedElement lr = e1L * e1R;
    CHECK(lr.to_string() == "e1L*e1R");
    CHECK((e1R * e1L) == -lr);
    CHECK((e1L * e1L).is_zero());
    CHECK((e1R * e1R).is_zero());
}

TEST_CASE("even generators commute")
{
    SignaturePtr sig = playground();
    GradedElement a = gen(sig, "x2L");
    GradedElement b = gen(sig, "x2R");
    CHECK((a * b) == (b * a));
    CHECK((a * b).to_string() == "x2L*x2R");
}

TEST_CASE("graded commutativity against the sign rule")
{
    SignaturePtr sig = playground();
    Rng rng(7);
    for (int i = 0; i < 300; ++i) {
        int ka = rng.uniform(1, 5);
        int kb = rng.uniform(1, 5);
        GradedElement a = random_homogeneous(rng, sig, ka, 3);
        GradedElement b = random_homogeneous(rng, sig, kb, 3);
        GradedElement ab = a * b;
        GradedElement ba = b * a;
        if (ka * kb % 2 != 0)
            ba = -ba;
        CHECK(ab == ba);
    }
}

TEST_CASE("associativity and distributivity on random triples")
{
    SignaturePtr sig = playground();
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        GradedElement a = random_element(rng, sig, 0, 4);
        GradedElement b = random_element(rng, sig, 0, 4);
        GradedElement c = random_element(rng, sig, 0, 4);
        CHECK(((a * b) * c) == (a * (b * c)));
        CHECK((a * (b + c)) == (a * b + a * c));
    }
}

TEST_CASE("product signs match the transposition oracle on random pairs")
{
    SignaturePtr sig = playground();
    Rng rng(13);
    int checked = 0;
    for (int i = 0; i < 2000; ++i) {
        int ka = rng.uniform(0, 8);
        int kb = rng.uniform(0, 8 - std::min(ka, 8));
        auto basis_a = monomials_of_degree(sig, ka);
        auto basis_b = monomials_of_degree(sig, kb);
        if (basis_a.empty() || basis_b.empty())
            continue;
        const Monomial& ma = basis_a[rng.next() % basis_a.size()];
        const Monomial& mb = basis_b[rng.next() % basis_b.size()];
        GradedElement prod = GradedElement::term(sig, ma, Scalar(1)) *
                             GradedElement::term(sig, mb, Scalar(1));
        auto sign = testing::transposition_sign(*sig, ma, mb);
        if (!sign) {
            CHECK(prod.is_zero());
        } else {
            REQUIRE(prod.terms().size() == 1);
            CHECK(prod.terms().begin()->first == testing::sorted_product(*sig, ma, mb));
            CHECK(prod.terms().begin()->second == Scalar(*sign));
        }
        ++checked;
    }
    CHECK(checked > 1500);
}

TEST_CASE("degree_of reports the three cases")
{
    SignaturePtr sig = playground();
    GradedElement e1L = gen(sig, "e1L");
    GradedElement e1R = gen(sig, "e1R");

    CHECK((e1L * e1R).degree().kind == DegreeInfo::Kind::homogeneous);
    CHECK((e1L * e1R).degree().value == 2);

    GradedElement mixed = gen(sig, "x2L") + gen(sig, "y3");
    CHECK(mixed.degree().kind == DegreeInfo::Kind::mixed);
    CHECK(mixed.degree().to_string() == "inhomogeneous");

    CHECK(GradedElement::zero(sig).degree().kind == DegreeInfo::Kind::any);
    CHECK(GradedElement::zero(sig).degree().to_string() == "any degree");
}

TEST_CASE("decompose_by_generator reads off the two halves")
{
    SignaturePtr sig = playground();
    GradedElement e1L = gen(sig, "e1L");
    GradedElement e1R = gen(sig, "e1R");
    GradedElement x2L = gen(sig, "x2L");
    GradedElement x2R = gen(sig, "x2R");
    int ord = *sig->find("e1L");

    auto [alpha, beta] = (x2L + e1L * x2R).decompose(ord);
    CHECK(alpha == x2L);
    CHECK(beta == x2R);

    auto [a2, b2] = (e1L * e1R).decompose(ord);
    CHECK(a2.is_zero());
    CHECK(b2 == e1R);

    auto [a3, b3] = gen(sig, "y3").decompose(ord);
    CHECK(a3 == gen(sig, "y3"));
    CHECK(b3.is_zero());
}

TEST_CASE("decompose round-trips alpha + g*beta")
{
    SignaturePtr sig = playground();
    Rng rng(17);
    GradedElement e1L = gen(sig, "e1L");
    int ord = *sig->find("e1L");
    for (int i = 0; i < 200; ++i) {
        GradedElement a = random_element(rng, sig, 0, 6);
        auto [alpha, beta] = a.decompose(ord);
        CHECK(!alpha.uses(ord));
        CHECK(!beta.uses(ord));
        CHECK((alpha + e1L * beta) == a);
    }
}

TEST_CASE("decompose rejects repeated even generators")
{
    SignaturePtr sig = playground();
    GradedElement x = gen(sig, "x2L");
    int ord = *sig->find("x2L");
    CHECK_THROWS_AS((x * x).decompose(ord), Error);
    // a single even power is still a valid binary decomposition
    auto [alpha, beta] = (x * gen(sig, "x2R")).decompose(ord);
    CHECK(alpha.is_zero());
    CHECK(beta == gen(sig, "x2R"));
}

TEST_CASE("normal form is idempotent and zero coefficients vanish")
{
    SignaturePtr sig = playground();
    GradedElement a = gen(sig, "x2L") * make_scalar(1, 2);
    GradedElement b = a - a;
    CHECK(b.is_zero());
    CHECK(b.terms().empty());
    Rng rng(23);
    for (int i = 0; i < 100; ++i) {
        GradedElement e = random_element(rng, sig, 0, 6);
        // rebuilding from its own terms is the identity
        GradedElement rebuilt = GradedElement::zero(sig);
        for (const auto& [m, c] : e.terms())
            rebuilt = rebuilt + GradedElement::term(sig, m, c);
        CHECK(rebuilt == e);
    }
}

TEST_CASE("scalars stay in canonical reduced form")
{
    CHECK(scalar_to_string(make_scalar(4, 6)) == "2/3");
    CHECK(scalar_to_string(make_scalar(-4, 6)) == "-2/3");
    CHECK(scalar_to_string(make_scalar(3, 1)) == "3");
    CHECK(make_scalar(1, 2) + make_scalar(1, 2) == Scalar(1));
    CHECK_THROWS(make_scalar(1, 0));
}

TEST_CASE("rendering is deterministic: degree then lexicographic")
{
    SignaturePtr sig = playground();
    GradedElement e = gen(sig, "y3") + gen(sig, "x2L") * gen(sig, "x2R") * make_scalar(-1) +
                      gen(sig, "e1L") * make_scalar(3, 2);
    CHECK(e.to_string() == "3/2*e1L + y3 - x2L*x2R");
    CHECK(GradedElement::zero(sig).to_string() == "0");
}

TEST_CASE("promote and restrict move elements across extensions")
{
    SignaturePtr small = make_algebra({{"a", 2}, {"b", 3}});
    SignaturePtr big = small->extended({"c", 1, false});
    GradedElement e = GradedElement::generator(small, 0) * GradedElement::generator(small, 1);
    GradedElement lifted = promote(e, big);
    CHECK(lifted.to_string() == "a*b");
    CHECK(restrict_to(lifted, small) == e);
    GradedElement with_c = lifted * GradedElement::generator(big, 2);
    CHECK_THROWS_AS(restrict_to(with_c, small), Error);
}

TEST_CASE("signature mismatch is an error")
{
    SignaturePtr a = make_algebra({{"x", 2}});
    SignaturePtr b = make_algebra({{"y", 2}});
    CHECK_THROWS_AS(GradedElement::generator(a, 0) * GradedElement::generator(b, 0), Error);
}

TEST_CASE("restriction across reordered odd generators keeps the Koszul sign")
{
    SignaturePtr src = make_algebra({{"b", 1}, {"a", 1}, {"x", 2}});
    SignaturePtr dst = make_algebra({{"a", 1}, {"b", 1}, {"x", 2}});
    GradedElement b = GradedElement::generator(src, 0);
    GradedElement a = GradedElement::generator(src, 1);
    GradedElement x = GradedElement::generator(src, 2);

    // b*a = -a*b once the names land in the other order
    GradedElement moved = restrict_to(b * a, dst);
    GradedElement expected = -(GradedElement::generator(dst, 0) * GradedElement::generator(dst, 1));
    CHECK(moved == expected);

    // even factors do not contribute signs
    CHECK(restrict_to(b * x * a, dst) ==
          -(GradedElement::generator(dst, 0) * GradedElement::generator(dst, 1) *
            GradedElement::generator(dst, 2)));

    // round trip restores the original
    CHECK(restrict_to(moved, src) == b * a);
}

TEST_CASE("harmonize promotes along extension prefixes")
{
    SignaturePtr small = make_algebra({{"a", 2}});
    SignaturePtr big = small->extended({"b", 3, false});
    GradedElement x = GradedElement::generator(small, 0);
    GradedElement y = GradedElement::generator(big, 1);
    auto [xa, ya] = harmonize(x, y);
    CHECK(xa.signature()->same_as(*big));
    CHECK((xa * ya).to_string() == "a*b");
    SignaturePtr other = make_algebra({{"z", 2}});
    CHECK_THROWS_AS(harmonize(x, GradedElement::generator(other, 0)), Error);
}
