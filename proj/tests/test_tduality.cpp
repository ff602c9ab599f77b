#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hori/random.hpp"
#include "hori/tduality.hpp"

using namespace hori;

TEST_CASE("the classifying algebra and its distinguished maps")
{
    const Classifying& c = classifying();
    CHECK(c.algebra.check_d_squared().all_pass());
    CHECK(c.p_L.check().all_pass());
    CHECK(c.p_R.check().all_pass());
    CHECK(c.sigma.check().all_pass());

    // sigma is an involution exchanging p_L and p_R
    DgcaMorphism twice = c.sigma.compose_after(c.sigma);
    for (int i = 0; i < 3; ++i)
        CHECK(twice.image_of(i) == c.algebra.gen(i));
    CHECK(c.sigma.compose_after(c.p_L).image_of(0) == c.p_R.image_of(0));
    CHECK(c.sigma.compose_after(c.p_R).image_of(0) == c.p_L.image_of(0));
}

TEST_CASE("universal_config satisfies d(fy) = fxL*fxR by dy3 = x2L x2R")
{
    TDualityConfig cfg = universal_config();
    CHECK(cfg.target().d(cfg.fy()) == cfg.fxL() * cfg.fxR());
    CHECK(cfg.induced_morphism().check().all_pass());
}

TEST_CASE("degenerate and invalid configurations")
{
    SignaturePtr sig = make_algebra({{"w2", 2}});
    FreeDGCA A0("A0", sig, {GradedElement::zero(sig)});
    GradedElement w2 = A0.gen("w2");

    TDualityConfig degenerate(A0, w2, A0.zero(), A0.zero());
    CHECK(degenerate.induced_morphism().check().all_pass());

    // fy = 0 while fxL*fxR != 0 violates the structure relation
    CHECK_THROWS_AS(TDualityConfig(A0, w2, w2, A0.zero()), Error);
}

TEST_CASE("config validity is equivalent to morphism validity")
{
    Rng rng(3);
    for (int i = 0; i < 40; ++i) {
        TDualityConfig cfg = random_config(rng);
        CHECK(cfg.induced_morphism().check().all_pass());
    }
    // and a broken triple fails both ways
    SignaturePtr sig = make_algebra({{"w2", 2}});
    FreeDGCA A0("A0", sig, {GradedElement::zero(sig)});
    GradedElement w2 = A0.gen("w2");
    CHECK_THROWS_AS(TDualityConfig(A0, w2, w2, A0.zero()), Error);
    DgcaMorphism raw("raw", classifying().algebra, A0, {w2, w2, A0.zero()});
    CHECK(!raw.check().all_pass());
}

TEST_CASE("reserved generator names are rejected in tower targets")
{
    SignaturePtr sig = make_algebra({{"e1L", 1}});
    FreeDGCA A0("A0", sig, {GradedElement::zero(sig)});
    CHECK_THROWS_AS(TDualityConfig(A0, A0.zero(), A0.zero(), A0.zero()), Error);
}

TEST_CASE("the universal gerbe tower")
{
    GerbeTower tower = build_gerbe_tower(universal_config());
    CHECK(tower.algebras().size() == 9);
    CHECK(tower.verify().all_pass());

    // d(xi2L) = y3 - e1L*x2R
    const FreeDGCA& GL = tower.G_L;
    CHECK(GL.d(GL.gen(kXi2L)) == GL.gen("y3") - GL.gen(kE1L) * GL.gen("x2R"));

    // GL_ext carries d(xi2L) = fy - e1L*fxR alongside d(e1R) = fxR
    const FreeDGCA& GLx = tower.GL_ext;
    CHECK(GLx.d(GLx.gen(kXi2L)) == GLx.gen("y3") - GLx.gen(kE1L) * GLx.gen("x2R"));
    CHECK(GLx.d(GLx.gen(kE1R)) == GLx.gen("x2R"));
    CHECK(GLx.d(GLx.gen(kE1L)) == GLx.gen("x2L"));
}

TEST_CASE("the degenerate tower is a free extension")
{
    SignaturePtr sig = make_algebra({{"w2", 2}});
    FreeDGCA A0("A0", sig, {GradedElement::zero(sig)});
    TDualityConfig cfg(A0, A0.zero(), A0.zero(), A0.zero());
    GerbeTower tower = build_gerbe_tower(cfg);
    CHECK(tower.verify().all_pass());
    CHECK(tower.A_LR.d(tower.A_LR.gen(kE1L)).is_zero());
    CHECK(tower.A_LR.d(tower.A_LR.gen(kE1R)).is_zero());
    CHECK(tower.G_L.d(tower.G_L.gen(kXi2L)).is_zero());
    CHECK(tower.G_R.d(tower.G_R.gen(kXi2R)).is_zero());
}

TEST_CASE("towers verify on randomized configurations")
{
    Rng rng(9);
    for (int i = 0; i < 25; ++i) {
        GerbeTower tower = build_gerbe_tower(random_config(rng));
        CHECK(tower.verify().all_pass());
    }
}

TEST_CASE("nu and nu_inv are mutually inverse DGCA isomorphisms")
{
    Rng rng(15);
    std::vector<TDualityConfig> configs{universal_config()};
    for (int i = 0; i < 10; ++i)
        configs.push_back(random_config(rng));

    for (const TDualityConfig& cfg : configs) {
        GerbeTower tower = build_gerbe_tower(cfg);
        DgcaMorphism fwd = nu(tower);
        DgcaMorphism bwd = nu_inv(tower);
        CHECK(fwd.check().all_pass());
        CHECK(bwd.check().all_pass());

        DgcaMorphism round = bwd.compose_after(fwd);
        for (std::size_t i = 0; i < tower.GL_ext.signature()->size(); ++i)
            CHECK(round.image_of(static_cast<int>(i)) == tower.GL_ext.gen(static_cast<int>(i)));
        DgcaMorphism round2 = fwd.compose_after(bwd);
        for (std::size_t i = 0; i < tower.GR_ext.signature()->size(); ++i)
            CHECK(round2.image_of(static_cast<int>(i)) == tower.GR_ext.gen(static_cast<int>(i)));
    }
}

TEST_CASE("nu sends xi2L to xi2R + e1L e1R and fixes A_LR")
{
    GerbeTower tower = build_gerbe_tower(universal_config());
    DgcaMorphism fwd = nu(tower);
    const FreeDGCA& GR = tower.GR_ext;
    CHECK(fwd.apply(tower.GL_ext.gen(kXi2L)) ==
          GR.gen(kXi2R) + GR.gen(kE1L) * GR.gen(kE1R));
    CHECK(fwd.apply(tower.GL_ext.gen(kE1L)) == GR.gen(kE1L));
    CHECK(fwd.apply(tower.GL_ext.gen("y3")) == GR.gen("y3"));

    // d(nu(xi2L)) = nu(d(xi2L)) expands to fy - e1L*fxR
    GradedElement expected = GR.gen("y3") - GR.gen(kE1L) * GR.gen("x2R");
    CHECK(GR.d(fwd.apply(tower.GL_ext.gen(kXi2L))) == expected);
    CHECK(fwd.apply(tower.GL_ext.d(tower.GL_ext.gen(kXi2L))) == expected);
}

TEST_CASE("hofib/cyc forward: the universal example")
{
    GerbeTower tower = build_gerbe_tower(universal_config());
    const CocycleExtension& E = tower.ext_AL; // A_{x2L} with generator e1L
    DgcaMorphism phi = DgcaMorphism::identity(classifying().algebra);

    GradedElement t3 = hofib_cyc_forward(E, phi, Side::left);
    const FreeDGCA& AL = E.extended;
    CHECK(t3 == AL.gen("y3") - AL.gen(kE1L) * AL.gen("x2R"));
    CHECK(AL.d(t3).is_zero());

    // right-decorated reading exchanges the roles
    const CocycleExtension& ER = tower.ext_AR;
    GradedElement t3r = hofib_cyc_forward(ER, phi, Side::right);
    CHECK(t3r == ER.extended.gen("y3") - ER.extended.gen(kE1R) * ER.extended.gen("x2L"));

    // phi with phi(x2R) = 0 and closed phi(y3) = c returns c
    SignaturePtr sig = make_algebra({{"w2", 2}, {"c3", 3}});
    FreeDGCA A("A", sig, {GradedElement::zero(sig), GradedElement::zero(sig)});
    DgcaMorphism phi0("phi0", classifying().algebra, A,
                      {A.gen("w2"), A.zero(), A.gen("c3")});
    CocycleExtension E0 = extend_by_cocycle(A, A.gen("w2"), "e1", 2);
    CHECK(hofib_cyc_forward(E0, phi0, Side::left) ==
          promote(A.gen("c3"), E0.extended.signature()));

    // phi(x2L) must match the extension cocycle
    CHECK_THROWS_AS(hofib_cyc_forward(E0, phi0, Side::right), Error);
}

TEST_CASE("hofib/cyc backward: the universal example and the e1-free case")
{
    GerbeTower tower = build_gerbe_tower(universal_config());
    const CocycleExtension& E = tower.ext_AL;
    const FreeDGCA& AL = E.extended;

    GradedElement t3 = AL.gen("y3") - AL.gen(kE1L) * AL.gen("x2R");
    DgcaMorphism psi = hofib_cyc_backward(E, t3, Side::left);
    CHECK(psi.check().all_pass());
    DgcaMorphism id = DgcaMorphism::identity(classifying().algebra);
    for (int i = 0; i < 3; ++i)
        CHECK(psi.image_of(i) == id.image_of(i));

    // a closed element of A itself maps x2R to zero
    GradedElement a3 = AL.gen("y3") - AL.gen(kE1L) * AL.gen("x2R"); // closed
    GradedElement plain = a3 - a3 + promote(tower.A.zero(), AL.signature());
    (void)plain;
    GradedElement closed_in_A = AL.gen("x2L") * AL.gen("x2L"); // degree 4, not 3
    CHECK_THROWS_AS(hofib_cyc_backward(E, closed_in_A, Side::left), Error);
    CHECK_THROWS_AS(hofib_cyc_backward(E, AL.gen("y3"), Side::left), Error); // not closed
}

TEST_CASE("adjunction round trips on randomized valid inputs")
{
    Rng rng(21);
    for (int i = 0; i < 60; ++i) {
        Side side = i % 2 == 0 ? Side::left : Side::right;
        AdjunctionInstance inst = random_adjunction_instance(rng, side);
        CHECK(inst.phi.check().all_pass());

        // forward then backward reproduces phi
        GradedElement t3 = hofib_cyc_forward(inst.extension, inst.phi, side);
        CHECK(inst.extension.extended.d(t3).is_zero());
        DgcaMorphism back = hofib_cyc_backward(inst.extension, t3, side);
        CHECK(back.check().all_pass());
        for (int g = 0; g < 3; ++g)
            CHECK(back.image_of(g) == inst.phi.image_of(g));

        // backward then forward reproduces the cocycle
        GradedElement t3b = random_degree3_cocycle(rng, inst, side);
        REQUIRE(inst.extension.extended.d(t3b).is_zero());
        DgcaMorphism psi = hofib_cyc_backward(inst.extension, t3b, side);
        CHECK(psi.check().all_pass());
        CHECK(hofib_cyc_forward(inst.extension, psi, side) == t3b);
    }
}

TEST_CASE("sigma conjugation swaps the towers generator-for-generator")
{
    TDualityConfig cfg = universal_config();
    const Classifying& c = classifying();
    TDualityConfig swapped(c.algebra, c.sigma.apply(cfg.fxL()), c.sigma.apply(cfg.fxR()),
                           c.sigma.apply(cfg.fy()));
    GerbeTower tower = build_gerbe_tower(cfg);
    GerbeTower mirror = build_gerbe_tower(swapped);

    // identity on A, e1L <-> e1R, xi2L -> xi2R identifies mirror.GL_ext
    // with tower.GR_ext as DGCAs
    std::vector<GradedElement> images;
    for (const auto& g : mirror.GL_ext.signature()->generators()) {
        std::string target = g.name;
        if (target == kE1L)
            target = kE1R;
        else if (target == kE1R)
            target = kE1L;
        else if (target == kXi2L)
            target = kXi2R;
        images.push_back(tower.GR_ext.gen(target));
    }
    DgcaMorphism rename("swapLR", mirror.GL_ext, tower.GR_ext, images);
    CHECK(rename.check().all_pass());
}

TEST_CASE("tower summary golden rendering for the universal configuration")
{
    GerbeTower tower = build_gerbe_tower(universal_config());
    std::string summary = tower_summary(tower);
    CHECK(summary.find("algebra classifying: x2L:2 x2R:2 y3:3\n  d(y3) = x2L*x2R\n") !=
          std::string::npos);
    CHECK(summary.find("algebra G_L: x2L:2 x2R:2 y3:3 e1L:1 xi2L:2\n"
                       "  d(y3) = x2L*x2R\n"
                       "  d(e1L) = x2L\n"
                       "  d(xi2L) = -x2R*e1L + y3\n") != std::string::npos);
    CHECK(summary.find("algebra GR_ext: x2L:2 x2R:2 y3:3 e1R:1 xi2R:2 e1L:1\n") !=
          std::string::npos);
    // nine blocks, one per algebra
    std::size_t blocks = 0;
    for (std::size_t pos = summary.find("algebra "); pos != std::string::npos;
         pos = summary.find("algebra ", pos + 1))
        ++blocks;
    CHECK(blocks == 9);
}
