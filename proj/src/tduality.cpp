#include "hori/tduality.hpp"

#include <sstream>

namespace hori {

namespace {

Classifying build_classifying()
{
    Classifying c;

    SignaturePtr kx2_sig = make_algebra({{"x2", 2}});
    c.kx2 = FreeDGCA("K[x2]", kx2_sig, {GradedElement::zero(kx2_sig)});

    SignaturePtr base_sig = make_algebra({{"x2L", 2}, {"x2R", 2}});
    FreeDGCA base("K[x2L,x2R]", base_sig,
                  {GradedElement::zero(base_sig), GradedElement::zero(base_sig)});

    CocycleExtension ext = extend_by_cocycle(base, base.gen("x2L") * base.gen("x2R"), "y3");
    c.algebra = ext.extended.with_name("classifying");

    c.p_L = DgcaMorphism("p_L", c.kx2, c.algebra, {c.algebra.gen("x2L")});
    c.p_R = DgcaMorphism("p_R", c.kx2, c.algebra, {c.algebra.gen("x2R")});

    // the swap automorphism, built functorially from x2L <-> x2R on the base
    DgcaMorphism swap_base("swap", base, base, {base.gen("x2R"), base.gen("x2L")});
    DgcaMorphism sigma_ext = extend_morphism(swap_base, ext, ext);
    c.sigma = DgcaMorphism("sigma", c.algebra, c.algebra,
                           {sigma_ext.image_of(0), sigma_ext.image_of(1), sigma_ext.image_of(2)});
    return c;
}

} // namespace

const Classifying& classifying()
{
    static const Classifying instance = build_classifying();
    return instance;
}

TDualityConfig::TDualityConfig(FreeDGCA target, GradedElement fxL, GradedElement fxR,
                               GradedElement fy)
    : target_(std::move(target)), fxL_(std::move(fxL)), fxR_(std::move(fxR)), fy_(std::move(fy))
{
    for (const char* reserved : {kE1L, kE1R, kXi2L, kXi2R})
        if (target_.signature()->find(reserved))
            throw Error(std::string("target algebra uses the reserved generator name '") +
                        reserved + "'");
    const SignaturePtr& sig = target_.signature();
    for (const GradedElement* e : {&fxL_, &fxR_, &fy_})
        if (!e->signature()->same_as(*sig))
            throw Error("configuration data must live over the target algebra");
    if (!fxL_.degree().is(2) || !fxR_.degree().is(2))
        throw Error("fxL and fxR must be homogeneous of degree 2");
    if (!fy_.degree().is(3))
        throw Error("fy must be homogeneous of degree 3");
    if (!target_.d(fxL_).is_zero())
        throw Error("fxL is not closed");
    if (!target_.d(fxR_).is_zero())
        throw Error("fxR is not closed");
    GradedElement rel = target_.d(fy_) - fxL_ * fxR_;
    if (!rel.is_zero())
        throw Error("d(fy) != fxL*fxR (difference " + rel.to_string() + ")");
}

DgcaMorphism TDualityConfig::induced_morphism() const
{
    return DgcaMorphism("f", classifying().algebra, target_, {fxL_, fxR_, fy_});
}

TDualityConfig universal_config()
{
    const FreeDGCA& C = classifying().algebra;
    return TDualityConfig(C, C.gen("x2L"), C.gen("x2R"), C.gen("y3"));
}

GerbeTower build_gerbe_tower(const TDualityConfig& config)
{
    GerbeTower t;
    t.config = config;
    t.C = classifying().algebra;
    t.A = config.target();
    t.f = config.induced_morphism();

    const GradedElement& fxL = config.fxL();
    const GradedElement& fxR = config.fxR();
    const GradedElement& fy = config.fy();

    t.ext_AL = extend_by_cocycle(t.A, fxL, kE1L, 2);
    t.A_L = t.ext_AL.extended.with_name("A_L");
    t.iota_L = t.ext_AL.inclusion;

    t.ext_AR = extend_by_cocycle(t.A, fxR, kE1R, 2);
    t.A_R = t.ext_AR.extended.with_name("A_R");
    t.iota_R = t.ext_AR.inclusion;

    t.ext_ALR = extend_by_cocycle(t.A_L, promote(fxR, t.A_L.signature()), kE1R, 2);
    t.A_LR = t.ext_ALR.extended.with_name("A_LR");
    t.iota_R_AL = t.ext_ALR.inclusion;

    // A_R -> A_LR by generator names (orders differ)
    {
        std::vector<GradedElement> images;
        for (const auto& g : t.A_R.signature()->generators())
            images.push_back(t.A_LR.gen(g.name));
        t.iota_L_AR = DgcaMorphism("iota_L", t.A_R, t.A_LR, std::move(images));
    }

    GradedElement twist_L = promote(fy, t.A_L.signature()) -
                            t.ext_AL.new_generator() * promote(fxR, t.A_L.signature());
    t.ext_GL = extend_by_cocycle(t.A_L, twist_L, kXi2L, 3);
    t.G_L = t.ext_GL.extended.with_name("G_L");
    t.i_L = t.ext_GL.inclusion;

    GradedElement twist_R = promote(fy, t.A_R.signature()) -
                            t.ext_AR.new_generator() * promote(fxL, t.A_R.signature());
    t.ext_GR = extend_by_cocycle(t.A_R, twist_R, kXi2R, 3);
    t.G_R = t.ext_GR.extended.with_name("G_R");
    t.i_R = t.ext_GR.inclusion;

    t.ext_GLext = extend_by_cocycle(t.G_L, promote(fxR, t.G_L.signature()), kE1R, 2);
    t.GL_ext = t.ext_GLext.extended.with_name("GL_ext");
    t.iota_R_GL = t.ext_GLext.inclusion;

    t.ext_GRext = extend_by_cocycle(t.G_R, promote(fxL, t.G_R.signature()), kE1L, 2);
    t.GR_ext = t.ext_GRext.extended.with_name("GR_ext");
    t.iota_L_GR = t.ext_GRext.inclusion;

    {
        std::vector<GradedElement> images;
        for (const auto& g : t.A_LR.signature()->generators())
            images.push_back(t.GL_ext.gen(g.name));
        t.i_L_LR = DgcaMorphism("i_L", t.A_LR, t.GL_ext, std::move(images));
    }
    {
        std::vector<GradedElement> images;
        for (const auto& g : t.A_LR.signature()->generators())
            images.push_back(t.GR_ext.gen(g.name));
        t.i_R_LR = DgcaMorphism("i_R", t.A_LR, t.GR_ext, std::move(images));
    }
    return t;
}

std::vector<const FreeDGCA*> GerbeTower::algebras() const
{
    return {&C, &A, &A_L, &A_R, &A_LR, &G_L, &G_R, &GL_ext, &GR_ext};
}

CheckReport GerbeTower::verify() const
{
    CheckReport report;
    for (const FreeDGCA* alg : algebras())
        report.merge(alg->check_d_squared());
    for (const DgcaMorphism* m :
         {&f, &iota_L, &iota_R, &iota_R_AL, &iota_L_AR, &i_L, &i_R, &iota_R_GL, &iota_L_GR,
          &i_L_LR, &i_R_LR})
        report.merge(m->check());

    // central square: the two composites A -> A_LR agree
    {
        DgcaMorphism via_L = iota_R_AL.compose_after(iota_L);
        DgcaMorphism via_R = iota_L_AR.compose_after(iota_R);
        CheckResult r;
        r.check = "central_square";
        r.subject = "A_LR";
        r.pass = true;
        for (std::size_t i = 0; i < A.signature()->size(); ++i) {
            if (!(via_L.image_of(static_cast<int>(i)) == via_R.image_of(static_cast<int>(i)))) {
                r.pass = false;
                r.witness = A.signature()->gen(static_cast<int>(i)).name;
                break;
            }
        }
        report.add(std::move(r));
    }

    // upper squares: A_L -> A_LR -> GL_ext agrees with A_L -> G_L -> GL_ext,
    // and mirrored on the right
    {
        DgcaMorphism lhs = i_L_LR.compose_after(iota_R_AL);
        DgcaMorphism rhs = iota_R_GL.compose_after(i_L);
        CheckResult r;
        r.check = "upper_square";
        r.subject = "GL_ext";
        r.pass = true;
        for (std::size_t i = 0; i < A_L.signature()->size(); ++i)
            if (!(lhs.image_of(static_cast<int>(i)) == rhs.image_of(static_cast<int>(i)))) {
                r.pass = false;
                r.witness = A_L.signature()->gen(static_cast<int>(i)).name;
                break;
            }
        report.add(std::move(r));
    }
    {
        DgcaMorphism lhs = i_R_LR.compose_after(iota_L_AR);
        DgcaMorphism rhs = iota_L_GR.compose_after(i_R);
        CheckResult r;
        r.check = "upper_square";
        r.subject = "GR_ext";
        r.pass = true;
        for (std::size_t i = 0; i < A_R.signature()->size(); ++i)
            if (!(lhs.image_of(static_cast<int>(i)) == rhs.image_of(static_cast<int>(i)))) {
                r.pass = false;
                r.witness = A_R.signature()->gen(static_cast<int>(i)).name;
                break;
            }
        report.add(std::move(r));
    }
    return report;
}

std::string tower_summary(const GerbeTower& tower)
{
    std::ostringstream out;
    for (const FreeDGCA* A : tower.algebras()) {
        out << "algebra " << A->name() << ":";
        for (const auto& g : A->signature()->generators())
            out << " " << g.name << ":" << g.degree;
        out << "\n";
        for (std::size_t i = 0; i < A->signature()->size(); ++i) {
            const GradedElement& dg = A->diff_of(static_cast<int>(i));
            if (!dg.is_zero())
                out << "  d(" << A->signature()->gen(static_cast<int>(i)).name
                    << ") = " << dg.to_string() << "\n";
        }
    }
    return out.str();
}

DgcaMorphism nu(const GerbeTower& tower)
{
    std::vector<GradedElement> images;
    const auto& sig = *tower.GL_ext.signature();
    for (const auto& g : sig.generators()) {
        if (g.name == kXi2L)
            images.push_back(tower.GR_ext.gen(kXi2R) +
                             tower.GR_ext.gen(kE1L) * tower.GR_ext.gen(kE1R));
        else
            images.push_back(tower.GR_ext.gen(g.name));
    }
    return DgcaMorphism("nu", tower.GL_ext, tower.GR_ext, std::move(images));
}

DgcaMorphism nu_inv(const GerbeTower& tower)
{
    std::vector<GradedElement> images;
    const auto& sig = *tower.GR_ext.signature();
    for (const auto& g : sig.generators()) {
        if (g.name == kXi2R)
            images.push_back(tower.GL_ext.gen(kXi2L) -
                             tower.GL_ext.gen(kE1L) * tower.GL_ext.gen(kE1R));
        else
            images.push_back(tower.GL_ext.gen(g.name));
    }
    return DgcaMorphism("nu_inv", tower.GR_ext, tower.GL_ext, std::move(images));
}

GradedElement hofib_cyc_forward(const CocycleExtension& E, const DgcaMorphism& phi, Side side)
{
    const Classifying& c = classifying();
    if (!phi.source().signature()->same_as(*c.algebra.signature()))
        throw Error("hofib_cyc_forward: phi must come from the classifying algebra");
    if (!phi.target().signature()->same_as(*E.base.signature()))
        throw Error("hofib_cyc_forward: phi must land in the extension's base");
    const char* decorated = side == Side::left ? "x2L" : "x2R";
    const char* other = side == Side::left ? "x2R" : "x2L";
    if (!(phi.apply(c.algebra.gen(decorated)) == E.cocycle))
        throw Error(std::string("hofib_cyc_forward: phi(") + decorated +
                    ") is not the extension cocycle");
    GradedElement a3 = promote(phi.apply(c.algebra.gen("y3")), E.extended.signature());
    GradedElement b2 = promote(phi.apply(c.algebra.gen(other)), E.extended.signature());
    return a3 - E.new_generator() * b2;
}

DgcaMorphism hofib_cyc_backward(const CocycleExtension& E, const GradedElement& t3, Side side)
{
    if (!t3.signature()->same_as(*E.extended.signature()))
        throw Error("hofib_cyc_backward: cocycle must live in the extension");
    if (!t3.degree().is(3))
        throw Error("hofib_cyc_backward: cocycle must have degree 3");
    if (!E.extended.d(t3).is_zero())
        throw Error("hofib_cyc_backward: element is not closed");
    auto [a3_ext, minus_b2_ext] = t3.decompose(E.new_ordinal);
    GradedElement a3 = restrict_to(a3_ext, E.base.signature());
    GradedElement b2 = -restrict_to(minus_b2_ext, E.base.signature());
    const Classifying& c = classifying();
    std::vector<GradedElement> images(3, E.base.zero());
    int ordL = *c.algebra.signature()->find("x2L");
    int ordR = *c.algebra.signature()->find("x2R");
    int ordY = *c.algebra.signature()->find("y3");
    images[static_cast<std::size_t>(side == Side::left ? ordL : ordR)] = E.cocycle;
    images[static_cast<std::size_t>(side == Side::left ? ordR : ordL)] = b2;
    images[static_cast<std::size_t>(ordY)] = a3;
    return DgcaMorphism("adjoint", c.algebra, E.base, std::move(images));
}

} // namespace hori
