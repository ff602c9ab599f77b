#include "hori/dgca.hpp"

#include <sstream>

namespace hori {

std::string CheckResult::to_line() const
{
    std::ostringstream out;
    out << (pass ? "pass" : "FAIL") << "  " << check << "  " << subject;
    if (witness)
        out << "  witness=" << *witness;
    if (!detail.empty())
        out << "  (" << detail << ")";
    return out.str();
}

bool CheckReport::all_pass() const
{
    for (const auto& r : results)
        if (!r.pass)
            return false;
    return true;
}

void CheckReport::merge(const CheckReport& other)
{
    results.insert(results.end(), other.results.begin(), other.results.end());
}

std::string CheckReport::to_text() const
{
    std::ostringstream out;
    for (const auto& r : results)
        out << r.to_line() << "\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// FreeDGCA

FreeDGCA::FreeDGCA(std::string name, SignaturePtr sig, std::vector<GradedElement> diffs)
    : name_(std::move(name)), sig_(std::move(sig)), diffs_(std::move(diffs))
{
    if (diffs_.size() != sig_->size())
        throw Error("differential must be assigned on every generator of '" + name_ + "'");
    for (std::size_t i = 0; i < diffs_.size(); ++i) {
        const GradedElement& dg = diffs_[i];
        if (!dg.signature()->same_as(*sig_))
            throw Error("differential of '" + sig_->gen(static_cast<int>(i)).name +
                        "' lives over a different signature");
        DegreeInfo deg = dg.degree();
        int expected = sig_->gen(static_cast<int>(i)).degree + 1;
        if (!deg.is(expected))
            throw Error("d(" + sig_->gen(static_cast<int>(i)).name + ") has degree " +
                        deg.to_string() + ", expected " + std::to_string(expected));
    }
}

FreeDGCA FreeDGCA::with_name(std::string name) const
{
    FreeDGCA out = *this;
    out.name_ = std::move(name);
    return out;
}

GradedElement FreeDGCA::gen(std::string_view name) const
{
    auto ord = sig_->find(name);
    if (!ord)
        throw Error("no generator named '" + std::string(name) + "' in algebra " + name_);
    return GradedElement::generator(sig_, *ord);
}

bool FreeDGCA::same_as(const FreeDGCA& other) const
{
    if (!sig_->same_as(*other.sig_))
        return false;
    for (std::size_t i = 0; i < diffs_.size(); ++i)
        if (!(diffs_[i] == other.diffs_[i]))
            return false;
    return true;
}

// d on a monomial: sum over factor positions of
//   e_i · (-1)^{|prefix|} · (prefix with g_i^{e_i - 1}) · d(g_i) · (suffix),
// where the surrounding products re-sort with Koszul signs. Valid for
// negative exponents of invertible generators as well: d(g^e) = e g^{e-1} dg
// holds for all integer e when g is even.
GradedElement FreeDGCA::d(const GradedElement& a) const
{
    if (!a.signature()->same_as(*sig_))
        throw Error("signature mismatch in differential");
    GradedElement out = zero();
    for (const auto& [m, c] : a.terms()) {
        int prefix_parity = 0;
        const auto& factors = m.factors();
        for (std::size_t i = 0; i < factors.size(); ++i) {
            const auto& f = factors[i];
            const GradedElement& dg = diffs_[static_cast<std::size_t>(f.ordinal)];
            if (!dg.is_zero()) {
                std::vector<Monomial::Factor> left(factors.begin(),
                                                   factors.begin() + static_cast<long>(i));
                if (f.exponent != 1)
                    left.push_back({f.ordinal, f.exponent - 1});
                std::vector<Monomial::Factor> right(factors.begin() + static_cast<long>(i) + 1,
                                                    factors.end());
                GradedElement piece =
                    GradedElement::term(sig_, Monomial(*sig_, std::move(left)),
                                        prefix_parity % 2 == 0 ? c : -c) *
                    dg *
                    GradedElement::term(sig_, Monomial(*sig_, std::move(right)),
                                        Scalar(f.exponent));
                out = out + piece;
            }
            prefix_parity += f.exponent * sig_->gen(f.ordinal).degree;
        }
    }
    return out;
}

CheckReport FreeDGCA::check_d_squared() const
{
    CheckReport report;
    for (std::size_t i = 0; i < sig_->size(); ++i) {
        GradedElement dd = d(diffs_[i]);
        CheckResult r;
        r.check = "d_squared";
        r.subject = name_;
        r.pass = dd.is_zero();
        if (!r.pass) {
            r.witness = sig_->gen(static_cast<int>(i)).name;
            r.detail = "d(d(" + sig_->gen(static_cast<int>(i)).name + ")) = " + dd.to_string();
            report.add(std::move(r));
            return report;
        }
    }
    CheckResult ok;
    ok.check = "d_squared";
    ok.subject = name_;
    ok.pass = true;
    report.add(std::move(ok));
    return report;
}

DegreeInfo ShiftedElement::displayed_degree() const
{
    DegreeInfo deg = underlying.degree();
    if (deg.kind == DegreeInfo::Kind::homogeneous)
        deg.value -= shift;
    return deg;
}

ShiftedElement shifted_d(const FreeDGCA& A, const ShiftedElement& b)
{
    GradedElement db = A.d(b.underlying);
    if (b.shift % 2 != 0)
        db = -db;
    return {std::move(db), b.shift};
}

// ---------------------------------------------------------------------------
// DgcaMorphism

DgcaMorphism::DgcaMorphism(std::string name, FreeDGCA source, FreeDGCA target,
                           std::vector<GradedElement> images)
    : name_(std::move(name)), source_(std::move(source)), target_(std::move(target)),
      images_(std::move(images))
{
    if (images_.size() != source_.signature()->size())
        throw Error("morphism '" + name_ + "' must assign an image to every generator");
    for (const auto& img : images_)
        if (!img.signature()->same_as(*target_.signature()))
            throw Error("morphism '" + name_ + "': image over wrong signature");
}

DgcaMorphism DgcaMorphism::identity(const FreeDGCA& A)
{
    std::vector<GradedElement> images;
    for (std::size_t i = 0; i < A.signature()->size(); ++i)
        images.push_back(A.gen(static_cast<int>(i)));
    return DgcaMorphism("id_" + A.name(), A, A, std::move(images));
}

GradedElement DgcaMorphism::apply(const GradedElement& a) const
{
    if (!a.signature()->same_as(*source_.signature()))
        throw Error("morphism '" + name_ + "' applied to element over wrong signature");
    GradedElement out = target_.zero();
    for (const auto& [m, c] : a.terms()) {
        GradedElement prod = GradedElement::constant(target_.signature(), c);
        for (const auto& f : m.factors()) {
            const GradedElement& img = images_[static_cast<std::size_t>(f.ordinal)];
            if (f.exponent >= 0) {
                prod = prod * img.pow(f.exponent);
            } else {
                // negative powers only arise for invertible generators whose
                // image is again a single invertible-generator power
                if (img.terms().size() != 1)
                    throw Error("morphism '" + name_ +
                                "': negative power of generator with non-monomial image");
                const auto& [im, ic] = *img.terms().begin();
                if (ic != 1 || im.factors().size() != 1 || im.factors()[0].exponent != 1 ||
                    !target_.signature()->gen(im.factors()[0].ordinal).invertible)
                    throw Error("morphism '" + name_ +
                                "': negative power requires an invertible generator image");
                Monomial inv(*target_.signature(),
                             {{im.factors()[0].ordinal, f.exponent}});
                prod = prod * GradedElement::term(target_.signature(), inv, Scalar(1));
            }
        }
        out = out + prod;
    }
    return out;
}

CheckReport DgcaMorphism::check() const
{
    CheckReport report;
    const auto& sig = *source_.signature();
    for (std::size_t i = 0; i < sig.size(); ++i) {
        const GeneratorInfo& g = sig.gen(static_cast<int>(i));
        const GradedElement& img = images_[i];
        CheckResult r;
        r.check = "morphism";
        r.subject = name_;
        if (!img.degree().is(g.degree)) {
            r.pass = false;
            r.witness = g.name;
            r.detail = "image of " + g.name + " has degree " + img.degree().to_string() +
                       ", expected " + std::to_string(g.degree);
            report.add(std::move(r));
            return report;
        }
        GradedElement lhs = apply(source_.diff_of(static_cast<int>(i)));
        GradedElement rhs = target_.d(img);
        if (!(lhs == rhs)) {
            r.pass = false;
            r.witness = g.name;
            r.detail = "f(d " + g.name + ") = " + lhs.to_string() + " but d(f " + g.name +
                       ") = " + rhs.to_string();
            report.add(std::move(r));
            return report;
        }
    }
    CheckResult ok;
    ok.check = "morphism";
    ok.subject = name_;
    ok.pass = true;
    report.add(std::move(ok));
    return report;
}

DgcaMorphism DgcaMorphism::compose_after(const DgcaMorphism& first) const
{
    if (!first.target_.signature()->same_as(*source_.signature()))
        throw Error("composition mismatch: " + name_ + " after " + first.name_);
    std::vector<GradedElement> images;
    images.reserve(first.images_.size());
    for (const auto& img : first.images_)
        images.push_back(apply(img));
    return DgcaMorphism(name_ + "∘" + first.name_, first.source_, target_, std::move(images));
}

// ---------------------------------------------------------------------------
// cocycle extensions

CocycleExtension extend_by_cocycle(const FreeDGCA& A, const GradedElement& t,
                                   const std::string& name, std::optional<int> cocycle_degree)
{
    if (!t.signature()->same_as(*A.signature()))
        throw Error("cocycle lives over a different signature than " + A.name());
    DegreeInfo deg = t.degree();
    int n;
    if (deg.kind == DegreeInfo::Kind::mixed)
        throw Error("cocycle must be homogeneous, got inhomogeneous element " + t.to_string());
    if (deg.kind == DegreeInfo::Kind::any) {
        if (!cocycle_degree)
            throw Error("degree of the zero cocycle must be given explicitly");
        n = *cocycle_degree;
    } else {
        n = deg.value;
        if (cocycle_degree && *cocycle_degree != n)
            throw Error("stated cocycle degree " + std::to_string(*cocycle_degree) +
                        " does not match actual degree " + std::to_string(n));
    }
    if (n < 2)
        throw Error("cocycle degree must be at least 2");
    GradedElement dt = A.d(t);
    if (!dt.is_zero())
        throw Error("element is not closed: d(" + t.to_string() + ") = " + dt.to_string());

    SignaturePtr ext_sig = A.signature()->extended({name, n - 1, false});
    std::vector<GradedElement> diffs;
    for (std::size_t i = 0; i < A.signature()->size(); ++i)
        diffs.push_back(promote(A.diff_of(static_cast<int>(i)), ext_sig));
    diffs.push_back(promote(t, ext_sig));

    CocycleExtension ext;
    ext.base = A;
    ext.cocycle = t;
    ext.cocycle_degree = n;
    ext.new_ordinal = static_cast<int>(A.signature()->size());
    ext.extended = FreeDGCA(A.name() + "_{" + t.to_string() + "}", ext_sig, std::move(diffs));

    std::vector<GradedElement> incl;
    for (std::size_t i = 0; i < A.signature()->size(); ++i)
        incl.push_back(ext.extended.gen(static_cast<int>(i)));
    ext.inclusion = DgcaMorphism("inclusion", A, ext.extended, std::move(incl));
    return ext;
}

DgcaMorphism extend_morphism(const DgcaMorphism& f, const CocycleExtension& extA,
                             const CocycleExtension& extB)
{
    if (!f.source().signature()->same_as(*extA.base.signature()) ||
        !f.target().signature()->same_as(*extB.base.signature()))
        throw Error("extend_morphism: extensions do not match the morphism's endpoints");
    GradedElement ft = f.apply(extA.cocycle);
    if (!(ft == extB.cocycle))
        throw Error("extend_morphism: f does not carry the source cocycle to the target one (f(t) = " +
                    ft.to_string() + ", s = " + extB.cocycle.to_string() + ")");
    std::vector<GradedElement> images;
    for (std::size_t i = 0; i < extA.base.signature()->size(); ++i)
        images.push_back(promote(f.image_of(static_cast<int>(i)), extB.extended.signature()));
    images.push_back(extB.new_generator());
    return DgcaMorphism(f.name() + "^", extA.extended, extB.extended, std::move(images));
}

ShiftedElement projection_pi(const CocycleExtension& E, const GradedElement& a)
{
    if (E.cocycle_degree % 2 != 0)
        throw Error("projection requires an even cocycle degree, got " +
                    std::to_string(E.cocycle_degree));
    if (!a.signature()->same_as(*E.extended.signature()))
        throw Error("projection applied to element outside the extension");
    auto [alpha, beta] = a.decompose(E.new_ordinal);
    (void)alpha;
    return {restrict_to(beta, E.base.signature()), 1 - E.cocycle_degree};
}

GradedElement section_e(const CocycleExtension& E, const ShiftedElement& b)
{
    if (E.cocycle_degree % 2 != 0)
        throw Error("section requires an even cocycle degree");
    if (b.shift != 1 - E.cocycle_degree)
        throw Error("section: shift " + std::to_string(b.shift) + " does not match extension");
    GradedElement lifted = b.underlying.signature()->same_as(*E.extended.signature())
                               ? b.underlying
                               : promote(b.underlying, E.extended.signature());
    if (lifted.uses(E.new_ordinal))
        throw Error("section argument contains the extension generator");
    return E.new_generator() * lifted;
}

} // namespace hori
