#include "hori/laurent.hpp"

#include <sstream>

namespace hori {

LaurentContext invert_generator(const FreeDGCA& G, std::string_view xi_name)
{
    auto ord = G.signature()->find(xi_name);
    if (!ord)
        throw Error("invert_generator: no generator named '" + std::string(xi_name) + "'");
    const GeneratorInfo& info = G.signature()->gen(*ord);
    if (info.degree % 2 != 0)
        throw Error("invert_generator: '" + info.name + "' has odd degree " +
                    std::to_string(info.degree));
    if (G.diff_of(*ord).uses(*ord))
        throw Error("invert_generator: d(" + info.name + ") must be free of " + info.name);
    return {G, *ord};
}

LaurentElement::LaurentElement(LaurentContext ctx, int shift)
    : ctx_(std::move(ctx)), shift_(shift)
{
}

LaurentElement LaurentElement::from_element(const LaurentContext& ctx, const GradedElement& a,
                                            int shift)
{
    // splits an element of the ambient algebra by powers of xi
    if (!a.signature()->same_as(*ctx.algebra.signature()))
        throw Error("laurent: element over wrong signature");
    LaurentElement out(ctx, shift);
    for (const auto& [m, c] : a.terms()) {
        int e = m.exponent_of(ctx.xi);
        std::vector<Monomial::Factor> rest;
        for (const auto& f : m.factors())
            if (f.ordinal != ctx.xi)
                rest.push_back(f);
        // xi is even: no sign from extracting it
        Monomial stripped(*ctx.algebra.signature(), std::move(rest));
        GradedElement term = GradedElement::term(ctx.algebra.signature(), stripped, c);
        auto it = out.coeffs_.find(-e);
        if (it == out.coeffs_.end())
            out.coeffs_.emplace(-e, std::move(term));
        else
            it->second = it->second + term;
    }
    out.prune();
    return out;
}

LaurentElement LaurentElement::xi_power(const LaurentContext& ctx, int neg_exponent, int shift)
{
    LaurentElement out(ctx, shift);
    out.coeffs_.emplace(neg_exponent, GradedElement::constant(ctx.algebra.signature(), Scalar(1)));
    return out;
}

LaurentElement& LaurentElement::set_coefficient(int n, GradedElement c)
{
    if (!c.signature()->same_as(*ctx_.algebra.signature()))
        c = promote(c, ctx_.algebra.signature());
    if (c.uses(ctx_.xi))
        throw Error("laurent coefficient contains the inverted generator");
    if (c.is_zero())
        coeffs_.erase(n);
    else
        coeffs_[n] = std::move(c);
    return *this;
}

LaurentElement& LaurentElement::set_known_up_to(std::optional<int> bound)
{
    known_up_to_ = bound;
    if (bound)
        coeffs_.erase(coeffs_.upper_bound(*bound), coeffs_.end());
    return *this;
}

GradedElement LaurentElement::coefficient(int n) const
{
    auto it = coeffs_.find(n);
    if (it != coeffs_.end())
        return it->second;
    return GradedElement::zero(ctx_.algebra.signature());
}

void LaurentElement::prune()
{
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (it->second.is_zero())
            it = coeffs_.erase(it);
        else
            ++it;
    }
    if (known_up_to_)
        coeffs_.erase(coeffs_.upper_bound(*known_up_to_), coeffs_.end());
}

static std::optional<int> combine_bounds(const std::optional<int>& a, const std::optional<int>& b)
{
    if (!a)
        return b;
    if (!b)
        return a;
    return std::min(*a, *b);
}

LaurentElement LaurentElement::operator+(const LaurentElement& rhs) const
{
    if (!ctx_.same_as(rhs.ctx_))
        throw Error("laurent addition: different contexts");
    if (shift_ != rhs.shift_)
        throw Error("laurent addition: different shifts");
    LaurentElement out = *this;
    out.known_up_to_ = combine_bounds(known_up_to_, rhs.known_up_to_);
    for (const auto& [n, c] : rhs.coeffs_) {
        auto it = out.coeffs_.find(n);
        if (it == out.coeffs_.end())
            out.coeffs_.emplace(n, c);
        else
            it->second = it->second + c;
    }
    out.prune();
    return out;
}

LaurentElement LaurentElement::operator-(const LaurentElement& rhs) const
{
    return *this + (-rhs);
}

LaurentElement LaurentElement::operator-() const
{
    LaurentElement out = *this;
    for (auto& [n, c] : out.coeffs_)
        c = -c;
    return out;
}

LaurentElement LaurentElement::operator*(const Scalar& s) const
{
    LaurentElement out = *this;
    for (auto& [n, c] : out.coeffs_)
        c = c * s;
    out.prune();
    return out;
}

LaurentElement LaurentElement::scale_left(const GradedElement& a) const
{
    GradedElement lifted = a.signature()->same_as(*ctx_.algebra.signature())
                               ? a
                               : promote(a, ctx_.algebra.signature());
    if (lifted.uses(ctx_.xi))
        throw Error("scale_left: factor contains the inverted generator");
    LaurentElement out(ctx_, shift_);
    out.known_up_to_ = known_up_to_;
    for (const auto& [n, c] : coeffs_)
        out.coeffs_.emplace(n, lifted * c);
    out.prune();
    return out;
}

LaurentElement LaurentElement::operator*(const LaurentElement& rhs) const
{
    if (!ctx_.same_as(rhs.ctx_))
        throw Error("laurent multiplication: different contexts");
    LaurentElement out(ctx_, shift_ + rhs.shift_);
    // xi is even, so moving powers of xi across coefficients is sign-free
    for (const auto& [n, c] : coeffs_)
        for (const auto& [m, d] : rhs.coeffs_) {
            GradedElement prod = c * d;
            if (prod.is_zero())
                continue;
            auto it = out.coeffs_.find(n + m);
            if (it == out.coeffs_.end())
                out.coeffs_.emplace(n + m, std::move(prod));
            else
                it->second = it->second + prod;
        }
    // a truncated factor limits the product to the keys it can certify
    std::optional<int> bound;
    if (known_up_to_ && !rhs.coeffs_.empty())
        bound = *known_up_to_ + rhs.coeffs_.begin()->first;
    if (rhs.known_up_to_ && !coeffs_.empty())
        bound = combine_bounds(bound, *rhs.known_up_to_ + coeffs_.begin()->first);
    out.known_up_to_ = bound;
    out.prune();
    return out;
}

bool LaurentElement::operator==(const LaurentElement& rhs) const
{
    if (!ctx_.same_as(rhs.ctx_) || shift_ != rhs.shift_)
        return false;
    if (coeffs_.size() != rhs.coeffs_.size())
        return false;
    for (const auto& [n, c] : coeffs_) {
        auto it = rhs.coeffs_.find(n);
        if (it == rhs.coeffs_.end() || !(it->second == c))
            return false;
    }
    return true;
}

bool LaurentElement::agrees_up_to(const LaurentElement& rhs, int window) const
{
    if (!ctx_.same_as(rhs.ctx_))
        return false;
    for (int n = std::min(coeffs_.empty() ? window : coeffs_.begin()->first,
                          rhs.coeffs_.empty() ? window : rhs.coeffs_.begin()->first);
         n <= window; ++n)
        if (!(coefficient(n) == rhs.coefficient(n)))
            return false;
    return true;
}

LaurentElement LaurentElement::d() const
{
    // d_[s] = (-1)^s d, the same convention as shifted_d
    const GradedElement& dxi = ctx_.algebra.diff_of(ctx_.xi);
    LaurentElement out(ctx_, shift_);
    out.known_up_to_ = known_up_to_;
    for (const auto& [n, c] : coeffs_) {
        GradedElement dc = ctx_.algebra.d(c);
        if (!dc.is_zero()) {
            auto it = out.coeffs_.find(n);
            if (it == out.coeffs_.end())
                out.coeffs_.emplace(n, std::move(dc));
            else
                it->second = it->second + dc;
        }
        if (n != 0 && !dxi.is_zero()) {
            // (-1)^{|c|} c d(xi^{-n}) with d(xi^{-n}) = -n xi^{-n-1} d(xi)
            for (const auto& [deg, part] : c.homogeneous_parts()) {
                GradedElement piece = part * dxi * Scalar(-n);
                if (deg % 2 != 0)
                    piece = -piece;
                if (piece.is_zero())
                    continue;
                auto it = out.coeffs_.find(n + 1);
                if (it == out.coeffs_.end())
                    out.coeffs_.emplace(n + 1, std::move(piece));
                else
                    it->second = it->second + piece;
            }
        }
    }
    if (shift_ % 2 != 0)
        for (auto& [n, c] : out.coeffs_)
            c = -c;
    out.prune();
    return out;
}

LaurentElement LaurentElement::xi_derivative() const
{
    LaurentElement out(ctx_, shift_ - 2);
    if (known_up_to_)
        out.known_up_to_ = *known_up_to_ + 1;
    for (const auto& [n, c] : coeffs_) {
        if (n == 0)
            continue;
        out.coeffs_.emplace(n + 1, c * Scalar(-n));
    }
    out.prune();
    return out;
}

DegreeInfo LaurentElement::underlying_degree() const
{
    if (coeffs_.empty())
        return {DegreeInfo::Kind::any, 0};
    const int xi_degree = ctx_.xi_info().degree;
    std::optional<int> common;
    for (const auto& [n, c] : coeffs_) {
        DegreeInfo deg = c.degree();
        if (deg.kind == DegreeInfo::Kind::mixed)
            return {DegreeInfo::Kind::mixed, 0};
        if (deg.kind == DegreeInfo::Kind::any)
            continue;
        int k = deg.value - n * xi_degree;
        if (common && *common != k)
            return {DegreeInfo::Kind::mixed, 0};
        common = k;
    }
    if (!common)
        return {DegreeInfo::Kind::any, 0};
    return {DegreeInfo::Kind::homogeneous, *common};
}

DegreeInfo LaurentElement::displayed_degree() const
{
    DegreeInfo deg = underlying_degree();
    if (deg.kind == DegreeInfo::Kind::homogeneous)
        deg.value -= shift_;
    return deg;
}

std::string LaurentElement::to_string() const
{
    std::ostringstream out;
    const std::string& xi = ctx_.xi_info().name;
    bool first = true;
    for (const auto& [n, c] : coeffs_) {
        std::string text = c.to_string();
        bool wrap = c.terms().size() > 1;
        if (!first) {
            if (!wrap && text.front() == '-') {
                out << " - ";
                text.erase(0, 1);
            } else {
                out << " + ";
            }
        }
        first = false;
        if (n == 0) {
            out << text;
            continue;
        }
        if (wrap)
            out << "(" << text << ")";
        else
            out << text;
        out << "*" << xi;
        if (-n != 1)
            out << "^" << -n;
    }
    if (first)
        out << "0";
    if (known_up_to_)
        out << " + O(" << xi << "^" << -(*known_up_to_ + 1) << ")";
    return out.str();
}

// ---------------------------------------------------------------------------
// HoriTransformer

HoriTransformer::HoriTransformer(GerbeTower tower) : tower_(std::move(tower))
{
    GL_hat_ = invert_generator(tower_.G_L, kXi2L);
    GR_hat_ = invert_generator(tower_.G_R, kXi2R);
    GLext_hat_ = invert_generator(tower_.GL_ext, kXi2L);
    GRext_hat_ = invert_generator(tower_.GR_ext, kXi2R);
    nu_ = nu(tower_);
    nu_inv_ = nu_inv(tower_);
}

LaurentElement HoriTransformer::hat_iota_R(const LaurentElement& w) const
{
    if (!w.context().same_as(GL_hat_))
        throw Error("hat_iota_R expects an element over the left gerbe");
    LaurentElement out(GLext_hat_, w.shift());
    out.set_known_up_to(w.known_up_to());
    for (const auto& [n, c] : w.coefficients())
        out.set_coefficient(n, promote(c, GLext_hat_.algebra.signature()));
    return out;
}

LaurentElement HoriTransformer::hat_iota_L(const LaurentElement& w) const
{
    if (!w.context().same_as(GR_hat_))
        throw Error("hat_iota_L expects an element over the right gerbe");
    LaurentElement out(GRext_hat_, w.shift());
    out.set_known_up_to(w.known_up_to());
    for (const auto& [n, c] : w.coefficients())
        out.set_coefficient(n, promote(c, GRext_hat_.algebra.signature()));
    return out;
}

LaurentElement HoriTransformer::hat_nu(const LaurentElement& w) const
{
    if (!w.context().same_as(GLext_hat_))
        throw Error("hat_nu expects an element over the extended left gerbe");
    LaurentElement out(GRext_hat_, w.shift());
    GradedElement e1Le1R = GRext_hat_.algebra.gen(kE1L) * GRext_hat_.algebra.gen(kE1R);
    for (const auto& [n, c] : w.coefficients()) {
        GradedElement image = nu_.apply(c);
        out = out + LaurentElement::xi_power(GRext_hat_, n, out.shift()).scale_left(image);
        if (n != 0) {
            GradedElement tail = image * e1Le1R * Scalar(-n);
            out = out + LaurentElement::xi_power(GRext_hat_, n + 1, out.shift()).scale_left(tail);
        }
    }
    out.set_known_up_to(w.known_up_to());
    return out;
}

LaurentElement HoriTransformer::hat_nu_inv(const LaurentElement& w) const
{
    if (!w.context().same_as(GRext_hat_))
        throw Error("hat_nu_inv expects an element over the extended right gerbe");
    LaurentElement out(GLext_hat_, w.shift());
    GradedElement e1Le1R = GLext_hat_.algebra.gen(kE1L) * GLext_hat_.algebra.gen(kE1R);
    for (const auto& [n, c] : w.coefficients()) {
        GradedElement image = nu_inv_.apply(c);
        out = out + LaurentElement::xi_power(GLext_hat_, n, out.shift()).scale_left(image);
        if (n != 0) {
            GradedElement tail = image * e1Le1R * Scalar(n);
            out = out + LaurentElement::xi_power(GLext_hat_, n + 1, out.shift()).scale_left(tail);
        }
    }
    out.set_known_up_to(w.known_up_to());
    return out;
}

LaurentElement HoriTransformer::hat_pi_to_GR(const LaurentElement& w) const
{
    if (!w.context().same_as(GRext_hat_))
        throw Error("hat_pi expects an element over the extended right gerbe");
    int e1L_ord = *GRext_hat_.algebra.signature()->find(kE1L);
    LaurentElement out(GR_hat_, w.shift() - 1);
    out.set_known_up_to(w.known_up_to());
    for (const auto& [n, c] : w.coefficients()) {
        auto [alpha, beta] = c.decompose(e1L_ord);
        (void)alpha;
        if (!beta.is_zero())
            out.set_coefficient(n, restrict_to(beta, GR_hat_.algebra.signature()));
    }
    return out;
}

LaurentElement HoriTransformer::hat_pi_to_GL(const LaurentElement& w) const
{
    if (!w.context().same_as(GLext_hat_))
        throw Error("hat_pi expects an element over the extended left gerbe");
    int e1R_ord = *GLext_hat_.algebra.signature()->find(kE1R);
    LaurentElement out(GL_hat_, w.shift() - 1);
    out.set_known_up_to(w.known_up_to());
    for (const auto& [n, c] : w.coefficients()) {
        auto [alpha, beta] = c.decompose(e1R_ord);
        (void)alpha;
        if (!beta.is_zero())
            out.set_coefficient(n, restrict_to(beta, GL_hat_.algebra.signature()));
    }
    return out;
}

LaurentElement HoriTransformer::hori_LR(const LaurentElement& w) const
{
    return hat_pi_to_GR(hat_nu(hat_iota_R(w)));
}

LaurentElement HoriTransformer::hori_RL(const LaurentElement& w) const
{
    return hat_pi_to_GL(hat_nu_inv(hat_iota_L(w)));
}

LaurentElement HoriTransformer::hori_LR_closed_form(const LaurentElement& w) const
{
    if (!w.context().same_as(GL_hat_))
        throw Error("hori_LR expects an element over the left gerbe");
    int e1L_ord = *GL_hat_.algebra.signature()->find(kE1L);
    GradedElement e1R = GR_hat_.algebra.gen(kE1R);
    LaurentElement out(GR_hat_, w.shift() - 1);
    for (const auto& [n, c] : w.coefficients()) {
        auto [alpha, beta] = c.decompose(e1L_ord);
        if (!beta.is_zero())
            out = out + LaurentElement::xi_power(GR_hat_, n, out.shift())
                            .scale_left(restrict_to(beta, GR_hat_.algebra.signature()));
        if (n != 0 && !alpha.is_zero()) {
            GradedElement tail =
                e1R * restrict_to(alpha, GR_hat_.algebra.signature()) * Scalar(-n);
            out = out + LaurentElement::xi_power(GR_hat_, n + 1, out.shift()).scale_left(tail);
        }
    }
    out.set_known_up_to(w.known_up_to());
    return out;
}

LaurentElement HoriTransformer::hori_RL_closed_form(const LaurentElement& w) const
{
    if (!w.context().same_as(GR_hat_))
        throw Error("hori_RL expects an element over the right gerbe");
    int e1R_ord = *GR_hat_.algebra.signature()->find(kE1R);
    GradedElement e1L = GL_hat_.algebra.gen(kE1L);
    LaurentElement out(GL_hat_, w.shift() - 1);
    for (const auto& [n, c] : w.coefficients()) {
        auto [alpha, beta] = c.decompose(e1R_ord);
        if (!beta.is_zero())
            out = out + LaurentElement::xi_power(GL_hat_, n, out.shift())
                            .scale_left(restrict_to(beta, GL_hat_.algebra.signature()));
        if (n != 0 && !alpha.is_zero()) {
            GradedElement tail =
                e1L * restrict_to(alpha, GL_hat_.algebra.signature()) * Scalar(-n);
            out = out + LaurentElement::xi_power(GL_hat_, n + 1, out.shift()).scale_left(tail);
        }
    }
    out.set_known_up_to(w.known_up_to());
    return out;
}

HoriComponents HoriTransformer::components(const LaurentElement& w) const
{
    const LaurentContext* ctx = nullptr;
    if (w.context().same_as(GLext_hat_))
        ctx = &GLext_hat_;
    else if (w.context().same_as(GRext_hat_))
        ctx = &GRext_hat_;
    else
        throw Error("components: element must live over a doubly extended gerbe");
    int e1L_ord = *ctx->algebra.signature()->find(kE1L);
    int e1R_ord = *ctx->algebra.signature()->find(kE1R);
    HoriComponents comps;
    for (const auto& [n, c] : w.coefficients()) {
        auto [no_L, with_L] = c.decompose(e1L_ord);
        auto [alpha, gamma] = no_L.decompose(e1R_ord);
        auto [beta, delta] = with_L.decompose(e1R_ord);
        if (!alpha.is_zero())
            comps.alpha.emplace(n, alpha);
        if (!beta.is_zero())
            comps.beta.emplace(n, beta);
        if (!gamma.is_zero())
            comps.gamma.emplace(n, gamma);
        if (!delta.is_zero())
            comps.delta.emplace(n, delta);
    }
    return comps;
}

LaurentElement HoriTransformer::from_components(const LaurentContext& ctx,
                                                const HoriComponents& comps, int shift) const
{
    GradedElement e1L = ctx.algebra.gen(kE1L);
    GradedElement e1R = ctx.algebra.gen(kE1R);
    LaurentElement out(ctx, shift);
    for (const auto& [n, a] : comps.alpha)
        out = out + LaurentElement::xi_power(ctx, n, shift).scale_left(a);
    for (const auto& [n, b] : comps.beta)
        out = out + LaurentElement::xi_power(ctx, n, shift).scale_left(e1L * b);
    for (const auto& [n, g] : comps.gamma)
        out = out + LaurentElement::xi_power(ctx, n, shift).scale_left(e1R * g);
    for (const auto& [n, dd] : comps.delta)
        out = out + LaurentElement::xi_power(ctx, n, shift).scale_left(e1L * e1R * dd);
    return out;
}

LaurentElement HoriTransformer::to_left_gerbe(const LaurentElement& w) const
{
    if (w.context().same_as(GL_hat_))
        return w;
    if (!w.context().same_as(GLext_hat_))
        throw Error("to_left_gerbe: element is not over the extended left gerbe");
    int e1R_ord = *GLext_hat_.algebra.signature()->find(kE1R);
    LaurentElement out(GL_hat_, w.shift());
    out.set_known_up_to(w.known_up_to());
    for (const auto& [n, c] : w.coefficients()) {
        if (c.uses(e1R_ord))
            throw Error("element uses e1R and does not lie in the left gerbe");
        out.set_coefficient(n, restrict_to(c, GL_hat_.algebra.signature()));
    }
    return out;
}

LaurentElement HoriTransformer::to_right_gerbe(const LaurentElement& w) const
{
    if (w.context().same_as(GR_hat_))
        return w;
    if (!w.context().same_as(GRext_hat_))
        throw Error("to_right_gerbe: element is not over the extended right gerbe");
    int e1L_ord = *GRext_hat_.algebra.signature()->find(kE1L);
    LaurentElement out(GR_hat_, w.shift());
    out.set_known_up_to(w.known_up_to());
    for (const auto& [n, c] : w.coefficients()) {
        if (c.uses(e1L_ord))
            throw Error("element uses e1L and does not lie in the right gerbe");
        out.set_coefficient(n, restrict_to(c, GR_hat_.algebra.signature()));
    }
    return out;
}

std::map<int, GradedElement> HoriTransformer::base_series(const LaurentElement& w) const
{
    std::map<int, GradedElement> out;
    for (const auto& [n, c] : w.coefficients())
        out.emplace(n, restrict_to(c, tower_.A.signature()));
    return out;
}

LaurentElement HoriTransformer::pack_pair(const LaurentContext& ctx, const LaurentElement& first,
                                          const LaurentElement& second) const
{
    const char* e_name = nullptr;
    if (ctx.same_as(GL_hat_) || ctx.same_as(GLext_hat_))
        e_name = kE1L;
    else if (ctx.same_as(GR_hat_) || ctx.same_as(GRext_hat_))
        e_name = kE1R;
    else
        throw Error("pack_pair: unknown context");
    GradedElement e = ctx.algebra.gen(e_name);
    LaurentElement a(ctx, first.shift());
    a.set_known_up_to(first.known_up_to());
    for (const auto& [n, c] : first.coefficients())
        a.set_coefficient(n, promote(c, ctx.algebra.signature()));
    LaurentElement b(ctx, first.shift());
    b.set_known_up_to(second.known_up_to());
    for (const auto& [n, c] : second.coefficients())
        b.set_coefficient(n, e * promote(c, ctx.algebra.signature()));
    return a + b;
}

std::pair<LaurentElement, LaurentElement> HoriTransformer::unpack_pair(
    const LaurentElement& w) const
{
    const char* e_name = nullptr;
    if (w.context().same_as(GL_hat_) || w.context().same_as(GLext_hat_))
        e_name = kE1L;
    else if (w.context().same_as(GR_hat_) || w.context().same_as(GRext_hat_))
        e_name = kE1R;
    else
        throw Error("unpack_pair: unknown context");
    int ord = *w.context().algebra.signature()->find(e_name);
    LaurentElement first(w.context(), w.shift());
    first.set_known_up_to(w.known_up_to());
    LaurentElement second(w.context(), w.shift());
    second.set_known_up_to(w.known_up_to());
    for (const auto& [n, c] : w.coefficients()) {
        auto [alpha, beta] = c.decompose(ord);
        if (!alpha.is_zero())
            first.set_coefficient(n, alpha);
        if (!beta.is_zero())
            second.set_coefficient(n, beta);
    }
    return {std::move(first), std::move(second)};
}

} // namespace hori
