#include "hori/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace hori {

std::string scalar_to_string(const Scalar& s)
{
    std::ostringstream out;
    out << s;
    return out.str();
}

// ---------------------------------------------------------------------------
// AlgebraSignature

SignaturePtr AlgebraSignature::make(const std::vector<std::pair<std::string, int>>& gens)
{
    std::vector<GeneratorInfo> infos;
    infos.reserve(gens.size());
    for (const auto& [name, degree] : gens)
        infos.push_back({name, degree, false});
    return make_full(std::move(infos), /*allow_degree_zero=*/false);
}

SignaturePtr AlgebraSignature::make_full(std::vector<GeneratorInfo> gens, bool allow_degree_zero)
{
    const int min_degree = allow_degree_zero ? 0 : 1;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].name.empty())
            throw Error("generator name must be nonempty");
        if (gens[i].degree < min_degree)
            throw Error("generator '" + gens[i].name + "' has nonpositive degree " +
                        std::to_string(gens[i].degree));
        if (gens[i].invertible && gens[i].degree % 2 != 0)
            throw Error("invertible generator '" + gens[i].name + "' must have even degree");
        for (std::size_t j = 0; j < i; ++j)
            if (gens[j].name == gens[i].name)
                throw Error("duplicate generator name '" + gens[i].name + "'");
    }
    return SignaturePtr(new AlgebraSignature(std::move(gens)));
}

std::optional<int> AlgebraSignature::find(std::string_view name) const
{
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name == name)
            return static_cast<int>(i);
    return std::nullopt;
}

bool AlgebraSignature::same_as(const AlgebraSignature& other) const
{
    if (this == &other)
        return true;
    if (gens_.size() != other.gens_.size())
        return false;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        const auto& a = gens_[i];
        const auto& b = other.gens_[i];
        if (a.name != b.name || a.degree != b.degree || a.invertible != b.invertible)
            return false;
    }
    return true;
}

bool AlgebraSignature::extends(const AlgebraSignature& base) const
{
    if (base.gens_.size() > gens_.size())
        return false;
    for (std::size_t i = 0; i < base.gens_.size(); ++i) {
        const auto& a = gens_[i];
        const auto& b = base.gens_[i];
        if (a.name != b.name || a.degree != b.degree || a.invertible != b.invertible)
            return false;
    }
    return true;
}

SignaturePtr AlgebraSignature::extended(GeneratorInfo extra) const
{
    std::vector<GeneratorInfo> gens = gens_;
    gens.push_back(std::move(extra));
    return make_full(std::move(gens), /*allow_degree_zero=*/true);
}

SignaturePtr make_algebra(const std::vector<std::pair<std::string, int>>& gens)
{
    return AlgebraSignature::make(gens);
}

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(const AlgebraSignature& sig, std::vector<Factor> factors)
    : factors_(std::move(factors))
{
    int prev = -1;
    for (const auto& f : factors_) {
        if (f.ordinal <= prev)
            throw Error("monomial factors must be strictly increasing in ordinal");
        prev = f.ordinal;
        const GeneratorInfo& g = sig.gen(f.ordinal);
        if (f.exponent == 0)
            throw Error("zero exponent in monomial");
        if (g.degree % 2 != 0 && f.exponent != 1)
            throw Error("odd generator '" + g.name + "' with exponent != 1");
        if (f.exponent < 0 && !g.invertible)
            throw Error("negative exponent on non-invertible generator '" + g.name + "'");
        degree_ += f.exponent * g.degree;
    }
}

int Monomial::exponent_of(int ordinal) const
{
    for (const auto& f : factors_)
        if (f.ordinal == ordinal)
            return f.exponent;
    return 0;
}

bool Monomial::operator<(const Monomial& other) const
{
    if (degree_ != other.degree_)
        return degree_ < other.degree_;
    return std::lexicographical_compare(
        factors_.begin(), factors_.end(), other.factors_.begin(), other.factors_.end(),
        [](const Factor& a, const Factor& b) {
            if (a.ordinal != b.ordinal)
                return a.ordinal < b.ordinal;
            return a.exponent < b.exponent;
        });
}

std::string DegreeInfo::to_string() const
{
    switch (kind) {
        case Kind::homogeneous: return std::to_string(value);
        case Kind::any: return "any degree";
        case Kind::mixed: return "inhomogeneous";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// GradedElement

GradedElement GradedElement::zero(SignaturePtr sig)
{
    return GradedElement(std::move(sig), {});
}

GradedElement GradedElement::constant(SignaturePtr sig, const Scalar& c)
{
    GradedElement e(std::move(sig), {});
    if (c != 0)
        e.terms_.emplace(Monomial(), c);
    return e;
}

GradedElement GradedElement::generator(SignaturePtr sig, int ordinal)
{
    Monomial m(*sig, {{ordinal, 1}});
    GradedElement e(std::move(sig), {});
    e.terms_.emplace(std::move(m), Scalar(1));
    return e;
}

GradedElement GradedElement::term(SignaturePtr sig, Monomial m, const Scalar& c)
{
    GradedElement e(std::move(sig), {});
    if (c != 0)
        e.terms_.emplace(std::move(m), c);
    return e;
}

void GradedElement::add_term(const Monomial& m, const Scalar& c)
{
    if (c == 0)
        return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

static void require_same_signature(const GradedElement& a, const GradedElement& b)
{
    if (!a.signature() || !b.signature() || !a.signature()->same_as(*b.signature()))
        throw Error("signature mismatch between elements");
}

GradedElement GradedElement::operator+(const GradedElement& rhs) const
{
    require_same_signature(*this, rhs);
    GradedElement out = *this;
    for (const auto& [m, c] : rhs.terms_)
        out.add_term(m, c);
    return out;
}

GradedElement GradedElement::operator-(const GradedElement& rhs) const
{
    require_same_signature(*this, rhs);
    GradedElement out = *this;
    for (const auto& [m, c] : rhs.terms_)
        out.add_term(m, -c);
    return out;
}

GradedElement GradedElement::operator-() const
{
    GradedElement out = *this;
    for (auto& [m, c] : out.terms_)
        c = -c;
    return out;
}

GradedElement GradedElement::operator*(const Scalar& c) const
{
    if (c == 0)
        return zero(sig_);
    GradedElement out = *this;
    for (auto& [m, coeff] : out.terms_)
        coeff *= c;
    return out;
}

// Merge-sorts the factor lists. The Koszul sign is the parity of odd-odd
// transpositions: a factor taken from `b` crosses every odd factor still
// pending in `a`.
static bool multiply_monomials(const AlgebraSignature& sig, const Monomial& a, const Monomial& b,
                               Monomial& out, int& sign)
{
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    std::vector<Monomial::Factor> merged;
    merged.reserve(fa.size() + fb.size());

    int odd_pending_in_a = 0;
    for (const auto& f : fa)
        if (sig.odd(f.ordinal))
            ++odd_pending_in_a;

    sign = 1;
    std::size_t i = 0, j = 0;
    while (i < fa.size() || j < fb.size()) {
        if (j == fb.size() || (i < fa.size() && fa[i].ordinal < fb[j].ordinal)) {
            if (sig.odd(fa[i].ordinal))
                --odd_pending_in_a;
            merged.push_back(fa[i]);
            ++i;
        } else if (i == fa.size() || fb[j].ordinal < fa[i].ordinal) {
            if (sig.odd(fb[j].ordinal) && (odd_pending_in_a % 2) != 0)
                sign = -sign;
            merged.push_back(fb[j]);
            ++j;
        } else {
            // same generator in both monomials
            if (sig.odd(fa[i].ordinal))
                return false; // odd square vanishes
            int exp = fa[i].exponent + fb[j].exponent;
            if (exp != 0)
                merged.push_back({fa[i].ordinal, exp});
            ++i;
            ++j;
        }
    }
    out = Monomial(sig, std::move(merged));
    return true;
}

GradedElement GradedElement::operator*(const GradedElement& rhs) const
{
    require_same_signature(*this, rhs);
    GradedElement out = zero(sig_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : rhs.terms_) {
            Monomial prod;
            int sign = 1;
            if (!multiply_monomials(*sig_, ma, mb, prod, sign))
                continue;
            Scalar coeff = ca * cb;
            if (sign < 0)
                coeff = -coeff;
            out.add_term(prod, coeff);
        }
    }
    return out;
}

bool GradedElement::operator==(const GradedElement& rhs) const
{
    require_same_signature(*this, rhs);
    return terms_ == rhs.terms_;
}

GradedElement GradedElement::pow(int exponent) const
{
    if (exponent < 0)
        throw Error("negative power of a general element");
    GradedElement out = constant(sig_, Scalar(1));
    for (int i = 0; i < exponent; ++i)
        out = out * (*this);
    return out;
}

DegreeInfo GradedElement::degree() const
{
    if (terms_.empty())
        return {DegreeInfo::Kind::any, 0};
    int k = terms_.begin()->first.degree();
    for (const auto& [m, c] : terms_)
        if (m.degree() != k)
            return {DegreeInfo::Kind::mixed, 0};
    return {DegreeInfo::Kind::homogeneous, k};
}

GradedElement GradedElement::homogeneous_part(int k) const
{
    GradedElement out = zero(sig_);
    for (const auto& [m, c] : terms_)
        if (m.degree() == k)
            out.terms_.emplace(m, c);
    return out;
}

std::vector<std::pair<int, GradedElement>> GradedElement::homogeneous_parts() const
{
    std::vector<std::pair<int, GradedElement>> parts;
    for (const auto& [m, c] : terms_) {
        if (parts.empty() || parts.back().first != m.degree())
            parts.emplace_back(m.degree(), zero(sig_));
        parts.back().second.terms_.emplace(m, c);
    }
    return parts;
}

bool GradedElement::uses(int ordinal) const
{
    for (const auto& [m, c] : terms_)
        if (m.exponent_of(ordinal) != 0)
            return true;
    return false;
}

int GradedElement::max_exponent(int ordinal) const
{
    int best = 0;
    for (const auto& [m, c] : terms_)
        best = std::max(best, m.exponent_of(ordinal));
    return best;
}

std::pair<GradedElement, GradedElement> GradedElement::decompose(int ordinal) const
{
    const GeneratorInfo& g = sig_->gen(ordinal);
    GradedElement alpha = zero(sig_);
    GradedElement beta = zero(sig_);
    for (const auto& [m, c] : terms_) {
        int e = m.exponent_of(ordinal);
        if (e == 0) {
            alpha.add_term(m, c);
            continue;
        }
        if (e != 1)
            throw Error("decompose: generator '" + g.name + "' appears with exponent " +
                        std::to_string(e));
        // strip g and record the sign of pulling it to the front
        int odd_before = 0;
        std::vector<Monomial::Factor> rest;
        rest.reserve(m.factors().size() - 1);
        for (const auto& f : m.factors()) {
            if (f.ordinal == ordinal)
                continue;
            if (f.ordinal < ordinal && sig_->odd(f.ordinal))
                ++odd_before;
            rest.push_back(f);
        }
        int sign = (g.degree % 2 != 0 && odd_before % 2 != 0) ? -1 : 1;
        beta.add_term(Monomial(*sig_, std::move(rest)), sign > 0 ? c : -c);
    }
    return {std::move(alpha), std::move(beta)};
}

std::string GradedElement::to_string() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Scalar mag = c < 0 ? Scalar(-c) : c;
        if (first) {
            if (c < 0)
                out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        if (m.is_unit()) {
            out << mag;
            continue;
        }
        if (mag != 1)
            out << mag << "*";
        bool first_factor = true;
        for (const auto& f : m.factors()) {
            if (!first_factor)
                out << "*";
            first_factor = false;
            out << sig_->gen(f.ordinal).name;
            if (f.exponent != 1)
                out << "^" << f.exponent;
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// cross-signature helpers

GradedElement promote(const GradedElement& e, SignaturePtr target)
{
    if (!target->extends(*e.signature()))
        throw Error("promote: target signature does not extend the element's signature");
    GradedElement out = GradedElement::zero(std::move(target));
    for (const auto& [m, c] : e.terms())
        out = out + GradedElement::term(out.signature(),
                                        Monomial(*out.signature(), m.factors()), c);
    return out;
}

GradedElement restrict_to(const GradedElement& e, SignaturePtr target)
{
    GradedElement out = GradedElement::zero(target);
    const AlgebraSignature& src = *e.signature();
    for (const auto& [m, c] : e.terms()) {
        std::vector<Monomial::Factor> factors;
        factors.reserve(m.factors().size());
        for (const auto& f : m.factors()) {
            const GeneratorInfo& g = src.gen(f.ordinal);
            auto ord = target->find(g.name);
            if (!ord)
                throw Error("restrict: generator '" + g.name + "' absent from target signature");
            if (target->gen(*ord).degree != g.degree)
                throw Error("restrict: generator '" + g.name + "' changes degree");
            factors.push_back({*ord, f.exponent});
        }
        std::sort(factors.begin(), factors.end(),
                  [](const Monomial::Factor& a, const Monomial::Factor& b) {
                      return a.ordinal < b.ordinal;
                  });
        // Ordinal order may differ between the signatures; restriction is
        // only offered for coefficient transfers where reordering is
        // sign-free (no pair of odd generators swaps relative order).
        // Verify by recomputing the Koszul sign of the permutation.
        std::vector<int> src_order;
        for (const auto& f : m.factors())
            if (src.odd(f.ordinal))
                src_order.push_back(*target->find(src.gen(f.ordinal).name));
        int inversions = 0;
        for (std::size_t i = 0; i < src_order.size(); ++i)
            for (std::size_t j = i + 1; j < src_order.size(); ++j)
                if (src_order[i] > src_order[j])
                    ++inversions;
        Scalar coeff = (inversions % 2 == 0) ? c : Scalar(-c);
        out = out + GradedElement::term(target, Monomial(*target, std::move(factors)), coeff);
    }
    return out;
}

std::pair<GradedElement, GradedElement> harmonize(const GradedElement& a, const GradedElement& b)
{
    if (a.signature()->same_as(*b.signature()))
        return {a, b};
    if (a.signature()->extends(*b.signature()))
        return {a, promote(b, a.signature())};
    if (b.signature()->extends(*a.signature()))
        return {promote(a, b.signature()), b};
    throw Error("harmonize: unrelated signatures");
}

} // namespace hori
