#include "hori/qseries.hpp"

#include <sstream>

namespace hori {

QSeries::QSeries(FreeDGCA coeff_ring, int component_degree, int truncation)
    : ring_(std::move(coeff_ring)), degree_(component_degree), trunc_(truncation)
{
}

QSeries& QSeries::set_coefficient(int n, GradedElement c)
{
    if (!c.signature()->same_as(*ring_.signature()))
        throw Error("q-series coefficient over wrong signature");
    if (n > trunc_)
        throw Error("q-series coefficient beyond the truncation order");
    if (!c.degree().is(degree_))
        throw Error("q-series coefficient of degree " + c.degree().to_string() +
                    " in a series of degree " + std::to_string(degree_));
    if (c.is_zero())
        coeffs_.erase(n);
    else
        coeffs_[n] = std::move(c);
    return *this;
}

GradedElement QSeries::coefficient(int n) const
{
    auto it = coeffs_.find(n);
    if (it != coeffs_.end())
        return it->second;
    return GradedElement::zero(ring_.signature());
}

int QSeries::lower_bound() const
{
    return coeffs_.empty() ? trunc_ + 1 : coeffs_.begin()->first;
}

QSeries QSeries::operator+(const QSeries& rhs) const
{
    if (!ring_.signature()->same_as(*rhs.ring_.signature()))
        throw Error("q-series addition: different coefficient rings");
    if (degree_ != rhs.degree_ && !coeffs_.empty() && !rhs.coeffs_.empty())
        throw Error("q-series addition: mixed component degrees");
    QSeries out(ring_, coeffs_.empty() ? rhs.degree_ : degree_,
                std::min(trunc_, rhs.trunc_));
    for (const auto& [n, c] : coeffs_)
        if (n <= out.trunc_)
            out.coeffs_.emplace(n, c);
    for (const auto& [n, c] : rhs.coeffs_) {
        if (n > out.trunc_)
            continue;
        auto it = out.coeffs_.find(n);
        if (it == out.coeffs_.end()) {
            out.coeffs_.emplace(n, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero())
                out.coeffs_.erase(it);
        }
    }
    return out;
}

QSeries QSeries::operator-(const QSeries& rhs) const { return *this + (-rhs); }

QSeries QSeries::operator-() const
{
    QSeries out = *this;
    for (auto& [n, c] : out.coeffs_)
        c = -c;
    return out;
}

QSeries QSeries::operator*(const Scalar& s) const
{
    QSeries out = *this;
    if (s == 0) {
        out.coeffs_.clear();
        return out;
    }
    for (auto& [n, c] : out.coeffs_)
        c = c * s;
    return out;
}

QSeries QSeries::operator*(const QSeries& rhs) const
{
    if (!ring_.signature()->same_as(*rhs.ring_.signature()))
        throw Error("q-series multiplication: different coefficient rings");
    // the Cauchy coefficient at n is certified only when every admissible
    // split lands inside both known windows
    int trunc = std::min(trunc_ + rhs.lower_bound(), rhs.trunc_ + lower_bound());
    QSeries out(ring_, degree_ + rhs.degree_, trunc);
    for (const auto& [n, c] : coeffs_)
        for (const auto& [m, d] : rhs.coeffs_) {
            if (n + m > trunc)
                continue;
            GradedElement prod = c * d;
            if (prod.is_zero())
                continue;
            auto it = out.coeffs_.find(n + m);
            if (it == out.coeffs_.end()) {
                out.coeffs_.emplace(n + m, std::move(prod));
            } else {
                it->second = it->second + prod;
                if (it->second.is_zero())
                    out.coeffs_.erase(it);
            }
        }
    return out;
}

bool QSeries::agrees(const QSeries& rhs) const
{
    if (!ring_.signature()->same_as(*rhs.ring_.signature()))
        return false;
    int window = std::min(trunc_, rhs.trunc_);
    int start = std::min(lower_bound(), rhs.lower_bound());
    for (int n = start; n <= window; ++n)
        if (!(coefficient(n) == rhs.coefficient(n)))
            return false;
    return true;
}

std::string QSeries::to_string() const
{
    std::ostringstream out;
    bool first = true;
    for (const auto& [n, c] : coeffs_) {
        if (!first)
            out << " + ";
        first = false;
        if (n == 0) {
            out << c.to_string();
            continue;
        }
        if (c.terms().size() > 1)
            out << "(" << c.to_string() << ")";
        else
            out << c.to_string();
        out << "*q";
        if (n != 1)
            out << "^" << n;
    }
    if (first)
        out << "0";
    out << " + O(q^" << trunc_ + 1 << ")";
    return out.str();
}

QSeries q_log_derivative(const QSeries& f)
{
    QSeries out(f.coeff_ring(), f.component_degree(), f.truncation());
    for (const auto& [n, c] : f.coefficients())
        if (n != 0)
            out.set_coefficient(n, c * Scalar(-n));
    return out;
}

QPair hori_on_qpairs(const QPair& p)
{
    return {p.second, q_log_derivative(p.first)};
}

JacobiElement jacobi_mul(const JacobiElement& a, const JacobiElement& b)
{
    return {a.weight + b.weight, a.expansion * b.expansion};
}

JacobiElement jacobi_add(const JacobiElement& a, const JacobiElement& b)
{
    if (a.weight != b.weight)
        throw Error("jacobi addition requires equal weights");
    return {a.weight, a.expansion + b.expansion};
}

JacobiElement jacobi_q_log_derivative(const JacobiElement& a)
{
    return {a.weight + 1, q_log_derivative(a.expansion)};
}

JacobiPair jacobi_hori(const JacobiPair& p)
{
    return {p.second, jacobi_q_log_derivative(p.first)};
}

FreeDGCA with_tau_symbols(const FreeDGCA& A0, const std::vector<std::string>& names)
{
    std::vector<GeneratorInfo> gens = A0.signature()->generators();
    for (const auto& name : names)
        gens.push_back({name, 0, false});
    SignaturePtr sig = AlgebraSignature::make_full(std::move(gens), /*allow_degree_zero=*/true);
    std::vector<GradedElement> diffs;
    for (std::size_t i = 0; i < A0.signature()->size(); ++i)
        diffs.push_back(promote(A0.diff_of(static_cast<int>(i)), sig));
    for (std::size_t i = 0; i < names.size(); ++i)
        diffs.push_back(GradedElement::zero(sig));
    return FreeDGCA(A0.name() + "(tau)", sig, std::move(diffs));
}

QSetup make_q_setup(const FreeDGCA& A0)
{
    if (A0.signature()->find(kUVar))
        throw Error("coefficient algebra uses the reserved name 'u'");
    // the formal Laurent variable gets the first free name xi, xi0, xi1, ...
    std::string xi_name = "xi";
    for (int k = 0; A0.signature()->find(xi_name); ++k)
        xi_name = "xi" + std::to_string(k);
    SignaturePtr with_u = A0.signature()->extended({kUVar, 2, true});
    SignaturePtr sig = AlgebraSignature::make_full(
        [&] {
            auto gens = with_u->generators();
            gens.push_back({xi_name, 2, false});
            return gens;
        }(),
        /*allow_degree_zero=*/true);
    std::vector<GradedElement> diffs;
    for (std::size_t i = 0; i < A0.signature()->size(); ++i)
        diffs.push_back(promote(A0.diff_of(static_cast<int>(i)), sig));
    diffs.push_back(GradedElement::zero(sig)); // d(u) = 0
    diffs.push_back(GradedElement::zero(sig)); // d(xi) = 0
    FreeDGCA ambient(A0.name() + "[u,xi]", sig, std::move(diffs));

    QSetup setup;
    setup.A0 = A0;
    setup.plain = invert_generator(ambient, xi_name);
    setup.u_ordinal = static_cast<int>(A0.signature()->size());
    return setup;
}

LaurentElement mu_into(int i, const QSeries& f, const LaurentContext& ctx)
{
    auto u_ord = ctx.algebra.signature()->find(kUVar);
    if (!u_ord)
        throw Error("mu: target context has no u variable");
    LaurentElement out(ctx, 2 * i);
    for (const auto& [n, c] : f.coefficients()) {
        GradedElement lifted = promote(c, ctx.algebra.signature());
        if (n != 0) {
            Monomial u_pow(*ctx.algebra.signature(), {{*u_ord, n}});
            lifted = lifted * GradedElement::term(ctx.algebra.signature(), u_pow, Scalar(1));
        }
        out.set_coefficient(n - i, lifted);
    }
    out.set_known_up_to(f.truncation() - i);
    return out;
}

LaurentElement mu(const QSetup& setup, int i, const QSeries& f)
{
    return mu_into(i, f, setup.plain);
}

QSeries mu_inverse(int i, const LaurentElement& w, const FreeDGCA& A0, int component_degree)
{
    auto u_ord = w.context().algebra.signature()->find(kUVar);
    if (!u_ord)
        throw Error("mu_inverse: context has no u variable");
    int trunc = w.known_up_to() ? *w.known_up_to() + i : (w.coefficients().empty()
                                                              ? i
                                                              : w.coefficients().rbegin()->first + i);
    QSeries out(A0, component_degree, trunc);
    const AlgebraSignature& src = *w.context().algebra.signature();
    for (const auto& [m, c] : w.coefficients()) {
        int expected_u = m + i;
        GradedElement stripped = GradedElement::zero(w.context().algebra.signature());
        for (const auto& [mono, coeff] : c.terms()) {
            if (mono.exponent_of(*u_ord) != expected_u)
                throw Error("mu_inverse: coefficient of xi^" + std::to_string(-m) +
                            " is not a multiple of u^" + std::to_string(expected_u));
            std::vector<Monomial::Factor> rest;
            for (const auto& fac : mono.factors())
                if (fac.ordinal != *u_ord)
                    rest.push_back(fac);
            stripped = stripped + GradedElement::term(w.context().algebra.signature(),
                                                      Monomial(src, std::move(rest)), coeff);
        }
        out.set_coefficient(m + i, restrict_to(stripped, A0.signature()));
    }
    return out;
}

QTransport::QTransport(const TDualityConfig& config_on_A0)
    : setup(make_q_setup(config_on_A0.target())),
      config([&] {
          // induced configuration through A0 ↪ A0[u^{-1},u]]
          SignaturePtr with_u = config_on_A0.target().signature()->extended({kUVar, 2, true});
          std::vector<GradedElement> diffs;
          for (std::size_t j = 0; j < config_on_A0.target().signature()->size(); ++j)
              diffs.push_back(promote(config_on_A0.target().diff_of(static_cast<int>(j)), with_u));
          diffs.push_back(GradedElement::zero(with_u));
          FreeDGCA A(config_on_A0.target().name() + "[u]", with_u, std::move(diffs));
          return TDualityConfig(A, promote(config_on_A0.fxL(), with_u),
                                promote(config_on_A0.fxR(), with_u),
                                promote(config_on_A0.fy(), with_u));
      }()),
      tower(build_gerbe_tower(config)),
      machine(tower)
{
}

LaurentElement QTransport::pack_left(const QPair& p) const
{
    LaurentElement first = mu_into(0, p.first, machine.GL_hat());
    LaurentElement second = mu_into(0, p.second, machine.GL_hat());
    return machine.pack_pair(machine.GL_hat(), first, second);
}

QPair QTransport::unpack_right(const LaurentElement& w, int first_degree,
                               int second_degree) const
{
    auto [first, second] = machine.unpack_pair(w);
    return {mu_inverse(0, first, setup.A0, first_degree),
            mu_inverse(-1, second, setup.A0, second_degree)};
}

} // namespace hori
