#pragma once

// Test-only brute-force oracles, kept independent of the library's merge
// logic on purpose.

#include "hori/algebra.hpp"

#include <optional>
#include <vector>

namespace hori::testing {

// Sign of a monomial product computed the slow way: unroll both factor
// lists into a flat generator sequence, bubble-sort by ordinal one adjacent
// transposition at a time, and flip the sign whenever two odd generators
// swap. nullopt means the product vanishes (an odd generator squared).
inline std::optional<int> transposition_sign(const AlgebraSignature& sig, const Monomial& a,
                                             const Monomial& b)
{
    std::vector<int> seq;
    for (const auto& f : a.factors())
        for (int i = 0; i < f.exponent; ++i)
            seq.push_back(f.ordinal);
    for (const auto& f : b.factors())
        for (int i = 0; i < f.exponent; ++i)
            seq.push_back(f.ordinal);

    int sign = 1;
    bool moved = true;
    while (moved) {
        moved = false;
        for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
            if (seq[i] > seq[i + 1]) {
                if (sig.odd(seq[i]) && sig.odd(seq[i + 1]))
                    sign = -sign;
                std::swap(seq[i], seq[i + 1]);
                moved = true;
            }
        }
    }
    for (std::size_t i = 0; i + 1 < seq.size(); ++i)
        if (seq[i] == seq[i + 1] && sig.odd(seq[i]))
            return std::nullopt;
    return sign;
}

// The sorted sequence reassembled into a normal-form monomial.
inline Monomial sorted_product(const AlgebraSignature& sig, const Monomial& a, const Monomial& b)
{
    std::vector<Monomial::Factor> factors;
    for (const auto& f : a.factors())
        factors.push_back(f);
    for (const auto& f : b.factors()) {
        bool merged = false;
        for (auto& g : factors)
            if (g.ordinal == f.ordinal) {
                g.exponent += f.exponent;
                merged = true;
                break;
            }
        if (!merged)
            factors.push_back(f);
    }
    std::sort(factors.begin(), factors.end(),
              [](const Monomial::Factor& x, const Monomial::Factor& y) {
                  return x.ordinal < y.ordinal;
              });
    return Monomial(sig, std::move(factors));
}

} // namespace hori::testing
