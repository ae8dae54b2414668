#pragma once

#include <cstdint>
#include <optional>

#include "spt/cochain.hpp"

namespace spt {

struct ClassComparison {
    bool same = false;
    /// mu with coboundary(mu) == first / second, present iff same.
    std::optional<Cochain2> witness;
    /// Modulus of the linear system that decided the question.
    std::int64_t modulus = 1;
};

/// Decides whether first / second is a coboundary. The witness exponents
/// live in (1/M)Z with M = m |G|, m the common denominator of the inputs.
ClassComparison same_class(const Cochain3 &first, const Cochain3 &second);

struct Normalization {
    Cochain3 cocycle;
    Cochain2 witness;
};

/// Returns omega * d(mu) with every identity-argument entry equal to 1.
Normalization normalize(const Cochain3 &omega);

/// p with exp(2 pi i p / n) = prod_j omega(g, g^j, g) for a generator g of Z_n.
std::int64_t identify_cyclic_level(const Cochain3 &omega, Element generator);

/// Same, using the first generator found.
std::int64_t identify_cyclic_level(const Cochain3 &omega);

} // namespace spt
