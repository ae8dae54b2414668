#include "spt/cohomology.hpp"

#include <vector>

#include "spt/smith.hpp"

namespace spt {

namespace {

std::int64_t system_modulus(std::int64_t denominator, std::size_t order) {
    __int128 m = static_cast<__int128>(denominator) * static_cast<__int128>(order);
    if (m > Phase::kMaxDenominator)
        throw Error(ErrorKind::unsupported_denominator, "denominator times group order exceeds the supported range");
    return static_cast<std::int64_t>(m);
}

// Row (g,h,k) of the coboundary map: +x(h,k) + x(g,hk) - x(gh,k) - x(g,h).
void add_coboundary_row(ModularSystem &sys, std::size_t row, const FiniteGroup &G, Element g, Element h,
                        Element k) {
    const std::size_t n = G.order();
    auto col = [n](Element a, Element b) { return static_cast<std::size_t>(a) * n + b; };
    sys.at(row, col(h, k)) += 1;
    sys.at(row, col(g, G.mul(h, k))) += 1;
    sys.at(row, col(G.mul(g, h), k)) -= 1;
    sys.at(row, col(g, h)) -= 1;
}

Cochain2 witness_from(const GroupRef &group, const std::vector<std::int64_t> &x, std::int64_t modulus) {
    Cochain2 mu(group);
    for (std::size_t i = 0; i < x.size(); ++i)
        mu.entries()[i] = Phase::from_fraction(x[i], modulus);
    return mu;
}

} // namespace

ClassComparison same_class(const Cochain3 &first, const Cochain3 &second) {
    first.check_same_group(second);
    const Cochain3 ratio = first / second;
    const FiniteGroup &G = ratio.group();
    const std::size_t n = G.order();
    ClassComparison out;
    out.modulus = system_modulus(ratio.common_denominator(), n);

    ModularSystem sys(n * n * n, n * n, out.modulus);
    for (std::size_t row = 0; row < ratio.size(); ++row) {
        auto [g, h, k] = ratio.args(row);
        add_coboundary_row(sys, row, G, g, h, k);
        sys.rhs[row] = ratio.entries()[row].numerator_over(out.modulus);
    }
    auto sol = solve_mod(std::move(sys));
    if (!sol.solvable)
        return out;
    out.same = true;
    out.witness = witness_from(ratio.group_ref(), sol.x, out.modulus);
    if (!(coboundary(*out.witness) == ratio))
        throw Error(ErrorKind::internal_inconsistency, "class witness does not reproduce the ratio");
    return out;
}

Normalization normalize(const Cochain3 &omega) {
    const FiniteGroup &G = omega.group();
    const std::size_t n = G.order();
    const std::int64_t modulus = system_modulus(omega.common_denominator(), n);

    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < omega.size(); ++i) {
        auto a = omega.args(i);
        if (a[0] == 0 || a[1] == 0 || a[2] == 0)
            rows.push_back(i);
    }
    ModularSystem sys(rows.size(), n * n, modulus);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        auto [g, h, k] = omega.args(rows[r]);
        add_coboundary_row(sys, r, G, g, h, k);
        sys.rhs[r] = omega.entries()[rows[r]].inverse().numerator_over(modulus);
    }
    auto sol = solve_mod(std::move(sys));
    if (!sol.solvable)
        throw Error(ErrorKind::internal_inconsistency, "no normalizing coboundary; input is not a cocycle");
    Normalization out{omega, witness_from(omega.group_ref(), sol.x, modulus)};
    out.cocycle = omega * coboundary(out.witness);
    if (!out.cocycle.is_normalized())
        throw Error(ErrorKind::internal_inconsistency, "normalization failed its post-check");
    return out;
}

std::int64_t identify_cyclic_level(const Cochain3 &omega, Element generator) {
    const FiniteGroup &G = omega.group();
    const std::size_t n = G.order();
    if (generator >= n || G.element_order(generator) != n)
        throw Error(ErrorKind::not_cyclic_consistent, "element does not generate the group");
    Phase prod;
    Element power = G.identity();
    for (std::size_t j = 0; j < n; ++j) {
        prod *= omega(generator, power, generator);
        power = G.mul(power, generator);
    }
    if (static_cast<std::int64_t>(n) % prod.den() != 0)
        throw Error(ErrorKind::not_cyclic_consistent, "invariant " + prod.to_string() + " is not an n-th root of unity");
    return prod.numerator_over(static_cast<std::int64_t>(n));
}

std::int64_t identify_cyclic_level(const Cochain3 &omega) {
    int gen = find_cyclic_generator(omega.group());
    if (gen < 0)
        throw Error(ErrorKind::not_cyclic_consistent, "group " + omega.group().name() + " is not cyclic");
    return identify_cyclic_level(omega, static_cast<Element>(gen));
}

} // namespace spt
