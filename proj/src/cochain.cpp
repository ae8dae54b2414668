#include "spt/cochain.hpp"

#include <limits>

namespace spt {

Cochain3 standard_cyclic_cocycle(std::size_t n, std::int64_t level) {
    if (level < 0 || static_cast<std::size_t>(level) >= n)
        throw Error(ErrorKind::out_of_range,
                    "level " + std::to_string(level) + " outside [0, " + std::to_string(n) + ")");
    return cyclic_cup_cocycle({n}, 0, 0, level);
}

Cochain3 cyclic_cup_cocycle(const std::vector<std::size_t> &factors, std::size_t i, std::size_t j,
                            std::int64_t level) {
    if (factors.empty() || i >= factors.size() || j >= factors.size())
        throw Error(ErrorKind::out_of_range, "factor index out of range");
    GroupRef g = make_cyclic(factors[0]);
    for (std::size_t f = 1; f < factors.size(); ++f)
        g = direct_product(*g, *make_cyclic(factors[f]));

    auto component = [&](std::size_t elem, std::size_t which) {
        std::size_t stride = 1;
        for (std::size_t f = factors.size(); f-- > which + 1;)
            stride *= factors[f];
        return static_cast<std::int64_t>((elem / stride) % factors[which]);
    };

    const auto ni = static_cast<std::int64_t>(factors[i]);
    const auto nj = static_cast<std::int64_t>(factors[j]);
    Cochain3 omega(g);
    for (std::size_t idx = 0; idx < omega.size(); ++idx) {
        auto [a, b, c] = omega.args(idx);
        std::int64_t carry = (component(b, j) + component(c, j) >= nj) ? 1 : 0;
        omega.entries()[idx] = Phase::from_fraction(level * component(a, i) * carry, ni);
    }
    return omega;
}

namespace {

Phase cocycle_residual(const Cochain3 &w, Element g, Element h, Element k, Element l) {
    const auto &G = w.group();
    Phase lhs = w(g, h, k) * w(g, G.mul(h, k), l) * w(h, k, l);
    Phase rhs = w(G.mul(g, h), k, l) * w(g, h, G.mul(k, l));
    return lhs / rhs;
}

} // namespace

CocycleCheck check_cocycle_serial(const Cochain3 &w) {
    const auto n = static_cast<Element>(w.group().order());
    for (Element g = 0; g < n; ++g)
        for (Element h = 0; h < n; ++h)
            for (Element k = 0; k < n; ++k)
                for (Element l = 0; l < n; ++l) {
                    Phase r = cocycle_residual(w, g, h, k, l);
                    if (!r.is_one())
                        return {false, {g, h, k, l}, r};
                }
    return {};
}

CocycleCheck check_cocycle(const Cochain3 &w) {
    const auto n = static_cast<std::int64_t>(w.group().order());
    const std::int64_t total = n * n * n * n;
    std::int64_t first = std::numeric_limits<std::int64_t>::max();

#pragma omp parallel for schedule(static) reduction(min : first)
    for (std::int64_t idx = 0; idx < total; ++idx) {
        if (idx >= first)
            continue;
        auto l = static_cast<Element>(idx % n);
        auto k = static_cast<Element>((idx / n) % n);
        auto h = static_cast<Element>((idx / (n * n)) % n);
        auto g = static_cast<Element>(idx / (n * n * n));
        if (!cocycle_residual(w, g, h, k, l).is_one())
            first = std::min(first, idx);
    }

    if (first == std::numeric_limits<std::int64_t>::max())
        return {};
    auto l = static_cast<Element>(first % n);
    auto k = static_cast<Element>((first / n) % n);
    auto h = static_cast<Element>((first / (n * n)) % n);
    auto g = static_cast<Element>(first / (n * n * n));
    return {false, {g, h, k, l}, cocycle_residual(w, g, h, k, l)};
}

Cochain3 coboundary(const Cochain2 &mu) {
    const auto &G = mu.group();
    Cochain3 d(mu.group_ref());
    for (std::size_t idx = 0; idx < d.size(); ++idx) {
        auto [g, h, k] = d.args(idx);
        d.entries()[idx] = mu(h, k) * mu(g, G.mul(h, k)) / (mu(G.mul(g, h), k) * mu(g, h));
    }
    return d;
}

} // namespace spt
