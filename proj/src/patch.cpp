#include "spt/patch.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include <omp.h>

namespace spt {

std::string LinkAssignment::name() const {
    std::string base;
    if (first_leg == 1 && second_leg == 2)
        base = "literal";
    else if (first_leg == 2 && second_leg == 1)
        base = "mirrored";
    else if (first_leg == 3 && second_leg == 4)
        base = "rotated";
    else if (first_leg == 4 && second_leg == 3)
        base = "rotated-mirrored";
    else
        base = "legs" + std::to_string(first_leg) + std::to_string(second_leg);
    return base + (direction > 0 ? "/+x" : "/-x");
}

const std::vector<LinkAssignment> &link_assignment_candidates() {
    static const std::vector<LinkAssignment> all = [] {
        std::vector<LinkAssignment> v;
        for (auto [a, b] : {std::pair{1, 2}, {2, 1}, {3, 4}, {4, 3}})
            for (int d : {+1, -1})
                v.push_back({a, b, d});
        return v;
    }();
    return all;
}

LinkAssignment parse_link_assignment(const std::string &name) {
    for (const auto &c : link_assignment_candidates())
        if (c.name() == name)
            return c;
    throw Error(ErrorKind::parse_error, "unknown link assignment '" + name + "'");
}

LinkAssignment mirror_y(const LinkAssignment &a) {
    auto flip = [](int leg) { return 5 - leg; };
    return {flip(a.first_leg), flip(a.second_leg), a.direction};
}

PatchGeometry::PatchGeometry(std::size_t width, std::size_t height, BoundaryCondition bc, LinkAssignment link)
    : w_(width), h_(height), bc_(bc), link_(link) {
    const std::size_t min = bc == BoundaryCondition::torus ? 2 : 1;
    if (w_ < min || h_ < min)
        throw Error(ErrorKind::out_of_range, "patch too small");
    leg_plaquette_.assign(leg_count(), std::nullopt);
    plaquette_legs_.assign(plaquette_count(), {});
    const auto W = static_cast<std::ptrdiff_t>(w_), H = static_cast<std::ptrdiff_t>(h_);
    for (std::size_t y = 0; y < site_rows(); ++y)
        for (std::size_t x = 0; x < site_columns(); ++x) {
            const std::size_t s = y * site_columns() + x;
            for (int a = 1; a <= 4; ++a) {
                std::ptrdiff_t px = static_cast<std::ptrdiff_t>(x) - (a == 1 || a == 4 ? 1 : 0);
                std::ptrdiff_t py = static_cast<std::ptrdiff_t>(y) - (a == 1 || a == 2 ? 1 : 0);
                if (bc_ == BoundaryCondition::torus) {
                    px = (px + W) % W;
                    py = (py + H) % H;
                } else if (px < 0 || px >= W || py < 0 || py >= H) {
                    continue;
                }
                const auto p = static_cast<std::uint32_t>(py * W + px);
                leg_plaquette_[leg(s, a)] = p;
                plaquette_legs_[p].push_back(leg(s, a));
            }
        }
}

std::size_t PatchGeometry::site(std::ptrdiff_t x, std::ptrdiff_t y) const {
    const auto C = static_cast<std::ptrdiff_t>(site_columns()), R = static_cast<std::ptrdiff_t>(site_rows());
    if (bc_ == BoundaryCondition::torus) {
        x = ((x % C) + C) % C;
        y = ((y % R) + R) % R;
    } else if (x < 0 || x >= C || y < 0 || y >= R) {
        throw Error(ErrorKind::out_of_range, "site outside the open patch");
    }
    return static_cast<std::size_t>(y * C + x);
}

std::vector<std::size_t> PatchGeometry::plaquette_sites(std::uint32_t p) const {
    const auto i = static_cast<std::ptrdiff_t>(p % w_), j = static_cast<std::ptrdiff_t>(p / w_);
    return {site(i, j), site(i + 1, j), site(i + 1, j + 1), site(i, j + 1)};
}

std::vector<std::size_t> PatchGeometry::all_sites() const {
    std::vector<std::size_t> s(site_count());
    for (std::size_t i = 0; i < s.size(); ++i)
        s[i] = i;
    return s;
}

std::vector<std::size_t> PatchGeometry::half_region() const {
    std::vector<std::size_t> s;
    for (std::size_t y = 1; y <= h_ / 2; ++y)
        for (std::size_t x = 0; x < site_columns(); ++x)
            s.push_back(site(static_cast<std::ptrdiff_t>(x), static_cast<std::ptrdiff_t>(y)));
    return s;
}

RegisterSpace patch_space(const GroupRef &group, const PatchGeometry &geom) {
    if (group->order() > 255)
        throw Error(ErrorKind::out_of_range, "patch labels are stored in one byte");
    return RegisterSpace(group, geom.leg_count());
}

MonomialOp onsite_symmetry_op(const Cochain3 &omega, const PatchGeometry &geom, Element g,
                              const std::vector<std::size_t> &sites) {
    const FiniteGroup &G = omega.group();
    const std::size_t n = G.order();
    std::vector<Phase> weight(n * n * n * n);
    for (std::size_t idx = 0; idx < weight.size(); ++idx) {
        const auto l1 = static_cast<Element>(idx / (n * n * n)), l2 = static_cast<Element>(idx / (n * n) % n),
                   l3 = static_cast<Element>(idx / n % n), l4 = static_cast<Element>(idx % n);
        weight[idx] = omega(G.div(l2, l1), l1, g) * omega(G.div(l3, l2), l2, g) /
                      (omega(G.div(l3, l4), l4, g) * omega(G.div(l4, l1), l1, g));
    }
    MonomialOp u(patch_space(omega.group_ref(), geom));
    for (auto s : sites) {
        u.push(Diagonal{{geom.leg(s, 1), geom.leg(s, 2), geom.leg(s, 3), geom.leg(s, 4)}, weight});
        for (int a = 1; a <= 4; ++a)
            u.push(Shift{geom.leg(s, a), g});
    }
    return u;
}

std::pair<Register, Register> link_legs(const PatchGeometry &geom, std::size_t row, const LinkAssignment &link,
                                        std::ptrdiff_t x) {
    const auto y = static_cast<std::ptrdiff_t>(row);
    return {geom.leg(geom.site(x - 1, y), link.first_leg), geom.leg(geom.site(x, y), link.second_leg)};
}

MonomialOp boundary_compensator_2d(const Cochain3 &omega, const PatchGeometry &geom, Element g, std::size_t row,
                                   const LinkAssignment &link, bool conjugate_cocycle, std::size_t first_link,
                                   std::size_t count) {
    if (geom.boundary() != BoundaryCondition::torus)
        throw Error(ErrorKind::out_of_range, "boundary compensators are built on tori");
    const FiniteGroup &G = omega.group();
    const std::size_t n = G.order();
    const auto W = static_cast<std::ptrdiff_t>(geom.width());
    const bool full = count == 0;
    if (full)
        count = geom.width();
    if (count > geom.width())
        throw Error(ErrorKind::out_of_range, "arc longer than the boundary");

    std::vector<Phase> table(n * n * n * n);
    for (std::size_t idx = 0; idx < table.size(); ++idx) {
        const auto a = static_cast<Element>(idx / (n * n * n)), b = static_cast<Element>(idx / (n * n) % n),
                   c = static_cast<Element>(idx / n % n), d = static_cast<Element>(idx % n);
        if (a != b || c != d)
            continue;
        Phase p = omega(G.div(a, c), c, g);
        table[idx] = conjugate_cocycle ? p.inverse() : p;
    }

    MonomialOp u(patch_space(omega.group_ref(), geom));
    const auto first = static_cast<std::ptrdiff_t>(first_link), last = first + static_cast<std::ptrdiff_t>(count);
    for (std::ptrdiff_t x = first; x < last; ++x) {
        const std::ptrdiff_t y = x + link.direction;
        if (!full && (y < first || y >= last))
            continue;
        auto [a, b] = link_legs(geom, row, link, ((x % W) + W) % W);
        auto [c, d] = link_legs(geom, row, link, ((y % W) + W) % W);
        u.push(Diagonal{{a, b, c, d}, table});
    }
    for (std::ptrdiff_t x = first; x < last; ++x) {
        auto [a, b] = link_legs(geom, row, link, ((x % W) + W) % W);
        u.push(PairShift{a, b, g});
    }
    return u;
}

MonomialOp full_compensator_2d(const Cochain3 &omega, const PatchGeometry &geom, Element g) {
    if (geom.height() < 3)
        throw Error(ErrorKind::out_of_range, "compensation needs H >= 3 so the two boundary rows differ");
    return compose(boundary_compensator_2d(omega, geom, g, geom.far_boundary_row(), mirror_y(geom.link()), true),
                   boundary_compensator_2d(omega, geom, g, geom.primary_boundary_row(), geom.link(), false));
}

MonomialOp compensated_symmetry(const Cochain3 &omega, const PatchGeometry &geom, Element g) {
    return compose(full_compensator_2d(omega, geom, g), onsite_symmetry_op(omega, geom, g, geom.half_region()));
}

Phase Overlap::phase() const {
    if (!unit())
        throw Error(ErrorKind::pipeline_failure, "overlap is not a unit phase");
    return histogram.begin()->first;
}

std::complex<double> Overlap::value() const {
    std::complex<double> v = 0;
    for (const auto &[p, c] : histogram)
        v += static_cast<double>(c) * p.to_complex();
    return total ? v / static_cast<double>(total) : v;
}

SparsePatchState::Key SparsePatchState::key(const BasisConfig &c) {
    Key k(c.size(), '\0');
    for (std::size_t i = 0; i < c.size(); ++i)
        k[i] = static_cast<char>(c[i]);
    return k;
}

void SparsePatchState::add(const BasisConfig &c, Phase amplitude) {
    auto [it, fresh] = index_.emplace(key(c), terms_.size());
    if (!fresh)
        throw Error(ErrorKind::internal_inconsistency, "two terms map to one configuration");
    terms_.emplace_back(c, amplitude);
}

std::optional<Phase> SparsePatchState::amplitude(const BasisConfig &c) const {
    auto it = index_.find(key(c));
    if (it == index_.end())
        return std::nullopt;
    return terms_[it->second].second;
}

SparsePatchState SparsePatchState::apply(const MonomialOp &u) const {
    SparsePatchState out(group_, registers_);
    out.terms_.reserve(terms_.size());
    for (const auto &[c, a] : terms_) {
        auto [c2, ph] = u.apply(c);
        out.add(c2, a * ph);
    }
    return out;
}

SparsePatchState build_patch_state(const GroupRef &group, const PatchGeometry &geom, std::uint64_t cap) {
    const std::size_t n = group->order(), P = geom.plaquette_count();
    unsigned __int128 total = 1;
    for (std::size_t i = 0; i < P; ++i) {
        total *= n;
        if (total > cap)
            throw Error(ErrorKind::budget_exceeded, "plaquette state has more than " + std::to_string(cap) + " terms");
    }
    SparsePatchState psi(group, geom.leg_count());
    BasisConfig labels(P, 0), c(geom.leg_count(), 0);
    for (std::uint64_t idx = 0; idx < static_cast<std::uint64_t>(total); ++idx) {
        std::uint64_t rest = idx;
        for (std::size_t p = P; p-- > 0;) {
            labels[p] = static_cast<Element>(rest % n);
            rest /= n;
        }
        for (std::uint32_t p = 0; p < P; ++p)
            for (auto r : geom.plaquette_legs(p))
                c[r] = labels[p];
        psi.add(c, Phase::one());
    }
    return psi;
}

Overlap inner_product(const SparsePatchState &a, const SparsePatchState &b) {
    if (a.size() != b.size())
        throw Error(ErrorKind::chain_mismatch, "states with different term counts");
    Overlap o;
    o.total = a.size();
    for (const auto &[c, amp] : a.terms())
        if (auto other = b.amplitude(c))
            ++o.histogram[amp.inverse() * *other];
    return o;
}

Overlap sparse_expectation(const SparsePatchState &psi, const MonomialOp &u) {
    const CompiledOp k(u);
    const auto &terms = psi.terms();
    const auto total = static_cast<std::int64_t>(terms.size());
    std::vector<std::map<Phase, std::uint64_t>> partial(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
    {
        auto &local = partial[static_cast<std::size_t>(omp_get_thread_num())];
        BasisConfig c;
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < total; ++i) {
            c = terms[i].first;
            const std::int64_t e = k.apply_inplace(c.data());
            if (auto amp = psi.amplitude(c))
                ++local[Phase::from_fraction(e, k.denominator()) * terms[i].second.inverse() * *amp];
        }
    }
    Overlap o;
    o.total = terms.size();
    for (const auto &m : partial)
        for (const auto &[p, cnt] : m)
            o.histogram[p] += cnt;
    return o;
}

Overlap sparse_expectation_serial(const SparsePatchState &psi, const MonomialOp &u) {
    Overlap o;
    o.total = psi.size();
    for (const auto &[c, amp] : psi.terms()) {
        auto [c2, ph] = u.apply(c);
        if (auto other = psi.amplitude(c2))
            ++o.histogram[amp.inverse() * ph * *other];
    }
    return o;
}

} // namespace spt
