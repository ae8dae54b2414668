#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "spt/boundary_chain.hpp"
#include "spt/patch.hpp"

namespace spt {

namespace {

std::string config_text(const BasisConfig &c, const std::vector<Register> &regs) {
    std::ostringstream os;
    for (std::size_t i = 0; i < regs.size(); ++i)
        os << (i ? "," : "") << c[regs[i]];
    return os.str();
}

constexpr std::size_t kMaxReported = 8;

void report(PatchCheck &chk, std::string msg) {
    chk.pass = false;
    if (chk.violations.size() < kMaxReported)
        chk.violations.push_back(std::move(msg));
}

} // namespace

PatchCheck verify_representation(const Cochain3 &omega, const PatchGeometry &geom, std::size_t samples,
                                 std::uint64_t seed) {
    const FiniteGroup &G = omega.group();
    const std::size_t n = G.order();
    PatchCheck chk;
    const std::vector<std::size_t> one_site{0};
    const std::vector<Register> legs{geom.leg(0, 1), geom.leg(0, 2), geom.leg(0, 3), geom.leg(0, 4)};
    std::vector<MonomialOp> site_ops, patch_ops;
    for (std::size_t g = 0; g < n; ++g) {
        site_ops.push_back(onsite_symmetry_op(omega, geom, static_cast<Element>(g), one_site));
        patch_ops.push_back(onsite_symmetry_op(omega, geom, static_cast<Element>(g), geom.all_sites()));
    }
    BasisConfig c(geom.leg_count(), 0);
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h) {
            const Element gh = G.mul(static_cast<Element>(g), static_cast<Element>(h));
            const MonomialOp both = compose(site_ops[g], site_ops[h]);
            for (std::size_t idx = 0; idx < n * n * n * n; ++idx) {
                c[legs[0]] = static_cast<Element>(idx / (n * n * n));
                c[legs[1]] = static_cast<Element>(idx / (n * n) % n);
                c[legs[2]] = static_cast<Element>(idx / n % n);
                c[legs[3]] = static_cast<Element>(idx % n);
                ++chk.checked;
                if (both.apply(c) != site_ops[gh].apply(c))
                    report(chk, "single site, g=" + std::to_string(g) + ", h=" + std::to_string(h) + ", legs " +
                                    config_text(c, legs));
            }
        }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> label(0, n - 1), elem(0, n - 1);
    for (std::size_t s = 0; s < samples; ++s) {
        for (auto &l : c)
            l = static_cast<Element>(label(rng));
        const auto g = static_cast<Element>(elem(rng)), h = static_cast<Element>(elem(rng));
        ++chk.checked;
        if (compose(patch_ops[g], patch_ops[h]).apply(c) != patch_ops[G.mul(g, h)].apply(c))
            report(chk, "whole patch, g=" + std::to_string(g) + ", h=" + std::to_string(h) + ", sample " +
                            std::to_string(s));
    }
    return chk;
}

PatchCheck verify_plaquette_invariance(const Cochain3 &omega, const PatchGeometry &geom) {
    const FiniteGroup &G = omega.group();
    const std::size_t n = G.order();
    PatchCheck chk;
    for (std::uint32_t p = 0; p < geom.plaquette_count(); ++p) {
        const auto sites = geom.plaquette_sites(p);
        std::set<std::uint32_t> touched;
        std::vector<Register> site_legs;
        for (auto s : sites)
            for (int a = 1; a <= 4; ++a) {
                site_legs.push_back(geom.leg(s, a));
                if (auto q = geom.plaquette_of_leg(geom.leg(s, a)))
                    touched.insert(*q);
            }
        touched.erase(p);
        const std::vector<std::uint32_t> others(touched.begin(), touched.end());
        if (others.size() > kMaxConePlaquettes)
            throw Error(ErrorKind::budget_exceeded, "plaquette neighbourhood too large");
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < others.size(); ++i)
            count *= n;
        const auto &own = geom.plaquette_legs(p);

        for (std::size_t g = 1; g < n; ++g) {
            const CompiledOp k(onsite_symmetry_op(omega, geom, static_cast<Element>(g), sites));
            int ok = 1;
#pragma omp parallel reduction(& : ok)
            {
                BasisConfig base(geom.leg_count(), 0), moved(geom.leg_count(), 0);
#pragma omp for schedule(static)
                for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
                    std::uint64_t rest = static_cast<std::uint64_t>(i);
                    for (std::size_t j = others.size(); j-- > 0;) {
                        for (auto r : geom.plaquette_legs(others[j]))
                            base[r] = static_cast<Element>(rest % n);
                        rest /= n;
                    }
                    for (auto r : own)
                        base[r] = 0;
                    BasisConfig ref = base;
                    const std::int64_t ref_phase = k.apply_inplace(ref.data());
                    for (std::size_t v = 0; v < n; ++v) {
                        moved = base;
                        for (auto r : own)
                            moved[r] = static_cast<Element>(v);
                        const std::int64_t phase = k.apply_inplace(moved.data());
                        const Element expect = G.mul(static_cast<Element>(v), static_cast<Element>(g));
                        for (auto r : site_legs) {
                            const bool mine = std::find(own.begin(), own.end(), r) != own.end();
                            if (mine ? moved[r] != expect : moved[r] != ref[r])
                                ok = 0;
                        }
                        if (phase != ref_phase)
                            ok = 0;
                    }
                }
            }
            chk.checked += count * n;
            if (!ok)
                report(chk, "plaquette " + std::to_string(p) + ", g=" + std::to_string(g) +
                                ": the action depends on the plaquette label");
        }
    }
    return chk;
}

PatchCheck verify_global_invariance(const Cochain3 &omega, const PatchGeometry &geom, std::uint64_t sparse_cap) {
    const std::size_t n = omega.group().order();
    PatchCheck chk;
    std::optional<SparsePatchState> psi;
    try {
        psi = build_patch_state(omega.group_ref(), geom, sparse_cap);
    } catch (const Error &e) {
        if (e.kind() != ErrorKind::budget_exceeded)
            throw;
    }
    for (std::size_t g = 0; g < n; ++g) {
        const MonomialOp u = onsite_symmetry_op(omega, geom, static_cast<Element>(g), geom.all_sites());
        const auto lc = light_cone_expectation(u, geom);
        chk.checked += lc.configs_checked;
        if (!lc.unit())
            report(chk, "g=" + std::to_string(g) + ": global symmetry does not fix the state");
        else if (!lc.phase.is_one())
            report(chk, "g=" + std::to_string(g) + ": global symmetry multiplies the state by " + lc.phase.to_string());
        if (psi) {
            const Overlap o = sparse_expectation(*psi, u);
            chk.checked += psi->size();
            if (!o.unit() || std::abs(o.magnitude() - 1.0) > 1e-12)
                report(chk, "g=" + std::to_string(g) + ": sparse overlap magnitude " + std::to_string(o.magnitude()));
            else if (lc.unit() && o.phase() != lc.phase)
                report(chk, "g=" + std::to_string(g) + ": sparse and light-cone phases disagree");
        }
    }
    return chk;
}

CompensationOutcome verify_compensation(const Cochain3 &omega, const PatchGeometry &geom) {
    CompensationOutcome out{geom.link(), true, {}};
    for (std::size_t g = 0; g < omega.group().order(); ++g) {
        auto lc = light_cone_expectation(compensated_symmetry(omega, geom, static_cast<Element>(g)), geom);
        out.pass = out.pass && lc.unit();
        out.per_element.push_back(std::move(lc));
    }
    return out;
}

AssignmentSelection select_link_assignment(const Cochain3 &omega, const PatchGeometry &geom) {
    AssignmentSelection sel;
    PatchGeometry trial = geom;
    for (const auto &cand : link_assignment_candidates()) {
        trial.set_link(cand);
        sel.candidates.push_back(verify_compensation(omega, trial));
        if (sel.candidates.back().pass && !sel.selected)
            sel.selected = cand;
    }
    return sel;
}

ArcIndex arc_index_crosscheck(const Cochain3 &omega, const PatchGeometry &geom, std::size_t arc_links,
                              std::size_t cut) {
    const FiniteGroup &G = omega.group();
    const std::size_t n = G.order();
    const LinkAssignment &link = geom.link();
    const std::size_t row = geom.primary_boundary_row();
    if (arc_links == 0)
        arc_links = geom.width();
    if (arc_links < kMinChainLength + 1 || arc_links > geom.width())
        throw Error(ErrorKind::out_of_range, "arc must hold between 3 and W links");
    const std::size_t m = arc_links - 1;
    if (cut == 0)
        cut = m / 2;
    if (cut > m)
        throw Error(ErrorKind::out_of_range, "arc cut beyond the arc");

    // Arc position j is link x_j with x_{j+1} = x_j + direction.
    auto link_at = [&](std::size_t j) {
        return link.direction > 0 ? static_cast<std::ptrdiff_t>(j) : static_cast<std::ptrdiff_t>(m - j);
    };
    const std::size_t plus_first = link.direction > 0 ? cut : 0;
    const std::size_t plus_count = m - cut + 1;

    ArcIndex out(omega.group_ref());
    std::vector<MonomialOp> k_plus, u;
    for (std::size_t g = 0; g < n; ++g) {
        k_plus.push_back(
            boundary_compensator_2d(omega, geom, static_cast<Element>(g), row, link, false, plus_first, plus_count));
        u.push_back(compensated_symmetry(omega, geom, static_cast<Element>(g)));
    }
    const auto [na, nb] = link_legs(geom, row, link, link_at(cut));

    bool support_ok = true;
    std::vector<MonomialOp> tilded;
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h) {
            const Element gh = G.mul(static_cast<Element>(g), static_cast<Element>(h));
            const MonomialOp upsilon_plus = compose(k_plus[g], compose(k_plus[h], inverse(k_plus[gh])));
            support_ok = support_ok && light_cone_expectation(upsilon_plus, geom).support_preserved;
            std::vector<Phase> table(n * n);
            for (std::size_t l = 0; l < n; ++l)
                table[l * n + l] = omega(static_cast<Element>(l), g, h).inverse();
            MonomialOp counterterm = MonomialOp::diagonal(upsilon_plus.space(), {na, nb}, std::move(table));
            tilded.push_back(compose(counterterm, upsilon_plus));
        }
    out.diagnostics.push_back(std::string("restricted upsilon_+ preserves the state support: ") +
                              (support_ok ? "yes" : "no"));

    auto t = [&](std::size_t a, std::size_t b) -> const MonomialOp & { return tilded[a * n + b]; };
    std::size_t largest = 0;
    for (std::size_t i = 0; i < out.table.size(); ++i) {
        auto [g, h, k] = out.table.args(i);
        const MonomialOp iota =
            simplify(build_iota(u[g], t(g, h), t(G.mul(g, h), k), t(g, G.mul(h, k)), t(h, k)));
        const auto lc = light_cone_expectation(iota, geom);
        largest = std::max(largest, lc.largest_cone);
        if (!lc.unit()) {
            out.all_unit = false;
            out.diagnostics.push_back("iota(" + std::to_string(g) + "," + std::to_string(h) + "," +
                                      std::to_string(k) + ") has a non-phase expectation");
            continue;
        }
        out.table.set({g, h, k}, lc.phase);
    }
    out.diagnostics.push_back("arc of " + std::to_string(arc_links) + " links, cut at arc position " +
                              std::to_string(cut) + ", largest dependency cone " + std::to_string(largest) +
                              " plaquettes");
    return out;
}

std::vector<std::string> global_action_on_compensators(const Cochain3 &omega, const PatchGeometry &geom) {
    const std::size_t n = omega.group().order();
    std::vector<std::string> lines;
    for (std::size_t g = 1; g < n; ++g)
        for (std::size_t h = 1; h < n; ++h) {
            const MonomialOp kh = full_compensator_2d(omega, geom, static_cast<Element>(h));
            const MonomialOp wg = onsite_symmetry_op(omega, geom, static_cast<Element>(g), geom.all_sites());
            const auto lc = light_cone_expectation(simplify(compose(conjugate(kh, wg), inverse(kh))), geom);
            std::ostringstream os;
            os << "g=" << g << ", h=" << h << ": w(g)(K(h)) K(h)^-1 ";
            if (!lc.unit())
                os << "does not fix the state";
            else
                os << "fixes the state up to " << lc.phase.to_string();
            lines.push_back(os.str());
        }
    return lines;
}

} // namespace spt
