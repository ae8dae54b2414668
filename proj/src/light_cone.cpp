#include <algorithm>
#include <limits>

#include "spt/patch.hpp"

namespace spt {

namespace {

using PlaquetteSet = std::vector<std::uint32_t>;

void merge_into(PlaquetteSet &dst, const PlaquetteSet &src) {
    PlaquetteSet out;
    std::set_union(dst.begin(), dst.end(), src.begin(), src.end(), std::back_inserter(out));
    dst.swap(out);
}

// Per factor, the plaquettes whose labels decide the factor's input labels.
struct Dependencies {
    std::vector<PlaquetteSet> read;
    std::vector<PlaquetteSet> output;
};

Dependencies trace(const MonomialOp &u, const PatchGeometry &geom) {
    Dependencies d;
    std::vector<PlaquetteSet> current(u.space().registers());
    for (std::size_t r = 0; r < current.size(); ++r)
        if (auto p = geom.plaquette_of_leg(static_cast<Register>(r)))
            current[r] = {*p};
    for (const auto &f : u.factors()) {
        PlaquetteSet read;
        for (auto r : factor_registers(f))
            merge_into(read, current[r]);
        if (auto ps = std::get_if<PairShift>(&f))
            current[ps->first] = current[ps->second] = read;
        d.read.push_back(std::move(read));
    }
    d.output = std::move(current);
    return d;
}

// The factors of u that influence the labels of `targets` at the end, plus
// every factor in `phase_factors` together with whatever moves its inputs.
MonomialOp backward_slice(const MonomialOp &u, std::vector<Register> targets,
                          const std::vector<std::size_t> &phase_factors) {
    std::vector<char> needed(u.space().registers(), 0);
    for (auto r : targets)
        needed[r] = 1;
    const auto &fs = u.factors();
    std::vector<char> keep(fs.size(), 0);
    for (std::size_t t = fs.size(); t-- > 0;) {
        const auto &f = fs[t];
        if (is_diagonal_factor(f)) {
            if (std::binary_search(phase_factors.begin(), phase_factors.end(), t)) {
                keep[t] = 1;
                for (auto r : factor_registers(f))
                    needed[r] = 1;
            }
        } else if (auto s = std::get_if<Shift>(&f)) {
            keep[t] = needed[s->reg];
        } else {
            const auto &p = std::get<PairShift>(f);
            if (needed[p.first] || needed[p.second]) {
                keep[t] = 1;
                needed[p.first] = needed[p.second] = 1;
            }
        }
    }
    MonomialOp slice(u.space());
    for (std::size_t t = 0; t < fs.size(); ++t)
        if (keep[t])
            slice.push(fs[t]);
    return slice;
}

std::uint64_t cone_size(std::size_t n, std::size_t plaquettes) {
    if (plaquettes > kMaxConePlaquettes)
        throw Error(ErrorKind::budget_exceeded,
                    "dependency cone of " + std::to_string(plaquettes) + " plaquettes exceeds the enumeration cap");
    std::uint64_t s = 1;
    for (std::size_t i = 0; i < plaquettes; ++i)
        s *= n;
    return s;
}

// Registers the slice can read or write, each tagged with the position of its
// plaquette in the cone (or -1 for a dangling leg, which starts at identity).
struct Loader {
    std::vector<Register> regs;
    std::vector<int> slot;

    Loader(const MonomialOp &slice, const PatchGeometry &geom, const PlaquetteSet &cone,
           const std::vector<Register> &extra) {
        std::vector<Register> all = slice.nominal_registers();
        all.insert(all.end(), extra.begin(), extra.end());
        std::sort(all.begin(), all.end());
        all.erase(std::unique(all.begin(), all.end()), all.end());
        for (auto r : all) {
            regs.push_back(r);
            auto p = geom.plaquette_of_leg(r);
            if (!p) {
                slot.push_back(-1);
                continue;
            }
            auto it = std::lower_bound(cone.begin(), cone.end(), *p);
            if (it == cone.end() || *it != *p)
                throw Error(ErrorKind::internal_inconsistency, "slice reads a leg outside its cone");
            slot.push_back(static_cast<int>(it - cone.begin()));
        }
    }

    void load(Element *c, const Element *labels) const {
        for (std::size_t i = 0; i < regs.size(); ++i)
            c[regs[i]] = slot[i] < 0 ? Element{0} : labels[slot[i]];
    }
};

void decode(std::uint64_t idx, std::size_t n, std::size_t k, Element *labels) {
    for (std::size_t i = k; i-- > 0;) {
        labels[i] = static_cast<Element>(idx % n);
        idx /= n;
    }
}

template <bool Parallel> LightConeResult evaluate(const MonomialOp &u, const PatchGeometry &geom) {
    const std::size_t n = u.group().order(), R = u.space().registers();
    if (R != geom.leg_count())
        throw Error(ErrorKind::chain_mismatch, "operator does not act on this patch");
    LightConeResult res;
    const Dependencies deps = trace(u, geom);

    // Support: every plaquette's legs share one output label, dangling legs stay at identity.
    std::vector<std::vector<Register>> groups;
    for (std::uint32_t p = 0; p < geom.plaquette_count(); ++p)
        groups.push_back(geom.plaquette_legs(p));
    for (std::size_t r = 0; r < R; ++r)
        if (!geom.plaquette_of_leg(static_cast<Register>(r)))
            groups.push_back({static_cast<Register>(r)});
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const auto &legs = groups[gi];
        const bool dangling = gi >= geom.plaquette_count();
        PlaquetteSet cone;
        for (auto r : legs)
            merge_into(cone, deps.output[r]);
        const MonomialOp slice = backward_slice(u, legs, {});
        const CompiledOp k(slice);
        const Loader loader(slice, geom, cone, legs);
        const std::uint64_t count = cone_size(n, cone.size());
        res.largest_cone = std::max(res.largest_cone, cone.size());
        res.configs_checked += count;
        int ok = 1;
#pragma omp parallel if (Parallel) reduction(& : ok)
        {
            BasisConfig c(R, 0), labels(cone.size() + 1, 0);
#pragma omp for schedule(static)
            for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
                decode(static_cast<std::uint64_t>(i), n, cone.size(), labels.data());
                loader.load(c.data(), labels.data());
                k.apply_inplace(c.data());
                const Element first = dangling ? Element{0} : c[legs[0]];
                for (auto r : legs)
                    if (c[r] != first)
                        ok = 0;
            }
        }
        if (!ok) {
            res.support_preserved = false;
            if (!dangling)
                res.damaged_plaquettes.push_back(static_cast<std::uint32_t>(gi));
        }
    }

    // Phase: changing one plaquette label alone must never change it.
    for (std::uint32_t p = 0; p < geom.plaquette_count(); ++p) {
        std::vector<std::size_t> touching;
        PlaquetteSet cone;
        for (std::size_t t = 0; t < deps.read.size(); ++t)
            if (is_diagonal_factor(u.factors()[t]) && std::binary_search(deps.read[t].begin(), deps.read[t].end(), p)) {
                touching.push_back(t);
                merge_into(cone, deps.read[t]);
            }
        if (touching.empty())
            continue;
        const MonomialOp slice = backward_slice(u, {}, touching);
        const CompiledOp k(slice);
        const Loader loader(slice, geom, cone, {});
        const auto pos = static_cast<std::size_t>(std::lower_bound(cone.begin(), cone.end(), p) - cone.begin());
        const std::uint64_t count = cone_size(n, cone.size() - 1);
        res.largest_cone = std::max(res.largest_cone, cone.size());
        res.configs_checked += count * n;
        int ok = 1;
#pragma omp parallel if (Parallel) reduction(& : ok)
        {
            BasisConfig c(R, 0), rest(cone.size(), 0), labels(cone.size() + 1, 0);
#pragma omp for schedule(static)
            for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
                decode(static_cast<std::uint64_t>(i), n, cone.size() - 1, rest.data());
                for (std::size_t j = 0, src = 0; j < cone.size(); ++j)
                    labels[j] = j == pos ? Element{0} : rest[src++];
                loader.load(c.data(), labels.data());
                const std::int64_t base = k.apply_inplace(c.data());
                for (std::size_t v = 1; v < n; ++v) {
                    labels[pos] = static_cast<Element>(v);
                    loader.load(c.data(), labels.data());
                    if (k.apply_inplace(c.data()) != base)
                        ok = 0;
                }
            }
        }
        if (!ok) {
            res.phase_constant = false;
            if (std::find(res.damaged_plaquettes.begin(), res.damaged_plaquettes.end(), p) ==
                res.damaged_plaquettes.end())
                res.damaged_plaquettes.push_back(p);
        }
    }
    std::sort(res.damaged_plaquettes.begin(), res.damaged_plaquettes.end());
    res.phase = u.apply(BasisConfig(R, 0)).second;
    return res;
}

} // namespace

LightConeResult light_cone_expectation(const MonomialOp &u, const PatchGeometry &geom) {
    return evaluate<true>(u, geom);
}

LightConeResult light_cone_expectation_serial(const MonomialOp &u, const PatchGeometry &geom) {
    return evaluate<false>(u, geom);
}

} // namespace spt
