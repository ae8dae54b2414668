#include "spt/boundary_chain.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>

namespace spt {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string register_list(const std::vector<Register> &regs) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < regs.size(); ++i)
        os << (i ? "," : "") << regs[i];
    os << '}';
    return os.str();
}

} // namespace

RegisterChain::RegisterChain(GroupRef g, std::size_t m, std::size_t p) : group(std::move(g)), length(m), cut(p) {
    if (length < kMinChainLength)
        throw Error(ErrorKind::out_of_range, "chain length must be at least " + std::to_string(kMinChainLength));
    if (cut > length)
        throw Error(ErrorKind::out_of_range, "cut must lie in [0, M]");
}

CompensatorFamily build_compensators(const Cochain3 &omega, const RegisterChain &chain) {
    if (!omega.group().same_table(*chain.group))
        throw Error(ErrorKind::group_mismatch, "cocycle and chain use different groups");
    if (!omega.is_normalized())
        throw Error(ErrorKind::not_normalized, "compensators need a normalized cocycle");
    const FiniteGroup &G = *chain.group;
    const std::size_t n = G.order();
    CompensatorFamily fam{chain.group, chain.space(), chain.length, chain.cut, omega, "", {}};
    for (std::size_t g = 0; g < n; ++g) {
        MonomialOp u(fam.space);
        for (std::size_t x = 0; x < chain.length; ++x) {
            Diagonal link{{static_cast<Register>(x), static_cast<Register>(x + 1)}, std::vector<Phase>(n * n)};
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b)
                    link.table[a * n + b] = omega(G.div(static_cast<Element>(a), static_cast<Element>(b)), b, g);
            u.push(std::move(link));
        }
        for (std::size_t x = 0; x <= chain.length; ++x)
            u.push(Shift{static_cast<Register>(x), static_cast<Element>(g)});
        fam.ops.push_back(std::move(u));
    }
    return fam;
}

CompensatorFamily precompose(const CompensatorFamily &fam, const std::vector<MonomialOp> &diagonals) {
    if (diagonals.size() != fam.ops.size())
        throw Error(ErrorKind::out_of_range, "need one diagonal per group element");
    CompensatorFamily out = fam;
    for (std::size_t g = 0; g < fam.ops.size(); ++g)
        out.ops[g] = compose(diagonals[g], fam.ops[g]);
    return out;
}

CompensatorFamily stack_families(const CompensatorFamily &first, const CompensatorFamily &second) {
    if (!first.symmetry->same_table(*second.symmetry))
        throw Error(ErrorKind::group_mismatch, "stacked models must share the symmetry group");
    if (first.length != second.length || first.cut != second.cut)
        throw Error(ErrorKind::chain_mismatch, "stacked models must share chain length and cut");
    GroupRef product = direct_product(first.space.group(), second.space.group());
    CompensatorFamily out{first.symmetry,
                          RegisterSpace(product, first.space.registers()),
                          first.length,
                          first.cut,
                          first.cocycle * second.cocycle,
                          first.label + " (x) " + second.label,
                          {}};
    for (std::size_t g = 0; g < first.ops.size(); ++g)
        out.ops.push_back(compose(lift_to_component(first.ops[g], product, 0),
                                  lift_to_component(second.ops[g], product, 1)));
    return out;
}

MonomialOp restrict_to(const MonomialOp &u, std::size_t first) {
    MonomialOp r = MonomialOp::scalar(u.space(), u.global_phase());
    for (const auto &f : u.factors()) {
        auto regs = factor_registers(f);
        if (std::all_of(regs.begin(), regs.end(), [first](Register x) { return x >= first; }))
            r.push(f);
    }
    return r;
}

MonomialOp build_upsilon(const CompensatorFamily &fam, Element g, Element h) {
    const Element gh = fam.symmetry->mul(g, h);
    return compose(fam.at(g), compose(fam.at(h), inverse(fam.at(gh))));
}

UpsilonSplit split_upsilon(const MonomialOp &upsilon, std::size_t cut, const ClassifyOptions &opts) {
    auto f = factor_diagonal(upsilon, opts);
    if (!f.ok) {
        std::ostringstream os;
        os << "upsilon does not factor over registers; witness config";
        for (auto l : f.witness)
            os << ' ' << l;
        throw Error(ErrorKind::not_factorizable, os.str());
    }
    const std::size_t R = upsilon.space().registers();
    std::vector<Register> left, right;
    for (std::size_t x = 0; x < R; ++x)
        (x < cut ? left : right).push_back(static_cast<Register>(x));
    UpsilonSplit s{f.as_op(upsilon.space(), left, true), f.as_op(upsilon.space(), right, false), f};
    return s;
}

UpsilonSplit split_upsilon_restricted(const CompensatorFamily &fam, Element g, Element h,
                                      const ClassifyOptions &opts) {
    const Element gh = fam.symmetry->mul(g, h);
    const MonomialOp kg = restrict_to(fam.at(g), fam.cut);
    const MonomialOp kh = restrict_to(fam.at(h), fam.cut);
    const MonomialOp kgh = restrict_to(fam.at(gh), fam.cut);
    MonomialOp plus = compose(kg, compose(kh, inverse(kgh)));
    MonomialOp minus = compose(build_upsilon(fam, g, h), inverse(plus));
    auto f = factor_diagonal(plus, opts);
    if (!f.ok)
        throw Error(ErrorKind::not_factorizable, "restricted upsilon_+ does not factor over registers");
    const auto support = classify(minus, opts).support;
    if (!support.empty() && support.back() > fam.cut)
        throw Error(ErrorKind::pipeline_failure,
                    "restricted split leaves upsilon_- acting beyond the cut: " + register_list(support));
    return UpsilonSplit{std::move(minus), std::move(plus), std::move(f)};
}

MonomialOp solve_counterterm(const MonomialOp &upsilon_plus, std::size_t cut, const ClassifyOptions &opts) {
    auto f = factor_diagonal(upsilon_plus, opts);
    if (!f.ok)
        throw Error(ErrorKind::not_factorizable, "upsilon_+ does not factor over registers");
    MonomialOp n = inverse(f.as_op(upsilon_plus.space(), {static_cast<Register>(cut)}, false));
    const MonomialOp tilded = compose(n, upsilon_plus);
    const std::size_t m = upsilon_plus.space().registers() - 1;
    const std::size_t radius = m / 4;
    for (auto x : classify(tilded, opts).support) {
        const std::size_t dist = x > cut ? x - cut : cut - x;
        if (dist <= radius)
            throw Error(ErrorKind::pipeline_failure, "counterterm leaves tilded upsilon_+ acting at register " +
                                                         std::to_string(x) + " within " + std::to_string(radius) +
                                                         " of the cut");
    }
    return n;
}

MonomialOp build_iota(const MonomialOp &u_g, const MonomialOp &t_gh, const MonomialOp &t_gh_k,
                      const MonomialOp &t_g_hk, const MonomialOp &t_h_k) {
    return compose(t_gh, compose(t_gh_k, compose(inverse(t_g_hk), inverse(conjugate(t_h_k, u_g)))));
}

Phase extract_index(const MonomialOp &iota, const ClassifyOptions &opts) {
    auto c = classify(iota, opts);
    if (c.kind != OpKind::scalar)
        throw Error(ErrorKind::pipeline_failure, std::string("index extraction failed: iota not localized (") +
                                                     to_string(c.kind) + ", support " + register_list(c.support) +
                                                     ")");
    return c.scalar;
}

const char *to_string(SplitMode mode) { return mode == SplitMode::factorized ? "factorized" : "restricted"; }

IndexPipeline::IndexPipeline(CompensatorFamily family, PipelineOptions opts)
    : fam_(std::move(family)), opts_(std::move(opts)) {
    if (opts_.transport)
        opts_.transport->check_same_space(fam_.ops.at(0));
    if (opts_.counterterm_shift)
        opts_.counterterm_shift->check_same_group(Cochain2(fam_.symmetry));
}

MonomialOp IndexPipeline::transported(const MonomialOp &u) const {
    return opts_.transport ? conjugate(u, *opts_.transport) : u;
}

TildedUpsilon IndexPipeline::tilde(Element g, Element h) const {
    MonomialOp upsilon = build_upsilon(fam_, g, h);
    UpsilonSplit split = opts_.split == SplitMode::factorized
                             ? split_upsilon(upsilon, fam_.cut, opts_.classify)
                             : split_upsilon_restricted(fam_, g, h, opts_.classify);
    MonomialOp n = solve_counterterm(split.plus, fam_.cut, opts_.classify);
    if (opts_.counterterm_shift)
        n.multiply_phase((*opts_.counterterm_shift)(g, h).inverse());
    MonomialOp tilded = compose(n, split.plus);
    return TildedUpsilon{std::move(upsilon), std::move(split), transported(n), transported(tilded)};
}

MonomialOp IndexPipeline::iota(Element g, Element h, Element k) const {
    const FiniteGroup &G = *fam_.symmetry;
    return build_iota(transported(fam_.at(g)), tilde(g, h).tilded, tilde(G.mul(g, h), k).tilded,
                      tilde(g, G.mul(h, k)).tilded, tilde(h, k).tilded);
}

IndexReport IndexPipeline::run() const {
    const FiniteGroup &G = *fam_.symmetry;
    const std::size_t n = G.order();
    IndexReport rep(fam_.symmetry);
    rep.group = G.name();
    rep.cocycle = fam_.label;
    rep.length = fam_.length;
    rep.cut = fam_.cut;
    if (!check_cocycle(fam_.cocycle).pass)
        throw Error(ErrorKind::pipeline_failure, "input table is not a cocycle");

    auto t0 = Clock::now();
    std::vector<MonomialOp> tilded;
    std::vector<Register> far_support;
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h) {
            auto t = tilde(static_cast<Element>(g), static_cast<Element>(h));
            for (auto x : t.split.factors.nontrivial_registers())
                if (x > fam_.cut && std::find(far_support.begin(), far_support.end(), x) == far_support.end())
                    far_support.push_back(x);
            tilded.push_back(std::move(t.tilded));
        }
    rep.timings_ms["counterterms"] = ms_since(t0);
    std::sort(far_support.begin(), far_support.end());
    rep.diagnostics.push_back("tilded upsilon_+ acts only at " + register_list(far_support) + " (cut " +
                              std::to_string(fam_.cut) + ", far end " + std::to_string(fam_.length) + ")");

    t0 = Clock::now();
    std::vector<MonomialOp> u;
    for (std::size_t g = 0; g < n; ++g)
        u.push_back(transported(fam_.at(static_cast<Element>(g))));
    auto t = [&](std::size_t a, std::size_t b) -> const MonomialOp & { return tilded[a * n + b]; };
    bool sampled = false;
    for (std::size_t i = 0; i < rep.extracted.size(); ++i) {
        auto [g, h, k] = rep.extracted.args(i);
        const MonomialOp iota = build_iota(u[g], t(g, h), t(G.mul(g, h), k), t(g, G.mul(h, k)), t(h, k));
        auto c = classify(iota, opts_.classify);
        sampled = sampled || c.sampled;
        if (c.kind != OpKind::scalar)
            throw Error(ErrorKind::pipeline_failure,
                        "index extraction failed at (" + std::to_string(g) + "," + std::to_string(h) + "," +
                            std::to_string(k) + "): iota not localized, " + to_string(c.kind) + " on " +
                            register_list(c.support));
        rep.extracted.set({g, h, k}, c.scalar);
    }
    rep.timings_ms["iota"] = ms_since(t0);
    rep.diagnostics.push_back("iota scalar for all " + std::to_string(rep.extracted.size()) + " triples (" +
                              (sampled ? "sampled" : "exhaustive") + ")");

    t0 = Clock::now();
    rep.cocycle_check = check_cocycle(rep.extracted);
    auto cmp = same_class(rep.extracted, fam_.cocycle);
    rep.matches_input = cmp.same;
    rep.witness = cmp.witness;
    if (rep.cocycle_check.pass && find_cyclic_generator(G) >= 0)
        rep.cyclic_level = identify_cyclic_level(rep.extracted);
    rep.timings_ms["checks"] = ms_since(t0);
    return rep;
}

IndexReport index_table(const Cochain3 &omega, const RegisterChain &chain, const PipelineOptions &opts) {
    return IndexPipeline(build_compensators(omega, chain), opts).run();
}

IndexReport perturb_counterterms(const CompensatorFamily &fam, const Cochain2 &mu, PipelineOptions opts) {
    opts.counterterm_shift = mu;
    return IndexPipeline(fam, std::move(opts)).run();
}

IndexReport conjugation_invariance(const CompensatorFamily &fam, const MonomialOp &r, PipelineOptions opts) {
    PipelineOptions fresh = opts;
    opts.transport = r;
    IndexReport rep = IndexPipeline(fam, std::move(opts)).run();

    CompensatorFamily moved = fam;
    for (auto &u : moved.ops)
        u = conjugate(u, r);
    fresh.transport.reset();
    try {
        IndexReport again = IndexPipeline(std::move(moved), std::move(fresh)).run();
        const bool same = same_class(again.extracted, rep.extracted).same;
        const bool equal = again.extracted == rep.extracted;
        rep.diagnostics.push_back(std::string("recomputed counterterms after conjugation: ") +
                                  (equal ? "identical table" : same ? "same class, table differs by a coboundary"
                                                                    : "different class"));
    } catch (const Error &e) {
        rep.diagnostics.push_back(std::string("recomputed counterterms after conjugation: ") + e.what());
    }
    return rep;
}

IndexReport stack_models(const CompensatorFamily &first, const CompensatorFamily &second,
                         const PipelineOptions &opts) {
    return IndexPipeline(stack_families(first, second), opts).run();
}

bool ChoiceReport::pass() const {
    return !runs.empty() && std::all_of(runs.begin(), runs.end(), [](const ChoiceRun &r) { return r.pass(); });
}

ChoiceReport choice_invariance_suite(const Cochain3 &omega, std::size_t length, std::uint64_t seed,
                                     std::size_t transport_factors) {
    const GroupRef group = omega.group_ref();
    const std::size_t n = group->order();
    ChoiceReport out;
    out.seed = seed;
    std::mt19937_64 rng(seed);
    const CompensatorFamily base_fam = build_compensators(omega, RegisterChain(group, length));
    const IndexReport base = IndexPipeline(base_fam).run();

    auto record = [&](const std::string &choice, auto &&make_report, bool require_identical = true) {
        ChoiceRun run{choice, false, false, require_identical, ""};
        try {
            IndexReport rep = make_report();
            run.identical = rep.extracted == base.extracted;
            run.same_class = same_class(rep.extracted, base.extracted).same;
            if (!run.identical)
                run.detail = run.same_class ? "table differs from the baseline by a coboundary"
                                            : "table leaves the baseline class";
        } catch (const Error &e) {
            run.detail = e.what();
        }
        out.runs.push_back(std::move(run));
    };

    for (std::size_t p = (length + 2) / 3; p <= 2 * length / 3; ++p) {
        if (p == base_fam.cut)
            continue;
        record("cut " + std::to_string(p), [&] { return index_table(omega, RegisterChain(group, length, p)); });
    }
    record("length " + std::to_string(length + 2), [&] { return index_table(omega, RegisterChain(group, length + 2)); });

    auto regauge = [&](Register where) {
        std::uniform_int_distribution<std::int64_t> expo(0, 4 * static_cast<std::int64_t>(n) - 1);
        std::vector<MonomialOp> ds;
        for (std::size_t g = 0; g < n; ++g) {
            std::vector<Phase> table(n);
            if (g != 0)
                for (auto &p : table)
                    p = Phase::from_fraction(expo(rng), 4 * static_cast<std::int64_t>(n));
            ds.push_back(MonomialOp::diagonal(base_fam.space, {where}, std::move(table)));
        }
        return precompose(base_fam, ds);
    };
    const CompensatorFamily far = regauge(static_cast<Register>(length));
    PipelineOptions restricted;
    restricted.split = SplitMode::restricted;
    record("far-end register diagonals, restricted split", [&] { return IndexPipeline(far, restricted).run(); });
    // The factorized split hands the scalar f(e) of the far-end factor to
    // upsilon_-, which shifts the table by a coboundary.
    record("far-end register diagonals, factorized split", [&] { return IndexPipeline(far).run(); }, false);
    const CompensatorFamily near = regauge(0);
    record("near-end register diagonals", [&] { return IndexPipeline(near).run(); });

    record("restricted split", [&] { return IndexPipeline(base_fam, restricted).run(); });

    const MonomialOp r = random_monomial(base_fam.space, transport_factors, 4 * static_cast<std::int64_t>(n), rng);
    record("transport by " + std::to_string(transport_factors) + " random factors",
           [&] { return conjugation_invariance(base_fam, r); });
    if (n > 1)
        record("transport by global shift",
               [&] { return conjugation_invariance(base_fam, MonomialOp::global_shift(base_fam.space, 1)); });
    return out;
}

} // namespace spt
