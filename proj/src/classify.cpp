#include "spt/monomial.hpp"

#include <algorithm>
#include <limits>

#include <omp.h>

namespace spt {

CompiledOp::CompiledOp(const MonomialOp &u) : group_(&u.group()), n_(u.group().order()) {
    den_ = u.global_phase().den();
    for (const auto &f : u.factors())
        if (auto d = std::get_if<Diagonal>(&f))
            for (const auto &p : d->table)
                den_ = lcm_checked(den_, p.den());
    global_ = u.global_phase().numerator_over(den_);
    for (const auto &f : u.factors()) {
        Step s{};
        if (auto sh = std::get_if<Shift>(&f)) {
            s.kind = 0;
            s.arity = 1;
            s.regs[0] = sh->reg;
            s.elem = sh->elem;
        } else if (auto d = std::get_if<Diagonal>(&f)) {
            s.kind = 1;
            s.arity = static_cast<std::uint8_t>(d->regs.size());
            std::copy(d->regs.begin(), d->regs.end(), s.regs.begin());
            s.offset = pool_.size();
            for (const auto &p : d->table)
                pool_.push_back(p.numerator_over(den_));
        } else {
            const auto &p = std::get<PairShift>(f);
            s.kind = 2;
            s.arity = 2;
            s.regs[0] = p.first;
            s.regs[1] = p.second;
            s.elem = p.elem;
        }
        steps_.push_back(s);
    }
}

std::int64_t CompiledOp::apply_inplace(Element *c) const {
    std::int64_t acc = global_;
    for (const auto &s : steps_) {
        switch (s.kind) {
        case 0:
            c[s.regs[0]] = group_->mul(c[s.regs[0]], s.elem);
            break;
        case 1: {
            std::size_t idx = 0;
            for (std::uint8_t i = 0; i < s.arity; ++i)
                idx = idx * n_ + c[s.regs[i]];
            acc += pool_[s.offset + idx];
            if (acc >= den_)
                acc -= den_;
            break;
        }
        default:
            if (c[s.regs[0]] == c[s.regs[1]]) {
                c[s.regs[0]] = group_->mul(c[s.regs[0]], s.elem);
                c[s.regs[1]] = group_->mul(c[s.regs[1]], s.elem);
            }
        }
    }
    return acc;
}

namespace {

bool exhaustive(const MonomialOp &u, const ClassifyOptions &opts, std::uint64_t &size) {
    auto s = u.space().basis_size();
    if (!s || *s > opts.exhaustive_budget)
        return false;
    size = *s;
    return true;
}

void decode(std::uint64_t idx, std::size_t n, std::size_t R, Element *c) {
    for (std::size_t x = R; x-- > 0;) {
        c[x] = static_cast<Element>(idx % n);
        idx /= n;
    }
}

std::uint64_t encode(const Element *c, std::size_t n, std::size_t R) {
    std::uint64_t idx = 0;
    for (std::size_t x = 0; x < R; ++x)
        idx = idx * n + c[x];
    return idx;
}

BasisConfig random_config(std::size_t R, std::size_t n, std::mt19937_64 &rng) {
    std::uniform_int_distribution<std::size_t> d(0, n - 1);
    BasisConfig c(R);
    for (auto &l : c)
        l = static_cast<Element>(d(rng));
    return c;
}

Classification classify_sampled(const MonomialOp &u, const ClassifyOptions &opts) {
    const std::size_t n = u.group().order(), R = u.space().registers();
    std::mt19937_64 rng(opts.seed);
    Classification out;
    out.sampled = true;
    const auto ref = u.apply(BasisConfig(R, 0));
    bool diagonal = ref.first == BasisConfig(R, 0), scalar = diagonal;
    for (std::size_t s = 0; s < opts.samples; ++s) {
        auto c = random_config(R, n, rng);
        auto [c2, ph] = u.apply(c);
        if (c2 != c)
            diagonal = scalar = false;
        else if (ph != ref.second)
            scalar = false;
    }
    std::uniform_int_distribution<std::size_t> dv(1, n > 1 ? n - 1 : 1);
    const std::size_t per_register = std::max<std::size_t>(1, opts.samples / std::max<std::size_t>(R, 1));
    for (std::size_t x = 0; x < R && n > 1; ++x) {
        for (std::size_t s = 0; s < per_register; ++s) {
            auto c = random_config(R, n, rng);
            c[x] = 0;
            auto a = u.apply(c);
            c[x] = static_cast<Element>(dv(rng));
            auto b = u.apply(c);
            auto expect = a.first;
            expect[x] = c[x];
            if (a.first[x] != 0 || b.first != expect || b.second != a.second) {
                out.support.push_back(static_cast<Register>(x));
                break;
            }
        }
    }
    out.configs_checked = opts.samples + per_register * R;
    out.kind = scalar ? OpKind::scalar : diagonal ? OpKind::diagonal : OpKind::general;
    if (scalar)
        out.scalar = ref.second;
    return out;
}

} // namespace

Classification classify(const MonomialOp &u, const ClassifyOptions &opts) {
    std::uint64_t N = 0;
    if (!exhaustive(u, opts, N))
        return classify_sampled(u, opts);
    const std::size_t n = u.group().order(), R = u.space().registers();
    const CompiledOp k(u);
    std::vector<std::uint32_t> out(N);
    std::vector<std::int64_t> ex(N);
    const auto total = static_cast<std::int64_t>(N);

#pragma omp parallel
    {
        BasisConfig c(R);
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < total; ++i) {
            decode(static_cast<std::uint64_t>(i), n, R, c.data());
            ex[i] = k.apply_inplace(c.data());
            out[i] = static_cast<std::uint32_t>(encode(c.data(), n, R));
        }
    }

    int diagonal = 1, scalar = 1;
#pragma omp parallel for reduction(& : diagonal, scalar)
    for (std::int64_t i = 0; i < total; ++i) {
        if (out[i] != static_cast<std::uint32_t>(i))
            diagonal = 0;
        if (ex[i] != ex[0])
            scalar = 0;
    }
    Classification res;
    res.configs_checked = N;
    res.kind = diagonal && scalar ? OpKind::scalar : diagonal ? OpKind::diagonal : OpKind::general;
    if (res.kind == OpKind::scalar)
        res.scalar = Phase::from_fraction(ex[0], k.denominator());

    std::uint64_t stride = 1;
    std::vector<std::uint64_t> strides(R);
    for (std::size_t x = R; x-- > 0;) {
        strides[x] = stride;
        stride *= n;
    }
    for (std::size_t x = 0; x < R; ++x) {
        const std::uint64_t sx = strides[x];
        int outside = 1;
#pragma omp parallel for reduction(& : outside)
        for (std::int64_t i = 0; i < total; ++i) {
            const auto ui = static_cast<std::uint64_t>(i);
            if ((ui / sx) % n != 0)
                continue;
            if ((out[i] / sx) % n != 0) {
                outside = 0;
                continue;
            }
            for (std::size_t v = 1; v < n; ++v) {
                const std::uint64_t j = ui + v * sx;
                if (out[j] != out[i] + v * sx || ex[j] != ex[i])
                    outside = 0;
            }
        }
        if (!outside)
            res.support.push_back(static_cast<Register>(x));
    }
    return res;
}

Classification classify_serial(const MonomialOp &u, const ClassifyOptions &opts) {
    std::uint64_t N = 0;
    if (!exhaustive(u, opts, N))
        return classify_sampled(u, opts);
    const std::size_t n = u.group().order(), R = u.space().registers();
    std::vector<std::pair<BasisConfig, Phase>> table;
    table.reserve(N);
    for (std::uint64_t i = 0; i < N; ++i)
        table.push_back(u.apply(config_from_index(i, R, n)));

    bool diagonal = true, scalar = true;
    for (std::uint64_t i = 0; i < N; ++i) {
        if (table[i].first != config_from_index(i, R, n))
            diagonal = false;
        if (table[i].second != table[0].second)
            scalar = false;
    }
    Classification res;
    res.configs_checked = N;
    res.kind = diagonal && scalar ? OpKind::scalar : diagonal ? OpKind::diagonal : OpKind::general;
    if (res.kind == OpKind::scalar)
        res.scalar = table[0].second;
    for (std::size_t x = 0; x < R; ++x) {
        bool outside = true;
        for (std::uint64_t i = 0; i < N && outside; ++i) {
            BasisConfig c = config_from_index(i, R, n);
            if (c[x] != 0)
                continue;
            const auto &base = table[i];
            if (base.first[x] != 0) {
                outside = false;
                break;
            }
            for (std::size_t v = 1; v < n; ++v) {
                c[x] = static_cast<Element>(v);
                const auto &moved = table[config_index(c, n)];
                BasisConfig expect = base.first;
                expect[x] = static_cast<Element>(v);
                if (moved.first != expect || moved.second != base.second)
                    outside = false;
            }
        }
        if (!outside)
            res.support.push_back(static_cast<Register>(x));
    }
    return res;
}

std::vector<Register> DiagonalFactorization::nontrivial_registers() const {
    std::vector<Register> regs;
    for (std::size_t x = 0; x < per_register.size(); ++x)
        if (std::any_of(per_register[x].begin(), per_register[x].end(), [](const Phase &p) { return !p.is_one(); }))
            regs.push_back(static_cast<Register>(x));
    return regs;
}

MonomialOp DiagonalFactorization::as_op(const RegisterSpace &space, const std::vector<Register> &regs,
                                        bool with_scalar) const {
    MonomialOp u = MonomialOp::scalar(space, with_scalar ? scalar : Phase::one());
    for (auto x : regs) {
        const auto &d = per_register.at(x);
        if (std::any_of(d.begin(), d.end(), [](const Phase &p) { return !p.is_one(); }))
            u.push(Diagonal{{x}, d});
    }
    return u;
}

DiagonalFactorization factor_diagonal(const MonomialOp &u, const ClassifyOptions &opts) {
    const std::size_t n = u.group().order(), R = u.space().registers();
    const CompiledOp k(u);
    const std::int64_t D = k.denominator();
    auto phase_at = [&](BasisConfig c) {
        const BasisConfig orig = c;
        std::int64_t e = k.apply_inplace(c.data());
        if (c != orig)
            throw Error(ErrorKind::not_factorizable, "operator permutes configurations");
        return e;
    };

    const std::int64_t s = phase_at(BasisConfig(R, 0));
    std::vector<std::vector<std::int64_t>> d(R, std::vector<std::int64_t>(n, 0));
    for (std::size_t x = 0; x < R; ++x)
        for (std::size_t l = 1; l < n; ++l) {
            BasisConfig c(R, 0);
            c[x] = static_cast<Element>(l);
            d[x][l] = ((phase_at(c) - s) % D + D) % D;
        }
    auto predicted = [&](const Element *c) {
        std::int64_t e = s;
        for (std::size_t x = 0; x < R; ++x)
            e = (e + d[x][c[x]]) % D;
        return e;
    };

    DiagonalFactorization res;
    res.scalar = Phase::from_fraction(s, D);
    res.per_register.assign(R, std::vector<Phase>(n));
    for (std::size_t x = 0; x < R; ++x)
        for (std::size_t l = 0; l < n; ++l)
            res.per_register[x][l] = Phase::from_fraction(d[x][l], D);

    std::uint64_t N = 0;
    if (!exhaustive(u, opts, N)) {
        std::mt19937_64 rng(opts.seed);
        for (std::size_t t = 0; t < opts.samples; ++t) {
            auto c = random_config(R, n, rng);
            if (phase_at(c) != predicted(c.data())) {
                res.witness = c;
                return res;
            }
        }
        res.ok = true;
        return res;
    }

    const auto total = static_cast<std::int64_t>(N);
    std::int64_t first_bad = std::numeric_limits<std::int64_t>::max();
    int permutes = 0;
#pragma omp parallel reduction(min : first_bad) reduction(| : permutes)
    {
        BasisConfig c(R), orig(R);
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < total; ++i) {
            decode(static_cast<std::uint64_t>(i), n, R, c.data());
            orig = c;
            const std::int64_t e = k.apply_inplace(c.data());
            if (c != orig)
                permutes = 1;
            else if (e != predicted(orig.data()))
                first_bad = std::min(first_bad, i);
        }
    }
    if (permutes)
        throw Error(ErrorKind::not_factorizable, "operator permutes configurations");
    if (first_bad != std::numeric_limits<std::int64_t>::max()) {
        res.witness = config_from_index(static_cast<std::uint64_t>(first_bad), R, n);
        return res;
    }
    res.ok = true;
    return res;
}

bool same_action(const MonomialOp &a, const MonomialOp &b, const ClassifyOptions &opts) {
    const MonomialOp diff = compose(a, inverse(b));
    const std::size_t n = a.group().order(), R = a.space().registers();
    std::uint64_t N = 0;
    if (!exhaustive(diff, opts, N)) {
        std::mt19937_64 rng(opts.seed);
        for (std::size_t t = 0; t < opts.samples; ++t) {
            auto c = random_config(R, n, rng);
            auto [c2, ph] = diff.apply(c);
            if (c2 != c || !ph.is_one())
                return false;
        }
        return true;
    }
    const CompiledOp k(diff);
    const auto total = static_cast<std::int64_t>(N);
    int equal = 1;
#pragma omp parallel reduction(& : equal)
    {
        BasisConfig c(R), orig(R);
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < total; ++i) {
            decode(static_cast<std::uint64_t>(i), n, R, c.data());
            orig = c;
            if (k.apply_inplace(c.data()) != 0 || c != orig)
                equal = 0;
        }
    }
    return equal != 0;
}

} // namespace spt
