#include "spt/monomial.hpp"

#include <algorithm>
#include <set>

namespace spt {

RegisterSpace::RegisterSpace(GroupRef group, std::size_t registers)
    : group_(std::move(group)), registers_(registers) {
    if (!group_)
        throw Error(ErrorKind::group_mismatch, "register space needs a group");
}

std::optional<std::uint64_t> RegisterSpace::basis_size() const {
    unsigned __int128 size = 1;
    for (std::size_t i = 0; i < registers_; ++i) {
        size *= group_->order();
        if (size > UINT64_MAX)
            return std::nullopt;
    }
    return static_cast<std::uint64_t>(size);
}

std::vector<Register> factor_registers(const LocalFactor &f) {
    return std::visit(
        [](const auto &x) -> std::vector<Register> {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Shift>)
                return {x.reg};
            else if constexpr (std::is_same_v<T, Diagonal>)
                return x.regs;
            else
                return {x.first, x.second};
        },
        f);
}

bool is_diagonal_factor(const LocalFactor &f) { return std::holds_alternative<Diagonal>(f); }

LocalFactor invert_factor(const LocalFactor &f, const FiniteGroup &G) {
    return std::visit(
        [&G](const auto &x) -> LocalFactor {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Shift>) {
                return Shift{x.reg, G.inv(x.elem)};
            } else if constexpr (std::is_same_v<T, Diagonal>) {
                Diagonal d{x.regs, x.table};
                for (auto &p : d.table)
                    p = p.inverse();
                return d;
            } else {
                return PairShift{x.first, x.second, G.inv(x.elem)};
            }
        },
        f);
}

namespace {

bool is_identity_factor(const LocalFactor &f) {
    if (auto s = std::get_if<Shift>(&f))
        return s->elem == 0;
    if (auto p = std::get_if<PairShift>(&f))
        return p->elem == 0;
    const auto &d = std::get<Diagonal>(f);
    return std::all_of(d.table.begin(), d.table.end(), [](const Phase &p) { return p.is_one(); });
}

bool commute(const LocalFactor &a, const LocalFactor &b) {
    if (is_diagonal_factor(a) && is_diagonal_factor(b))
        return true;
    auto ra = factor_registers(a), rb = factor_registers(b);
    for (auto x : ra)
        if (std::find(rb.begin(), rb.end(), x) != rb.end())
            return false;
    return true;
}

std::size_t ipow(std::size_t n, std::size_t k) {
    std::size_t r = 1;
    while (k--)
        r *= n;
    return r;
}

} // namespace

MonomialOp MonomialOp::scalar(RegisterSpace space, Phase phase) {
    MonomialOp u(std::move(space));
    u.global_ = phase;
    return u;
}

MonomialOp MonomialOp::shift(RegisterSpace space, Register reg, Element elem) {
    MonomialOp u(std::move(space));
    u.push(Shift{reg, elem});
    return u;
}

MonomialOp MonomialOp::global_shift(RegisterSpace space, Element elem) {
    MonomialOp u(std::move(space));
    for (std::size_t x = 0; x < u.space_.registers(); ++x)
        u.push(Shift{static_cast<Register>(x), elem});
    return u;
}

MonomialOp MonomialOp::diagonal(RegisterSpace space, std::vector<Register> regs, std::vector<Phase> table) {
    MonomialOp u(std::move(space));
    u.push(Diagonal{std::move(regs), std::move(table)});
    return u;
}

MonomialOp &MonomialOp::push(LocalFactor f) {
    const std::size_t n = group().order();
    auto regs = factor_registers(f);
    for (auto r : regs)
        if (r >= space_.registers())
            throw Error(ErrorKind::out_of_range, "factor register " + std::to_string(r) + " outside the space");
    if (std::set<Register>(regs.begin(), regs.end()).size() != regs.size())
        throw Error(ErrorKind::malformed_table, "factor registers must be distinct");
    if (auto d = std::get_if<Diagonal>(&f)) {
        if (d->regs.empty() || d->regs.size() > 4)
            throw Error(ErrorKind::malformed_table, "diagonal factors act on one to four registers");
        if (d->table.size() != ipow(n, d->regs.size()))
            throw Error(ErrorKind::malformed_table, "diagonal table has the wrong size");
    } else {
        Element e = std::holds_alternative<Shift>(f) ? std::get<Shift>(f).elem : std::get<PairShift>(f).elem;
        if (e >= n)
            throw Error(ErrorKind::out_of_range, "shift element outside the group");
    }
    factors_.push_back(std::move(f));
    return *this;
}

std::pair<BasisConfig, Phase> MonomialOp::apply(const BasisConfig &c) const {
    if (c.size() != space_.registers())
        throw Error(ErrorKind::chain_mismatch, "config length does not match the register count");
    const FiniteGroup &G = group();
    const std::size_t n = G.order();
    BasisConfig out = c;
    Phase phase = global_;
    for (const auto &f : factors_) {
        if (auto s = std::get_if<Shift>(&f)) {
            out[s->reg] = G.mul(out[s->reg], s->elem);
        } else if (auto d = std::get_if<Diagonal>(&f)) {
            std::size_t idx = 0;
            for (auto r : d->regs)
                idx = idx * n + out[r];
            phase *= d->table[idx];
        } else {
            const auto &p = std::get<PairShift>(f);
            if (out[p.first] == out[p.second]) {
                out[p.first] = G.mul(out[p.first], p.elem);
                out[p.second] = G.mul(out[p.second], p.elem);
            }
        }
    }
    return {std::move(out), phase};
}

std::vector<Register> MonomialOp::nominal_registers() const {
    std::set<Register> regs;
    for (const auto &f : factors_)
        for (auto r : factor_registers(f))
            regs.insert(r);
    return {regs.begin(), regs.end()};
}

void MonomialOp::check_same_space(const MonomialOp &o) const {
    if (!(space_ == o.space_))
        throw Error(ErrorKind::chain_mismatch, "operators act on different register spaces");
}

MonomialOp compose(const MonomialOp &a, const MonomialOp &b) {
    a.check_same_space(b);
    MonomialOp r = a;
    for (const auto &f : b.factors())
        r.push(f);
    r.multiply_phase(b.global_phase());
    return r;
}

MonomialOp inverse(const MonomialOp &u) {
    MonomialOp r = MonomialOp::scalar(u.space(), u.global_phase().inverse());
    for (auto it = u.factors().rbegin(); it != u.factors().rend(); ++it)
        r.push(invert_factor(*it, u.group()));
    return r;
}

MonomialOp conjugate(const MonomialOp &a, const MonomialOp &b) { return compose(b, compose(a, inverse(b))); }

MonomialOp tensor(const MonomialOp &a, const MonomialOp &b) {
    if (!a.group().same_table(b.group()))
        throw Error(ErrorKind::group_mismatch, "tensor factors live on different groups");
    const auto offset = static_cast<Register>(a.space().registers());
    MonomialOp r(RegisterSpace(a.space().group_ref(), a.space().registers() + b.space().registers()));
    for (const auto &f : a.factors())
        r.push(f);
    for (auto f : b.factors()) {
        std::visit(
            [offset](auto &x) {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, Shift>) {
                    x.reg += offset;
                } else if constexpr (std::is_same_v<T, Diagonal>) {
                    for (auto &reg : x.regs)
                        reg += offset;
                } else {
                    x.first += offset;
                    x.second += offset;
                }
            },
            f);
        r.push(std::move(f));
    }
    r.multiply_phase(a.global_phase() * b.global_phase());
    return r;
}

MonomialOp lift_to_component(const MonomialOp &u, const GroupRef &product, int component) {
    const std::size_t n = u.group().order();
    const std::size_t total = product->order();
    if (n == 0 || total % n != 0)
        throw Error(ErrorKind::group_mismatch, "product order is not a multiple of the factor order");
    const std::size_t other = total / n;
    const std::size_t stride = component == 0 ? other : 1;
    auto embed = [stride](Element a) { return static_cast<Element>(a * stride); };
    auto project = [stride, n](std::size_t label) { return (label / stride) % n; };

    MonomialOp r = MonomialOp::scalar(RegisterSpace(product, u.space().registers()), u.global_phase());
    for (const auto &f : u.factors()) {
        if (auto s = std::get_if<Shift>(&f)) {
            r.push(Shift{s->reg, embed(s->elem)});
        } else if (auto d = std::get_if<Diagonal>(&f)) {
            const std::size_t k = d->regs.size();
            Diagonal lifted{d->regs, std::vector<Phase>(ipow(total, k))};
            for (std::size_t idx = 0; idx < lifted.table.size(); ++idx) {
                std::size_t rest = idx, small = 0, place = 1;
                for (std::size_t i = 0; i < k; ++i) {
                    small += project(rest % total) * place;
                    rest /= total;
                    place *= n;
                }
                lifted.table[idx] = d->table[small];
            }
            r.push(std::move(lifted));
        } else {
            throw Error(ErrorKind::internal_inconsistency, "pair shifts cannot be lifted to a component");
        }
    }
    return r;
}

MonomialOp simplify(const MonomialOp &u) {
    const FiniteGroup &G = u.group();
    std::vector<LocalFactor> fs;
    for (const auto &f : u.factors())
        if (!is_identity_factor(f))
            fs.push_back(f);

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < fs.size() && !changed; ++i) {
            auto *s1 = std::get_if<Shift>(&fs[i]);
            auto *s2 = std::get_if<Shift>(&fs[i + 1]);
            if (s1 && s2 && s1->reg == s2->reg) {
                s1->elem = G.mul(s1->elem, s2->elem);
                fs.erase(fs.begin() + static_cast<std::ptrdiff_t>(i) + 1);
                if (s1->elem == 0)
                    fs.erase(fs.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
            auto *d1 = std::get_if<Diagonal>(&fs[i]);
            auto *d2 = std::get_if<Diagonal>(&fs[i + 1]);
            if (d1 && d2 && d1->regs == d2->regs) {
                for (std::size_t t = 0; t < d1->table.size(); ++t)
                    d1->table[t] *= d2->table[t];
                fs.erase(fs.begin() + static_cast<std::ptrdiff_t>(i) + 1);
                if (is_identity_factor(fs[i]))
                    fs.erase(fs.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
        for (std::size_t i = 0; i < fs.size() && !changed; ++i) {
            const LocalFactor inv = invert_factor(fs[i], G);
            for (std::size_t j = i + 1; j < fs.size(); ++j) {
                if (fs[j] == inv) {
                    fs.erase(fs.begin() + static_cast<std::ptrdiff_t>(j));
                    fs.erase(fs.begin() + static_cast<std::ptrdiff_t>(i));
                    changed = true;
                    break;
                }
                if (!commute(fs[i], fs[j]))
                    break;
            }
        }
    }
    MonomialOp r = MonomialOp::scalar(u.space(), u.global_phase());
    for (auto &f : fs)
        r.push(std::move(f));
    return r;
}

MonomialOp random_monomial(const RegisterSpace &space, std::size_t count, std::int64_t denominator,
                           std::mt19937_64 &rng) {
    const std::size_t n = space.group().order();
    const std::size_t R = space.registers();
    std::uniform_int_distribution<std::size_t> reg(0, R - 1), elem(0, n - 1), kind(0, R > 1 ? 2 : 1);
    std::uniform_int_distribution<std::int64_t> expo(0, denominator - 1);
    MonomialOp u(space);
    for (std::size_t i = 0; i < count; ++i) {
        const auto x = static_cast<Register>(reg(rng));
        switch (kind(rng)) {
        case 0:
            u.push(Shift{x, static_cast<Element>(elem(rng))});
            break;
        case 1: {
            Diagonal d{{x}, std::vector<Phase>(n)};
            for (auto &p : d.table)
                p = Phase::from_fraction(expo(rng), denominator);
            u.push(std::move(d));
            break;
        }
        default: {
            const Register y = x + 1 < R ? x + 1 : x - 1;
            Diagonal d{{std::min(x, y), std::max(x, y)}, std::vector<Phase>(n * n)};
            for (auto &p : d.table)
                p = Phase::from_fraction(expo(rng), denominator);
            u.push(std::move(d));
        }
        }
    }
    return u;
}

std::uint64_t config_index(const BasisConfig &c, std::size_t n) {
    std::uint64_t idx = 0;
    for (auto l : c)
        idx = idx * n + l;
    return idx;
}

BasisConfig config_from_index(std::uint64_t idx, std::size_t registers, std::size_t n) {
    BasisConfig c(registers);
    for (std::size_t x = registers; x-- > 0;) {
        c[x] = static_cast<Element>(idx % n);
        idx /= n;
    }
    return c;
}

const char *to_string(OpKind kind) {
    switch (kind) {
    case OpKind::scalar:
        return "scalar";
    case OpKind::diagonal:
        return "diagonal";
    case OpKind::general:
        return "general";
    }
    return "?";
}

} // namespace spt
