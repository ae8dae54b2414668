#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spt/group.hpp"
#include "spt/phase.hpp"

namespace spt {

/// A U(1)-valued cochain of the given degree: a table of |G|^Degree phases,
/// indexed lexicographically by the argument tuple.
template <int Degree> class Cochain {
  public:
    using Args = std::array<Element, Degree>;

    explicit Cochain(GroupRef group) : group_(std::move(group)) {
        std::size_t n = 1;
        for (int i = 0; i < Degree; ++i)
            n *= group_->order();
        table_.assign(n, Phase::one());
    }

    const GroupRef &group_ref() const noexcept { return group_; }
    const FiniteGroup &group() const noexcept { return *group_; }
    std::size_t size() const noexcept { return table_.size(); }

    std::size_t index(const Args &args) const noexcept {
        std::size_t idx = 0;
        for (int i = 0; i < Degree; ++i)
            idx = idx * group_->order() + args[i];
        return idx;
    }
    Args args(std::size_t idx) const noexcept {
        Args a{};
        for (int i = Degree - 1; i >= 0; --i) {
            a[i] = static_cast<Element>(idx % group_->order());
            idx /= group_->order();
        }
        return a;
    }

    template <typename... E> const Phase &operator()(E... e) const noexcept {
        static_assert(sizeof...(E) == Degree);
        return table_[index(Args{static_cast<Element>(e)...})];
    }
    const Phase &at(const Args &a) const noexcept { return table_[index(a)]; }
    void set(const Args &a, Phase p) { table_[index(a)] = p; }

    const std::vector<Phase> &entries() const noexcept { return table_; }
    std::vector<Phase> &entries() noexcept { return table_; }

    /// Every entry with an identity argument equals 1.
    bool is_normalized() const {
        for (std::size_t i = 0; i < table_.size(); ++i) {
            auto a = args(i);
            for (int d = 0; d < Degree; ++d)
                if (a[d] == 0 && !table_[i].is_one())
                    return false;
        }
        return true;
    }

    std::int64_t common_denominator() const {
        std::int64_t m = 1;
        for (const auto &p : table_)
            m = lcm_checked(m, p.den());
        return m;
    }

    Cochain operator*(const Cochain &o) const {
        check_same_group(o);
        Cochain r(group_);
        for (std::size_t i = 0; i < table_.size(); ++i)
            r.table_[i] = table_[i] * o.table_[i];
        return r;
    }
    Cochain operator/(const Cochain &o) const { return *this * o.inverse(); }
    Cochain inverse() const {
        Cochain r(group_);
        for (std::size_t i = 0; i < table_.size(); ++i)
            r.table_[i] = table_[i].inverse();
        return r;
    }

    bool operator==(const Cochain &o) const {
        return group_->same_table(*o.group_) && table_ == o.table_;
    }

    void check_same_group(const Cochain &o) const {
        if (!group_->same_table(*o.group_))
            throw Error(ErrorKind::group_mismatch, "cochains live on different groups");
    }

  private:
    GroupRef group_;
    std::vector<Phase> table_;
};

using Cochain2 = Cochain<2>;
using Cochain3 = Cochain<3>;

/// exp(2 pi i p a (b + c - [(b + c) mod n]) / n^2) on Z_n.
Cochain3 standard_cyclic_cocycle(std::size_t n, std::int64_t level);

/// On a product of cyclic groups Z_{n_1} x ... x Z_{n_r} (shorthand encoding),
/// the cup product of the character a -> p a_i / n_i with the carry cocycle of
/// factor j: exp(2 pi i p a_i [b_j + c_j >= n_j] / n_i). For i == j this is the
/// pullback of the standard cocycle of factor i.
Cochain3 cyclic_cup_cocycle(const std::vector<std::size_t> &factors, std::size_t i, std::size_t j,
                            std::int64_t level);

struct CocycleCheck {
    bool pass = true;
    std::array<Element, 4> quadruple{};
    /// LHS / RHS of the cocycle identity at the reported quadruple.
    Phase residual;
};

/// Exhaustive |G|^4 scan of w(g,h,k) w(g,hk,l) w(h,k,l) = w(gh,k,l) w(g,h,kl).
/// Reports the lexicographically first violation. OpenMP-parallel.
CocycleCheck check_cocycle(const Cochain3 &omega);
/// Serial reference for check_cocycle.
CocycleCheck check_cocycle_serial(const Cochain3 &omega);

/// (d mu)(g,h,k) = mu(h,k) mu(g,hk) / (mu(gh,k) mu(g,h)).
Cochain3 coboundary(const Cochain2 &mu);

/// Random 2-cochain with exponents in (1/denominator)Z.
template <typename Rng> Cochain2 random_cochain2(const GroupRef &group, std::int64_t denominator, Rng &rng);

} // namespace spt

#include <random>

namespace spt {

template <typename Rng> Cochain2 random_cochain2(const GroupRef &group, std::int64_t denominator, Rng &rng) {
    Cochain2 mu(group);
    std::uniform_int_distribution<std::int64_t> dist(0, denominator - 1);
    for (auto &p : mu.entries())
        p = Phase::from_fraction(dist(rng), denominator);
    return mu;
}

} // namespace spt
