#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <variant>
#include <vector>

#include "spt/group.hpp"
#include "spt/phase.hpp"

namespace spt {

using Register = std::uint32_t;
using BasisConfig = std::vector<Element>;

/// Largest register count for which classify/factor_diagonal scan every
/// configuration; above |G|^R > kExhaustiveBudget they sample.
inline constexpr std::uint64_t kExhaustiveBudget = std::uint64_t{1} << 24;
inline constexpr std::size_t kDefaultSamples = 100000;

/// A set of group-valued registers sharing one group.
class RegisterSpace {
  public:
    RegisterSpace(GroupRef group, std::size_t registers);

    const GroupRef &group_ref() const noexcept { return group_; }
    const FiniteGroup &group() const noexcept { return *group_; }
    std::size_t registers() const noexcept { return registers_; }
    /// |G|^registers, or nullopt if it does not fit in 64 bits.
    std::optional<std::uint64_t> basis_size() const;

    bool operator==(const RegisterSpace &o) const {
        return registers_ == o.registers_ && group_->same_table(*o.group_);
    }

  private:
    GroupRef group_;
    std::size_t registers_;
};

/// <l| -> <l elem| on one register.
struct Shift {
    Register reg;
    Element elem;
    bool operator==(const Shift &) const = default;
};

/// Phase table of the labels on up to four registers, indexed
/// lexicographically in the order of `regs`.
struct Diagonal {
    std::vector<Register> regs;
    std::vector<Phase> table;
    bool operator==(const Diagonal &) const = default;
};

/// Right-multiplies both registers by elem when their labels agree; identity
/// otherwise.
struct PairShift {
    Register first;
    Register second;
    Element elem;
    bool operator==(const PairShift &) const = default;
};

using LocalFactor = std::variant<Shift, Diagonal, PairShift>;

std::vector<Register> factor_registers(const LocalFactor &f);
bool is_diagonal_factor(const LocalFactor &f);
LocalFactor invert_factor(const LocalFactor &f, const FiniteGroup &G);

/// A monomial unitary stored as an ordered factor list acting on bras:
/// <c|U = phase <c'| with c threaded through the factors in order.
class MonomialOp {
  public:
    explicit MonomialOp(RegisterSpace space) : space_(std::move(space)) {}

    static MonomialOp scalar(RegisterSpace space, Phase phase);
    static MonomialOp shift(RegisterSpace space, Register reg, Element elem);
    static MonomialOp global_shift(RegisterSpace space, Element elem);
    static MonomialOp diagonal(RegisterSpace space, std::vector<Register> regs, std::vector<Phase> table);

    const RegisterSpace &space() const noexcept { return space_; }
    const FiniteGroup &group() const noexcept { return space_.group(); }
    const std::vector<LocalFactor> &factors() const noexcept { return factors_; }
    const Phase &global_phase() const noexcept { return global_; }

    MonomialOp &push(LocalFactor f);
    MonomialOp &multiply_phase(const Phase &p) {
        global_ *= p;
        return *this;
    }

    std::pair<BasisConfig, Phase> apply(const BasisConfig &c) const;
    /// Registers touched by any factor (a superset of the true support).
    std::vector<Register> nominal_registers() const;

    void check_same_space(const MonomialOp &o) const;

  private:
    RegisterSpace space_;
    std::vector<LocalFactor> factors_;
    Phase global_;
};

/// Threads A then B.
MonomialOp compose(const MonomialOp &a, const MonomialOp &b);
MonomialOp inverse(const MonomialOp &u);
/// B, then A, then inverse(B).
MonomialOp conjugate(const MonomialOp &a, const MonomialOp &b);
/// A on the first registers, B on the following ones.
MonomialOp tensor(const MonomialOp &a, const MonomialOp &b);

/// Rewrites an op on G into an op on `product` (a direct product G x G or
/// G x H with the pair encoding of direct_product) acting on one component.
/// PairShift factors are not supported.
MonomialOp lift_to_component(const MonomialOp &u, const GroupRef &product, int component);

/// Removes identity factors, merges adjacent shifts and same-register
/// diagonals, and cancels f ... f^-1 pairs when every factor in between
/// commutes with f. The action is unchanged.
MonomialOp simplify(const MonomialOp &u);

/// The factor list flattened to integer residues over one common
/// denominator, for fast repeated application.
class CompiledOp {
  public:
    explicit CompiledOp(const MonomialOp &u);

    std::int64_t denominator() const noexcept { return den_; }
    /// Threads c in place; returns the phase numerator over denominator().
    std::int64_t apply_inplace(Element *c) const;

  private:
    struct Step {
        std::uint8_t kind;
        std::uint8_t arity;
        Element elem;
        std::array<Register, 4> regs;
        std::size_t offset;
    };
    const FiniteGroup *group_;
    std::size_t n_;
    std::int64_t den_ = 1;
    std::int64_t global_ = 0;
    std::vector<Step> steps_;
    std::vector<std::int64_t> pool_;
};

enum class OpKind { scalar, diagonal, general };
const char *to_string(OpKind kind);

struct Classification {
    OpKind kind = OpKind::general;
    /// Meaningful when kind == scalar.
    Phase scalar;
    std::vector<Register> support;
    bool sampled = false;
    std::uint64_t configs_checked = 0;
};

struct ClassifyOptions {
    std::uint64_t exhaustive_budget = kExhaustiveBudget;
    std::size_t samples = kDefaultSamples;
    std::uint64_t seed = 0x5eed;
};

/// OpenMP-parallel exhaustive classification (sampled above the budget).
Classification classify(const MonomialOp &u, const ClassifyOptions &opts = {});
/// Serial reference implementation of the exhaustive path.
Classification classify_serial(const MonomialOp &u, const ClassifyOptions &opts = {});

struct DiagonalFactorization {
    bool ok = false;
    Phase scalar;
    /// per_register[x][l] = d_x(l).
    std::vector<std::vector<Phase>> per_register;
    /// Config on which the product of factors disagrees with the operator.
    BasisConfig witness;

    std::vector<Register> nontrivial_registers() const;
    /// Product of d_x over the given registers as an op; the scalar is included
    /// only when with_scalar is set.
    MonomialOp as_op(const RegisterSpace &space, const std::vector<Register> &regs, bool with_scalar) const;
};

/// Splits a diagonal op into single-register phases times a scalar. A
/// correlated diagonal gives ok = false and a witness config; an op that
/// permutes configurations throws not_factorizable.
DiagonalFactorization factor_diagonal(const MonomialOp &u, const ClassifyOptions &opts = {});

/// True iff apply(a, c) == apply(b, c) for every c (sampled above the budget).
bool same_action(const MonomialOp &a, const MonomialOp &b, const ClassifyOptions &opts = {});

/// A product of `count` random local factors (shifts, one- and two-register
/// diagonals on adjacent registers) with phases in (1/denominator)Z.
MonomialOp random_monomial(const RegisterSpace &space, std::size_t count, std::int64_t denominator,
                           std::mt19937_64 &rng);

/// Mixed-radix helpers: config <-> index with register 0 most significant.
std::uint64_t config_index(const BasisConfig &c, std::size_t n);
BasisConfig config_from_index(std::uint64_t idx, std::size_t registers, std::size_t n);

} // namespace spt
