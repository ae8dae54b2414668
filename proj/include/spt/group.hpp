#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "spt/error.hpp"

namespace spt {

/// Index of a group element. The identity is always 0.
using Element = std::uint16_t;

/// Default cap on group orders accepted from user input; keeps the |G|^3 and
/// |G|^4 scans sub-second.
inline constexpr std::size_t kDefaultOrderCap = 12;

/// A finite group given by its multiplication table. Immutable once built.
class FiniteGroup {
  public:
    /// Builds a group from a square table. Only the shape and element range
    /// are checked here; group laws are checked by `validate`. The inverse of
    /// a is the first b with table[a][b] == 0, or a itself if there is none
    /// (validate then reports the missing inverse).
    static FiniteGroup from_table(const std::vector<std::vector<int>> &table, std::string name = {});

    std::size_t order() const noexcept { return order_; }
    Element identity() const noexcept { return 0; }
    Element mul(Element a, Element b) const noexcept { return mult_[a * order_ + b]; }
    Element inv(Element a) const noexcept { return inv_[a]; }
    /// a * b^{-1}
    Element div(Element a, Element b) const noexcept { return mul(a, inv(b)); }
    Element pow(Element a, std::int64_t k) const;
    std::size_t element_order(Element a) const;
    bool is_abelian() const;

    const std::string &name() const noexcept { return name_; }
    std::vector<std::vector<int>> table() const;

    bool same_table(const FiniteGroup &other) const noexcept {
        return order_ == other.order_ && mult_ == other.mult_;
    }

  private:
    std::size_t order_ = 0;
    std::vector<Element> mult_;
    std::vector<Element> inv_;
    std::string name_;
};

using GroupRef = std::shared_ptr<const FiniteGroup>;

enum class GroupLaw { identity, inverse, associativity };

struct LawViolation {
    GroupLaw law;
    std::vector<Element> witness;
};

struct ValidationReport {
    std::vector<LawViolation> violations;
    bool ok() const noexcept { return violations.empty(); }
};

ValidationReport validate(const FiniteGroup &group);

/// Z_n with elements 0..n-1 and addition mod n.
GroupRef make_cyclic(std::size_t n);

/// G1 x G2 with the pair (a, b) encoded as a * |G2| + b.
GroupRef direct_product(const FiniteGroup &first, const FiniteGroup &second);

/// Parses "zN" or "zN*zM*..." into a (product of) cyclic group(s).
GroupRef parse_group_shorthand(const std::string &text);

/// Orders of the cyclic factors if `text` is a shorthand, e.g. "z2*z3" -> {2, 3}.
std::vector<std::size_t> shorthand_factors(const std::string &text);

/// Returns a generator if the group is cyclic, otherwise -1.
int find_cyclic_generator(const FiniteGroup &group);

const char *to_string(GroupLaw law);

} // namespace spt
