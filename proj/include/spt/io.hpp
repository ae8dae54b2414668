#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "spt/boundary_chain.hpp"
#include "spt/patch.hpp"

namespace spt {

using nlohmann::json;

/// Parses a file; syntax errors become parse_error with the byte offset.
json read_json_file(const std::string &path);
json parse_json_text(const std::string &text, const std::string &origin);

json group_to_json(const FiniteGroup &group);
/// A shorthand string ("z3", "z2*z2") or {"order": n, "table": [[...]]}.
GroupRef group_from_json(const json &j, std::size_t order_cap = kDefaultOrderCap);
/// Shorthand, or the path of a group file.
GroupRef load_group(const std::string &spec, std::size_t order_cap = kDefaultOrderCap);
/// The shorthand if it reproduces the table, otherwise the full group object.
json group_reference(const FiniteGroup &group);

/// {"group": ..., "denominator": m, "exponents": [...]} with exponents over m
/// in lexicographic argument order.
template <int Degree> json cochain_to_json(const Cochain<Degree> &c);
Cochain3 cochain3_from_json(const json &j, std::size_t order_cap = kDefaultOrderCap);
Cochain2 cochain2_from_json(const json &j, std::size_t order_cap = kDefaultOrderCap);

json report_to_json(const IndexReport &rep);
json op_to_json(const MonomialOp &u);
json light_cone_to_json(const LightConeResult &lc);

struct PatchConfig {
    GroupRef group;
    std::optional<Cochain3> cocycle;
    std::size_t width = 6;
    std::size_t height = 4;
    BoundaryCondition bc = BoundaryCondition::torus;
    /// "auto" or a candidate name.
    std::string link_assignment = "auto";
};

/// {"group", "cocycle", "W", "H", "bc", "link_assignment"}; the cocycle may
/// be a cocycle object, a path to a cocycle file, or a level for the
/// standard cyclic representative.
PatchConfig patch_config_from_json(const json &j);

} // namespace spt
