#include "spt/io.hpp"

#include <fstream>
#include <sstream>

namespace spt {

json parse_json_text(const std::string &text, const std::string &origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw Error(ErrorKind::parse_error, origin + ": byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::parse_error, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), path);
}

json group_to_json(const FiniteGroup &group) { return {{"order", group.order()}, {"table", group.table()}}; }

namespace {

void check_cap(const FiniteGroup &g, std::size_t cap) {
    if (g.order() > cap)
        throw Error(ErrorKind::invalid_order,
                    "group order " + std::to_string(g.order()) + " exceeds the cap " + std::to_string(cap));
}

template <typename T> T field(const json &j, const char *name) {
    if (!j.is_object() || !j.contains(name))
        throw Error(ErrorKind::parse_error, std::string("missing field '") + name + "'");
    try {
        return j.at(name).get<T>();
    } catch (const json::exception &e) {
        throw Error(ErrorKind::parse_error, std::string("field '") + name + "': " + e.what());
    }
}

std::vector<Phase> read_exponents(const json &j, std::size_t expected) {
    const auto den = field<std::int64_t>(j, "denominator");
    if (den < 1 || den > Phase::kMaxDenominator)
        throw Error(ErrorKind::unsupported_denominator, "denominator " + std::to_string(den) + " out of range");
    const auto ex = field<std::vector<std::int64_t>>(j, "exponents");
    if (ex.size() != expected)
        throw Error(ErrorKind::malformed_table, "expected " + std::to_string(expected) + " exponents, got " +
                                                   std::to_string(ex.size()));
    std::vector<Phase> out;
    out.reserve(ex.size());
    for (auto e : ex)
        out.push_back(Phase::from_fraction(e, den));
    return out;
}

} // namespace

GroupRef group_from_json(const json &j, std::size_t order_cap) {
    GroupRef g;
    if (j.is_string()) {
        g = parse_group_shorthand(j.get<std::string>());
    } else {
        const auto order = field<std::size_t>(j, "order");
        const auto table = field<std::vector<std::vector<int>>>(j, "table");
        if (table.size() != order)
            throw Error(ErrorKind::malformed_table, "table has " + std::to_string(table.size()) + " rows, order is " +
                                                        std::to_string(order));
        g = std::make_shared<const FiniteGroup>(FiniteGroup::from_table(table));
        auto rep = validate(*g);
        if (!rep.ok())
            throw Error(ErrorKind::malformed_table, std::string("group table violates the ") +
                                                        to_string(rep.violations.front().law) + " law");
    }
    check_cap(*g, order_cap);
    return g;
}

GroupRef load_group(const std::string &spec, std::size_t order_cap) {
    if (!spec.empty() && (spec[0] == 'z' || spec[0] == 'Z') && spec.find('.') == std::string::npos) {
        auto g = parse_group_shorthand(spec);
        check_cap(*g, order_cap);
        return g;
    }
    return group_from_json(read_json_file(spec), order_cap);
}

json group_reference(const FiniteGroup &group) {
    try {
        if (parse_group_shorthand(group.name())->same_table(group))
            return group.name();
    } catch (const Error &) {
    }
    return group_to_json(group);
}

template <int Degree> json cochain_to_json(const Cochain<Degree> &c) {
    const std::int64_t m = c.common_denominator();
    std::vector<std::int64_t> ex;
    ex.reserve(c.size());
    for (const auto &p : c.entries())
        ex.push_back(p.numerator_over(m));
    return {{"group", group_reference(c.group())}, {"denominator", m}, {"exponents", ex}};
}

template json cochain_to_json<2>(const Cochain2 &);
template json cochain_to_json<3>(const Cochain3 &);

Cochain3 cochain3_from_json(const json &j, std::size_t order_cap) {
    if (!j.is_object() || !j.contains("group"))
        throw Error(ErrorKind::parse_error, "missing field 'group'");
    GroupRef g = group_from_json(j.at("group"), order_cap);
    Cochain3 c(g);
    c.entries() = read_exponents(j, c.size());
    return c;
}

Cochain2 cochain2_from_json(const json &j, std::size_t order_cap) {
    if (!j.is_object() || !j.contains("group"))
        throw Error(ErrorKind::parse_error, "missing field 'group'");
    GroupRef g = group_from_json(j.at("group"), order_cap);
    Cochain2 c(g);
    c.entries() = read_exponents(j, c.size());
    return c;
}

json report_to_json(const IndexReport &rep) {
    json cls = {{"matches_input", rep.matches_input}, {"cyclic_level", nullptr}};
    if (rep.cyclic_level)
        cls["cyclic_level"] = *rep.cyclic_level;
    if (rep.witness)
        cls["witness"] = cochain_to_json(*rep.witness);
    const json table = cochain_to_json(rep.extracted);
    json j = {{"group", rep.group},
              {"cocycle", rep.cocycle},
              {"length", rep.length},
              {"cut", rep.cut},
              {"extracted_exponents", table["exponents"]},
              {"denominator", table["denominator"]},
              {"cocycle_check", rep.cocycle_check.pass},
              {"class", cls},
              {"diagnostics", rep.diagnostics},
              {"timings_ms", rep.timings_ms}};
    if (!rep.cocycle_check.pass) {
        const auto &q = rep.cocycle_check.quadruple;
        j["cocycle_violation"] = {{"quadruple", {q[0], q[1], q[2], q[3]}},
                                  {"residual", rep.cocycle_check.residual.to_string()}};
    }
    return j;
}

json op_to_json(const MonomialOp &u) {
    json factors = json::array();
    for (const auto &f : u.factors()) {
        if (auto s = std::get_if<Shift>(&f)) {
            factors.push_back({{"kind", "shift"}, {"register", s->reg}, {"element", s->elem}});
        } else if (auto p = std::get_if<PairShift>(&f)) {
            factors.push_back(
                {{"kind", "pair_shift"}, {"registers", {p->first, p->second}}, {"element", p->elem}});
        } else {
            const auto &d = std::get<Diagonal>(f);
            std::int64_t m = 1;
            for (const auto &ph : d.table)
                m = lcm_checked(m, ph.den());
            std::vector<std::int64_t> ex;
            for (const auto &ph : d.table)
                ex.push_back(ph.numerator_over(m));
            factors.push_back({{"kind", "diagonal"}, {"registers", d.regs}, {"denominator", m}, {"exponents", ex}});
        }
    }
    return {{"registers", u.space().registers()},
            {"global_phase", u.global_phase().to_string()},
            {"factors", factors}};
}

json light_cone_to_json(const LightConeResult &lc) {
    return {{"unit", lc.unit()},
            {"support_preserved", lc.support_preserved},
            {"phase_constant", lc.phase_constant},
            {"phase", lc.phase.to_string()},
            {"damaged_plaquettes", lc.damaged_plaquettes},
            {"configs_checked", lc.configs_checked},
            {"largest_cone", lc.largest_cone}};
}

PatchConfig patch_config_from_json(const json &j) {
    PatchConfig cfg;
    if (!j.is_object() || !j.contains("group"))
        throw Error(ErrorKind::parse_error, "missing field 'group'");
    cfg.group = j.at("group").is_string() ? load_group(j.at("group").get<std::string>()) : group_from_json(j.at("group"));
    if (j.contains("cocycle")) {
        const json &c = j.at("cocycle");
        if (c.is_number_integer()) {
            if (find_cyclic_generator(*cfg.group) < 0)
                throw Error(ErrorKind::not_cyclic_consistent, "a cocycle level needs a cyclic group");
            cfg.cocycle = standard_cyclic_cocycle(cfg.group->order(), c.get<std::int64_t>());
        } else if (c.is_string()) {
            cfg.cocycle = cochain3_from_json(read_json_file(c.get<std::string>()));
        } else {
            cfg.cocycle = cochain3_from_json(c);
        }
        if (!cfg.cocycle->group().same_table(*cfg.group))
            throw Error(ErrorKind::group_mismatch, "patch cocycle is not on the patch group");
    }
    if (j.contains("W"))
        cfg.width = field<std::size_t>(j, "W");
    if (j.contains("H"))
        cfg.height = field<std::size_t>(j, "H");
    if (j.contains("bc")) {
        const auto bc = field<std::string>(j, "bc");
        if (bc == "torus")
            cfg.bc = BoundaryCondition::torus;
        else if (bc == "open")
            cfg.bc = BoundaryCondition::open;
        else
            throw Error(ErrorKind::parse_error, "bc must be 'torus' or 'open'");
    }
    if (j.contains("link_assignment")) {
        cfg.link_assignment = field<std::string>(j, "link_assignment");
        if (cfg.link_assignment != "auto")
            parse_link_assignment(cfg.link_assignment);
    }
    return cfg;
}

} // namespace spt
