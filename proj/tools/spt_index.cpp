#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "spt/cohomology.hpp"
#include "spt/io.hpp"

using namespace spt;

namespace {

enum Exit { ok = 0, math_failure = 1, input_error = 2 };

struct Options {
    std::string group;
    std::optional<std::int64_t> level;
    std::string levels;
    std::string cocycle;
    std::string against;
    std::optional<std::int64_t> against_level;
    std::size_t length = 6;
    std::size_t stack_length = 4;
    std::optional<std::size_t> cut;
    std::size_t width = 6;
    std::size_t height = 4;
    std::string bc = "torus";
    std::string link_assignment = "auto";
    std::string config;
    std::uint64_t seed = 1;
    std::string format = "json";
    std::string output;
};

class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::invalid_order:
    case ErrorKind::malformed_table:
    case ErrorKind::out_of_range:
    case ErrorKind::group_mismatch:
    case ErrorKind::chain_mismatch:
    case ErrorKind::unsupported_denominator:
    case ErrorKind::budget_exceeded:
    case ErrorKind::parse_error:
        return input_error;
    default:
        return math_failure;
    }
}

void emit(const Options &o, const json &report, const std::string &summary) {
    std::ostream &data = o.format == "text" ? std::cerr : std::cout;
    std::ostream &human = o.format == "text" ? std::cout : std::cerr;
    if (!o.output.empty()) {
        std::ofstream out(o.output);
        if (!out)
            throw InputError("cannot write " + o.output);
        out << report.dump(2) << '\n';
    } else {
        data << report.dump(2) << '\n';
    }
    human << summary;
}

std::string level_label(std::size_t n, std::int64_t p) {
    return "z" + std::to_string(n) + " level " + std::to_string(p);
}

std::size_t cyclic_order(const std::string &group) {
    auto f = shorthand_factors(group);
    if (f.size() != 1)
        throw InputError("--level needs a cyclic group zN; use --cocycle for " + group);
    return f[0];
}

void check_order(std::size_t n) {
    if (n > kDefaultOrderCap)
        throw Error(ErrorKind::invalid_order, "group order " + std::to_string(n) + " exceeds the cap " +
                                                  std::to_string(kDefaultOrderCap));
}

struct LoadedCocycle {
    Cochain3 omega;
    std::string label;
};

LoadedCocycle cocycle_from(const std::string &group, const std::string &file, std::optional<std::int64_t> level,
                           const char *what) {
    if (!file.empty()) {
        if (level)
            throw InputError(std::string("give either a cocycle file or a level for the ") + what);
        Cochain3 c = cochain3_from_json(read_json_file(file));
        if (!group.empty() && !load_group(group)->same_table(c.group()))
            throw InputError("cocycle file " + file + " is not on group " + group);
        return {std::move(c), file};
    }
    if (!level)
        throw InputError(std::string("missing --cocycle or --level for the ") + what);
    if (group.empty())
        throw InputError("--level needs --group");
    const std::size_t n = cyclic_order(group);
    check_order(n);
    return {standard_cyclic_cocycle(n, *level), level_label(n, *level)};
}

LoadedCocycle primary(const Options &o) { return cocycle_from(o.group, o.cocycle, o.level, "cocycle"); }

Cochain3 normalized(const Cochain3 &omega, std::vector<std::string> &notes) {
    if (omega.is_normalized())
        return omega;
    auto n = normalize(omega);
    notes.push_back("input normalized by a coboundary before the construction");
    return n.cocycle;
}

std::string table_text(const Cochain3 &c) {
    std::ostringstream os;
    const auto m = c.common_denominator();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c.entries()[i].is_one())
            continue;
        auto a = c.args(i);
        os << "  (" << a[0] << ',' << a[1] << ',' << a[2] << ") -> " << c.entries()[i].numerator_over(m) << '/'
           << m << '\n';
    }
    return os.str();
}

int cmd_cocycle_make(const Options &o) {
    auto c = primary(o);
    emit(o, cochain_to_json(c.omega), "made " + c.label + "\n");
    return ok;
}

int cmd_cocycle_check(const Options &o) {
    auto c = primary(o);
    auto chk = check_cocycle(c.omega);
    json r = {{"command", "cocycle check"}, {"cocycle", c.label}, {"pass", chk.pass}};
    std::string summary = chk.pass ? "pass\n" : "fail\n";
    if (!chk.pass) {
        const auto &q = chk.quadruple;
        r["quadruple"] = {q[0], q[1], q[2], q[3]};
        r["residual"] = chk.residual.to_string();
        summary = "fail: cocycle identity violated at (" + std::to_string(q[0]) + "," + std::to_string(q[1]) + "," +
                  std::to_string(q[2]) + "," + std::to_string(q[3]) + "), residual " + chk.residual.to_string() +
                  "\n";
    }
    emit(o, r, summary);
    return chk.pass ? ok : math_failure;
}

int cmd_cocycle_compare(const Options &o) {
    auto a = primary(o);
    auto b = cocycle_from(o.group, o.against, o.against_level, "comparison cocycle");
    if (!a.omega.group().same_table(b.omega.group()))
        throw InputError("the two cocycles live on different groups");
    for (const auto *c : {&a, &b}) {
        auto chk = check_cocycle(c->omega);
        if (!chk.pass) {
            emit(o, {{"command", "cocycle compare"}, {"not_a_cocycle", c->label}}, c->label + " is not a cocycle\n");
            return math_failure;
        }
    }
    auto cmp = same_class(a.omega, b.omega);
    json r = {{"command", "cocycle compare"},
              {"first", a.label},
              {"second", b.label},
              {"same_class", cmp.same},
              {"modulus", cmp.modulus}};
    if (cmp.witness)
        r["witness"] = cochain_to_json(*cmp.witness);
    emit(o, r, cmp.same ? "same class\n" : "distinct classes\n");
    return cmp.same ? ok : math_failure;
}

int cmd_cocycle_level(const Options &o) {
    auto c = primary(o);
    if (find_cyclic_generator(c.omega.group()) < 0)
        throw InputError("group " + c.omega.group().name() + " is not cyclic");
    const auto p = identify_cyclic_level(c.omega);
    emit(o, {{"command", "cocycle level"}, {"cocycle", c.label}, {"level", p}}, "level " + std::to_string(p) + "\n");
    return ok;
}

RegisterChain chain_for(const GroupRef &g, const Options &o) {
    if (o.length < 2)
        throw InputError("--length must be at least 2, got " + std::to_string(o.length));
    const std::size_t cut = o.cut.value_or(o.length / 2);
    if (cut > o.length)
        throw InputError("--cut must lie in [0, length], got " + std::to_string(cut));
    return RegisterChain(g, o.length, cut);
}

int cmd_index(const Options &o) {
    auto c = primary(o);
    std::vector<std::string> notes;
    const Cochain3 omega = normalized(c.omega, notes);
    const auto chain = chain_for(omega.group_ref(), o);
    IndexReport rep = index_table(omega, chain);
    rep.cocycle = c.label;
    rep.diagnostics.insert(rep.diagnostics.begin(), notes.begin(), notes.end());
    std::ostringstream s;
    s << "index of " << c.label << " on a chain of length " << rep.length << ", cut " << rep.cut << '\n'
      << table_text(rep.extracted) << "cocycle check " << (rep.cocycle_check.pass ? "pass" : "FAIL")
      << ", input class " << (rep.matches_input ? "reproduced" : "NOT reproduced");
    if (rep.cyclic_level)
        s << ", level " << *rep.cyclic_level;
    s << '\n';
    emit(o, report_to_json(rep), s.str());
    return rep.success() ? ok : math_failure;
}

int cmd_verify_invariance(const Options &o) {
    auto c = primary(o);
    std::vector<std::string> notes;
    const Cochain3 omega = normalized(c.omega, notes);
    chain_for(omega.group_ref(), o);
    const auto t0 = std::chrono::steady_clock::now();
    auto suite = choice_invariance_suite(omega, o.length, o.seed);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    json runs = json::array();
    std::ostringstream s;
    for (const auto &r : suite.runs) {
        runs.push_back({{"choice", r.choice},
                        {"pass", r.pass()},
                        {"identical", r.identical},
                        {"same_class", r.same_class},
                        {"requires_identical", r.require_identical},
                        {"detail", r.detail}});
        s << (r.pass() ? "pass " : "FAIL ") << r.choice << (r.detail.empty() ? "" : ": " + r.detail) << '\n';
    }
    s << "seed " << suite.seed << '\n';
    emit(o,
         {{"command", "verify invariance"},
          {"cocycle", c.label},
          {"length", o.length},
          {"seed", suite.seed},
          {"pass", suite.pass()},
          {"runs", runs},
          {"diagnostics", notes},
          {"timings_ms", {{"suite", ms}}}},
         s.str());
    return suite.pass() ? ok : math_failure;
}

std::vector<std::int64_t> parse_levels(const std::string &text) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::logic_error &) {
            throw InputError("--levels expects integers separated by commas, got '" + text + "'");
        }
    }
    return out;
}

int cmd_verify_stacking(const Options &o) {
    auto load_pair = [&]() -> std::pair<LoadedCocycle, LoadedCocycle> {
        if (o.levels.empty())
            return {primary(o), cocycle_from(o.group, o.against, o.against_level, "second model")};
        auto lv = parse_levels(o.levels);
        if (lv.size() != 2)
            throw InputError("--levels takes exactly two levels");
        return {cocycle_from(o.group, "", lv[0], "first model"), cocycle_from(o.group, "", lv[1], "second model")};
    };
    auto [a, b] = load_pair();
    std::vector<std::string> notes;
    const Cochain3 wa = normalized(a.omega, notes), wb = normalized(b.omega, notes);
    Options eff = o;
    eff.length = o.stack_length;
    const auto chain = chain_for(wa.group_ref(), eff);
    const auto fa = build_compensators(wa, chain), fb = build_compensators(wb, chain);
    IndexReport rep = stack_models(fa, fb);
    rep.cocycle = a.label + " (x) " + b.label;
    const Cochain3 expected = wa * wb;
    const bool entrywise = rep.extracted == expected;
    const bool trivial = same_class(rep.extracted, Cochain3(wa.group_ref())).same;
    rep.diagnostics.insert(rep.diagnostics.begin(), notes.begin(), notes.end());
    json r = report_to_json(rep);
    r["command"] = "verify stacking";
    r["entrywise_product"] = entrywise;
    r["product_class_trivial"] = trivial;
    const bool pass = entrywise && rep.success();
    std::ostringstream s;
    s << (entrywise ? "pass" : "FAIL") << " stacked table equals the entrywise product\n"
      << (rep.success() ? "pass" : "FAIL") << " stacked table is a cocycle in the product class\n"
      << "product class " << (trivial ? "trivial" : "nontrivial") << '\n';
    emit(o, r, s.str());
    return pass ? ok : math_failure;
}

int cmd_verify_patch(const Options &o) {
    Options eff = o;
    LoadedCocycle c{Cochain3(make_cyclic(1)), ""};
    if (!o.config.empty()) {
        const PatchConfig cfg = patch_config_from_json(read_json_file(o.config));
        if (!cfg.cocycle)
            throw InputError("patch config " + o.config + " has no cocycle");
        c = {*cfg.cocycle, o.config};
        eff.width = cfg.width;
        eff.height = cfg.height;
        eff.bc = cfg.bc == BoundaryCondition::torus ? "torus" : "open";
        eff.link_assignment = cfg.link_assignment;
    } else {
        c = primary(o);
    }
    if (eff.bc != "torus" && eff.bc != "open")
        throw InputError("--bc must be torus or open");
    if (eff.width < 2 || eff.height < 3)
        throw InputError("patch needs W >= 2 and H >= 3");
    std::vector<std::string> notes;
    const Cochain3 omega = normalized(c.omega, notes);
    PatchGeometry geom(eff.width, eff.height,
                       eff.bc == "torus" ? BoundaryCondition::torus : BoundaryCondition::open);
    if (eff.link_assignment != "auto")
        geom.set_link(parse_link_assignment(eff.link_assignment));

    json checks = json::array();
    std::ostringstream s;
    bool all = true;
    std::map<std::string, double> timings;
    auto timed = [&](const std::string &name, auto &&f) {
        const auto t0 = std::chrono::steady_clock::now();
        auto r = f();
        timings[name] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        return r;
    };
    auto record = [&](const std::string &name, bool pass, json detail) {
        all = all && pass;
        detail["check"] = name;
        detail["pass"] = pass;
        checks.push_back(std::move(detail));
        s << (pass ? "pass " : "FAIL ") << name << '\n';
    };
    auto patch_check = [&](const std::string &name, const PatchCheck &p) {
        record(name, p.pass, {{"checked", p.checked}, {"violations", p.violations}});
    };

    patch_check("representation", timed("representation", [&] { return verify_representation(omega, geom, 200, o.seed); }));
    patch_check("plaquette invariance", timed("plaquette", [&] { return verify_plaquette_invariance(omega, geom); }));
    patch_check("global invariance", timed("global", [&] { return verify_global_invariance(omega, geom); }));

    std::vector<CompensationOutcome> outcomes;
    std::optional<LinkAssignment> chosen;
    if (eff.link_assignment == "auto") {
        auto sel = timed("selection", [&] { return select_link_assignment(omega, geom); });
        outcomes = sel.candidates;
        chosen = sel.selected;
    } else {
        auto out = timed("compensation", [&] { return verify_compensation(omega, geom); });
        outcomes.push_back(out);
        if (out.pass)
            chosen = out.assignment;
    }
    json candidates = json::array();
    for (const auto &oc : outcomes) {
        json per = json::array();
        for (const auto &lc : oc.per_element)
            per.push_back(light_cone_to_json(lc));
        candidates.push_back({{"assignment", oc.assignment.name()}, {"pass", oc.pass}, {"per_element", per}});
    }
    record("compensation", chosen.has_value(),
           {{"selected", chosen ? json(chosen->name()) : json(nullptr)}, {"candidates", candidates}});

    json cross = {{"skipped", !chosen}};
    if (chosen) {
        geom.set_link(*chosen);
        auto arc = timed("arc", [&] { return arc_index_crosscheck(omega, geom); });
        auto chain_rep = timed("chain", [&] { return index_table(omega, RegisterChain(omega.group_ref(), 6)); });
        const bool match = arc.all_unit && arc.table == chain_rep.extracted;
        cross = {{"arc_table", cochain_to_json(arc.table)},
                 {"chain_table", cochain_to_json(chain_rep.extracted)},
                 {"all_unit", arc.all_unit},
                 {"diagnostics", arc.diagnostics}};
        record("arc cross-check", match, cross);
        notes.push_back("global action on compensators:");
        for (auto &line : global_action_on_compensators(omega, geom))
            notes.push_back("  " + line);
    } else {
        record("arc cross-check", false, cross);
    }
    s << "link assignment " << (chosen ? chosen->name() : std::string("none")) << ", seed " << o.seed << '\n';
    emit(o,
         {{"command", "verify patch"},
          {"cocycle", c.label},
          {"W", eff.width},
          {"H", eff.height},
          {"bc", eff.bc},
          {"seed", o.seed},
          {"pass", all},
          {"checks", checks},
          {"diagnostics", notes},
          {"timings_ms", timings}},
         s.str());
    return all ? ok : math_failure;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Exact H^3(G,U(1)) index of 2d SPT states"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App *sub) {
        sub->add_option("--group", o.group, "zN, zN*zM or a group file");
        sub->add_option("--level", o.level, "level p of the standard cyclic cocycle");
        sub->add_option("--cocycle", o.cocycle, "cocycle file");
        sub->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--output", o.output, "write the JSON report to this file");
        sub->add_option("--seed", o.seed, "seed for randomized checks");
    };
    auto chain_opts = [&](CLI::App *sub) {
        sub->add_option("--length", o.length, "chain length M");
        sub->add_option("--cut", o.cut, "cut position p");
    };

    auto *cocycle = app.add_subcommand("cocycle", "build, check and compare cocycles");
    cocycle->require_subcommand(1);
    std::vector<std::pair<CLI::App *, int (*)(const Options &)>> handlers;
    auto add = [&](CLI::App *parent, const char *name, const char *help, int (*fn)(const Options &)) {
        auto *sub = parent->add_subcommand(name, help);
        common(sub);
        handlers.emplace_back(sub, fn);
        return sub;
    };
    add(cocycle, "make", "write the standard cyclic representative", cmd_cocycle_make);
    add(cocycle, "check", "exhaustive cocycle identity scan", cmd_cocycle_check);
    auto *compare = add(cocycle, "compare", "decide whether two cocycles are cohomologous", cmd_cocycle_compare);
    compare->add_option("--against", o.against, "second cocycle file");
    compare->add_option("--against-level", o.against_level, "level of the second cocycle");
    add(cocycle, "level", "level of a cocycle on a cyclic group", cmd_cocycle_level);

    chain_opts(add(&app, "index", "extract the index table on a boundary chain", cmd_index));

    auto *verify = app.add_subcommand("verify", "invariance suites");
    verify->require_subcommand(1);
    chain_opts(add(verify, "invariance", "independence of every choice in the construction", cmd_verify_invariance));
    auto *stacking = add(verify, "stacking", "multiplicativity under stacking", cmd_verify_stacking);
    stacking->add_option("--length", o.stack_length, "chain length M of each model (default 4)");
    stacking->add_option("--cut", o.cut, "cut position p");
    stacking->add_option("--levels", o.levels, "two levels, e.g. 1,2");
    stacking->add_option("--against", o.against, "second cocycle file");
    stacking->add_option("--against-level", o.against_level, "level of the second model");
    auto *patch = add(verify, "patch", "microscopic checks on a 2d patch", cmd_verify_patch);
    patch->add_option("--W", o.width, "patch width");
    patch->add_option("--H", o.height, "patch height");
    patch->add_option("--bc", o.bc, "torus or open");
    patch->add_option("--link-assignment", o.link_assignment, "auto or a candidate name");
    patch->add_option("--config", o.config, "patch configuration file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e) == 0 ? ok : input_error;
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return input_error;
    }

    try {
        for (auto &[sub, fn] : handlers)
            if (sub->parsed())
                return fn(o);
    } catch (const InputError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return input_error;
    } catch (const Error &e) {
        std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return math_failure;
    }
    return input_error;
}
