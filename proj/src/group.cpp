#include "spt/group.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace spt {

const char *to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::invalid_order: return "invalid-order";
    case ErrorKind::malformed_table: return "malformed-table";
    case ErrorKind::out_of_range: return "out-of-range";
    case ErrorKind::group_mismatch: return "group-mismatch";
    case ErrorKind::chain_mismatch: return "chain-mismatch";
    case ErrorKind::unsupported_denominator: return "unsupported-denominator";
    case ErrorKind::not_cyclic_consistent: return "not-cyclic-consistent";
    case ErrorKind::not_normalized: return "not-normalized";
    case ErrorKind::budget_exceeded: return "budget-exceeded";
    case ErrorKind::not_factorizable: return "not-factorizable";
    case ErrorKind::pipeline_failure: return "pipeline-failure";
    case ErrorKind::internal_inconsistency: return "internal-inconsistency";
    case ErrorKind::parse_error: return "parse-error";
    }
    return "unknown";
}

const char *to_string(GroupLaw law) {
    switch (law) {
    case GroupLaw::identity: return "identity";
    case GroupLaw::inverse: return "inverse";
    case GroupLaw::associativity: return "associativity";
    }
    return "unknown";
}

FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<int>> &table, std::string name) {
    const std::size_t n = table.size();
    if (n == 0)
        throw Error(ErrorKind::malformed_table, "empty multiplication table");
    if (n > 0xFFFF)
        throw Error(ErrorKind::malformed_table, "table too large");
    FiniteGroup g;
    g.order_ = n;
    g.mult_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        if (table[a].size() != n)
            throw Error(ErrorKind::malformed_table,
                        "row " + std::to_string(a) + " has " + std::to_string(table[a].size()) +
                            " entries, expected " + std::to_string(n));
        for (std::size_t b = 0; b < n; ++b) {
            int v = table[a][b];
            if (v < 0 || static_cast<std::size_t>(v) >= n)
                throw Error(ErrorKind::malformed_table, "entry (" + std::to_string(a) + "," +
                                                            std::to_string(b) + ") out of range");
            g.mult_[a * n + b] = static_cast<Element>(v);
        }
    }
    g.inv_.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
        g.inv_[a] = static_cast<Element>(a);
        for (std::size_t b = 0; b < n; ++b) {
            if (g.mult_[a * n + b] == 0) {
                g.inv_[a] = static_cast<Element>(b);
                break;
            }
        }
    }
    g.name_ = name.empty() ? "table" + std::to_string(n) : std::move(name);
    return g;
}

Element FiniteGroup::pow(Element a, std::int64_t k) const {
    if (k < 0) {
        a = inv(a);
        k = -k;
    }
    Element r = identity();
    for (std::int64_t i = 0; i < k; ++i)
        r = mul(r, a);
    return r;
}

std::size_t FiniteGroup::element_order(Element a) const {
    Element x = a;
    std::size_t k = 1;
    while (x != identity() && k <= order_) {
        x = mul(x, a);
        ++k;
    }
    return k;
}

bool FiniteGroup::is_abelian() const {
    for (std::size_t a = 0; a < order_; ++a)
        for (std::size_t b = a + 1; b < order_; ++b)
            if (mult_[a * order_ + b] != mult_[b * order_ + a])
                return false;
    return true;
}

std::vector<std::vector<int>> FiniteGroup::table() const {
    std::vector<std::vector<int>> t(order_, std::vector<int>(order_));
    for (std::size_t a = 0; a < order_; ++a)
        for (std::size_t b = 0; b < order_; ++b)
            t[a][b] = mult_[a * order_ + b];
    return t;
}

ValidationReport validate(const FiniteGroup &g) {
    ValidationReport report;
    const auto n = static_cast<Element>(g.order());
    for (Element a = 0; a < n; ++a) {
        if (g.mul(0, a) != a || g.mul(a, 0) != a)
            report.violations.push_back({GroupLaw::identity, {a}});
        if (g.mul(a, g.inv(a)) != 0 || g.mul(g.inv(a), a) != 0)
            report.violations.push_back({GroupLaw::inverse, {a}});
    }
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            for (Element c = 0; c < n; ++c)
                if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
                    report.violations.push_back({GroupLaw::associativity, {a, b, c}});
    return report;
}

GroupRef make_cyclic(std::size_t n) {
    if (n == 0)
        throw Error(ErrorKind::invalid_order, "cyclic group of order 0");
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            t[a][b] = static_cast<int>((a + b) % n);
    return std::make_shared<const FiniteGroup>(FiniteGroup::from_table(t, "z" + std::to_string(n)));
}

GroupRef direct_product(const FiniteGroup &g1, const FiniteGroup &g2) {
    const std::size_t n1 = g1.order(), n2 = g2.order();
    std::vector<std::vector<int>> t(n1 * n2, std::vector<int>(n1 * n2));
    for (std::size_t a = 0; a < n1 * n2; ++a)
        for (std::size_t b = 0; b < n1 * n2; ++b) {
            auto x = g1.mul(static_cast<Element>(a / n2), static_cast<Element>(b / n2));
            auto y = g2.mul(static_cast<Element>(a % n2), static_cast<Element>(b % n2));
            t[a][b] = static_cast<int>(x * n2 + y);
        }
    return std::make_shared<const FiniteGroup>(
        FiniteGroup::from_table(t, g1.name() + "*" + g2.name()));
}

std::vector<std::size_t> shorthand_factors(const std::string &text) {
    std::vector<std::size_t> orders;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('*', pos);
        if (end == std::string::npos)
            end = text.size();
        std::string part = text.substr(pos, end - pos);
        if (part.size() < 2 || (part[0] != 'z' && part[0] != 'Z') ||
            !std::all_of(part.begin() + 1, part.end(), [](unsigned char c) { return std::isdigit(c); }))
            throw Error(ErrorKind::parse_error, "bad group shorthand '" + text + "'");
        std::size_t n = std::stoul(part.substr(1));
        if (n == 0)
            throw Error(ErrorKind::invalid_order, "cyclic factor of order 0 in '" + text + "'");
        orders.push_back(n);
        pos = end + 1;
        if (end + 1 == text.size())
            throw Error(ErrorKind::parse_error, "bad group shorthand '" + text + "'");
    }
    if (orders.empty())
        throw Error(ErrorKind::parse_error, "empty group shorthand");
    return orders;
}

GroupRef parse_group_shorthand(const std::string &text) {
    auto orders = shorthand_factors(text);
    GroupRef g = make_cyclic(orders[0]);
    for (std::size_t i = 1; i < orders.size(); ++i)
        g = direct_product(*g, *make_cyclic(orders[i]));
    return g;
}

int find_cyclic_generator(const FiniteGroup &g) {
    for (std::size_t a = 0; a < g.order(); ++a)
        if (g.element_order(static_cast<Element>(a)) == g.order())
            return static_cast<int>(a);
    return -1;
}

} // namespace spt
