#include "spt/smith.hpp"

#include <numeric>
#include <tuple>
#include <utility>

#include "spt/error.hpp"

namespace spt {

namespace {

std::int64_t reduce(__int128 v, std::int64_t m) {
    __int128 r = v % m;
    if (r < 0)
        r += m;
    return static_cast<std::int64_t>(r);
}

/// g = gcd(a, b) = s a + t b with a, b >= 0.
std::tuple<std::int64_t, std::int64_t, std::int64_t> ext_gcd(std::int64_t a, std::int64_t b) {
    std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
        std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
    }
    return {old_r, old_s, old_t};
}

class Reducer {
  public:
    explicit Reducer(ModularSystem &sys)
        : s_(sys), m_(sys.modulus), transform_(sys.cols * sys.cols, 0) {
        for (std::size_t i = 0; i < s_.cols; ++i)
            transform_[i * s_.cols + i] = 1;
    }

    ModularSolution run() {
        const std::size_t steps = std::min(s_.rows, s_.cols);
        std::size_t rank = 0;
        for (std::size_t t = 0; t < steps; ++t) {
            if (!choose_pivot(t))
                break;
            clear_cross(t);
            ++rank;
        }
        return solve(rank);
    }

  private:
    std::int64_t &a(std::size_t i, std::size_t j) { return s_.matrix[i * s_.cols + j]; }

    bool choose_pivot(std::size_t t) {
        std::size_t bi = 0, bj = 0;
        std::int64_t best = 0;
        for (std::size_t i = t; i < s_.rows; ++i)
            for (std::size_t j = t; j < s_.cols; ++j) {
                std::int64_t v = a(i, j);
                if (v == 0)
                    continue;
                std::int64_t g = std::gcd(v, m_);
                if (best == 0 || g < best) {
                    best = g;
                    bi = i;
                    bj = j;
                    if (g == 1)
                        goto found;
                }
            }
        if (best == 0)
            return false;
    found:
        swap_rows(t, bi);
        swap_cols(t, bj);
        return true;
    }

    void swap_rows(std::size_t i, std::size_t k) {
        if (i == k)
            return;
        for (std::size_t j = 0; j < s_.cols; ++j)
            std::swap(a(i, j), a(k, j));
        std::swap(s_.rhs[i], s_.rhs[k]);
    }

    void swap_cols(std::size_t j, std::size_t k) {
        if (j == k)
            return;
        for (std::size_t i = 0; i < s_.rows; ++i)
            std::swap(a(i, j), a(i, k));
        for (std::size_t i = 0; i < s_.cols; ++i)
            std::swap(transform_[i * s_.cols + j], transform_[i * s_.cols + k]);
    }

    // Rows t and r become (s row_t + u row_r, -q row_t + p row_r) with
    // p = a/g, q = b/g; the matrix has determinant 1.
    void combine_rows(std::size_t t, std::size_t r, std::size_t col) {
        std::int64_t x = a(t, col), y = a(r, col);
        auto [g, s, u] = ext_gcd(x, y);
        if (g == x) {
            s = 1;
            u = 0;
        }
        std::int64_t p = x / g, q = y / g;
        for (std::size_t j = col; j < s_.cols; ++j) {
            std::int64_t vt = a(t, j), vr = a(r, j);
            a(t, j) = reduce(static_cast<__int128>(s) * vt + static_cast<__int128>(u) * vr, m_);
            a(r, j) = reduce(-static_cast<__int128>(q) * vt + static_cast<__int128>(p) * vr, m_);
        }
        std::int64_t bt = s_.rhs[t], br = s_.rhs[r];
        s_.rhs[t] = reduce(static_cast<__int128>(s) * bt + static_cast<__int128>(u) * br, m_);
        s_.rhs[r] = reduce(-static_cast<__int128>(q) * bt + static_cast<__int128>(p) * br, m_);
    }

    void combine_cols(std::size_t t, std::size_t c, std::size_t row) {
        std::int64_t x = a(row, t), y = a(row, c);
        auto [g, s, u] = ext_gcd(x, y);
        if (g == x) {
            s = 1;
            u = 0;
        }
        std::int64_t p = x / g, q = y / g;
        auto mix = [&](std::int64_t &vt, std::int64_t &vc) {
            std::int64_t ot = vt, oc = vc;
            vt = reduce(static_cast<__int128>(s) * ot + static_cast<__int128>(u) * oc, m_);
            vc = reduce(-static_cast<__int128>(q) * ot + static_cast<__int128>(p) * oc, m_);
        };
        for (std::size_t i = row; i < s_.rows; ++i)
            mix(a(i, t), a(i, c));
        for (std::size_t i = 0; i < s_.cols; ++i)
            mix(transform_[i * s_.cols + t], transform_[i * s_.cols + c]);
    }

    void clear_cross(std::size_t t) {
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (std::size_t r = t + 1; r < s_.rows; ++r)
                if (a(r, t) != 0)
                    combine_rows(t, r, t);
            for (std::size_t c = t + 1; c < s_.cols; ++c)
                if (a(t, c) != 0)
                    combine_cols(t, c, t);
            for (std::size_t r = t + 1; r < s_.rows && !dirty; ++r)
                dirty = a(r, t) != 0;
        }
    }

    ModularSolution solve(std::size_t rank) {
        ModularSolution out;
        std::vector<std::int64_t> z(s_.cols, 0);
        for (std::size_t t = 0; t < rank; ++t) {
            std::int64_t d = a(t, t);
            std::int64_t g = std::gcd(d, m_);
            out.diagonal.push_back(g);
            std::int64_t c = s_.rhs[t];
            if (c % g != 0)
                return out;
            std::int64_t mg = m_ / g;
            auto [one, inv, unused] = ext_gcd((d / g) % mg, mg);
            (void)unused;
            if (one != 1)
                throw Error(ErrorKind::internal_inconsistency, "pivot not invertible modulo M/g");
            z[t] = reduce(static_cast<__int128>(c / g) * reduce(inv, mg), mg);
        }
        for (std::size_t r = rank; r < s_.rows; ++r)
            if (s_.rhs[r] != 0)
                return out;
        out.solvable = true;
        out.x.assign(s_.cols, 0);
        for (std::size_t i = 0; i < s_.cols; ++i) {
            __int128 acc = 0;
            for (std::size_t j = 0; j < rank; ++j)
                acc = (acc + static_cast<__int128>(transform_[i * s_.cols + j]) * z[j]) % m_;
            out.x[i] = reduce(acc, m_);
        }
        return out;
    }

    ModularSystem &s_;
    std::int64_t m_;
    std::vector<std::int64_t> transform_;
};

} // namespace

ModularSolution solve_mod(ModularSystem system) {
    if (system.modulus < 1)
        throw Error(ErrorKind::out_of_range, "modulus must be positive");
    for (auto &v : system.matrix)
        v = reduce(v, system.modulus);
    for (auto &v : system.rhs)
        v = reduce(v, system.modulus);
    Reducer r(system);
    return r.run();
}

} // namespace spt
