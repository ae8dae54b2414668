#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace spt {

/// The linear system A x = b over Z/M, A dense row-major.
struct ModularSystem {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::int64_t modulus = 1;
    std::vector<std::int64_t> matrix;
    std::vector<std::int64_t> rhs;

    ModularSystem(std::size_t r, std::size_t c, std::int64_t m)
        : rows(r), cols(c), modulus(m), matrix(r * c, 0), rhs(r, 0) {}

    std::int64_t &at(std::size_t i, std::size_t j) { return matrix[i * cols + j]; }
};

struct ModularSolution {
    bool solvable = false;
    /// A solution mod M when solvable.
    std::vector<std::int64_t> x;
    /// Diagonal entries of the Smith form, each reduced to gcd(d, M).
    std::vector<std::int64_t> diagonal;
};

/// Diagonalizes A by unimodular row and column operations over Z/M (full
/// pivoting on the entry sharing the smallest gcd with M), then solves the
/// diagonal system. Exact; every intermediate is reduced mod M.
ModularSolution solve_mod(ModularSystem system);

} // namespace spt
