#pragma once

// Small algebras used across the test suites, built longhand from their
// multiplication rules, plus tiny self-contained oracles that deliberately
// avoid the library's rref/solver paths.

#include <cstddef>
#include <vector>

#include "pstrace/algebra.hpp"

namespace fixtures {

using namespace pstrace;

// 2x2 matrix algebra, basis e11, e12, e21, e22: eij * ekl = [j==k] eil.
inline FiniteAlgebra m2() {
    std::vector<StructureTriple> s;
    auto idx = [](std::size_t i, std::size_t j) { return 2 * i + j; };
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l)
                    if (j == k) s.push_back({idx(i, j), idx(k, l), idx(i, l), Rat(1)});
    Vec unit = vec_zero(4);
    unit[idx(0, 0)] = 1;
    unit[idx(1, 1)] = 1;
    return make_algebra({"e11", "e12", "e21", "e22"}, s, unit);
}

// n x n matrix algebra over Q with the matrix-unit basis.
inline FiniteAlgebra mn(std::size_t n) {
    std::vector<StructureTriple> s;
    auto idx = [n](std::size_t i, std::size_t j) { return n * i + j; };
    std::vector<std::string> labels(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            labels[idx(i, j)] = "e" + std::to_string(i + 1) + std::to_string(j + 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l)
                    if (j == k) s.push_back({idx(i, j), idx(k, l), idx(i, l), Rat(1)});
    Vec unit = vec_zero(n * n);
    for (std::size_t i = 0; i < n; ++i) unit[idx(i, i)] = 1;
    return make_algebra(labels, s, unit);
}

// Upper-triangular 2x2 matrices, basis e11, e12, e22.
inline FiniteAlgebra t2() {
    std::vector<StructureTriple> s = {
        {0, 0, 0, Rat(1)},  // e11 e11 = e11
        {0, 1, 1, Rat(1)},  // e11 e12 = e12
        {1, 2, 1, Rat(1)},  // e12 e22 = e12
        {2, 2, 2, Rat(1)},  // e22 e22 = e22
    };
    Vec unit = vec_zero(3);
    unit[0] = 1;
    unit[2] = 1;
    return make_algebra({"e11", "e12", "e22"}, s, unit);
}

// Upper-triangular 3x3 matrices: basis e11,e22,e33,e12,e13,e23 (dim 6).
inline FiniteAlgebra t3() {
    // index map: 0:e11 1:e22 2:e33 3:e12 4:e13 5:e23
    struct MU {
        std::size_t r, c, idx;
    };
    std::vector<MU> b = {{0, 0, 0}, {1, 1, 1}, {2, 2, 2}, {0, 1, 3}, {0, 2, 4}, {1, 2, 5}};
    std::vector<StructureTriple> s;
    for (const auto& x : b)
        for (const auto& y : b)
            if (x.c == y.r)
                for (const auto& z : b)
                    if (z.r == x.r && z.c == y.c) s.push_back({x.idx, y.idx, z.idx, Rat(1)});
    Vec unit = vec_zero(6);
    unit[0] = unit[1] = unit[2] = 1;
    return make_algebra({"e11", "e22", "e33", "e12", "e13", "e23"}, s, unit);
}

// Dual numbers Q[x]/(x^2), basis 1, x.
inline FiniteAlgebra dual_numbers() {
    std::vector<StructureTriple> s = {
        {0, 0, 0, Rat(1)}, {0, 1, 1, Rat(1)}, {1, 0, 1, Rat(1)},
        // x*x = 0
    };
    Vec unit = vec_zero(2);
    unit[0] = 1;
    return make_algebra({"one", "x"}, s, unit);
}

// Q[x]/(x^3), basis 1, x, x^2.
inline FiniteAlgebra qx3() {
    std::vector<StructureTriple> s;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            if (i + j < 3) s.push_back({i, j, i + j, Rat(1)});
    Vec unit = vec_zero(3);
    unit[0] = 1;
    return make_algebra({"one", "x", "x2"}, s, unit);
}

// Q[x]/(x^2+1), a field extension of Q: stays simple but does not split.
inline FiniteAlgebra qi() {
    std::vector<StructureTriple> s = {
        {0, 0, 0, Rat(1)}, {0, 1, 1, Rat(1)}, {1, 0, 1, Rat(1)}, {1, 1, 0, Rat(-1)},
    };
    Vec unit = vec_zero(2);
    unit[0] = 1;
    return make_algebra({"one", "i"}, s, unit);
}

// Q x M2: basis u (the first factor's unit), then matrix units of M2.
inline FiniteAlgebra q_times_m2() {
    std::vector<StructureTriple> s;
    s.push_back({0, 0, 0, Rat(1)});
    auto idx = [](std::size_t i, std::size_t j) { return 1 + 2 * i + j; };
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l)
                    if (j == k) s.push_back({idx(i, j), idx(k, l), idx(i, l), Rat(1)});
    Vec unit = vec_zero(5);
    unit[0] = 1;
    unit[idx(0, 0)] = 1;
    unit[idx(1, 1)] = 1;
    return make_algebra({"u", "e11", "e12", "e21", "e22"}, s, unit);
}

inline Element elem(const FiniteAlgebra& a, std::initializer_list<int> xs) {
    Vec v;
    for (int x : xs) v.push_back(Rat(x));
    return a.element(v);
}

// ---- independent oracles ------------------------------------------------

// Rank by plain Gaussian elimination over Q, written without the library's
// echelon code.
inline std::size_t oracle_rank(std::vector<Vec> rows, std::size_t cols) {
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols; ++c) {
        std::size_t piv = rows.size();
        for (std::size_t r = rank; r < rows.size(); ++r)
            if (sgn(rows[r][c]) != 0) {
                piv = r;
                break;
            }
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || sgn(rows[r][c]) == 0) continue;
            const Rat f = rows[r][c] / rows[rank][c];
            for (std::size_t j = 0; j < cols; ++j) rows[r][j] -= f * rows[rank][j];
        }
        ++rank;
        if (rank == rows.size()) break;
    }
    return rank;
}

// Dimension of the span of all basis commutators, via the oracle rank.
inline std::size_t oracle_commutator_dim(const FiniteAlgebra& a) {
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            rows.push_back(vec_sub(a.product(i, j), a.product(j, i)));
    return oracle_rank(std::move(rows), a.dim());
}

}  // namespace fixtures
