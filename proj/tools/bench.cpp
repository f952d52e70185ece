// Benchmark comparing the OpenMP kernels against their serial references:
// exact matrix products, Gram-matrix assembly, and the constructor's
// associativity sweep.

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <chrono>
#include <iostream>
#include <random>

#include "pstrace/algebra.hpp"
#include "pstrace/matrix.hpp"

using namespace pstrace;

namespace {

double ms_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

Mat random_mat(std::mt19937& rng, std::size_t r, std::size_t c, int mag) {
    std::uniform_int_distribution<int> num(-mag, mag), den(1, mag);
    Mat m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rat_frac(num(rng), den(rng));
    return m;
}

FiniteAlgebra matrix_algebra(std::size_t n) {
    std::vector<StructureTriple> s;
    auto idx = [n](std::size_t i, std::size_t j) { return n * i + j; };
    std::vector<std::string> labels(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) labels[idx(i, j)] = "e";
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l)
                    if (j == k) s.push_back({idx(i, j), idx(k, l), idx(i, l), Rat(1)});
    Vec unit = vec_zero(n * n);
    for (std::size_t i = 0; i < n; ++i) unit[idx(i, i)] = 1;
    return make_algebra(labels, s, unit);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::cout << "threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "threads: 1 (no OpenMP)\n";
#endif
    std::mt19937 rng(1);

    std::cout << "\nexact matrix product, random rationals (best of 3)\n";
    std::cout << "  size  mag  serial_ms  parallel_ms  speedup\n";
    for (auto [n, mag] : {std::pair<int, int>{32, 9}, {48, 9}, {64, 9}, {96, 9}}) {
        Mat x = random_mat(rng, n, n, mag), y = random_mat(rng, n, n, mag);
        double serial = 1e30, parallel = 1e30;
        Mat a(0, 0), b(0, 0);
        for (int rep = 0; rep < 3; ++rep) {
            auto t0 = std::chrono::steady_clock::now();
            a = mat_mul_serial(x, y);
            serial = std::min(serial, ms_since(t0));
            t0 = std::chrono::steady_clock::now();
            b = mat_mul(x, y);
            parallel = std::min(parallel, ms_since(t0));
        }
        if (!(a == b)) {
            std::cerr << "kernel mismatch\n";
            return 1;
        }
        std::printf("  %4d  %3d  %9.2f  %11.2f  %6.2fx\n", n, mag, serial, parallel,
                    serial / parallel);
    }

    std::cout << "\nassociativity sweep (structure-constant validation)\n";
    std::cout << "  dim  build_ms\n";
    for (std::size_t n : {3u, 4u, 5u}) {
        auto t0 = std::chrono::steady_clock::now();
        FiniteAlgebra a = matrix_algebra(n);
        std::printf("  %3zu  %8.2f\n", a.dim(), ms_since(t0));
    }

    std::cout << "\nGram matrix assembly (symmetric functional, M_n)\n";
    std::cout << "  dim  gram_ms\n";
    for (std::size_t n : {3u, 4u}) {
        FiniteAlgebra a = matrix_algebra(n);
        Vec tr = vec_zero(n * n);
        for (std::size_t i = 0; i < n; ++i) tr[n * i + i] = 1;
        LinearFunctional psi{&a, tr};
        auto t0 = std::chrono::steady_clock::now();
        auto res = is_nondegenerate(a, psi);
        std::printf("  %3zu  %7.2f  (nondegenerate: %s)\n", a.dim(), ms_since(t0),
                    res.nondegenerate ? "yes" : "no");
    }
    return 0;
}
