#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pstrace/rational.hpp"

namespace pstrace {

/// Dense exact-rational matrix, row major.  Immutable by convention once
/// built (the algebra layers never mutate shared matrices).
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}

    static Mat identity(std::size_t n);
    static Mat from_rows(const std::vector<Vec>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Vec row(std::size_t i) const;
    Vec col(std::size_t j) const;
    void set_row(std::size_t i, const Vec& v);

    Mat transpose() const;
    bool is_zero() const;
    bool is_identity() const;

    /// Flattened row-major copy of the entries.
    Vec flatten() const { return a_; }

    friend bool operator==(const Mat& x, const Mat& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

    std::string str() const;

private:
    std::size_t rows_, cols_;
    std::vector<Rat> a_;
};

Mat mat_add(const Mat& x, const Mat& y);
Mat mat_sub(const Mat& x, const Mat& y);
Mat mat_scale(const Rat& c, const Mat& x);

/// Exact matrix product.  Parallelises over output rows when the work is
/// large enough to pay for the fork.
Mat mat_mul(const Mat& x, const Mat& y);

/// Single-threaded reference product, kept for tests and the benchmark.
Mat mat_mul_serial(const Mat& x, const Mat& y);

/// y = m * v (column-vector convention).
Vec mat_apply(const Mat& m, const Vec& v);

struct Echelon {
    Mat m;                            // reduced row-echelon form, same shape as input
    std::size_t rank = 0;             // number of nonzero rows
    std::vector<std::size_t> pivots;  // pivot column per nonzero row, strictly increasing
};

/// Unique reduced row-echelon form (pivots 1, pivot columns elsewhere 0).
Echelon rref(Mat m);

/// Particular exact solution of m*x = rhs, or nullopt when inconsistent.
std::optional<Vec> solve(const Mat& m, const Vec& rhs);

/// Inverse of a square matrix, or nullopt when singular.
std::optional<Mat> inverse(const Mat& m);

std::size_t rank_of(const Mat& m);

}  // namespace pstrace
