#include "pstrace/matrix.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pstrace/errors.hpp"

namespace pstrace {

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
    Mat m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
    return m;
}

Vec Mat::row(std::size_t i) const {
    Vec v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = at(i, j);
    return v;
}

Vec Mat::col(std::size_t j) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
}

void Mat::set_row(std::size_t i, const Vec& v) {
    if (v.size() != cols_) throw DimensionMismatch("Mat::set_row");
    for (std::size_t j = 0; j < cols_; ++j) at(i, j) = v[j];
}

Mat Mat::transpose() const {
    Mat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

bool Mat::is_zero() const {
    for (const auto& x : a_)
        if (sgn(x) != 0) return false;
    return true;
}

bool Mat::is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(i, j) != Rat(i == j ? 1 : 0)) return false;
    return true;
}

std::string Mat::str() const {
    std::string out = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i) out += "; ";
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) out += ",";
            out += rat_str(at(i, j));
        }
    }
    return out + "]";
}

Mat mat_add(const Mat& x, const Mat& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols()) throw DimensionMismatch("mat_add");
    Mat out(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) out.at(i, j) = x.at(i, j) + y.at(i, j);
    return out;
}

Mat mat_sub(const Mat& x, const Mat& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols()) throw DimensionMismatch("mat_sub");
    Mat out(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) out.at(i, j) = x.at(i, j) - y.at(i, j);
    return out;
}

Mat mat_scale(const Rat& c, const Mat& x) {
    Mat out(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j)
            if (sgn(x.at(i, j)) != 0) out.at(i, j) = c * x.at(i, j);
    return out;
}

namespace {

inline void mul_row(const Mat& x, const Mat& y, Mat& out, std::size_t i) {
    for (std::size_t k = 0; k < x.cols(); ++k) {
        const Rat& xik = x.at(i, k);
        if (sgn(xik) == 0) continue;
        for (std::size_t j = 0; j < y.cols(); ++j) {
            const Rat& ykj = y.at(k, j);
            if (sgn(ykj) != 0) out.at(i, j) += xik * ykj;
        }
    }
}

}  // namespace

Mat mat_mul_serial(const Mat& x, const Mat& y) {
    if (x.cols() != y.rows()) throw DimensionMismatch("mat_mul");
    Mat out(x.rows(), y.cols());
    for (std::size_t i = 0; i < x.rows(); ++i) mul_row(x, y, out, i);
    return out;
}

Mat mat_mul(const Mat& x, const Mat& y) {
    if (x.cols() != y.rows()) throw DimensionMismatch("mat_mul");
    const std::size_t work = x.rows() * x.cols() * y.cols();
#ifdef _OPENMP
    // below ~64k scalar operations the fork costs more than it saves
    if (work >= 65536 && x.rows() >= 2) {
        Mat out(x.rows(), y.cols());
#pragma omp parallel for schedule(static)
        for (long i = 0; i < static_cast<long>(x.rows()); ++i)
            mul_row(x, y, out, static_cast<std::size_t>(i));
        return out;
    }
#endif
    (void)work;
    return mat_mul_serial(x, y);
}

Vec mat_apply(const Mat& m, const Vec& v) {
    if (m.cols() != v.size()) throw DimensionMismatch("mat_apply");
    Vec out(m.rows(), Rat(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (sgn(m.at(i, j)) != 0 && sgn(v[j]) != 0) out[i] += m.at(i, j) * v[j];
    return out;
}

Echelon rref(Mat m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (sgn(m.at(i, c)) != 0) {
                sel = i;
                break;
            }
        if (sel == rows) continue;
        if (sel != r)
            for (std::size_t j = 0; j < cols; ++j) swap(m.at(sel, j), m.at(r, j));
        const Rat inv = Rat(1) / m.at(r, c);
        for (std::size_t j = c; j < cols; ++j)
            if (sgn(m.at(r, j)) != 0) m.at(r, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            const Rat f = m.at(i, c);
            if (sgn(f) == 0) continue;
            for (std::size_t j = c; j < cols; ++j)
                if (sgn(m.at(r, j)) != 0) m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return Echelon{std::move(m), r, std::move(pivots)};
}

std::optional<Vec> solve(const Mat& m, const Vec& rhs) {
    if (rhs.size() != m.rows()) throw DimensionMismatch("solve: rhs length");
    Mat aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = rhs[i];
    }
    Echelon e = rref(std::move(aug));
    Vec x(m.cols(), Rat(0));
    for (std::size_t i = 0; i < e.rank; ++i) {
        if (e.pivots[i] == m.cols()) return std::nullopt;  // pivot in rhs column
        x[e.pivots[i]] = e.m.at(i, m.cols());
    }
    return x;
}

std::optional<Mat> inverse(const Mat& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("inverse: square required");
    const std::size_t n = m.rows();
    Mat aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    Echelon e = rref(std::move(aug));
    if (e.rank != n || e.pivots.back() >= n) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i)
        if (e.pivots[i] != i) return std::nullopt;
    Mat inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = e.m.at(i, n + j);
    return inv;
}

std::size_t rank_of(const Mat& m) { return rref(m).rank; }

}  // namespace pstrace
