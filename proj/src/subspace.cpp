#include "pstrace/subspace.hpp"

#include "pstrace/errors.hpp"

namespace pstrace {

Subspace Subspace::span(std::size_t ambient_dim, const std::vector<Vec>& vectors) {
    for (const auto& v : vectors)
        if (v.size() != ambient_dim) throw DimensionMismatch("Subspace::span");
    Echelon e = rref(Mat::from_rows(vectors, ambient_dim));
    Subspace s(ambient_dim);
    s.basis_ = Mat(e.rank, ambient_dim);
    for (std::size_t i = 0; i < e.rank; ++i) s.basis_.set_row(i, e.m.row(i));
    s.pivots_ = e.pivots;
    return s;
}

Subspace Subspace::full(std::size_t ambient_dim) {
    Subspace s(ambient_dim);
    s.basis_ = Mat::identity(ambient_dim);
    for (std::size_t i = 0; i < ambient_dim; ++i) s.pivots_.push_back(i);
    return s;
}

bool Subspace::contains(const Vec& v) const { return coordinates_of(v).has_value(); }

std::optional<Vec> Subspace::coordinates_of(const Vec& v) const {
    if (v.size() != ambient_) throw DimensionMismatch("Subspace::coordinates_of");
    // In rref the coordinate along basis row r is just v at the pivot column.
    Vec coords(dim(), Rat(0));
    Vec residue = v;
    for (std::size_t r = 0; r < dim(); ++r) {
        const Rat c = residue[pivots_[r]];
        if (sgn(c) == 0) continue;
        coords[r] = c;
        for (std::size_t j = 0; j < ambient_; ++j)
            if (sgn(basis_.at(r, j)) != 0) residue[j] -= c * basis_.at(r, j);
    }
    if (!vec_is_zero(residue)) return std::nullopt;
    return coords;
}

Vec Subspace::from_coordinates(const Vec& coords) const {
    if (coords.size() != dim()) throw DimensionMismatch("Subspace::from_coordinates");
    Vec v(ambient_, Rat(0));
    for (std::size_t r = 0; r < dim(); ++r)
        if (sgn(coords[r]) != 0) vec_axpy(v, coords[r], basis_.row(r));
    return v;
}

Subspace nullspace(const Mat& m) {
    Echelon e = rref(m);
    const std::size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        Vec v(n, Rat(0));
        v[c] = 1;
        for (std::size_t r = 0; r < e.rank; ++r) v[e.pivots[r]] = -e.m.at(r, c);
        basis.push_back(std::move(v));
    }
    return Subspace::span(n, basis);
}

Subspace annihilator(const Subspace& s) { return nullspace(s.basis()); }

Subspace subspace_sum(const Subspace& s, const Subspace& t) {
    if (s.ambient_ != t.ambient_) throw DimensionMismatch("subspace_sum");
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < s.dim(); ++i) rows.push_back(s.basis_vector(i));
    for (std::size_t i = 0; i < t.dim(); ++i) rows.push_back(t.basis_vector(i));
    return Subspace::span(s.ambient_, rows);
}

Subspace subspace_intersection(const Subspace& s, const Subspace& t) {
    if (s.ambient_ != t.ambient_) throw DimensionMismatch("subspace_intersection");
    // Intersection = vectors satisfying the annihilator constraints of both.
    const Subspace cs = annihilator(s);
    const Subspace ct = annihilator(t);
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < cs.dim(); ++i) rows.push_back(cs.basis_vector(i));
    for (std::size_t i = 0; i < ct.dim(); ++i) rows.push_back(ct.basis_vector(i));
    return nullspace(Mat::from_rows(rows, s.ambient_));
}

}  // namespace pstrace
