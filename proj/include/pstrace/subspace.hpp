#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pstrace/matrix.hpp"
#include "pstrace/rational.hpp"

namespace pstrace {

/// Subspace of Q^n stored as a reduced row-echelon basis, one vector per row.
/// The canonical form makes subspace equality a row-by-row data comparison.
class Subspace {
public:
    Subspace() : Subspace(0) {}
    explicit Subspace(std::size_t ambient_dim) : ambient_(ambient_dim), basis_(0, ambient_dim) {}

    /// Canonicalises an arbitrary spanning family.
    static Subspace span(std::size_t ambient_dim, const std::vector<Vec>& vectors);
    static Subspace full(std::size_t ambient_dim);

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    const Mat& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }
    Vec basis_vector(std::size_t i) const { return basis_.row(i); }

    bool contains(const Vec& v) const;

    /// Coordinates of v in the rref basis; nullopt when v is outside.
    std::optional<Vec> coordinates_of(const Vec& v) const;

    /// v expressed from coordinates: sum coords[i] * basis_vector(i).
    Vec from_coordinates(const Vec& coords) const;

    friend Subspace subspace_sum(const Subspace& s, const Subspace& t);
    friend Subspace subspace_intersection(const Subspace& s, const Subspace& t);

    friend bool operator==(const Subspace& s, const Subspace& t) {
        return s.ambient_ == t.ambient_ && s.basis_ == t.basis_;
    }

private:
    std::size_t ambient_;
    Mat basis_;  // rank x ambient, rref with zero rows dropped
    std::vector<std::size_t> pivots_;
};

/// Canonical basis of {v : m v = 0}.
Subspace nullspace(const Mat& m);

/// Functionals vanishing on the rows of s (as a subspace of the dual,
/// identified with Q^n via the dual basis).
Subspace annihilator(const Subspace& s);

Subspace subspace_sum(const Subspace& s, const Subspace& t);
Subspace subspace_intersection(const Subspace& s, const Subspace& t);

}  // namespace pstrace
