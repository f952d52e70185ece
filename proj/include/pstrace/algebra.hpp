#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pstrace/matrix.hpp"
#include "pstrace/rational.hpp"
#include "pstrace/subspace.hpp"

namespace pstrace {

class FiniteAlgebra;

/// Element of a finite-dimensional algebra, as coordinates over its basis.
struct Element {
    const FiniteAlgebra* algebra = nullptr;
    Vec coords;

    bool is_zero() const { return vec_is_zero(coords); }
    friend bool operator==(const Element& x, const Element& y) {
        return x.algebra == y.algebra && x.coords == y.coords;
    }
};

/// Linear functional, as coordinates over the dual basis.  Functional
/// equality is coordinate equality.
struct LinearFunctional {
    const FiniteAlgebra* algebra = nullptr;
    Vec dual_coords;

    friend bool operator==(const LinearFunctional& x, const LinearFunctional& y) {
        return x.algebra == y.algebra && x.dual_coords == y.dual_coords;
    }
};

/// Sparse structure-constant entry: coefficient of b_k in the product b_i b_j.
struct StructureTriple {
    std::size_t i, j, k;
    Rat c;
};

/// Finite-dimensional associative algebra presented by exact rational
/// structure constants.  The constructor verifies associativity on every
/// basis triple and the unit law when a unit is supplied.
class FiniteAlgebra {
public:
    FiniteAlgebra(std::vector<std::string> labels, std::vector<Vec> table,
                  std::optional<Vec> unit);

    std::size_t dim() const { return dim_; }
    const std::vector<std::string>& labels() const { return labels_; }
    bool is_unital() const { return unit_.has_value(); }
    const Vec& unit_coords() const;

    /// Coordinates of b_i * b_j.
    const Vec& product(std::size_t i, std::size_t j) const { return table_[i * dim_ + j]; }

    Vec mul(const Vec& x, const Vec& y) const;

    /// Matrix of y |-> x*y in the basis.
    Mat left_mult_matrix(const Vec& x) const;
    /// Matrix of y |-> y*x in the basis.
    Mat right_mult_matrix(const Vec& x) const;

    Element element(Vec coords) const;
    Element basis_element(std::size_t i) const;
    Element zero() const { return Element{this, vec_zero(dim_)}; }
    Element unit() const;

private:
    std::vector<std::string> labels_;
    std::size_t dim_;
    std::vector<Vec> table_;  // dim*dim, row-major
    std::optional<Vec> unit_;
};

/// Indices of a subset of the basis that generates the whole algebra
/// multiplicatively; intertwiner solvers only need constraints for these.
std::vector<std::size_t> generating_subset(const FiniteAlgebra& a);

/// Builds and validates an algebra from sparse structure constants.
FiniteAlgebra make_algebra(std::vector<std::string> labels,
                           const std::vector<StructureTriple>& structure,
                           std::optional<Vec> unit = std::nullopt);

/// The opposite algebra (products reversed), same labels and unit.
FiniteAlgebra opposite_algebra(const FiniteAlgebra& a);

/// A + Q*1 with an adjoined unit as the last basis vector.
FiniteAlgebra unitalize(const FiniteAlgebra& a);

Element mul(const Element& x, const Element& y);
Element add(const Element& x, const Element& y);
Element sub(const Element& x, const Element& y);
Element scale(const Rat& c, const Element& x);

bool is_idempotent(const Element& e);
/// e <= f in the idempotent order: ef = fe = e.
bool idempotent_leq(const Element& e, const Element& f);
bool are_orthogonal(const Element& e, const Element& f);

struct PartialIsometryCheck {
    bool ok = false;
    Element p, q;  // p = vu, q = uv
};

/// Checks that (u,v) is a pair of partial isometries: p=vu and q=uv are
/// idempotent, u = q u p and v = p v q.
PartialIsometryCheck is_partial_isometry_pair(const Element& u, const Element& v);

/// Peirce corner eAf, with coordinate bridges between the corner span and the
/// ambient algebra.  When e == f, the corner carries its own algebra
/// structure with unit e.
struct CornerData {
    Element e, f;
    Subspace space;  // eAf inside the ambient algebra
    Mat inclusion;   // ambient_dim x corner_dim
    Mat projection;  // corner_dim x ambient_dim, a left inverse of inclusion on eAf
    std::shared_ptr<const FiniteAlgebra> corner_algebra;  // present iff e == f

    std::size_t dim() const { return space.dim(); }
    Vec to_corner(const Vec& ambient) const;
    Vec to_ambient(const Vec& corner_coords) const;
};

CornerData corner(const FiniteAlgebra& a, const Element& e, const Element& f);

/// Span of all basis commutators b_i b_j - b_j b_i.
Subspace commutator_subspace(const FiniteAlgebra& a);

/// Canonical basis of the annihilator of the commutator span: the symmetric
/// linear functionals.
std::vector<LinearFunctional> slf_basis(const FiniteAlgebra& a);

bool is_symmetric(const LinearFunctional& psi);

Rat evaluate(const LinearFunctional& psi, const Vec& x);
Rat evaluate(const LinearFunctional& psi, const Element& x);

struct NondegeneracyResult {
    bool nondegenerate = false;
    Subspace kernel;  // {x : psi(xA) = 0} as a subspace of A
};

/// Gram-matrix non-degeneracy test for a symmetric functional on a unital
/// algebra.
NondegeneracyResult is_nondegenerate(const FiniteAlgebra& a, const LinearFunctional& psi);

}  // namespace pstrace
