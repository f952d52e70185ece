#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "pstrace/algebra.hpp"

namespace pstrace {

/// Jacobson radical of a unital algebra (char-0 trace-form criterion),
/// together with the semisimple quotient and coordinate bridges to it.
struct RadicalData {
    Subspace radical;
    std::size_t nilpotency_index = 1;  // smallest m with radical^m = 0
    std::shared_ptr<const FiniteAlgebra> quotient;
    Mat projection;  // quotient_dim x dim
    Mat section;     // dim x quotient_dim, projection * section = id
};

RadicalData radical(const FiniteAlgebra& a);

/// Full orthogonal primitive decomposition of the unit of a split semisimple
/// algebra.  Throws NotSplit when a corner turns out to be a division algebra
/// larger than the ground field.
std::vector<Element> split_semisimple_unit(const FiniteAlgebra& ss);

struct WedderburnBlock {
    std::size_t matrix_size = 0;
    Element primitive;  // one primitive idempotent inside the block
};

struct WedderburnData {
    std::vector<Element> central_idempotents;
    std::vector<WedderburnBlock> blocks;
};

/// Central primitive idempotents and per-block data of a split semisimple
/// algebra; verifies each block is a full matrix algebra over the rationals.
WedderburnData wedderburn_split(const FiniteAlgebra& ss);

/// Newton-style lift e <- 3e^2 - 2e^3 of an idempotent-mod-radical to an
/// honest idempotent congruent to it.
Element lift_idempotent(const FiniteAlgebra& a, const Element& approx, const RadicalData& rad);

struct PrimitiveDecomposition {
    Element of;
    std::vector<Element> parts;  // pairwise orthogonal primitives summing to `of`
};

PrimitiveDecomposition primitive_orthogonal_decomposition(const FiniteAlgebra& a,
                                                          const Element& e);

bool is_primitive(const FiniteAlgebra& a, const Element& e);

/// Partial-isometry witness (u, v): u in eAf, v in fAe, uv = e, vu = f.
struct EquivalenceWitness {
    Element u, v;
};

std::optional<EquivalenceWitness> idempotents_equivalent(const FiniteAlgebra& a, const Element& e,
                                                         const Element& f);

struct GeneratingCheck {
    bool generating = false;
    std::vector<Element> missing;  // primitive parts of the unit with no match in e
};

GeneratingCheck is_generating_idempotent(const FiniteAlgebra& a, const Element& e);

/// Primitive parts of the unit grouped into equivalence classes, with one
/// representative per class and their sum (the minimal generating idempotent
/// this library uses by default).
struct UnitClasses {
    PrimitiveDecomposition unit_parts;
    std::vector<std::vector<std::size_t>> classes;  // indices into unit_parts.parts
    std::vector<Element> representatives;
    Element minimal_generating;
};

UnitClasses unit_equivalence_classes(const FiniteAlgebra& a);

/// Monic minimal polynomial of a square matrix, coefficients by ascending
/// degree.
Vec minimal_polynomial(const Mat& m);

std::string poly_str(const Vec& coeffs);

}  // namespace pstrace
