#pragma once

#include <optional>
#include <string>

#include "pstrace/report.hpp"
#include "pstrace/spec_io.hpp"

namespace pstrace {

/// Runs every structural check on a finite structure-constant entry:
/// decomposition soundness, the corner SLF round trip, coordinate-system
/// independence, trace symmetry, the equivalence round trips through a list
/// of projective generators, the restriction identities, the multiplicity
/// closed form, non-degeneracy transfer, classification, and the hom/corner
/// dimension cross-checks.
Report verify_finite_entry(const std::string& name, const FiniteAlgebra& a);

/// Graded analogue: block axioms, corner compatibility, generating
/// truncation, blockwise SLF data with corner independence, the dense-trace
/// cross-check, blockwise non-degeneracy, and blockwise classification.
Report verify_graded_entry(const std::string& name, const GradedRightModule& g);

Report verify_entry(const AlgebraSpec& spec);

/// Decomposition summary for the CLI: radical, primitive parts, equivalence
/// classes, generating status of the given idempotent.
Report decompose_report(const std::string& name, const FiniteAlgebra& a, const Element& e);

/// SLF summary for the CLI: dimensions, corner restriction, round trip.
Report slf_report(const AlgebraSpec& spec, const std::optional<std::string>& corner_coords);

/// First symmetric functional with invertible Gram matrix found by a
/// deterministic sweep over small combinations of the SLF basis.
std::optional<LinearFunctional> find_nondegenerate_slf(const FiniteAlgebra& a);

/// First nonzero symmetric functional with a singular Gram matrix, if any.
std::optional<LinearFunctional> find_degenerate_nonzero_slf(const FiniteAlgebra& a);

/// Common kernel of the Gram matrices over the whole SLF space.  Nonzero
/// certifies that no symmetric functional on this algebra is non-degenerate.
Subspace common_gram_kernel(const FiniteAlgebra& a);

}  // namespace pstrace
