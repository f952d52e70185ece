#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "pstrace/module.hpp"

namespace pstrace {

/// Value in B/[B,B]: a representative compared modulo the commutator span.
struct QuotientValue {
    Vec representative;
    Subspace modulo;
};

bool quotient_equal(const QuotientValue& x, const QuotientValue& y);

/// Left coordinate system of an A-B bimodule M: right-B-linear pairs
/// alpha_i : B -> M and acheck_i : M -> B whose composites sum to the
/// identity of M.
struct LeftCoordinateSystem {
    ModulePtr bimodule;                          // M as a left A-module
    std::shared_ptr<const FiniteAlgebra> b;      // B
    std::vector<Mat> right_action;               // B basis elements acting on M
    std::vector<std::pair<Mat, Mat>> pairs;      // (alpha_i, acheck_i)
    std::vector<EquivalenceWitness> witnesses;   // set by the partial-isometry build

    void validate() const;
};

/// Partial-isometry construction on the bimodule Ae over eAe: each member of
/// the diagonal family is tied to an equivalent part of e, and the pair maps
/// are left multiplications by the witnesses.
LeftCoordinateSystem left_coordinate_system(const FiniteAlgebra& a, const IdempotentModule& ae,
                                            const std::vector<Element>& family,
                                            bool match_last = false);

/// Coordinate system on M^(+n) over End(M^(+n))^op induced from one on M;
/// `row` selects which block row carries the data (any choice works, which
/// the independence checks exploit).
LeftCoordinateSystem lcs_power(const LeftCoordinateSystem& base, const IdempotentModule& ae,
                               const DirectSum& power, const EndAlgebraData& bn,
                               std::size_t row = 0);

/// Coordinate system on M over End(M)^op from one on an ambient module,
/// through a generating idempotent p of the ambient endomorphism algebra.
/// M is realised as the p-summand by the splitting pair
/// embedding : M -> ambient, projection : ambient -> M with
/// embedding o projection = (right action of p).
LeftCoordinateSystem lcs_summand(const LeftCoordinateSystem& big, const EndAlgebraData& btilde,
                                 const Element& p, const Mat& embedding, const Mat& projection,
                                 ModulePtr m, const EndAlgebraData& bprime);

/// The same system with every pair listed twice and the check maps halved;
/// a cheap, always-available second coordinate system.
LeftCoordinateSystem lcs_duplicate_halved(const LeftCoordinateSystem& lcs);

/// B-trace of x: sum acheck_i (x .) alpha_i evaluated at 1_B, modulo [B,B].
QuotientValue btrace(const LeftCoordinateSystem& lcs, const Element& x);

Rat pseudotrace_left(const LeftCoordinateSystem& lcs, const LinearFunctional& phi,
                     const Element& x);

/// The whole functional Tr^phi on A.
LinearFunctional pseudotrace_left_functional(const LeftCoordinateSystem& lcs,
                                             const LinearFunctional& phi);

/// Pullback of a symmetric functional along the corner inclusion eAe -> A.
LinearFunctional restrict_slf(const LinearFunctional& psi, const CornerData& cd);

/// Right coordinate system: left-A-linear pairs beta_j : Ae -> M and
/// bcheck_j : M -> Ae with sum beta_j bcheck_j = id_M.
struct RightCoordinateSystem {
    ModulePtr bimodule;  // M
    IdempotentModule ae;  // domain idempotent data
    std::vector<std::pair<Mat, Mat>> pairs;  // (beta_j, bcheck_j)

    void validate() const;
};

/// Identity system on M = Ae itself.
RightCoordinateSystem rcs_identity(const IdempotentModule& ae);

/// System extracted from a generator presentation M ~ (Ae)^(+n) p.
RightCoordinateSystem rcs_from_presentation(ModulePtr m, const GeneratorPresentation& gp);

/// Canonical extension to a larger domain idempotent f >= e.
RightCoordinateSystem rcs_extend(const RightCoordinateSystem& rcs, const IdempotentModule& af);

/// System on the summand Mp obtained by composing with the splitting pair.
RightCoordinateSystem rcs_compose_summand(const RightCoordinateSystem& rcs,
                                          const SummandModule& sm);

RightCoordinateSystem rcs_duplicate_halved(const RightCoordinateSystem& rcs);

Rat pseudotrace_right(const RightCoordinateSystem& rcs, const EndAlgebraData& b,
                      const LinearFunctional& psi, const Element& y);

/// The whole functional on B = End(M)^op.
LinearFunctional pseudotrace_right_functional(const RightCoordinateSystem& rcs,
                                              const EndAlgebraData& b,
                                              const LinearFunctional& psi);

/// Corner coordinates of the eAe element representing an endomorphism block
/// of Ae (an intertwiner of Ae is right multiplication by its value at e).
Vec corner_element_of_block(const IdempotentModule& ae, const Mat& block);

/// Functional on End((Ae)^(+n))^op assembled independently of any coordinate
/// system: operator T |-> sum_s phi(corner element of the diagonal block
/// T_ss).  With phi = psi restricted to the corner this is the expected
/// closed form of the right pseudotrace on a power module.
LinearFunctional corner_tensor_functional(const IdempotentModule& ae, const EndAlgebraData& bn,
                                          std::size_t n, const LinearFunctional& phi_on_corner);

/// kappa : End(M)^op -> End(ambient)^op induced by a splitting pair; its
/// image is the corner p * End(ambient)^op * p.
Mat summand_embedding_matrix(const Mat& embedding, const Mat& projection,
                             const EndAlgebraData& big, const EndAlgebraData& small);

}  // namespace pstrace
