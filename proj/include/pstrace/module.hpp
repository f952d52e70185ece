#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pstrace/algebra.hpp"
#include "pstrace/decomp.hpp"

namespace pstrace {

/// Finite-dimensional left module over a FiniteAlgebra, presented by one
/// action matrix per algebra basis element (column-vector convention).
/// Construction verifies that the action respects the structure constants
/// and that the support idempotent (the unit, unless stated otherwise) acts
/// as the identity.
class LeftModule {
public:
    LeftModule(const FiniteAlgebra* alg, std::vector<Mat> action,
               std::optional<Vec> support_idempotent = std::nullopt);

    const FiniteAlgebra& algebra() const { return *alg_; }
    std::size_t dim() const { return dim_; }
    const Mat& basis_action(std::size_t i) const { return action_[i]; }
    Mat action_of(const Vec& x) const;
    const Vec& support() const { return support_; }

private:
    const FiniteAlgebra* alg_;
    std::size_t dim_;
    std::vector<Mat> action_;
    Vec support_;
};

using ModulePtr = std::shared_ptr<const LeftModule>;

ModulePtr make_module(const FiniteAlgebra& a, std::vector<Mat> action,
                      std::optional<Vec> support_idempotent = std::nullopt);

/// Morphism of left modules; construction verifies the intertwining
/// relations on a generating subset of the algebra basis.
struct ModuleMorphism {
    ModulePtr source, target;
    Mat matrix;  // target_dim x source_dim
};

ModuleMorphism make_morphism(ModulePtr source, ModulePtr target, Mat matrix);
ModuleMorphism compose(const ModuleMorphism& f, const ModuleMorphism& g);  // f after g

/// The cyclic projective module Ae, keeping the ambient embedding and the
/// right action of the corner eAe.
struct IdempotentModule {
    ModulePtr module;
    Element e;
    Subspace space;   // Ae inside the algebra
    CornerData corner;  // eAe with its corner algebra
    std::vector<Mat> right_corner_action;  // per corner basis element
    Vec e_in_module;  // coordinates of e itself in the module basis

    Vec ambient_of(const Vec& module_coords) const { return space.from_coordinates(module_coords); }
    Vec module_of(const Vec& ambient) const;
};

IdempotentModule module_from_idempotent(const FiniteAlgebra& a, const Element& e);

/// Canonical basis of Hom(M, N): the intertwiner solution space in reduced
/// echelon form (row-major vectorisation).
std::vector<ModuleMorphism> hom_space(ModulePtr m, ModulePtr n);

/// B = End(M)^op presented by structure constants on the canonical hom
/// basis, together with the right action of B on M.
struct EndAlgebraData {
    std::shared_ptr<const FiniteAlgebra> algebra;  // B
    ModulePtr module;                              // M
    std::vector<Mat> action;                       // basis morphisms acting on M
    Subspace hom_span;                             // vectorised morphism span

    Mat operator_of(const Vec& b_coords) const;
    Vec coords_of_operator(const Mat& t) const;  // must lie in the hom span
};

EndAlgebraData end_algebra(ModulePtr m);

struct DirectSum {
    ModulePtr module;
    std::vector<ModuleMorphism> inclusions;
    std::vector<ModuleMorphism> projections;
};

DirectSum direct_sum(const std::vector<ModulePtr>& summands);

/// Mp for an idempotent p in End(M)^op, with the splitting pair
/// inclusion : Mp -> M and projection : M -> Mp.
struct SummandModule {
    ModulePtr module;
    ModuleMorphism inclusion;
    ModuleMorphism projection;
};

SummandModule summand_by_idempotent(const EndAlgebraData& b, const Element& p);

struct QuotientModule {
    ModulePtr module;
    ModuleMorphism quotient_map;
    Mat section;  // quotient coords -> module coords, one choice of lift
};

/// Quotient by an action-invariant subspace.
QuotientModule quotient_module(ModulePtr m, const Subspace& sub);

/// Subspace rad(A) * M of the module.
Subspace radical_submodule(const LeftModule& m, const RadicalData& rad);

/// One projective cover Ae per equivalence class of primitive idempotents,
/// with the irreducible quotients Ae/rad(A)Ae.
struct TopData {
    UnitClasses classes;
    std::vector<IdempotentModule> covers;
    std::vector<QuotientModule> irreducibles;  // quotient of covers[c]
};

TopData top_and_irreducibles(const FiniteAlgebra& a);

struct ProjectivityCheck {
    bool projective = false;
    ModulePtr cover;           // direct sum of class covers matching top(M)
    std::vector<std::size_t> multiplicities;  // per class
    std::optional<ModuleMorphism> lift;  // cover -> M; the iso when projective
    std::string defect;                  // why not, when not projective
};

ProjectivityCheck is_projective(ModulePtr m, const TopData& top);

struct GeneratorCheck {
    bool projective_generator = false;
    ProjectivityCheck projectivity;
    std::vector<std::size_t> uncovered_classes;
};

GeneratorCheck is_projective_generator(ModulePtr m, const TopData& top);

/// Presentation of a projective generator M as (Ae)^(+n) p, where e is the
/// minimal generating idempotent and p = embedding o projection.
struct GeneratorPresentation {
    Element e;
    std::size_t n = 0;
    IdempotentModule ae;
    DirectSum power;             // (Ae)^(+n)
    EndAlgebraData btilde;       // End((Ae)^(+n))^op
    Element p;                   // idempotent of btilde
    ModuleMorphism embedding;    // M -> power
    ModuleMorphism projection;   // power -> M
};

GeneratorPresentation generator_presentation(ModulePtr m, const TopData& top);

}  // namespace pstrace
