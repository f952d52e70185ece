#pragma once

#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "pstrace/module.hpp"
#include "pstrace/trace.hpp"

namespace pstrace {

/// Graded right module over a unital base algebra: finitely many declared
/// blocks, each finite-dimensional and preserved by the right action.  A
/// conceptually infinite grading enters as the declared prefix tower plus a
/// stabilization bound after which no new irreducible tops appear.
struct GradedRightModule {
    std::shared_ptr<const FiniteAlgebra> base;
    std::vector<std::string> index_labels;
    struct Block {
        std::size_t dim = 0;
        std::vector<Mat> action;  // right action of each base basis element
    };
    std::vector<Block> blocks;
    std::optional<std::size_t> stabilization_bound;
};

/// Validates the right-module laws blockwise; throws InvalidModule.
void validate_graded(const GradedRightModule& g);

/// Finitely supported element of the block endomorphism algebra:
/// coordinates per supported (i, j) block, in the hom bases.
struct BlockElement {
    std::map<std::pair<std::size_t, std::size_t>, Vec> components;

    bool is_zero() const { return components.empty(); }
    void prune();
    friend bool operator==(const BlockElement& x, const BlockElement& y) {
        return x.components == y.components;
    }
};

/// Endomorphisms of a graded right module that vanish on all but finitely
/// many blocks, presented blockwise: hom(i, j) is the space of intertwiners
/// M(j) -> M(i), and composition is block-matrix multiplication.
class BlockAlgebra {
public:
    explicit BlockAlgebra(const GradedRightModule* graded);

    const GradedRightModule& graded() const { return *graded_; }
    std::size_t index_count() const { return graded_->index_labels.size(); }
    std::size_t hom_dim(std::size_t i, std::size_t j) const { return hom_[i][j].size(); }
    const std::vector<Mat>& hom_basis(std::size_t i, std::size_t j) const { return hom_[i][j]; }
    const Subspace& hom_span(std::size_t i, std::size_t j) const { return span_[i][j]; }

    BlockElement diagonal_idempotent(std::size_t i) const;
    /// Sum of the diagonal idempotents over an index set.
    BlockElement partial_unit(const std::vector<std::size_t>& indices) const;

    Mat component_matrix(const BlockElement& x, std::size_t i, std::size_t j) const;

private:
    const GradedRightModule* graded_;
    std::vector<std::vector<std::vector<Mat>>> hom_;
    std::vector<std::vector<Subspace>> span_;
};

BlockElement block_add(const BlockElement& x, const BlockElement& y);
BlockElement block_sub(const BlockElement& x, const BlockElement& y);
BlockElement block_scale(const Rat& c, const BlockElement& x);
BlockElement block_mul(const BlockAlgebra& a, const BlockElement& x, const BlockElement& y);
bool block_is_idempotent(const BlockAlgebra& a, const BlockElement& x);

/// Smallest idempotent of the declared family supporting x: e x e = x.
BlockElement support_idempotent(const BlockAlgebra& a, const BlockElement& x);

/// The finite corner over an index subset, as a structure-constant algebra
/// with unit the partial sum of diagonal idempotents.
struct CornerTruncation {
    std::shared_ptr<const FiniteAlgebra> algebra;
    std::vector<std::size_t> indices;
    struct BasisRef {
        std::size_t i, j, alpha;
    };
    std::vector<BasisRef> basis_refs;

    BlockElement to_block(const BlockAlgebra& a, const Vec& coords) const;
    /// Fails when the element has support outside the truncation.
    Vec from_block(const BlockElement& x) const;
};

CornerTruncation corner_truncation(const BlockAlgebra& a, const std::vector<std::size_t>& indices);

/// Right B-module structure on one column slab G(i) = (+)_{j in I} hom(i, j)
/// over the corner algebra, realised as a left module over its opposite.
ModulePtr column_slab_module(const BlockAlgebra& a, const CornerTruncation& corner,
                             const FiniteAlgebra& corner_op, std::size_t i);

/// One block of a graded module as a left module over the opposite base.
ModulePtr block_as_op_module(const GradedRightModule& g, const FiniteAlgebra& base_op,
                             std::size_t i);

struct GeneratingTruncation {
    std::vector<std::size_t> indices;  // smallest covering prefix I
    CornerTruncation corner;           // over I
    CornerTruncation probe;            // over the stabilization prefix
    Element e_in_probe;                // e_I inside the probe corner
    std::vector<std::size_t> coverage;  // per base irreducible class: covering block
};

/// Finds the smallest prefix whose block tops cover every irreducible right
/// module of the base, then validates it as a generating idempotent against
/// the declared probe truncation.
GeneratingTruncation find_generating_truncation(const BlockAlgebra& a);

/// Partial-isometry data tying every diagonal primitive of every declared
/// block to a primitive part of the generating corner: the evaluation scheme
/// for symmetric functionals pulled back from the corner.
struct BlockTraceData {
    GeneratingTruncation truncation;
    // per declared index: witness pairs (u, v) with u v = diagonal part and
    // v u = a part of the generating idempotent
    std::vector<std::vector<std::pair<BlockElement, BlockElement>>> witnesses;
};

BlockTraceData block_trace_data(const BlockAlgebra& a);

/// Symmetric functional on the block algebra, represented by its corner
/// restriction and evaluated through the witness sums.
struct BlockFunctional {
    LinearFunctional corner_functional;  // on truncation.corner.algebra
    const BlockTraceData* data = nullptr;

    Rat evaluate(const BlockAlgebra& a, const BlockElement& x) const;
};

std::vector<BlockFunctional> block_slf_basis(const BlockAlgebra& a, const BlockTraceData& data);

struct BlockNondegeneracy {
    bool nondegenerate = false;
    std::optional<std::pair<std::size_t, std::size_t>> failing_block;
};

/// Blockwise pairing criterion: psi is non-degenerate iff every pairing
/// hom(i,j) x hom(j,i) -> Q given by psi(x y) has trivial left kernel.
BlockNondegeneracy block_is_nondegenerate(const BlockAlgebra& a, const BlockFunctional& psi);

}  // namespace pstrace
