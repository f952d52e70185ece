#include "pstrace/block_algebra.hpp"

#include <algorithm>

#include "pstrace/errors.hpp"

namespace pstrace {

void validate_graded(const GradedRightModule& g) {
    if (!g.base || !g.base->is_unital()) throw InvalidModule("graded module needs a unital base");
    const FiniteAlgebra& b = *g.base;
    if (g.blocks.size() != g.index_labels.size())
        throw InvalidModule("one block per index label required");
    for (const auto& blk : g.blocks) {
        if (blk.action.size() != b.dim())
            throw InvalidModule("one action matrix per base basis element required");
        for (const Mat& m : blk.action)
            if (m.rows() != blk.dim || m.cols() != blk.dim)
                throw InvalidModule("block action matrix shape");
        // right module law: T_{x y} = T_y T_x on basis elements
        for (std::size_t i = 0; i < b.dim(); ++i)
            for (std::size_t j = 0; j < b.dim(); ++j) {
                Mat rhs = mat_mul(blk.action[j], blk.action[i]);
                Mat lhs(blk.dim, blk.dim);
                const Vec& c = b.product(i, j);
                for (std::size_t k = 0; k < b.dim(); ++k)
                    if (sgn(c[k]) != 0) lhs = mat_add(lhs, mat_scale(c[k], blk.action[k]));
                if (!(lhs == rhs)) throw InvalidModule("block action violates the base structure");
            }
        Mat unit_op(blk.dim, blk.dim);
        const Vec& u = b.unit_coords();
        for (std::size_t k = 0; k < b.dim(); ++k)
            if (sgn(u[k]) != 0) unit_op = mat_add(unit_op, mat_scale(u[k], blk.action[k]));
        if (!unit_op.is_identity()) throw InvalidModule("base unit must act as the identity");
    }
}

void BlockElement::prune() {
    for (auto it = components.begin(); it != components.end();)
        it = vec_is_zero(it->second) ? components.erase(it) : std::next(it);
}

BlockAlgebra::BlockAlgebra(const GradedRightModule* graded) : graded_(graded) {
    validate_graded(*graded_);
    const std::size_t n = index_count();
    hom_.assign(n, std::vector<std::vector<Mat>>(n));
    span_.assign(n, std::vector<Subspace>(n));
    const FiniteAlgebra& b = *graded_->base;
    const auto gens = generating_subset(b);
    // hom(i, j) = right-B intertwiners M(j) -> M(i), solved independently
    // per pair
#pragma omp parallel for collapse(2) schedule(dynamic) if (n >= 3)
    for (long ii = 0; ii < static_cast<long>(n); ++ii)
        for (long jj = 0; jj < static_cast<long>(n); ++jj) {
            const std::size_t i = static_cast<std::size_t>(ii), j = static_cast<std::size_t>(jj);
            const std::size_t di = graded_->blocks[i].dim, dj = graded_->blocks[j].dim;
            Mat sys(gens.size() * di * dj, di * dj);
            std::size_t row = 0;
            for (std::size_t g : gens) {
                const Mat& tj = graded_->blocks[j].action[g];
                const Mat& ti = graded_->blocks[i].action[g];
                for (std::size_t r = 0; r < di; ++r)
                    for (std::size_t c = 0; c < dj; ++c) {
                        for (std::size_t k = 0; k < dj; ++k)
                            if (sgn(tj.at(k, c)) != 0) sys.at(row, r * dj + k) += tj.at(k, c);
                        for (std::size_t k = 0; k < di; ++k)
                            if (sgn(ti.at(r, k)) != 0) sys.at(row, k * dj + c) -= ti.at(r, k);
                        ++row;
                    }
            }
            const Subspace sols = nullspace(sys);
            span_[i][j] = sols;
            for (std::size_t s = 0; s < sols.dim(); ++s) {
                const Vec v = sols.basis_vector(s);
                Mat x(di, dj);
                for (std::size_t r = 0; r < di; ++r)
                    for (std::size_t c = 0; c < dj; ++c) x.at(r, c) = v[r * dj + c];
                hom_[i][j].push_back(std::move(x));
            }
        }
}

BlockElement BlockAlgebra::diagonal_idempotent(std::size_t i) const {
    BlockElement e;
    const std::size_t d = graded_->blocks[i].dim;
    if (d == 0) return e;
    auto coords = span_[i][i].coordinates_of(Mat::identity(d).flatten());
    if (!coords) throw InternalError("identity is not an intertwiner of its own block");
    e.components[{i, i}] = *coords;
    e.prune();
    return e;
}

BlockElement BlockAlgebra::partial_unit(const std::vector<std::size_t>& indices) const {
    BlockElement e;
    for (std::size_t i : indices) e = block_add(e, diagonal_idempotent(i));
    return e;
}

Mat BlockAlgebra::component_matrix(const BlockElement& x, std::size_t i, std::size_t j) const {
    Mat out(graded_->blocks[i].dim, graded_->blocks[j].dim);
    auto it = x.components.find({i, j});
    if (it == x.components.end()) return out;
    for (std::size_t s = 0; s < it->second.size(); ++s)
        if (sgn(it->second[s]) != 0) out = mat_add(out, mat_scale(it->second[s], hom_[i][j][s]));
    return out;
}

BlockElement block_add(const BlockElement& x, const BlockElement& y) {
    BlockElement out = x;
    for (const auto& [k, v] : y.components) {
        auto it = out.components.find(k);
        if (it == out.components.end())
            out.components[k] = v;
        else
            it->second = vec_add(it->second, v);
    }
    out.prune();
    return out;
}

BlockElement block_sub(const BlockElement& x, const BlockElement& y) {
    return block_add(x, block_scale(Rat(-1), y));
}

BlockElement block_scale(const Rat& c, const BlockElement& x) {
    BlockElement out;
    if (sgn(c) == 0) return out;
    for (const auto& [k, v] : x.components) out.components[k] = vec_scale(c, v);
    out.prune();
    return out;
}

BlockElement block_mul(const BlockAlgebra& a, const BlockElement& x, const BlockElement& y) {
    BlockElement out;
    for (const auto& [kx, vx] : x.components)
        for (const auto& [ky, vy] : y.components) {
            if (kx.second != ky.first) continue;
            const Mat prod = mat_mul(a.component_matrix(x, kx.first, kx.second),
                                     a.component_matrix(y, ky.first, ky.second));
            auto coords = a.hom_span(kx.first, ky.second).coordinates_of(prod.flatten());
            if (!coords) throw InternalError("block composition left the hom span");
            auto it = out.components.find({kx.first, ky.second});
            if (it == out.components.end())
                out.components[{kx.first, ky.second}] = *coords;
            else
                it->second = vec_add(it->second, *coords);
        }
    out.prune();
    return out;
}

bool block_is_idempotent(const BlockAlgebra& a, const BlockElement& x) {
    return block_mul(a, x, x) == x;
}

BlockElement support_idempotent(const BlockAlgebra& a, const BlockElement& x) {
    std::vector<std::size_t> idx;
    for (const auto& [k, v] : x.components) {
        idx.push_back(k.first);
        idx.push_back(k.second);
    }
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    return a.partial_unit(idx);
}

BlockElement CornerTruncation::to_block(const BlockAlgebra& a, const Vec& coords) const {
    BlockElement out;
    if (coords.size() != basis_refs.size()) throw DimensionMismatch("corner coordinates");
    for (std::size_t s = 0; s < coords.size(); ++s) {
        if (sgn(coords[s]) == 0) continue;
        const auto& ref = basis_refs[s];
        auto key = std::make_pair(ref.i, ref.j);
        auto it = out.components.find(key);
        if (it == out.components.end()) {
            Vec v(a.hom_dim(ref.i, ref.j), Rat(0));
            v[ref.alpha] = coords[s];
            out.components[key] = std::move(v);
        } else {
            it->second[ref.alpha] += coords[s];
        }
    }
    out.prune();
    return out;
}

Vec CornerTruncation::from_block(const BlockElement& x) const {
    Vec out(basis_refs.size(), Rat(0));
    std::map<std::pair<std::size_t, std::size_t>, bool> seen;
    for (std::size_t s = 0; s < basis_refs.size(); ++s) {
        const auto& ref = basis_refs[s];
        auto it = x.components.find({ref.i, ref.j});
        if (it != x.components.end()) {
            out[s] = it->second[ref.alpha];
            seen[{ref.i, ref.j}] = true;
        }
    }
    for (const auto& [k, v] : x.components)
        if (!seen.count(k)) throw PreconditionFailed("element has support outside the truncation");
    return out;
}

CornerTruncation corner_truncation(const BlockAlgebra& a, const std::vector<std::size_t>& indices) {
    CornerTruncation ct;
    ct.indices = indices;
    for (std::size_t i : indices)
        for (std::size_t j : indices)
            for (std::size_t alpha = 0; alpha < a.hom_dim(i, j); ++alpha)
                ct.basis_refs.push_back({i, j, alpha});
    const std::size_t n = ct.basis_refs.size();

    std::vector<std::string> labels;
    for (const auto& ref : ct.basis_refs)
        labels.push_back("h" + std::to_string(ref.i) + ":" + std::to_string(ref.j) + "[" +
                         std::to_string(ref.alpha) + "]");
    std::vector<Vec> table(n * n, vec_zero(n));
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t) {
            const auto& x = ct.basis_refs[s];
            const auto& y = ct.basis_refs[t];
            if (x.j != y.i) continue;
            const Mat prod = mat_mul(a.hom_basis(x.i, x.j)[x.alpha], a.hom_basis(y.i, y.j)[y.alpha]);
            auto coords = a.hom_span(x.i, y.j).coordinates_of(prod.flatten());
            if (!coords) throw InternalError("corner product left the hom span");
            Vec& cell = table[s * n + t];
            for (std::size_t u = 0; u < n; ++u) {
                const auto& ref = ct.basis_refs[u];
                if (ref.i == x.i && ref.j == y.j) cell[u] = (*coords)[ref.alpha];
            }
        }
    Vec unit = vec_zero(n);
    {
        BlockElement e = a.partial_unit(indices);
        for (std::size_t u = 0; u < n; ++u) {
            const auto& ref = ct.basis_refs[u];
            auto it = e.components.find({ref.i, ref.j});
            if (it != e.components.end()) unit[u] = it->second[ref.alpha];
        }
    }
    ct.algebra = std::make_shared<FiniteAlgebra>(std::move(labels), std::move(table), unit);
    return ct;
}

ModulePtr block_as_op_module(const GradedRightModule& g, const FiniteAlgebra& base_op,
                             std::size_t i) {
    // right B-modules are left modules over the opposite algebra, with the
    // same action matrices
    std::vector<Mat> action = g.blocks[i].action;
    return make_module(base_op, std::move(action));
}

ModulePtr column_slab_module(const BlockAlgebra& a, const CornerTruncation& corner,
                             const FiniteAlgebra& corner_op, std::size_t i) {
    // G(i) = (+)_{j in I} hom(i, j) with the right corner action by block
    // composition
    std::vector<std::pair<std::size_t, std::size_t>> coords;  // (j, alpha)
    for (std::size_t j : corner.indices)
        for (std::size_t alpha = 0; alpha < a.hom_dim(i, j); ++alpha) coords.push_back({j, alpha});
    const std::size_t d = coords.size();

    std::vector<Mat> action(corner.basis_refs.size(), Mat(d, d));
    for (std::size_t bidx = 0; bidx < corner.basis_refs.size(); ++bidx) {
        const auto& y = corner.basis_refs[bidx];
        for (std::size_t c = 0; c < d; ++c) {
            const auto [j, alpha] = coords[c];
            if (j != y.i) continue;
            const Mat prod = mat_mul(a.hom_basis(i, j)[alpha], a.hom_basis(y.i, y.j)[y.alpha]);
            auto pc = a.hom_span(i, y.j).coordinates_of(prod.flatten());
            if (!pc) throw InternalError("slab action left the hom span");
            for (std::size_t r = 0; r < d; ++r) {
                const auto [jr, ar] = coords[r];
                if (jr == y.j) action[bidx].at(r, c) = (*pc)[ar];
            }
        }
    }
    return make_module(corner_op, std::move(action));
}

GeneratingTruncation find_generating_truncation(const BlockAlgebra& a) {
    const GradedRightModule& g = a.graded();
    const FiniteAlgebra& b = *g.base;
    auto bop = std::make_shared<FiniteAlgebra>(opposite_algebra(b));
    TopData top = top_and_irreducibles(*bop);

    const std::size_t nclasses = top.classes.representatives.size();
    std::vector<std::size_t> coverage(nclasses, g.blocks.size());
    for (std::size_t i = 0; i < g.blocks.size(); ++i) {
        if (g.blocks[i].dim == 0) continue;
        ModulePtr blk = block_as_op_module(g, *bop, i);
        auto pc = is_projective(blk, top);
        if (!pc.projective)
            throw NotProjectiveGeneratorOverBase("block " + g.index_labels[i] +
                                                 " is not projective over the base: " + pc.defect);
        for (std::size_t c = 0; c < nclasses; ++c)
            if (coverage[c] == g.blocks.size() && !hom_space(blk, top.irreducibles[c].module).empty())
                coverage[c] = i;
    }
    std::size_t needed = 0;
    for (std::size_t c = 0; c < nclasses; ++c) {
        if (coverage[c] == g.blocks.size())
            throw NotProjectiveGeneratorOverBase("no declared block covers irreducible class " +
                                                 std::to_string(c));
        needed = std::max(needed, coverage[c] + 1);
    }

    GeneratingTruncation gt;
    for (std::size_t i = 0; i < needed; ++i) gt.indices.push_back(i);
    gt.coverage = coverage;
    gt.corner = corner_truncation(a, gt.indices);

    std::size_t probe_len = g.stabilization_bound.value_or(g.blocks.size());
    probe_len = std::min(std::max(probe_len, needed), g.blocks.size());
    std::vector<std::size_t> probe_indices;
    for (std::size_t i = 0; i < probe_len; ++i) probe_indices.push_back(i);
    gt.probe = corner_truncation(a, probe_indices);

    const BlockElement e = a.partial_unit(gt.indices);
    gt.e_in_probe = gt.probe.algebra->element(gt.probe.from_block(e));
    if (!is_generating_idempotent(*gt.probe.algebra, gt.e_in_probe).generating)
        throw NotProjectiveGeneratorOverBase(
            "covering prefix fails the generating check against the probe truncation");
    return gt;
}

BlockTraceData block_trace_data(const BlockAlgebra& a) {
    BlockTraceData td;
    td.truncation = find_generating_truncation(a);
    const auto& gt = td.truncation;
    td.witnesses.resize(a.index_count());

    for (std::size_t d = 0; d < a.index_count(); ++d) {
        if (a.graded().blocks[d].dim == 0) continue;
        // work inside the finite corner over I union {d}
        std::vector<std::size_t> idx = gt.indices;
        if (std::find(idx.begin(), idx.end(), d) == idx.end()) {
            idx.push_back(d);
            std::sort(idx.begin(), idx.end());
        }
        CornerTruncation local = corner_truncation(a, idx);
        const FiniteAlgebra& c = *local.algebra;
        const Element ed = c.element(local.from_block(a.diagonal_idempotent(d)));
        const Element eg = c.element(local.from_block(a.partial_unit(gt.indices)));

        const auto dparts = primitive_orthogonal_decomposition(c, ed);
        const auto gparts = primitive_orthogonal_decomposition(c, eg);
        for (const Element& gp : dparts.parts) {
            std::optional<EquivalenceWitness> w;
            for (const Element& eps : gparts.parts)
                if ((w = idempotents_equivalent(c, gp, eps))) break;
            if (!w)
                throw NotProjectiveGeneratorOverBase(
                    "diagonal primitive not tied to the generating corner");
            td.witnesses[d].push_back({local.to_block(a, w->u.coords), local.to_block(a, w->v.coords)});
        }
    }
    return td;
}

Rat BlockFunctional::evaluate(const BlockAlgebra& a, const BlockElement& x) const {
    if (!data) throw PreconditionFailed("functional without trace data");
    Rat acc(0);
    for (const auto& [key, comp] : x.components) {
        if (key.first != key.second) continue;  // symmetric functionals kill off-diagonal blocks
        BlockElement xdd;
        xdd.components[key] = comp;
        for (const auto& [u, v] : data->witnesses[key.first]) {
            const BlockElement prod = block_mul(a, block_mul(a, v, xdd), u);
            if (prod.is_zero()) continue;
            acc += vec_dot(corner_functional.dual_coords, data->truncation.corner.from_block(prod));
        }
    }
    return acc;
}

std::vector<BlockFunctional> block_slf_basis(const BlockAlgebra&, const BlockTraceData& data) {
    std::vector<BlockFunctional> out;
    for (const LinearFunctional& phi : slf_basis(*data.truncation.corner.algebra))
        out.push_back(BlockFunctional{phi, &data});
    return out;
}

BlockNondegeneracy block_is_nondegenerate(const BlockAlgebra& a, const BlockFunctional& psi) {
    BlockNondegeneracy out;
    const std::size_t n = a.index_count();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t di = a.hom_dim(i, j), dj = a.hom_dim(j, i);
            if (di == 0) continue;
            Mat pairing(di, dj);
            for (std::size_t s = 0; s < di; ++s)
                for (std::size_t t = 0; t < dj; ++t) {
                    BlockElement x, y;
                    Vec xs(di, Rat(0)), yt(dj, Rat(0));
                    xs[s] = 1;
                    yt[t] = 1;
                    x.components[{i, j}] = xs;
                    y.components[{j, i}] = yt;
                    pairing.at(s, t) = psi.evaluate(a, block_mul(a, x, y));
                }
            if (rank_of(pairing) < di) {
                out.nondegenerate = false;
                out.failing_block = {i, j};
                return out;
            }
        }
    out.nondegenerate = true;
    return out;
}

}  // namespace pstrace
