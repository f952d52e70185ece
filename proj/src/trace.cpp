#include "pstrace/trace.hpp"

#include "pstrace/errors.hpp"

namespace pstrace {

bool quotient_equal(const QuotientValue& x, const QuotientValue& y) {
    if (!(x.modulo == y.modulo)) return false;
    return x.modulo.contains(vec_sub(x.representative, y.representative)) ||
           vec_is_zero(vec_sub(x.representative, y.representative));
}

void LeftCoordinateSystem::validate() const {
    const std::size_t dm = bimodule->dim();
    Mat total(dm, dm);
    for (const auto& [alpha, acheck] : pairs) total = mat_add(total, mat_mul(alpha, acheck));
    if (!total.is_identity()) throw InternalError("coordinate pairs do not sum to the identity");
    for (std::size_t k = 0; k < b->dim(); ++k) {
        const Mat rb = b->right_mult_matrix(b->basis_element(k).coords);
        const Mat& rm = right_action[k];
        for (const auto& [alpha, acheck] : pairs) {
            if (!(mat_mul(alpha, rb) == mat_mul(rm, alpha)))
                throw InternalError("alpha is not right-linear");
            if (!(mat_mul(acheck, rm) == mat_mul(rb, acheck)))
                throw InternalError("acheck is not right-linear");
        }
    }
}

LeftCoordinateSystem left_coordinate_system(const FiniteAlgebra& a, const IdempotentModule& ae,
                                            const std::vector<Element>& family,
                                            bool match_last) {
    const GeneratingCheck gen = is_generating_idempotent(a, ae.e);
    if (!gen.generating) throw NotGenerating();

    const auto parts = primitive_orthogonal_decomposition(a, ae.e);
    LeftCoordinateSystem lcs;
    lcs.bimodule = ae.module;
    lcs.b = ae.corner.corner_algebra;
    lcs.right_action = ae.right_corner_action;

    const std::size_t dm = ae.module->dim(), db = lcs.b->dim();
    for (const Element& member : family) {
        // tie the family member to an equivalent part of e
        std::optional<EquivalenceWitness> witness;
        const auto member_parts = primitive_orthogonal_decomposition(a, member);
        for (const Element& mp : member_parts.parts) {
            std::optional<EquivalenceWitness> found;
            for (std::size_t idx = 0; idx < parts.parts.size(); ++idx) {
                const Element& eps = parts.parts[match_last ? parts.parts.size() - 1 - idx : idx];
                if (auto w = idempotents_equivalent(a, mp, eps)) {
                    found = w;
                    break;
                }
            }
            if (!found) throw NotGenerating();
            // u in (member part) A eps, v in eps A (member part); uv = part, vu = eps
            Mat alpha(dm, db), acheck(db, dm);
            for (std::size_t c = 0; c < db; ++c) {
                const Vec img = a.mul(found->u.coords, ae.corner.space.basis_vector(c));
                const Vec mc = ae.module_of(img);
                for (std::size_t r = 0; r < dm; ++r) alpha.at(r, c) = mc[r];
            }
            for (std::size_t c = 0; c < dm; ++c) {
                const Vec img = a.mul(found->v.coords, ae.space.basis_vector(c));
                const Vec bc = ae.corner.to_corner(img);
                for (std::size_t r = 0; r < db; ++r) acheck.at(r, c) = bc[r];
            }
            lcs.pairs.emplace_back(std::move(alpha), std::move(acheck));
            lcs.witnesses.push_back(*found);
        }
    }
    lcs.validate();
    return lcs;
}

LeftCoordinateSystem lcs_power(const LeftCoordinateSystem& base, const IdempotentModule& ae,
                               const DirectSum& power, const EndAlgebraData& bn,
                               std::size_t row) {
    const std::size_t n = power.inclusions.size();
    const std::size_t dm = ae.module->dim();
    const std::size_t dbn = bn.algebra->dim();
    if (row >= n) throw PreconditionFailed("row out of range");

    LeftCoordinateSystem out;
    out.bimodule = power.module;
    out.b = bn.algebra;
    out.right_action = bn.action;

    // An element Y of End^op acts on the right: component t of xi*Y is
    // sum_s xi_s y_{s,t}, so the matrix entry y_{s,t} is the operator block
    // (t, s).  The chosen data row of Y is the operator block column `row`.
    for (const auto& [alpha, acheck] : base.pairs) {
        // gamma(Y) pushes the data row of Y through alpha, one summand each
        Mat gamma(n * dm, dbn);
        for (std::size_t col = 0; col < dbn; ++col) {
            const Mat op = bn.action[col];
            for (std::size_t t = 0; t < n; ++t) {
                // matrix entry y_{row, t} = operator block (t, row)
                Mat block(dm, dm);
                for (std::size_t r = 0; r < dm; ++r)
                    for (std::size_t c = 0; c < dm; ++c) block.at(r, c) = op.at(t * dm + r, row * dm + c);
                const Vec bcoords = corner_element_of_block(ae, block);
                const Vec img = mat_apply(alpha, bcoords);
                for (std::size_t r = 0; r < dm; ++r) gamma.at(t * dm + r, col) = img[r];
            }
        }
        Mat gcheck(dbn, n * dm);
        for (std::size_t t = 0; t < n; ++t)
            for (std::size_t j = 0; j < dm; ++j) {
                // image of the (t, j) basis vector: the matrix whose entry
                // y_{row, t} is right multiplication by acheck(e_j)
                Vec bc(ae.corner.dim(), Rat(0));
                for (std::size_t r = 0; r < ae.corner.dim(); ++r) bc[r] = acheck.at(r, j);
                Mat rop(dm, dm);
                for (std::size_t k = 0; k < bc.size(); ++k)
                    if (sgn(bc[k]) != 0) rop = mat_add(rop, mat_scale(bc[k], ae.right_corner_action[k]));
                Mat full(n * dm, n * dm);
                for (std::size_t r = 0; r < dm; ++r)
                    for (std::size_t c = 0; c < dm; ++c) full.at(t * dm + r, row * dm + c) = rop.at(r, c);
                const Vec coords = bn.coords_of_operator(full);
                for (std::size_t r = 0; r < dbn; ++r) gcheck.at(r, t * dm + j) = coords[r];
            }
        out.pairs.emplace_back(std::move(gamma), std::move(gcheck));
    }
    out.validate();
    return out;
}

LeftCoordinateSystem lcs_summand(const LeftCoordinateSystem& big, const EndAlgebraData& btilde,
                                 const Element& p, const Mat& embedding, const Mat& projection,
                                 ModulePtr m, const EndAlgebraData& bprime) {
    const FiniteAlgebra& bt = *btilde.algebra;
    const Mat kappa = summand_embedding_matrix(embedding, projection, btilde, bprime);

    // left inverse of kappa, valid on its image
    Mat kt = kappa.transpose();
    Mat kinv(bprime.algebra->dim(), bt.dim());
    for (std::size_t i = 0; i < bprime.algebra->dim(); ++i) {
        Vec ei = vec_zero(bprime.algebra->dim());
        ei[i] = 1;
        auto row = solve(kt, ei);
        if (!row) throw InternalError("summand embedding has no left inverse");
        for (std::size_t j = 0; j < bt.dim(); ++j) kinv.at(i, j) = (*row)[j];
    }

    const auto qparts = primitive_orthogonal_decomposition(bt, bt.unit());
    const auto pparts = primitive_orthogonal_decomposition(bt, p);

    LeftCoordinateSystem out;
    out.bimodule = m;
    out.b = bprime.algebra;
    out.right_action = bprime.action;

    for (const Element& q : qparts.parts) {
        std::optional<EquivalenceWitness> w;
        for (const Element& pi : pparts.parts)
            if ((w = idempotents_equivalent(bt, q, pi))) break;
        if (!w) throw NotGenerating();
        // u in q Bt pi, v in pi Bt q with uv = q, vu = pi <= p
        const Mat lu = bt.left_mult_matrix(w->u.coords);
        const Mat lv = bt.left_mult_matrix(w->v.coords);
        for (const auto& [alpha, acheck] : big.pairs) {
            Mat theta = mat_mul(projection, mat_mul(alpha, mat_mul(lu, kappa)));
            Mat tcheck = mat_mul(kinv, mat_mul(lv, mat_mul(acheck, embedding)));
            out.pairs.emplace_back(std::move(theta), std::move(tcheck));
        }
    }
    out.validate();
    return out;
}

LeftCoordinateSystem lcs_duplicate_halved(const LeftCoordinateSystem& lcs) {
    LeftCoordinateSystem out = lcs;
    out.pairs.clear();
    out.witnesses.clear();
    const Rat half(1, 2);
    for (const auto& [alpha, acheck] : lcs.pairs) {
        out.pairs.emplace_back(alpha, mat_scale(half, acheck));
        out.pairs.emplace_back(alpha, mat_scale(half, acheck));
    }
    out.validate();
    return out;
}

QuotientValue btrace(const LeftCoordinateSystem& lcs, const Element& x) {
    if (x.algebra != &lcs.bimodule->algebra()) throw AlgebraMismatch();
    const Mat op = lcs.bimodule->action_of(x.coords);
    Mat total(lcs.b->dim(), lcs.b->dim());
    for (const auto& [alpha, acheck] : lcs.pairs)
        total = mat_add(total, mat_mul(acheck, mat_mul(op, alpha)));
    return QuotientValue{mat_apply(total, lcs.b->unit_coords()), commutator_subspace(*lcs.b)};
}

namespace {

Rat pseudotrace_left_unchecked(const LeftCoordinateSystem& lcs, const LinearFunctional& phi,
                               const Vec& x) {
    const Mat op = lcs.bimodule->action_of(x);
    Rat acc(0);
    for (const auto& [alpha, acheck] : lcs.pairs) {
        const Vec v = mat_apply(acheck, mat_apply(op, mat_apply(alpha, lcs.b->unit_coords())));
        acc += vec_dot(phi.dual_coords, v);
    }
    return acc;
}

}  // namespace

Rat pseudotrace_left(const LeftCoordinateSystem& lcs, const LinearFunctional& phi,
                     const Element& x) {
    if (phi.algebra != lcs.b.get()) throw AlgebraMismatch();
    if (x.algebra != &lcs.bimodule->algebra()) throw AlgebraMismatch();
    if (!is_symmetric(phi)) throw NotSymmetric();
    return pseudotrace_left_unchecked(lcs, phi, x.coords);
}

LinearFunctional pseudotrace_left_functional(const LeftCoordinateSystem& lcs,
                                             const LinearFunctional& phi) {
    if (phi.algebra != lcs.b.get()) throw AlgebraMismatch();
    if (!is_symmetric(phi)) throw NotSymmetric();
    const FiniteAlgebra& a = lcs.bimodule->algebra();
    Vec coords(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        Vec b = vec_zero(a.dim());
        b[i] = 1;
        coords[i] = pseudotrace_left_unchecked(lcs, phi, b);
    }
    return LinearFunctional{&a, std::move(coords)};
}

LinearFunctional restrict_slf(const LinearFunctional& psi, const CornerData& cd) {
    if (!cd.corner_algebra) throw PreconditionFailed("corner algebra requires e == f");
    Vec coords(cd.dim());
    for (std::size_t i = 0; i < cd.dim(); ++i)
        coords[i] = vec_dot(psi.dual_coords, cd.space.basis_vector(i));
    return LinearFunctional{cd.corner_algebra.get(), std::move(coords)};
}

void RightCoordinateSystem::validate() const {
    const std::size_t dm = bimodule->dim();
    Mat total(dm, dm);
    for (const auto& [beta, bcheck] : pairs) total = mat_add(total, mat_mul(beta, bcheck));
    if (!total.is_identity()) throw InternalError("right coordinate pairs do not sum to identity");
    for (std::size_t g : generating_subset(bimodule->algebra())) {
        const Mat& am = ae.module->basis_action(g);
        const Mat& an = bimodule->basis_action(g);
        for (const auto& [beta, bcheck] : pairs) {
            if (!(mat_mul(beta, am) == mat_mul(an, beta)))
                throw InternalError("beta is not left-linear");
            if (!(mat_mul(bcheck, an) == mat_mul(am, bcheck)))
                throw InternalError("bcheck is not left-linear");
        }
    }
}

RightCoordinateSystem rcs_identity(const IdempotentModule& ae) {
    RightCoordinateSystem rcs;
    rcs.bimodule = ae.module;
    rcs.ae = ae;
    rcs.pairs.emplace_back(Mat::identity(ae.module->dim()), Mat::identity(ae.module->dim()));
    rcs.validate();
    return rcs;
}

RightCoordinateSystem rcs_from_presentation(ModulePtr m, const GeneratorPresentation& gp) {
    RightCoordinateSystem rcs;
    rcs.bimodule = m;
    rcs.ae = gp.ae;
    for (std::size_t j = 0; j < gp.n; ++j) {
        Mat beta = mat_mul(gp.projection.matrix, gp.power.inclusions[j].matrix);
        Mat bcheck = mat_mul(gp.power.projections[j].matrix, gp.embedding.matrix);
        rcs.pairs.emplace_back(std::move(beta), std::move(bcheck));
    }
    rcs.validate();
    return rcs;
}

RightCoordinateSystem rcs_extend(const RightCoordinateSystem& rcs, const IdempotentModule& af) {
    const FiniteAlgebra& a = rcs.bimodule->algebra();
    const Element& e = rcs.ae.e;
    if (!idempotent_leq(e, af.e)) throw PreconditionFailed("domain extension needs e <= f");
    const std::size_t de = rcs.ae.module->dim(), df = af.module->dim();

    // Af -> Ae: x |-> x e, and Ae -> Af: inclusion
    Mat down(de, df), up(df, de);
    for (std::size_t j = 0; j < df; ++j) {
        const Vec img = a.mul(af.space.basis_vector(j), e.coords);
        const Vec c = rcs.ae.module_of(img);
        for (std::size_t r = 0; r < de; ++r) down.at(r, j) = c[r];
    }
    for (std::size_t j = 0; j < de; ++j) {
        const Vec c = af.module_of(rcs.ae.space.basis_vector(j));
        for (std::size_t r = 0; r < df; ++r) up.at(r, j) = c[r];
    }
    RightCoordinateSystem out;
    out.bimodule = rcs.bimodule;
    out.ae = af;
    for (const auto& [beta, bcheck] : rcs.pairs)
        out.pairs.emplace_back(mat_mul(beta, down), mat_mul(up, bcheck));
    out.validate();
    return out;
}

RightCoordinateSystem rcs_compose_summand(const RightCoordinateSystem& rcs,
                                          const SummandModule& sm) {
    RightCoordinateSystem out;
    out.bimodule = sm.module;
    out.ae = rcs.ae;
    for (const auto& [beta, bcheck] : rcs.pairs)
        out.pairs.emplace_back(mat_mul(sm.projection.matrix, beta),
                               mat_mul(bcheck, sm.inclusion.matrix));
    out.validate();
    return out;
}

RightCoordinateSystem rcs_duplicate_halved(const RightCoordinateSystem& rcs) {
    RightCoordinateSystem out = rcs;
    out.pairs.clear();
    const Rat half(1, 2);
    for (const auto& [beta, bcheck] : rcs.pairs) {
        out.pairs.emplace_back(beta, mat_scale(half, bcheck));
        out.pairs.emplace_back(beta, mat_scale(half, bcheck));
    }
    out.validate();
    return out;
}

namespace {

Rat pseudotrace_right_unchecked(const RightCoordinateSystem& rcs, const EndAlgebraData& b,
                                const LinearFunctional& psi, const Vec& y) {
    const Mat op = b.operator_of(y);
    Rat acc(0);
    for (const auto& [beta, bcheck] : rcs.pairs) {
        const Vec in_ae = mat_apply(bcheck, mat_apply(op, mat_apply(beta, rcs.ae.e_in_module)));
        acc += vec_dot(psi.dual_coords, rcs.ae.ambient_of(in_ae));
    }
    return acc;
}

}  // namespace

Rat pseudotrace_right(const RightCoordinateSystem& rcs, const EndAlgebraData& b,
                      const LinearFunctional& psi, const Element& y) {
    if (psi.algebra != &rcs.bimodule->algebra()) throw AlgebraMismatch();
    if (y.algebra != b.algebra.get()) throw AlgebraMismatch();
    if (!is_symmetric(psi)) throw NotSymmetric();
    return pseudotrace_right_unchecked(rcs, b, psi, y.coords);
}

LinearFunctional pseudotrace_right_functional(const RightCoordinateSystem& rcs,
                                              const EndAlgebraData& b,
                                              const LinearFunctional& psi) {
    if (psi.algebra != &rcs.bimodule->algebra()) throw AlgebraMismatch();
    if (!is_symmetric(psi)) throw NotSymmetric();
    Vec coords(b.algebra->dim());
    for (std::size_t i = 0; i < b.algebra->dim(); ++i) {
        Vec y = vec_zero(b.algebra->dim());
        y[i] = 1;
        coords[i] = pseudotrace_right_unchecked(rcs, b, psi, y);
    }
    return LinearFunctional{b.algebra.get(), std::move(coords)};
}

Vec corner_element_of_block(const IdempotentModule& ae, const Mat& block) {
    // an A-endomorphism of Ae is right multiplication by its value at e
    const Vec at_e = mat_apply(block, ae.e_in_module);
    return ae.corner.to_corner(ae.ambient_of(at_e));
}

LinearFunctional corner_tensor_functional(const IdempotentModule& ae, const EndAlgebraData& bn,
                                          std::size_t n, const LinearFunctional& phi_on_corner) {
    if (phi_on_corner.algebra != ae.corner.corner_algebra.get()) throw AlgebraMismatch();
    const std::size_t dm = ae.module->dim();
    Vec coords(bn.algebra->dim(), Rat(0));
    for (std::size_t i = 0; i < bn.algebra->dim(); ++i) {
        const Mat& op = bn.action[i];
        Rat acc(0);
        for (std::size_t s = 0; s < n; ++s) {
            Mat block(dm, dm);
            for (std::size_t r = 0; r < dm; ++r)
                for (std::size_t c = 0; c < dm; ++c) block.at(r, c) = op.at(s * dm + r, s * dm + c);
            acc += vec_dot(phi_on_corner.dual_coords, corner_element_of_block(ae, block));
        }
        coords[i] = acc;
    }
    return LinearFunctional{bn.algebra.get(), std::move(coords)};
}

Mat summand_embedding_matrix(const Mat& embedding, const Mat& projection,
                             const EndAlgebraData& big, const EndAlgebraData& small) {
    const std::size_t db = small.algebra->dim();
    Mat kappa(big.algebra->dim(), db);
    for (std::size_t i = 0; i < db; ++i) {
        const Mat op = mat_mul(embedding, mat_mul(small.action[i], projection));
        const Vec c = big.coords_of_operator(op);
        for (std::size_t r = 0; r < kappa.rows(); ++r) kappa.at(r, i) = c[r];
    }
    return kappa;
}

}  // namespace pstrace
