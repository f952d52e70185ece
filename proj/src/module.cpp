#include "pstrace/module.hpp"

#include <atomic>

#include "pstrace/errors.hpp"

namespace pstrace {

LeftModule::LeftModule(const FiniteAlgebra* alg, std::vector<Mat> action,
                       std::optional<Vec> support_idempotent)
    : alg_(alg), action_(std::move(action)) {
    const std::size_t n = alg_->dim();
    if (action_.size() != n) throw InvalidModule("one action matrix per basis element required");
    dim_ = action_.empty() ? 0 : action_[0].rows();
    for (const Mat& m : action_)
        if (m.rows() != dim_ || m.cols() != dim_) throw InvalidModule("action matrix shape");

    std::atomic<bool> ok(true);
#pragma omp parallel for schedule(dynamic) if (n >= 8)
    for (long i = 0; i < static_cast<long>(n); ++i) {
        if (!ok.load(std::memory_order_relaxed)) continue;
        for (std::size_t j = 0; j < n; ++j) {
            Mat lhs = mat_mul(action_[static_cast<std::size_t>(i)], action_[j]);
            Mat rhs(dim_, dim_);
            const Vec& c = alg_->product(static_cast<std::size_t>(i), j);
            for (std::size_t k = 0; k < n; ++k)
                if (sgn(c[k]) != 0) rhs = mat_add(rhs, mat_scale(c[k], action_[k]));
            if (!(lhs == rhs)) {
                ok.store(false, std::memory_order_relaxed);
                break;
            }
        }
    }
    if (!ok.load()) throw InvalidModule("action does not respect the structure constants");

    if (support_idempotent) {
        support_ = std::move(*support_idempotent);
    } else if (alg_->is_unital()) {
        support_ = alg_->unit_coords();
    } else {
        throw InvalidModule("non-unital algebra requires an explicit support idempotent");
    }
    if (!action_of(support_).is_identity())
        throw InvalidModule("support idempotent does not act as the identity");
}

Mat LeftModule::action_of(const Vec& x) const {
    if (x.size() != alg_->dim()) throw DimensionMismatch("LeftModule::action_of");
    Mat out(dim_, dim_);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (sgn(x[i]) != 0) out = mat_add(out, mat_scale(x[i], action_[i]));
    return out;
}

ModulePtr make_module(const FiniteAlgebra& a, std::vector<Mat> action,
                      std::optional<Vec> support_idempotent) {
    return std::make_shared<LeftModule>(&a, std::move(action), std::move(support_idempotent));
}

ModuleMorphism make_morphism(ModulePtr source, ModulePtr target, Mat matrix) {
    if (&source->algebra() != &target->algebra()) throw AlgebraMismatch();
    if (matrix.rows() != target->dim() || matrix.cols() != source->dim())
        throw DimensionMismatch("morphism matrix shape");
    for (std::size_t g : generating_subset(source->algebra())) {
        if (!(mat_mul(matrix, source->basis_action(g)) == mat_mul(target->basis_action(g), matrix)))
            throw InvalidModule("matrix does not intertwine the actions");
    }
    return ModuleMorphism{std::move(source), std::move(target), std::move(matrix)};
}

ModuleMorphism compose(const ModuleMorphism& f, const ModuleMorphism& g) {
    if (f.source.get() != g.target.get()) throw DimensionMismatch("compose: chain mismatch");
    return ModuleMorphism{g.source, f.target, mat_mul(f.matrix, g.matrix)};
}

Vec IdempotentModule::module_of(const Vec& ambient) const {
    auto c = space.coordinates_of(ambient);
    if (!c) throw PreconditionFailed("vector is not in the idempotent module");
    return *c;
}

IdempotentModule module_from_idempotent(const FiniteAlgebra& a, const Element& e) {
    if (e.algebra != &a) throw AlgebraMismatch();
    if (!is_idempotent(e)) throw NotIdempotent();
    const std::size_t n = a.dim();

    IdempotentModule im;
    im.e = e;
    std::vector<Vec> spanning;
    for (std::size_t i = 0; i < n; ++i) {
        Vec b = vec_zero(n);
        b[i] = 1;
        spanning.push_back(a.mul(b, e.coords));
    }
    im.space = Subspace::span(n, spanning);
    const std::size_t m = im.space.dim();

    std::vector<Mat> action(n, Mat(m, m));
    for (std::size_t i = 0; i < n; ++i) {
        Vec b = vec_zero(n);
        b[i] = 1;
        for (std::size_t j = 0; j < m; ++j) {
            Vec img = a.mul(b, im.space.basis_vector(j));
            auto c = im.space.coordinates_of(img);
            if (!c) throw InternalError("left action left the idempotent module");
            for (std::size_t r = 0; r < m; ++r) action[i].at(r, j) = (*c)[r];
        }
    }
    std::optional<Vec> support;
    if (!a.is_unital()) support = e.coords;
    im.module = make_module(a, std::move(action), support);

    im.corner = corner(a, e, e);
    const std::size_t k = im.corner.dim();
    im.right_corner_action.assign(k, Mat(m, m));
    for (std::size_t r = 0; r < k; ++r) {
        const Vec c = im.corner.space.basis_vector(r);
        for (std::size_t j = 0; j < m; ++j) {
            Vec img = a.mul(im.space.basis_vector(j), c);
            auto cc = im.space.coordinates_of(img);
            if (!cc) throw InternalError("right corner action left the module");
            for (std::size_t row = 0; row < m; ++row) im.right_corner_action[r].at(row, j) = (*cc)[row];
        }
    }
    im.e_in_module = im.module_of(e.coords);
    return im;
}

std::vector<ModuleMorphism> hom_space(ModulePtr m, ModulePtr n) {
    if (&m->algebra() != &n->algebra()) throw AlgebraMismatch();
    const std::size_t dm = m->dim(), dn = n->dim();
    const auto gens = generating_subset(m->algebra());
    // unknowns: X (dn x dm) vectorised row-major; equations per generator g:
    // X rho_m(g) - rho_n(g) X = 0
    Mat sys(gens.size() * dn * dm, dn * dm);
    std::size_t row = 0;
    for (std::size_t g : gens) {
        const Mat& am = m->basis_action(g);
        const Mat& an = n->basis_action(g);
        for (std::size_t r = 0; r < dn; ++r)
            for (std::size_t c = 0; c < dm; ++c) {
                for (std::size_t k = 0; k < dm; ++k)
                    if (sgn(am.at(k, c)) != 0) sys.at(row, r * dm + k) += am.at(k, c);
                for (std::size_t k = 0; k < dn; ++k)
                    if (sgn(an.at(r, k)) != 0) sys.at(row, k * dm + c) -= an.at(r, k);
                ++row;
            }
    }
    const Subspace sols = nullspace(sys);
    std::vector<ModuleMorphism> out;
    for (std::size_t i = 0; i < sols.dim(); ++i) {
        Vec v = sols.basis_vector(i);
        Mat x(dn, dm);
        for (std::size_t r = 0; r < dn; ++r)
            for (std::size_t c = 0; c < dm; ++c) x.at(r, c) = v[r * dm + c];
        out.push_back(ModuleMorphism{m, n, std::move(x)});
    }
    return out;
}

Mat EndAlgebraData::operator_of(const Vec& b_coords) const {
    Mat out(module->dim(), module->dim());
    for (std::size_t i = 0; i < b_coords.size(); ++i)
        if (sgn(b_coords[i]) != 0) out = mat_add(out, mat_scale(b_coords[i], action[i]));
    return out;
}

Vec EndAlgebraData::coords_of_operator(const Mat& t) const {
    auto c = hom_span.coordinates_of(t.flatten());
    if (!c) throw PreconditionFailed("operator is not a module endomorphism");
    return *c;
}

EndAlgebraData end_algebra(ModulePtr m) {
    const std::size_t d = m->dim();
    std::vector<ModuleMorphism> homs = hom_space(m, m);
    const std::size_t k = homs.size();

    EndAlgebraData b;
    b.module = m;
    std::vector<Vec> flat;
    for (const auto& h : homs) {
        b.action.push_back(h.matrix);
        flat.push_back(h.matrix.flatten());
    }
    b.hom_span = Subspace::span(d * d, flat);
    if (b.hom_span.dim() != k) throw InternalError("hom basis is not independent");

    // B = End(M)^op: product x*y = (y o x), i.e. matrix(y) * matrix(x)
    std::vector<Vec> table(k * k, vec_zero(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            auto c = b.hom_span.coordinates_of(mat_mul(b.action[j], b.action[i]).flatten());
            if (!c) throw InternalError("endomorphism composition left the hom span");
            table[i * k + j] = *c;
        }
    auto unit = b.hom_span.coordinates_of(Mat::identity(d).flatten());
    if (!unit) throw InternalError("identity is not in the hom span");
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < k; ++i) labels.push_back("f" + std::to_string(i));
    b.algebra = std::make_shared<FiniteAlgebra>(std::move(labels), std::move(table), *unit);
    return b;
}

DirectSum direct_sum(const std::vector<ModulePtr>& summands) {
    if (summands.empty()) throw PreconditionFailed("direct sum of nothing");
    const FiniteAlgebra& a = summands[0]->algebra();
    std::size_t total = 0;
    for (const auto& s : summands) {
        if (&s->algebra() != &a) throw AlgebraMismatch();
        total += s->dim();
    }
    std::vector<Mat> action(a.dim(), Mat(total, total));
    std::size_t off = 0;
    for (const auto& s : summands) {
        for (std::size_t i = 0; i < a.dim(); ++i)
            for (std::size_t r = 0; r < s->dim(); ++r)
                for (std::size_t c = 0; c < s->dim(); ++c)
                    action[i].at(off + r, off + c) = s->basis_action(i).at(r, c);
        off += s->dim();
    }
    std::optional<Vec> support;
    if (!a.is_unital()) {
        // common support: sum is supported by any idempotent dominating all
        // summand supports; summands built from one idempotent share it
        support = summands[0]->support();
        for (const auto& s : summands)
            if (!(s->support() == *support))
                throw InvalidModule("direct sum of modules with different supports");
    }
    DirectSum ds;
    ds.module = make_module(a, std::move(action), support);
    off = 0;
    for (const auto& s : summands) {
        Mat inc(total, s->dim()), prj(s->dim(), total);
        for (std::size_t r = 0; r < s->dim(); ++r) {
            inc.at(off + r, r) = 1;
            prj.at(r, off + r) = 1;
        }
        ds.inclusions.push_back(make_morphism(s, ds.module, std::move(inc)));
        ds.projections.push_back(make_morphism(ds.module, s, std::move(prj)));
        off += s->dim();
    }
    return ds;
}

SummandModule summand_by_idempotent(const EndAlgebraData& b, const Element& p) {
    if (p.algebra != b.algebra.get()) throw AlgebraMismatch();
    if (!is_idempotent(p)) throw NotIdempotent();
    const ModulePtr m = b.module;
    const Mat pop = b.operator_of(p.coords);
    const std::size_t d = m->dim();

    // image of the projection operator
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < d; ++j) cols.push_back(pop.col(j));
    Subspace image = Subspace::span(d, cols);
    const std::size_t k = image.dim();

    Mat inc(d, k), prj(k, d);
    for (std::size_t c = 0; c < k; ++c) {
        Vec v = image.basis_vector(c);
        for (std::size_t r = 0; r < d; ++r) inc.at(r, c) = v[r];
    }
    // projection: restrict p to the image coordinates (pivot columns read off
    // after applying p)
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < d; ++c) {
            // coordinates of p(e_c) in the image basis
            auto coords = image.coordinates_of(pop.col(c));
            if (!coords) throw InternalError("projection image mismatch");
            prj.at(r, c) = (*coords)[r];
        }

    std::vector<Mat> action(m->algebra().dim(), Mat(k, k));
    for (std::size_t i = 0; i < m->algebra().dim(); ++i)
        action[i] = mat_mul(prj, mat_mul(m->basis_action(i), inc));
    std::optional<Vec> support;
    if (!m->algebra().is_unital()) support = m->support();
    SummandModule sm;
    sm.module = make_module(m->algebra(), std::move(action), support);
    sm.inclusion = make_morphism(sm.module, m, std::move(inc));
    sm.projection = make_morphism(m, sm.module, std::move(prj));
    return sm;
}

QuotientModule quotient_module(ModulePtr m, const Subspace& sub) {
    const std::size_t d = m->dim();
    if (sub.ambient_dim() != d) throw DimensionMismatch("quotient_module");
    const auto& pivots = sub.pivots();
    std::vector<bool> is_pivot(d, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < d; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    const std::size_t q = free_cols.size();

    Mat section(d, q), proj(q, d);
    for (std::size_t t = 0; t < q; ++t) {
        section.at(free_cols[t], t) = 1;
        proj.at(t, free_cols[t]) = 1;
        for (std::size_t s = 0; s < pivots.size(); ++s)
            proj.at(t, pivots[s]) = -sub.basis().at(s, free_cols[t]);
    }

    std::vector<Mat> action(m->algebra().dim());
    for (std::size_t i = 0; i < m->algebra().dim(); ++i) {
        // invariance check: the action must map the subspace into itself
        for (std::size_t s = 0; s < sub.dim(); ++s)
            if (!sub.contains(mat_apply(m->basis_action(i), sub.basis_vector(s))))
                throw PreconditionFailed("subspace is not action-invariant");
        action[i] = mat_mul(proj, mat_mul(m->basis_action(i), section));
    }
    std::optional<Vec> support;
    if (!m->algebra().is_unital()) support = m->support();
    QuotientModule qm;
    qm.module = make_module(m->algebra(), std::move(action), support);
    qm.quotient_map = make_morphism(m, qm.module, proj);
    qm.section = std::move(section);
    return qm;
}

Subspace radical_submodule(const LeftModule& m, const RadicalData& rad) {
    std::vector<Vec> rows;
    for (std::size_t r = 0; r < rad.radical.dim(); ++r) {
        const Mat op = m.action_of(rad.radical.basis_vector(r));
        for (std::size_t j = 0; j < m.dim(); ++j) rows.push_back(op.col(j));
    }
    return Subspace::span(m.dim(), rows);
}

TopData top_and_irreducibles(const FiniteAlgebra& a) {
    TopData td;
    td.classes = unit_equivalence_classes(a);
    const RadicalData rad = radical(a);
    for (const Element& eps : td.classes.representatives) {
        IdempotentModule cover = module_from_idempotent(a, eps);
        Subspace radsub = radical_submodule(*cover.module, rad);
        td.irreducibles.push_back(quotient_module(cover.module, radsub));
        td.covers.push_back(std::move(cover));
    }
    return td;
}

ProjectivityCheck is_projective(ModulePtr m, const TopData& top) {
    const FiniteAlgebra& a = m->algebra();
    ProjectivityCheck pc;

    const RadicalData rad = radical(a);
    const Subspace radm = radical_submodule(*m, rad);
    QuotientModule topm = quotient_module(m, radm);

    // multiplicity of class c in top(M) = rank of the class idempotent there
    std::vector<ModulePtr> cover_parts;
    std::vector<std::vector<Vec>> lift_targets;  // per class: basis of eps * top
    for (std::size_t c = 0; c < top.classes.representatives.size(); ++c) {
        const Element& eps = top.classes.representatives[c];
        const Mat act = topm.module->action_of(eps.coords);
        std::vector<Vec> cols;
        for (std::size_t j = 0; j < act.cols(); ++j) cols.push_back(act.col(j));
        Subspace img = Subspace::span(act.rows(), cols);
        pc.multiplicities.push_back(img.dim());
        std::vector<Vec> targets;
        for (std::size_t t = 0; t < img.dim(); ++t) targets.push_back(img.basis_vector(t));
        lift_targets.push_back(std::move(targets));
        for (std::size_t t = 0; t < img.dim(); ++t) cover_parts.push_back(top.covers[c].module);
    }

    std::size_t cover_dim = 0;
    for (const auto& part : cover_parts) cover_dim += part->dim();

    if (cover_parts.empty()) {
        // top(M) = 0 means M = rad M, so M = 0 by nilpotency
        pc.projective = m->dim() == 0;
        if (!pc.projective) pc.defect = "module has zero top but positive dimension";
        return pc;
    }

    DirectSum cover = direct_sum(cover_parts);
    pc.cover = cover.module;

    // lift: on the copy for (class c, index t), send u in A*eps to
    // rho(u) xi_t where xi_t is an eps-fixed preimage of the t-th top vector
    Mat lift(m->dim(), cover.module->dim());
    std::size_t col_off = 0, part_idx = 0;
    for (std::size_t c = 0; c < top.classes.representatives.size(); ++c) {
        const Element& eps = top.classes.representatives[c];
        for (std::size_t t = 0; t < pc.multiplicities[c]; ++t, ++part_idx) {
            auto pre = solve(topm.quotient_map.matrix, lift_targets[c][t]);
            if (!pre) throw InternalError("top vector has no preimage");
            const Vec xi = mat_apply(m->action_of(eps.coords), *pre);
            const IdempotentModule& base = top.covers[c];
            for (std::size_t j = 0; j < base.module->dim(); ++j) {
                const Vec img = mat_apply(m->action_of(base.space.basis_vector(j)), xi);
                for (std::size_t r = 0; r < m->dim(); ++r) lift.at(r, col_off + j) = img[r];
            }
            col_off += base.module->dim();
        }
    }
    pc.lift = make_morphism(cover.module, m, lift);

    if (cover_dim != m->dim()) {
        pc.defect = "cover dimension " + std::to_string(cover_dim) + " != module dimension " +
                    std::to_string(m->dim());
        pc.projective = false;
        return pc;
    }
    if (rank_of(lift) != m->dim()) {
        pc.defect = "cover lift is not invertible";
        pc.projective = false;
        return pc;
    }
    pc.projective = true;
    return pc;
}

GeneratorCheck is_projective_generator(ModulePtr m, const TopData& top) {
    GeneratorCheck gc;
    gc.projectivity = is_projective(m, top);
    for (std::size_t c = 0; c < top.irreducibles.size(); ++c)
        if (hom_space(m, top.irreducibles[c].module).empty()) gc.uncovered_classes.push_back(c);
    gc.projective_generator = gc.projectivity.projective && gc.uncovered_classes.empty();
    return gc;
}

GeneratorPresentation generator_presentation(ModulePtr m, const TopData& top) {
    GeneratorCheck gc = is_projective_generator(m, top);
    if (!gc.projective_generator) throw NotProjectiveGenerator();
    const FiniteAlgebra& a = m->algebra();

    GeneratorPresentation gp;
    gp.e = top.classes.minimal_generating;
    gp.ae = module_from_idempotent(a, gp.e);
    gp.n = 1;
    for (std::size_t mc : gc.projectivity.multiplicities) gp.n = std::max(gp.n, mc);

    std::vector<ModulePtr> copies(gp.n, gp.ae.module);
    gp.power = direct_sum(copies);

    // cover iso Phi : direct sum of (A eps_c)^(m_c) -> M, class-major layout
    const Mat& phi = gc.projectivity.lift->matrix;
    auto phi_inv = inverse(phi);
    if (!phi_inv) throw InternalError("cover lift of a projective module must be invertible");

    // theta: power -> M. Copy t of Ae maps through right multiplication by
    // eps_c onto the (c, t) cover block whenever t < m_c.
    const std::size_t ae_dim = gp.ae.module->dim();
    Mat theta(m->dim(), gp.n * ae_dim);
    Mat theta_check(gp.n * ae_dim, m->dim());
    for (std::size_t t = 0; t < gp.n; ++t) {
        std::size_t block_off = 0;
        for (std::size_t c = 0; c < top.classes.representatives.size(); ++c) {
            const IdempotentModule& cover_c = top.covers[c];
            const std::size_t bd = cover_c.module->dim();
            const std::size_t mc = gc.projectivity.multiplicities[c];
            // offset of block (c, t) in the cover layout
            if (t < mc) {
                const std::size_t off = block_off + t * bd;
                const Element& eps = top.classes.representatives[c];
                // Ae -> A eps_c: x |-> x eps ; matrices in module coordinates
                Mat rmult(bd, ae_dim);
                Mat incl(ae_dim, bd);
                for (std::size_t j = 0; j < ae_dim; ++j) {
                    const Vec img = a.mul(gp.ae.space.basis_vector(j), eps.coords);
                    const Vec cc = cover_c.module_of(img);
                    for (std::size_t r = 0; r < bd; ++r) rmult.at(r, j) = cc[r];
                }
                for (std::size_t j = 0; j < bd; ++j) {
                    const Vec inc = gp.ae.module_of(cover_c.space.basis_vector(j));
                    for (std::size_t r = 0; r < ae_dim; ++r) incl.at(r, j) = inc[r];
                }
                // theta block: phi[(c,t) block] * rmult, summed over classes
                for (std::size_t r = 0; r < m->dim(); ++r)
                    for (std::size_t cidx = 0; cidx < ae_dim; ++cidx) {
                        Rat acc(0);
                        for (std::size_t k = 0; k < bd; ++k)
                            acc += phi.at(r, off + k) * rmult.at(k, cidx);
                        theta.at(r, t * ae_dim + cidx) += acc;
                    }
                // theta_check block: incl * phi_inv[(c,t) block], summed too
                for (std::size_t r = 0; r < ae_dim; ++r)
                    for (std::size_t cidx = 0; cidx < m->dim(); ++cidx) {
                        Rat acc(0);
                        for (std::size_t k = 0; k < bd; ++k)
                            acc += incl.at(r, k) * phi_inv->at(off + k, cidx);
                        theta_check.at(t * ae_dim + r, cidx) += acc;
                    }
            }
            block_off += bd * mc;
        }
    }
    gp.projection = make_morphism(gp.power.module, m, theta);
    gp.embedding = make_morphism(m, gp.power.module, theta_check);
    if (!mat_mul(gp.projection.matrix, gp.embedding.matrix).is_identity())
        throw InternalError("presentation splitting failed");

    gp.btilde = end_algebra(gp.power.module);
    gp.p = gp.btilde.algebra->element(
        gp.btilde.coords_of_operator(mat_mul(gp.embedding.matrix, gp.projection.matrix)));
    if (!is_idempotent(gp.p)) throw InternalError("presentation idempotent is not idempotent");
    if (!is_generating_idempotent(*gp.btilde.algebra, gp.p).generating)
        throw InternalError("presentation idempotent is not generating");
    return gp;
}

}  // namespace pstrace
