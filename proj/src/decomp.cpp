#include "pstrace/decomp.hpp"

#include <algorithm>
#include <array>

#include "pstrace/errors.hpp"

namespace pstrace {

namespace {

Rat matrix_trace(const Mat& m) {
    Rat t(0);
    for (std::size_t i = 0; i < m.rows(); ++i) t += m.at(i, i);
    return t;
}

/// Subspace spanned by {x*y : x in xs, y in ys}.
Subspace product_span(const FiniteAlgebra& a, const Subspace& xs, const Subspace& ys) {
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < xs.dim(); ++i)
        for (std::size_t j = 0; j < ys.dim(); ++j)
            rows.push_back(a.mul(xs.basis_vector(i), ys.basis_vector(j)));
    return Subspace::span(a.dim(), rows);
}

/// First nonzero non-invertible element from a deterministic candidate list,
/// or nullopt (in a division algebra there is none).
std::optional<Vec> find_non_invertible(const FiniteAlgebra& a) {
    const std::size_t n = a.dim();
    auto try_candidate = [&](const Vec& z) -> bool {
        return !vec_is_zero(z) && rank_of(a.left_mult_matrix(z)) < n;
    };
    for (std::size_t i = 0; i < n; ++i) {
        Vec z = vec_zero(n);
        z[i] = 1;
        if (try_candidate(z)) return z;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Vec z = a.product(i, j);
            if (try_candidate(z)) return z;
        }
    const std::vector<std::pair<int, int>> weights = {{1, 1}, {1, -1}, {1, 2}, {2, 1}, {1, -2}, {2, -1}};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (auto [ci, cj] : weights) {
                Vec z = vec_zero(n);
                z[i] = ci;
                z[j] = cj;
                if (try_candidate(z)) return z;
            }
    const std::vector<std::array<int, 3>> tw = {{1, 1, 1}, {1, 1, -1}, {1, -1, 1}, {1, -1, -1}};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                for (const auto& w : tw) {
                    Vec z = vec_zero(n);
                    z[i] = w[0];
                    z[j] = w[1];
                    z[k] = w[2];
                    if (try_candidate(z)) return z;
                }
    return std::nullopt;
}

/// Minimal polynomial of the first non-scalar basis element: the reported
/// witness when a corner fails to split.
std::string non_split_witness(const FiniteAlgebra& a) {
    for (std::size_t i = 0; i < a.dim(); ++i) {
        Vec p = minimal_polynomial(a.left_mult_matrix(a.basis_element(i).coords));
        if (p.size() > 2) return poly_str(p);
    }
    return poly_str(minimal_polynomial(a.left_mult_matrix(a.unit_coords())));
}

/// Full orthogonal primitive family of the unit of a split semisimple
/// algebra, in that algebra's own coordinates.
std::vector<Vec> split_unit_rec(const FiniteAlgebra& s) {
    const std::size_t n = s.dim();
    if (n == 0) return {};
    if (n == 1) return {s.unit_coords()};

    auto z = find_non_invertible(s);
    if (!z) throw NotSplit(non_split_witness(s));

    // The left ideal S z is proper and nonzero; its right identity is a
    // nontrivial idempotent (semisimplicity guarantees one exists).
    std::vector<Vec> ideal_rows;
    for (std::size_t i = 0; i < n; ++i) {
        Vec b = vec_zero(n);
        b[i] = 1;
        ideal_rows.push_back(s.mul(b, *z));
    }
    Subspace ideal = Subspace::span(n, ideal_rows);
    if (ideal.dim() == 0 || ideal.dim() == n)
        throw InternalError("left ideal of a non-invertible element is not proper");
    const std::size_t k = ideal.dim();
    // unknowns: coordinates of e in the ideal basis; equations: v_r e = v_r
    // (a right identity of the left ideal, which semisimplicity provides).
    Mat sys(k * n, k);
    Vec rhs(k * n, Rat(0));
    for (std::size_t r = 0; r < k; ++r) {
        const Vec v = ideal.basis_vector(r);
        const Mat lm = s.left_mult_matrix(v);  // e -> v*e
        for (std::size_t row = 0; row < n; ++row) {
            for (std::size_t c = 0; c < k; ++c) {
                // coefficient of ideal-basis c in (v_r * e) at coordinate row
                Rat acc(0);
                const Vec bc = ideal.basis_vector(c);
                for (std::size_t t = 0; t < n; ++t)
                    if (sgn(lm.at(row, t)) != 0 && sgn(bc[t]) != 0) acc += lm.at(row, t) * bc[t];
                sys.at(r * n + row, c) = acc;
            }
            rhs[r * n + row] = v[row];
        }
    }
    auto sol = solve(sys, rhs);
    if (!sol) throw InternalError("no right identity in a left ideal of a semisimple algebra");
    const Vec e = ideal.from_coordinates(*sol);
    if (vec_is_zero(e) || s.mul(e, e) != e)
        throw InternalError("right identity is not a nontrivial idempotent");
    const Vec ec = vec_sub(s.unit_coords(), e);

    std::vector<Vec> parts;
    for (const Vec& idem : {e, ec}) {
        if (vec_is_zero(idem)) continue;
        // corner of the semisimple algebra at this idempotent
        std::vector<Vec> spanning;
        for (std::size_t i = 0; i < n; ++i) {
            Vec b = vec_zero(n);
            b[i] = 1;
            spanning.push_back(s.mul(s.mul(idem, b), idem));
        }
        Subspace corner_space = Subspace::span(n, spanning);
        const std::size_t m = corner_space.dim();
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < m; ++i) labels.push_back("s" + std::to_string(i));
        std::vector<Vec> table(m * m, vec_zero(m));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                auto c = corner_space.coordinates_of(
                    s.mul(corner_space.basis_vector(i), corner_space.basis_vector(j)));
                if (!c) throw InternalError("corner not closed under multiplication");
                table[i * m + j] = *c;
            }
        auto u = corner_space.coordinates_of(idem);
        if (!u) throw InternalError("idempotent missing from its own corner");
        FiniteAlgebra sub(std::move(labels), std::move(table), *u);
        for (const Vec& sub_part : split_unit_rec(sub))
            parts.push_back(corner_space.from_coordinates(sub_part));
    }
    return parts;
}

void require_idempotent(const Element& e) {
    if (!is_idempotent(e)) throw NotIdempotent();
}

}  // namespace

Vec minimal_polynomial(const Mat& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("minimal_polynomial: square required");
    const std::size_t n = m.rows();
    std::vector<Vec> powers;  // flattened m^0, m^1, ...
    Mat p = Mat::identity(n);
    powers.push_back(p.flatten());
    for (std::size_t d = 1; d <= n * n + 1; ++d) {
        p = mat_mul(p, m);
        const Vec target = p.flatten();
        // is m^d a combination of lower powers?
        Mat cols(n * n, d);
        for (std::size_t c = 0; c < d; ++c)
            for (std::size_t r = 0; r < n * n; ++r) cols.at(r, c) = powers[c][r];
        if (auto coeffs = solve(cols, target)) {
            Vec poly(d + 1, Rat(0));
            for (std::size_t c = 0; c < d; ++c) poly[c] = -(*coeffs)[c];
            poly[d] = 1;
            return poly;
        }
        powers.push_back(target);
    }
    throw InternalError("minimal polynomial search did not terminate");
}

std::string poly_str(const Vec& coeffs) {
    std::string out;
    for (std::size_t d = coeffs.size(); d-- > 0;) {
        if (sgn(coeffs[d]) == 0) continue;
        const bool lead = out.empty();
        const Rat c = coeffs[d];
        if (!lead) out += sgn(c) > 0 ? " + " : " - ";
        else if (sgn(c) < 0)
            out += "-";
        const Rat mag = abs(c);
        if (mag != Rat(1) || d == 0) out += rat_str(mag);
        if (d >= 1) {
            if (mag != Rat(1)) out += "*";
            out += "t";
            if (d >= 2) out += "^" + std::to_string(d);
        }
    }
    return out.empty() ? "0" : out;
}

RadicalData radical(const FiniteAlgebra& a) {
    if (!a.is_unital()) throw NotUnital();
    const std::size_t n = a.dim();

    // trace form T[i][j] = tr(L_{b_i b_j}); radical = {x : T^T x = 0}
    Vec basis_traces(n);
    for (std::size_t k = 0; k < n; ++k) {
        Vec b = vec_zero(n);
        b[k] = 1;
        basis_traces[k] = matrix_trace(a.left_mult_matrix(b));
    }
    Mat t(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t.at(i, j) = vec_dot(a.product(i, j), basis_traces);

    RadicalData rd;
    rd.radical = nullspace(t.transpose());

    // two-sided ideal re-check
    for (std::size_t r = 0; r < rd.radical.dim(); ++r)
        for (std::size_t i = 0; i < n; ++i) {
            Vec b = vec_zero(n);
            b[i] = 1;
            if (!rd.radical.contains(a.mul(b, rd.radical.basis_vector(r))) ||
                !rd.radical.contains(a.mul(rd.radical.basis_vector(r), b)))
                throw InternalError("radical candidate is not a two-sided ideal");
        }

    // nilpotency index: power up until the product span dies
    rd.nilpotency_index = 1;
    Subspace power = rd.radical;
    while (power.dim() > 0) {
        power = product_span(a, power, rd.radical);
        ++rd.nilpotency_index;
        if (rd.nilpotency_index > n + 1) throw InternalError("radical is not nilpotent");
    }
    if (rd.radical.dim() == 0) rd.nilpotency_index = 1;

    // quotient on the complement of the pivot coordinates
    const auto& pivots = rd.radical.pivots();
    std::vector<bool> is_pivot(n, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    const std::size_t q = free_cols.size();

    rd.section = Mat(n, q);
    for (std::size_t tcol = 0; tcol < q; ++tcol) rd.section.at(free_cols[tcol], tcol) = 1;
    rd.projection = Mat(q, n);
    for (std::size_t tcol = 0; tcol < q; ++tcol) {
        rd.projection.at(tcol, free_cols[tcol]) = 1;
        for (std::size_t s = 0; s < pivots.size(); ++s)
            rd.projection.at(tcol, pivots[s]) = -rd.radical.basis().at(s, free_cols[tcol]);
    }

    std::vector<std::string> labels;
    for (std::size_t i = 0; i < q; ++i) labels.push_back("q" + std::to_string(i));
    std::vector<Vec> table(q * q, vec_zero(q));
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j) {
            Vec prod = a.mul(rd.section.col(i), rd.section.col(j));
            table[i * q + j] = mat_apply(rd.projection, prod);
        }
    Vec qunit = mat_apply(rd.projection, a.unit_coords());
    rd.quotient = std::make_shared<FiniteAlgebra>(std::move(labels), std::move(table), qunit);

    // semisimplification is idempotent: the quotient's own trace-form kernel
    // must vanish
    {
        const FiniteAlgebra& qa = *rd.quotient;
        Vec traces(q);
        for (std::size_t k = 0; k < q; ++k) {
            Vec b = vec_zero(q);
            b[k] = 1;
            traces[k] = matrix_trace(qa.left_mult_matrix(b));
        }
        Mat tq(q, q);
        for (std::size_t i = 0; i < q; ++i)
            for (std::size_t j = 0; j < q; ++j) tq.at(i, j) = vec_dot(qa.product(i, j), traces);
        if (nullspace(tq).dim() != 0) throw InternalError("semisimple quotient has a radical");
    }
    return rd;
}

std::vector<Element> split_semisimple_unit(const FiniteAlgebra& ss) {
    std::vector<Element> out;
    for (Vec& v : split_unit_rec(ss)) out.push_back(ss.element(std::move(v)));
    return out;
}

WedderburnData wedderburn_split(const FiniteAlgebra& ss) {
    if (!ss.is_unital()) throw NotUnital();
    const std::size_t n = ss.dim();

    // center = {x : b_k x = x b_k for all k}
    std::vector<Vec> constraint_rows;
    for (std::size_t k = 0; k < n; ++k) {
        Vec b = vec_zero(n);
        b[k] = 1;
        const Mat d = mat_sub(ss.left_mult_matrix(b), ss.right_mult_matrix(b));
        for (std::size_t r = 0; r < n; ++r) constraint_rows.push_back(d.row(r));
    }
    const Subspace center = nullspace(Mat::from_rows(constraint_rows, n));
    const std::size_t zdim = center.dim();
    std::vector<std::string> zl;
    for (std::size_t i = 0; i < zdim; ++i) zl.push_back("z" + std::to_string(i));
    std::vector<Vec> ztable(zdim * zdim, vec_zero(zdim));
    for (std::size_t i = 0; i < zdim; ++i)
        for (std::size_t j = 0; j < zdim; ++j) {
            auto c = center.coordinates_of(ss.mul(center.basis_vector(i), center.basis_vector(j)));
            if (!c) throw InternalError("center is not closed under multiplication");
            ztable[i * zdim + j] = *c;
        }
    auto zunit = center.coordinates_of(ss.unit_coords());
    if (!zunit) throw InternalError("unit missing from the center");
    FiniteAlgebra z(std::move(zl), std::move(ztable), *zunit);

    WedderburnData wd;
    for (const Vec& c : split_unit_rec(z))
        wd.central_idempotents.push_back(ss.element(center.from_coordinates(c)));

    std::vector<Element> family = split_semisimple_unit(ss);
    for (const Element& c : wd.central_idempotents) {
        WedderburnBlock blk;
        std::size_t count = 0;
        for (const Element& eps : family)
            if (mul(eps, c) == eps) {
                if (count == 0) blk.primitive = eps;
                ++count;
            }
        blk.matrix_size = count;
        // split block <=> full matrix algebra: dim cAc = size^2 and the
        // primitive corner is one-dimensional
        const CornerData cc = corner(ss, c, c);
        if (cc.dim() != count * count) throw NotSplit(non_split_witness(*cc.corner_algebra));
        const CornerData pc = corner(ss, blk.primitive, blk.primitive);
        if (pc.dim() != 1) throw NotSplit(non_split_witness(*pc.corner_algebra));
        wd.blocks.push_back(std::move(blk));
    }

    Vec total = vec_zero(n);
    for (const Element& c : wd.central_idempotents) total = vec_add(total, c.coords);
    if (total != ss.unit_coords())
        throw InternalError("central idempotents do not sum to the unit");
    return wd;
}

Element lift_idempotent(const FiniteAlgebra& a, const Element& approx, const RadicalData& rad) {
    if (approx.algebra != &a) throw AlgebraMismatch();
    const Vec defect = vec_sub(a.mul(approx.coords, approx.coords), approx.coords);
    if (!rad.radical.contains(defect))
        throw PreconditionFailed("element is not idempotent modulo the radical");
    Vec e = approx.coords;
    for (std::size_t iter = 0; iter <= rad.nilpotency_index + 2; ++iter) {
        const Vec e2 = a.mul(e, e);
        if (e2 == e) return a.element(e);
        const Vec e3 = a.mul(e2, e);
        e = vec_sub(vec_scale(Rat(3), e2), vec_scale(Rat(2), e3));
    }
    throw InternalError("idempotent lift did not converge");
}

bool is_primitive(const FiniteAlgebra& a, const Element& e) {
    if (e.algebra != &a) throw AlgebraMismatch();
    if (e.is_zero()) throw PreconditionFailed("zero is not a primitive idempotent");
    require_idempotent(e);
    const CornerData c = corner(a, e, e);
    const RadicalData rd = radical(*c.corner_algebra);
    if (rd.quotient->dim() == 1) return true;
    split_semisimple_unit(*rd.quotient);  // propagates NotSplit when undecidable
    return false;
}

PrimitiveDecomposition primitive_orthogonal_decomposition(const FiniteAlgebra& a,
                                                          const Element& e) {
    if (e.algebra != &a) throw AlgebraMismatch();
    require_idempotent(e);
    PrimitiveDecomposition out{e, {}};
    if (e.is_zero()) return out;

    const CornerData cd = corner(a, e, e);
    const FiniteAlgebra& c = *cd.corner_algebra;
    const RadicalData rd = radical(c);
    const std::vector<Element> qparts = split_semisimple_unit(*rd.quotient);

    // lift sequentially; each new lift is squeezed into the corner orthogonal
    // to the previous ones before iterating
    std::vector<Vec> lifted;
    Vec used = vec_zero(c.dim());
    for (const Element& qp : qparts) {
        Vec g = mat_apply(rd.section, qp.coords);
        const Vec h = vec_sub(c.unit_coords(), used);
        g = c.mul(c.mul(h, g), h);
        Element l = lift_idempotent(c, c.element(g), rd);
        used = vec_add(used, l.coords);
        lifted.push_back(l.coords);
    }
    if (used != c.unit_coords()) throw InternalError("lifted family does not sum to the unit");
    for (std::size_t i = 0; i < lifted.size(); ++i)
        for (std::size_t j = i + 1; j < lifted.size(); ++j)
            if (!vec_is_zero(c.mul(lifted[i], lifted[j])) ||
                !vec_is_zero(c.mul(lifted[j], lifted[i])))
                throw InternalError("lifted family is not orthogonal");

    for (const Vec& l : lifted) {
        Element part = a.element(cd.to_ambient(l));
        if (!is_primitive(a, part)) {
            // defensive: refine any non-primitive part in place
            auto sub = primitive_orthogonal_decomposition(a, part);
            for (auto& p : sub.parts) out.parts.push_back(p);
        } else {
            out.parts.push_back(part);
        }
    }
    return out;
}

namespace {

std::optional<EquivalenceWitness> primitives_equivalent(const FiniteAlgebra& a, const Element& eps,
                                                        const Element& delta) {
    if (eps == delta) return EquivalenceWitness{eps, eps};
    const CornerData ef = corner(a, eps, delta);
    const CornerData fe = corner(a, delta, eps);
    if (ef.dim() == 0 || fe.dim() == 0) return std::nullopt;

    const CornerData ee = corner(a, eps, eps);
    const RadicalData rd = radical(*ee.corner_algebra);
    // rad(eps A eps) pulled back to ambient coordinates
    std::vector<Vec> rad_rows;
    for (std::size_t r = 0; r < rd.radical.dim(); ++r)
        rad_rows.push_back(ee.to_ambient(rd.radical.basis_vector(r)));
    const Subspace rad_amb = Subspace::span(a.dim(), rad_rows);

    // The corner eps A eps is local: u v falls outside its radical exactly
    // when it is invertible there, and then (u, v (uv)^-1) is a witness.
    for (std::size_t i = 0; i < ef.dim(); ++i)
        for (std::size_t j = 0; j < fe.dim(); ++j) {
            const Vec u = ef.space.basis_vector(i);
            const Vec v = fe.space.basis_vector(j);
            const Vec w0 = a.mul(u, v);
            if (rad_amb.contains(w0)) continue;
            const FiniteAlgebra& cc = *ee.corner_algebra;
            auto winv = solve(cc.left_mult_matrix(ee.to_corner(w0)), cc.unit_coords());
            if (!winv) throw InternalError("non-radical corner element is not invertible");
            const Vec w = ee.to_ambient(*winv);
            Element U = a.element(u);
            Element V = a.element(a.mul(v, w));
            if (mul(U, V) != eps || mul(V, U) != delta ||
                !is_partial_isometry_pair(U, V).ok)
                throw InternalError("constructed witness failed validation");
            return EquivalenceWitness{U, V};
        }
    return std::nullopt;
}

}  // namespace

std::optional<EquivalenceWitness> idempotents_equivalent(const FiniteAlgebra& a, const Element& e,
                                                         const Element& f) {
    if (e.algebra != &a || f.algebra != &a) throw AlgebraMismatch();
    require_idempotent(e);
    require_idempotent(f);
    if (e == f) return EquivalenceWitness{e, e};

    const auto de = primitive_orthogonal_decomposition(a, e);
    const auto df = primitive_orthogonal_decomposition(a, f);
    if (de.parts.size() != df.parts.size()) return std::nullopt;

    std::vector<bool> taken(df.parts.size(), false);
    Vec u = vec_zero(a.dim()), v = vec_zero(a.dim());
    for (const Element& eps : de.parts) {
        bool matched = false;
        for (std::size_t j = 0; j < df.parts.size(); ++j) {
            if (taken[j]) continue;
            if (auto w = primitives_equivalent(a, eps, df.parts[j])) {
                taken[j] = true;
                u = vec_add(u, w->u.coords);
                v = vec_add(v, w->v.coords);
                matched = true;
                break;
            }
        }
        if (!matched) return std::nullopt;
    }
    EquivalenceWitness w{a.element(u), a.element(v)};
    if (mul(w.u, w.v) != e || mul(w.v, w.u) != f || !is_partial_isometry_pair(w.u, w.v).ok)
        throw InternalError("assembled witness failed validation");
    return w;
}

GeneratingCheck is_generating_idempotent(const FiniteAlgebra& a, const Element& e) {
    require_idempotent(e);
    const auto de = primitive_orthogonal_decomposition(a, e);
    const auto du = primitive_orthogonal_decomposition(a, a.unit());
    GeneratingCheck out;
    for (const Element& eta : du.parts) {
        bool covered = false;
        for (const Element& eps : de.parts)
            if (primitives_equivalent(a, eta, eps)) {
                covered = true;
                break;
            }
        if (!covered) out.missing.push_back(eta);
    }
    out.generating = out.missing.empty();
    return out;
}

UnitClasses unit_equivalence_classes(const FiniteAlgebra& a) {
    UnitClasses uc;
    uc.unit_parts = primitive_orthogonal_decomposition(a, a.unit());
    const auto& parts = uc.unit_parts.parts;
    std::vector<long> cls(parts.size(), -1);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (cls[i] >= 0) continue;
        cls[i] = static_cast<long>(uc.classes.size());
        uc.classes.push_back({i});
        for (std::size_t j = i + 1; j < parts.size(); ++j)
            if (cls[j] < 0 && primitives_equivalent(a, parts[i], parts[j])) {
                cls[j] = cls[i];
                uc.classes.back().push_back(j);
            }
        uc.representatives.push_back(parts[i]);
    }
    Vec g = vec_zero(a.dim());
    for (const Element& r : uc.representatives) g = vec_add(g, r.coords);
    uc.minimal_generating = a.element(g);
    return uc;
}

}  // namespace pstrace
