#include "pstrace/algebra.hpp"

#include <atomic>

#include "pstrace/errors.hpp"

namespace pstrace {

namespace {

void require_same_algebra(const Element& x, const Element& y) {
    if (x.algebra != y.algebra || x.algebra == nullptr) throw AlgebraMismatch();
}

}  // namespace

FiniteAlgebra::FiniteAlgebra(std::vector<std::string> labels, std::vector<Vec> table,
                             std::optional<Vec> unit)
    : labels_(std::move(labels)), dim_(labels_.size()), table_(std::move(table)),
      unit_(std::move(unit)) {
    if (table_.size() != dim_ * dim_) throw DimensionMismatch("structure table size");
    for (const auto& v : table_)
        if (v.size() != dim_) throw DimensionMismatch("structure table entry length");

    // Associativity on every basis triple: (b_i b_j) b_k == b_i (b_j b_k).
    std::atomic<long> bad(-1);
#pragma omp parallel for schedule(dynamic) if (dim_ >= 8)
    for (long ij = 0; ij < static_cast<long>(dim_ * dim_); ++ij) {
        if (bad.load(std::memory_order_relaxed) >= 0) continue;
        const std::size_t i = ij / dim_, j = ij % dim_;
        for (std::size_t k = 0; k < dim_; ++k) {
            Vec lhs = vec_zero(dim_), rhs = vec_zero(dim_);
            const Vec& ij_prod = product(i, j);
            for (std::size_t l = 0; l < dim_; ++l)
                if (sgn(ij_prod[l]) != 0) vec_axpy(lhs, ij_prod[l], product(l, k));
            const Vec& jk_prod = product(j, k);
            for (std::size_t l = 0; l < dim_; ++l)
                if (sgn(jk_prod[l]) != 0) vec_axpy(rhs, jk_prod[l], product(i, l));
            if (lhs != rhs) {
                bad.store(static_cast<long>(ij * dim_ + k), std::memory_order_relaxed);
                break;
            }
        }
    }
    if (bad.load() >= 0) {
        const std::size_t w = static_cast<std::size_t>(bad.load());
        throw NotAssociative(w / (dim_ * dim_), (w / dim_) % dim_, w % dim_);
    }

    if (unit_) {
        if (unit_->size() != dim_) throw DimensionMismatch("unit length");
        for (std::size_t i = 0; i < dim_; ++i) {
            Vec b = vec_zero(dim_);
            b[i] = 1;
            if (mul(*unit_, b) != b || mul(b, *unit_) != b) throw BadUnit(i);
        }
    }
}

const Vec& FiniteAlgebra::unit_coords() const {
    if (!unit_) throw NotUnital();
    return *unit_;
}

Vec FiniteAlgebra::mul(const Vec& x, const Vec& y) const {
    if (x.size() != dim_ || y.size() != dim_) throw DimensionMismatch("FiniteAlgebra::mul");
    Vec out = vec_zero(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        if (sgn(x[i]) == 0) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (sgn(y[j]) == 0) continue;
            const Rat c = x[i] * y[j];
            vec_axpy(out, c, product(i, j));
        }
    }
    return out;
}

Mat FiniteAlgebra::left_mult_matrix(const Vec& x) const {
    Mat m(dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
        Vec col = vec_zero(dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            if (sgn(x[i]) != 0) vec_axpy(col, x[i], product(i, j));
        for (std::size_t k = 0; k < dim_; ++k) m.at(k, j) = col[k];
    }
    return m;
}

Mat FiniteAlgebra::right_mult_matrix(const Vec& x) const {
    Mat m(dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
        Vec col = vec_zero(dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            if (sgn(x[i]) != 0) vec_axpy(col, x[i], product(j, i));
        for (std::size_t k = 0; k < dim_; ++k) m.at(k, j) = col[k];
    }
    return m;
}

Element FiniteAlgebra::element(Vec coords) const {
    if (coords.size() != dim_) throw DimensionMismatch("FiniteAlgebra::element");
    return Element{this, std::move(coords)};
}

Element FiniteAlgebra::basis_element(std::size_t i) const {
    Vec v = vec_zero(dim_);
    v.at(i) = 1;
    return Element{this, std::move(v)};
}

Element FiniteAlgebra::unit() const { return Element{this, unit_coords()}; }

std::vector<std::size_t> generating_subset(const FiniteAlgebra& a) {
    const std::size_t n = a.dim();
    // Greedy: add basis elements not yet in the multiplicative closure of the
    // chosen set, until the closure spans everything.
    Subspace closure(n);
    std::vector<std::size_t> gens;
    for (std::size_t i = 0; i < n && closure.dim() < n; ++i) {
        Vec b = vec_zero(n);
        b[i] = 1;
        if (closure.contains(b)) continue;
        gens.push_back(i);
        std::vector<Vec> spanning;
        for (std::size_t r = 0; r < closure.dim(); ++r) spanning.push_back(closure.basis_vector(r));
        spanning.push_back(b);
        closure = Subspace::span(n, spanning);
        for (bool grew = true; grew;) {
            grew = false;
            Subspace bigger = closure;
            for (std::size_t r = 0; r < closure.dim(); ++r)
                for (std::size_t s = 0; s < closure.dim(); ++s) {
                    Vec p = a.mul(closure.basis_vector(r), closure.basis_vector(s));
                    if (!bigger.contains(p)) {
                        std::vector<Vec> rows;
                        for (std::size_t t = 0; t < bigger.dim(); ++t)
                            rows.push_back(bigger.basis_vector(t));
                        rows.push_back(std::move(p));
                        bigger = Subspace::span(n, rows);
                    }
                }
            if (bigger.dim() > closure.dim()) {
                closure = bigger;
                grew = true;
            }
        }
    }
    return gens;
}

FiniteAlgebra make_algebra(std::vector<std::string> labels,
                           const std::vector<StructureTriple>& structure,
                           std::optional<Vec> unit) {
    const std::size_t n = labels.size();
    std::vector<Vec> table(n * n, vec_zero(n));
    for (const auto& t : structure) {
        if (t.i >= n || t.j >= n || t.k >= n) throw DimensionMismatch("structure triple index");
        table[t.i * n + t.j][t.k] += t.c;
    }
    return FiniteAlgebra(std::move(labels), std::move(table), std::move(unit));
}

FiniteAlgebra opposite_algebra(const FiniteAlgebra& a) {
    const std::size_t n = a.dim();
    std::vector<Vec> table(n * n, vec_zero(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) table[i * n + j] = a.product(j, i);
    std::optional<Vec> unit;
    if (a.is_unital()) unit = a.unit_coords();
    return FiniteAlgebra(a.labels(), std::move(table), std::move(unit));
}

FiniteAlgebra unitalize(const FiniteAlgebra& a) {
    const std::size_t n = a.dim(), m = n + 1;
    std::vector<std::string> labels = a.labels();
    labels.push_back("one");
    std::vector<Vec> table(m * m, vec_zero(m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Vec& p = a.product(i, j);
            for (std::size_t k = 0; k < n; ++k) table[i * m + j][k] = p[k];
        }
    for (std::size_t i = 0; i < m; ++i) {
        table[i * m + n] = vec_zero(m);
        table[i * m + n][i] = 1;  // x * 1 = x
        table[n * m + i] = vec_zero(m);
        table[n * m + i][i] = 1;  // 1 * x = x
    }
    Vec unit = vec_zero(m);
    unit[n] = 1;
    return FiniteAlgebra(std::move(labels), std::move(table), unit);
}

Element mul(const Element& x, const Element& y) {
    require_same_algebra(x, y);
    return Element{x.algebra, x.algebra->mul(x.coords, y.coords)};
}

Element add(const Element& x, const Element& y) {
    require_same_algebra(x, y);
    return Element{x.algebra, vec_add(x.coords, y.coords)};
}

Element sub(const Element& x, const Element& y) {
    require_same_algebra(x, y);
    return Element{x.algebra, vec_sub(x.coords, y.coords)};
}

Element scale(const Rat& c, const Element& x) { return Element{x.algebra, vec_scale(c, x.coords)}; }

bool is_idempotent(const Element& e) { return mul(e, e) == e; }

bool idempotent_leq(const Element& e, const Element& f) {
    return mul(e, f) == e && mul(f, e) == e;
}

bool are_orthogonal(const Element& e, const Element& f) {
    return mul(e, f).is_zero() && mul(f, e).is_zero();
}

PartialIsometryCheck is_partial_isometry_pair(const Element& u, const Element& v) {
    require_same_algebra(u, v);
    PartialIsometryCheck out;
    out.p = mul(v, u);
    out.q = mul(u, v);
    out.ok = is_idempotent(out.p) && is_idempotent(out.q) &&
             mul(mul(out.q, u), out.p) == u && mul(mul(out.p, v), out.q) == v;
    return out;
}

Vec CornerData::to_corner(const Vec& ambient) const {
    auto c = space.coordinates_of(ambient);
    if (!c) throw PreconditionFailed("vector is not in the corner subspace");
    return *c;
}

Vec CornerData::to_ambient(const Vec& corner_coords) const {
    return space.from_coordinates(corner_coords);
}

CornerData corner(const FiniteAlgebra& a, const Element& e, const Element& f) {
    if (e.algebra != &a || f.algebra != &a) throw AlgebraMismatch();
    if (!is_idempotent(e) || !is_idempotent(f)) throw NotIdempotent();
    const std::size_t n = a.dim();
    std::vector<Vec> spanning;
    for (std::size_t i = 0; i < n; ++i) {
        Vec b = vec_zero(n);
        b[i] = 1;
        spanning.push_back(a.mul(a.mul(e.coords, b), f.coords));
    }
    CornerData cd;
    cd.e = e;
    cd.f = f;
    cd.space = Subspace::span(n, spanning);
    const std::size_t k = cd.space.dim();
    cd.inclusion = Mat(n, k);
    for (std::size_t c = 0; c < k; ++c) {
        Vec b = cd.space.basis_vector(c);
        for (std::size_t r = 0; r < n; ++r) cd.inclusion.at(r, c) = b[r];
    }
    cd.projection = Mat(k, n);
    for (std::size_t r = 0; r < k; ++r) cd.projection.at(r, cd.space.pivots()[r]) = 1;

    if (e == f) {
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < k; ++i) labels.push_back("c" + std::to_string(i));
        std::vector<Vec> table(k * k, vec_zero(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                Vec prod = a.mul(cd.space.basis_vector(i), cd.space.basis_vector(j));
                auto coords = cd.space.coordinates_of(prod);
                if (!coords) throw InternalError("corner product left the corner span");
                table[i * k + j] = *coords;
            }
        auto unit = cd.space.coordinates_of(e.coords);
        if (!unit) throw InternalError("corner idempotent not in its own corner");
        cd.corner_algebra =
            std::make_shared<FiniteAlgebra>(std::move(labels), std::move(table), *unit);
    }
    return cd;
}

Subspace commutator_subspace(const FiniteAlgebra& a) {
    const std::size_t n = a.dim();
    std::vector<Vec> rows;
    rows.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            rows.push_back(vec_sub(a.product(i, j), a.product(j, i)));
    return Subspace::span(n, rows);
}

std::vector<LinearFunctional> slf_basis(const FiniteAlgebra& a) {
    const Subspace comm = commutator_subspace(a);
    const Subspace ann = annihilator(comm);
    std::vector<LinearFunctional> out;
    for (std::size_t i = 0; i < ann.dim(); ++i)
        out.push_back(LinearFunctional{&a, ann.basis_vector(i)});
    return out;
}

bool is_symmetric(const LinearFunctional& psi) {
    const Subspace comm = commutator_subspace(*psi.algebra);
    for (std::size_t i = 0; i < comm.dim(); ++i)
        if (sgn(vec_dot(psi.dual_coords, comm.basis_vector(i))) != 0) return false;
    return true;
}

Rat evaluate(const LinearFunctional& psi, const Vec& x) { return vec_dot(psi.dual_coords, x); }

Rat evaluate(const LinearFunctional& psi, const Element& x) {
    if (psi.algebra != x.algebra) throw AlgebraMismatch();
    return evaluate(psi, x.coords);
}

NondegeneracyResult is_nondegenerate(const FiniteAlgebra& a, const LinearFunctional& psi) {
    if (psi.algebra != &a) throw AlgebraMismatch();
    if (!a.is_unital()) throw NotUnital();
    if (!is_symmetric(psi)) throw NotSymmetric();
    const std::size_t n = a.dim();
    // kernel = {x : psi(x b_j) = 0 for all j}; row i, column j holds psi(b_i b_j).
    Mat gram(n, n);
#pragma omp parallel for schedule(static) if (n >= 8)
    for (long i = 0; i < static_cast<long>(n); ++i)
        for (std::size_t j = 0; j < n; ++j)
            gram.at(static_cast<std::size_t>(i), j) =
                evaluate(psi, a.product(static_cast<std::size_t>(i), j));
    NondegeneracyResult res{false, nullspace(gram.transpose())};
    res.nondegenerate = res.kernel.dim() == 0;
    return res;
}

}  // namespace pstrace
