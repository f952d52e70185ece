#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "pstrace/errors.hpp"

using namespace pstrace;
using namespace fixtures;

TEST_CASE("make_algebra accepts matrix units and dual numbers") {
    FiniteAlgebra a = m2();
    CHECK(a.dim() == 4);
    CHECK(a.is_unital());

    FiniteAlgebra d = dual_numbers();
    CHECK(mul(d.basis_element(1), d.basis_element(1)).is_zero());
}

TEST_CASE("make_algebra rejects tampered structure constants") {
    // Corrupt e11*e12 so that (e11 e12) e22 != e11 (e12 e22).
    std::vector<StructureTriple> s;
    auto idx = [](std::size_t i, std::size_t j) { return 2 * i + j; };
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l)
                    if (j == k) s.push_back({idx(i, j), idx(k, l), idx(i, l), Rat(1)});
    s.push_back({idx(0, 0), idx(0, 1), idx(1, 0), Rat(1)});  // e11*e12 += e21
    CHECK_THROWS_AS(make_algebra({"e11", "e12", "e21", "e22"}, s), NotAssociative);
}

TEST_CASE("make_algebra rejects a bad unit") {
    std::vector<StructureTriple> s = {{0, 0, 0, Rat(1)}};
    Vec unit = vec_zero(2);
    unit[0] = 1;
    // b1 * unit = 0 != b1
    CHECK_THROWS_AS(make_algebra({"a", "b"}, s, unit), BadUnit);
}

TEST_CASE("multiplication follows the matrix-unit rule") {
    FiniteAlgebra a = m2();
    // e12 * e21 = e11
    CHECK(mul(a.basis_element(1), a.basis_element(2)) == a.basis_element(0));
    CHECK(mul(a.unit(), a.basis_element(2)) == a.basis_element(2));
    CHECK_THROWS_AS(mul(a.basis_element(0), m2().basis_element(0)), AlgebraMismatch);
}

TEST_CASE("idempotent predicates") {
    FiniteAlgebra a = m2();
    Element e11 = a.basis_element(0), e22 = a.basis_element(3);
    CHECK(is_idempotent(e11));
    CHECK(!is_idempotent(a.basis_element(1)));
    CHECK(idempotent_leq(e11, a.unit()));
    CHECK(!idempotent_leq(a.unit(), e11));
    CHECK(are_orthogonal(e11, e22));
    CHECK(!are_orthogonal(e11, e11));
}

TEST_CASE("partial isometry pairs") {
    FiniteAlgebra a = m2();
    Element e11 = a.basis_element(0), e12 = a.basis_element(1), e21 = a.basis_element(2),
            e22 = a.basis_element(3);

    auto pc = is_partial_isometry_pair(e12, e21);
    CHECK(pc.ok);
    CHECK(pc.p == e22);  // e21 e12
    CHECK(pc.q == e11);  // e12 e21

    auto same = is_partial_isometry_pair(e11, e11);
    CHECK(same.ok);
    CHECK(same.p == e11);

    // vu = uv = 0 but u != 0*u*0
    CHECK(!is_partial_isometry_pair(e12, e12).ok);

    // swapping the pair swaps p and q
    auto sw = is_partial_isometry_pair(e21, e12);
    CHECK(sw.ok);
    CHECK(sw.p == pc.q);
    CHECK(sw.q == pc.p);
}

TEST_CASE("corners") {
    FiniteAlgebra a = m2();
    Element e11 = a.basis_element(0);

    CornerData c = corner(a, e11, e11);
    CHECK(c.dim() == 1);
    REQUIRE(c.corner_algebra);
    CHECK(c.corner_algebra->dim() == 1);  // ground field
    CHECK(c.corner_algebra->is_unital());

    FiniteAlgebra t = t2();
    CornerData off = corner(t, t.basis_element(0), t.basis_element(2));
    CHECK(off.dim() == 1);
    CHECK(off.space.contains(t.basis_element(1).coords));  // span{e12}
    CHECK(!off.corner_algebra);

    CornerData whole = corner(a, a.unit(), a.unit());
    CHECK(whole.dim() == 4);

    CHECK_THROWS_AS(corner(a, a.basis_element(1), e11), NotIdempotent);
}

TEST_CASE("corner algebra multiplication agrees with the ambient one") {
    FiniteAlgebra a = q_times_m2();
    // e = (1,0) + (0,e11): corner eAe is 2-dimensional
    Element e = elem(a, {1, 1, 0, 0, 0});
    REQUIRE(is_idempotent(e));
    CornerData c = corner(a, e, e);
    CHECK(c.dim() == 2);
    const FiniteAlgebra& ca = *c.corner_algebra;
    for (std::size_t i = 0; i < ca.dim(); ++i)
        for (std::size_t j = 0; j < ca.dim(); ++j) {
            Vec inside = ca.product(i, j);
            Vec ambient = a.mul(c.space.basis_vector(i), c.space.basis_vector(j));
            CHECK(c.to_ambient(inside) == ambient);
        }
    CHECK(ca.unit_coords() == c.to_corner(e.coords));
}

TEST_CASE("commutator subspaces") {
    CHECK(commutator_subspace(m2()).dim() == 3);
    CHECK(commutator_subspace(m2()).dim() == oracle_commutator_dim(m2()));
    CHECK(commutator_subspace(dual_numbers()).dim() == 0);

    FiniteAlgebra t = t2();
    Subspace c = commutator_subspace(t);
    CHECK(c.dim() == 1);
    CHECK(c.contains(t.basis_element(1).coords));
    CHECK(c.dim() == oracle_commutator_dim(t));
}

TEST_CASE("slf bases") {
    FiniteAlgebra a = m2();
    auto basis = slf_basis(a);
    REQUIRE(basis.size() == 1);
    // spanned by the matrix trace: values on e11,e12,e21,e22 proportional to 1,0,0,1
    const Vec& t = basis[0].dual_coords;
    CHECK(t[0] == t[3]);
    CHECK(sgn(t[0]) != 0);
    CHECK(sgn(t[1]) == 0);
    CHECK(sgn(t[2]) == 0);

    FiniteAlgebra d = dual_numbers(), tri = t2();
    CHECK(slf_basis(d).size() == 2);
    CHECK(slf_basis(tri).size() == 2);
    for (const auto& f : slf_basis(tri)) {
        CHECK(is_symmetric(f));
        CHECK(sgn(f.dual_coords[1]) == 0);  // vanishes on e12
    }
    CHECK(slf_basis(a).size() == a.dim() - commutator_subspace(a).dim());
}

TEST_CASE("is_symmetric witnesses") {
    FiniteAlgebra a = m2();
    LinearFunctional trace{&a, {Rat(1), Rat(0), Rat(0), Rat(1)}};
    CHECK(is_symmetric(trace));
    // coordinate functional of e12: psi([e11,e12]) = psi(e12) = 1
    LinearFunctional bad{&a, {Rat(0), Rat(1), Rat(0), Rat(0)}};
    CHECK(!is_symmetric(bad));

    FiniteAlgebra d = dual_numbers();
    LinearFunctional any{&d, {Rat(3), Rat(-7)}};
    CHECK(is_symmetric(any));
}

TEST_CASE("non-degeneracy via the Gram matrix") {
    FiniteAlgebra a = m2();
    LinearFunctional trace{&a, {Rat(1), Rat(0), Rat(0), Rat(1)}};
    auto r = is_nondegenerate(a, trace);
    CHECK(r.nondegenerate);
    CHECK(r.kernel.dim() == 0);

    FiniteAlgebra q3 = qx3();
    LinearFunctional anti{&q3, {Rat(0), Rat(0), Rat(1)}};
    CHECK(is_nondegenerate(q3, anti).nondegenerate);
    LinearFunctional deg{&q3, {Rat(1), Rat(0), Rat(0)}};
    auto dr = is_nondegenerate(q3, deg);
    CHECK(!dr.nondegenerate);

    // every symmetric functional on T2 is degenerate, with e12 in the kernel
    FiniteAlgebra t = t2();
    for (const auto& psi : slf_basis(t)) {
        auto tr = is_nondegenerate(t, psi);
        CHECK(!tr.nondegenerate);
        CHECK(tr.kernel.contains(t.basis_element(1).coords));
    }

    LinearFunctional notsym{&a, {Rat(0), Rat(1), Rat(0), Rat(0)}};
    CHECK_THROWS_AS(is_nondegenerate(a, notsym), NotSymmetric);
}

TEST_CASE("unitalize adjoins a working unit") {
    // span{x} with x^2 = 0, non-unital
    FiniteAlgebra n = make_algebra({"x"}, {});
    CHECK(!n.is_unital());
    FiniteAlgebra u = unitalize(n);
    CHECK(u.dim() == 2);
    CHECK(u.is_unital());
    CHECK(mul(u.basis_element(0), u.basis_element(0)).is_zero());
}

TEST_CASE("opposite algebra reverses products") {
    FiniteAlgebra a = m2();
    FiniteAlgebra op = opposite_algebra(a);
    // in the opposite, e12 *op e21 = e21 e12 = e22
    CHECK(mul(op.basis_element(1), op.basis_element(2)) == op.basis_element(3));
}

TEST_CASE("generating subsets really generate") {
    for (const FiniteAlgebra& a : {m2(), t2(), qx3(), q_times_m2(), t3()}) {
        auto gens = generating_subset(a);
        CHECK(!gens.empty());
        CHECK(gens.size() <= a.dim());
        // closure check: span of all words in the generators is everything
        std::vector<Vec> words;
        for (auto g : gens) words.push_back(a.basis_element(g).coords);
        for (int round = 0; round < 4; ++round) {
            const std::size_t before = words.size();
            for (std::size_t i = 0; i < before; ++i)
                for (auto g : gens) words.push_back(a.mul(words[i], a.basis_element(g).coords));
            if (Subspace::span(a.dim(), words).dim() == a.dim()) break;
        }
        CHECK(Subspace::span(a.dim(), words).dim() == a.dim());
    }
}
