#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "pstrace/decomp.hpp"
#include "pstrace/errors.hpp"

using namespace pstrace;
using namespace fixtures;

namespace {

// Q x Q, basis u1, u2.
FiniteAlgebra q_times_q() {
    std::vector<StructureTriple> s = {{0, 0, 0, Rat(1)}, {1, 1, 1, Rat(1)}};
    Vec unit{Rat(1), Rat(1)};
    return make_algebra({"u1", "u2"}, s, unit);
}

// Trace-form kernel dimension computed with the test-local elimination.
std::size_t oracle_radical_dim(const FiniteAlgebra& a) {
    const std::size_t n = a.dim();
    auto trace_of = [&](const Vec& x) {
        Mat l = a.left_mult_matrix(x);
        Rat t(0);
        for (std::size_t i = 0; i < n; ++i) t += l.at(i, i);
        return t;
    };
    std::vector<Vec> rows;  // row j: functionals x -> tr(L_{x b_j}) over the basis
    for (std::size_t j = 0; j < n; ++j) {
        Vec row(n);
        for (std::size_t i = 0; i < n; ++i) row[i] = trace_of(a.product(i, j));
        rows.push_back(row);
    }
    return n - oracle_rank(std::move(rows), n);
}

}  // namespace

TEST_CASE("radical of semisimple algebras is zero") {
    FiniteAlgebra a = m2();
    RadicalData rd = radical(a);
    CHECK(rd.radical.dim() == 0);
    CHECK(rd.nilpotency_index == 1);
    CHECK(rd.quotient->dim() == 4);
    CHECK(oracle_radical_dim(a) == 0);
}

TEST_CASE("radical of the triangular algebra") {
    FiniteAlgebra t = t2();
    RadicalData rd = radical(t);
    CHECK(rd.radical.dim() == 1);
    CHECK(rd.radical.contains(t.basis_element(1).coords));  // span{e12}
    CHECK(rd.nilpotency_index == 2);
    CHECK(rd.quotient->dim() == 2);
    CHECK(oracle_radical_dim(t) == 1);

    // projection/section bridge: projection * section = identity
    CHECK(mat_mul(rd.projection, rd.section).is_identity());
}

TEST_CASE("radical of Q[x]/(x^3)") {
    FiniteAlgebra a = qx3();
    RadicalData rd = radical(a);
    CHECK(rd.radical.dim() == 2);
    CHECK(rd.radical.contains(a.basis_element(1).coords));
    CHECK(rd.radical.contains(a.basis_element(2).coords));
    CHECK(rd.nilpotency_index == 3);
    CHECK(oracle_radical_dim(a) == 2);
}

TEST_CASE("radical demands a unit") {
    FiniteAlgebra n = make_algebra({"x"}, {});
    CHECK_THROWS_AS(radical(n), NotUnital);
    CHECK(radical(unitalize(n)).radical.dim() == 1);
}

TEST_CASE("wedderburn data for Q x Q") {
    FiniteAlgebra a = q_times_q();
    WedderburnData wd = wedderburn_split(a);
    REQUIRE(wd.central_idempotents.size() == 2);
    for (const auto& c : wd.central_idempotents) CHECK(is_idempotent(c));
    CHECK(are_orthogonal(wd.central_idempotents[0], wd.central_idempotents[1]));
    for (const auto& b : wd.blocks) CHECK(b.matrix_size == 1);
}

TEST_CASE("wedderburn data for M2") {
    FiniteAlgebra a = m2();
    WedderburnData wd = wedderburn_split(a);
    REQUIRE(wd.central_idempotents.size() == 1);
    CHECK(wd.central_idempotents[0] == a.unit());
    REQUIRE(wd.blocks.size() == 1);
    CHECK(wd.blocks[0].matrix_size == 2);
    CHECK(corner(a, wd.blocks[0].primitive, wd.blocks[0].primitive).dim() == 1);
}

TEST_CASE("field extensions are rejected as not split") {
    FiniteAlgebra k = qi();
    CHECK_THROWS_AS(wedderburn_split(k), NotSplit);
    try {
        wedderburn_split(k);
    } catch (const NotSplit& e) {
        CHECK(e.minimal_polynomial == "t^2 + 1");
    }
}

TEST_CASE("idempotent lifting") {
    FiniteAlgebra t = t2();
    RadicalData rd = radical(t);
    Element e11 = t.basis_element(0);
    CHECK(lift_idempotent(t, e11, rd) == e11);  // fixed point

    Element e11_plus_e12 = elem(t, {1, 1, 0});
    CHECK(is_idempotent(e11_plus_e12));
    CHECK(lift_idempotent(t, e11_plus_e12, rd) == e11_plus_e12);

    FiniteAlgebra d = dual_numbers();
    RadicalData rdd = radical(d);
    Element one_plus_x = elem(d, {1, 1});
    CHECK(lift_idempotent(d, one_plus_x, rdd) == d.unit());  // 3(1+2x) - 2(1+3x) = 1

    Element x = d.basis_element(1);
    CHECK(lift_idempotent(d, x, rdd).is_zero());  // x is zero mod the radical
    CHECK_THROWS_AS(lift_idempotent(t, elem(t, {2, 0, 0}), rd), PreconditionFailed);
}

TEST_CASE("primitive decompositions") {
    FiniteAlgebra a = m2();
    auto pd = primitive_orthogonal_decomposition(a, a.unit());
    REQUIRE(pd.parts.size() == 2);
    Vec total = vec_zero(4);
    for (const auto& p : pd.parts) {
        CHECK(is_idempotent(p));
        CHECK(is_primitive(a, p));
        total = vec_add(total, p.coords);
    }
    CHECK(total == a.unit_coords());
    CHECK(are_orthogonal(pd.parts[0], pd.parts[1]));
    CHECK(idempotents_equivalent(a, pd.parts[0], a.basis_element(0)).has_value());

    FiniteAlgebra t = t2();
    auto td = primitive_orthogonal_decomposition(t, t.unit());
    REQUIRE(td.parts.size() == 2);
    CHECK(((td.parts[0] == t.basis_element(0) && td.parts[1] == t.basis_element(2)) ||
           (td.parts[0] == t.basis_element(2) && td.parts[1] == t.basis_element(0))));

    // a primitive idempotent decomposes as itself
    auto single = primitive_orthogonal_decomposition(a, a.basis_element(0));
    REQUIRE(single.parts.size() == 1);
    CHECK(single.parts[0] == a.basis_element(0));
}

TEST_CASE("three-class triangular example") {
    FiniteAlgebra t = t3();
    RadicalData rd = radical(t);
    CHECK(rd.radical.dim() == 3);
    CHECK(rd.nilpotency_index == 3);
    auto pd = primitive_orthogonal_decomposition(t, t.unit());
    CHECK(pd.parts.size() == 3);
    auto uc = unit_equivalence_classes(t);
    CHECK(uc.classes.size() == 3);
    CHECK(uc.minimal_generating == t.unit());
}

TEST_CASE("is_primitive") {
    FiniteAlgebra a = m2();
    CHECK(is_primitive(a, a.basis_element(0)));
    CHECK(!is_primitive(a, a.unit()));
    FiniteAlgebra d = dual_numbers();
    CHECK(is_primitive(d, d.unit()));  // local algebra
    FiniteAlgebra k = qi();
    CHECK_THROWS_AS(is_primitive(k, k.unit()), NotSplit);
}

TEST_CASE("idempotent equivalence and witnesses") {
    FiniteAlgebra a = m2();
    Element e11 = a.basis_element(0), e22 = a.basis_element(3);
    auto w = idempotents_equivalent(a, e11, e22);
    REQUIRE(w.has_value());
    CHECK(w->u == a.basis_element(1));  // e12
    CHECK(w->v == a.basis_element(2));  // e21
    CHECK(mul(w->u, w->v) == e11);
    CHECK(mul(w->v, w->u) == e22);

    // reflexive
    auto refl = idempotents_equivalent(a, e11, e11);
    REQUIRE(refl.has_value());
    CHECK(refl->u == e11);

    // symmetric: swapping the witness components works
    CHECK(is_partial_isometry_pair(w->v, w->u).ok);

    // transitive: composed witnesses validate
    auto w2 = idempotents_equivalent(a, e22, e11);
    REQUIRE(w2.has_value());
    Element cu = mul(w->u, w2->u), cv = mul(w2->v, w->v);
    CHECK(mul(cu, cv) == e11);
    CHECK(mul(cv, cu) == e11);
    CHECK(is_partial_isometry_pair(cu, cv).ok);

    // inequivalent pair in T2: e22 T2 e11 = 0
    FiniteAlgebra t = t2();
    CHECK(!idempotents_equivalent(t, t.basis_element(0), t.basis_element(2)).has_value());

    // equivalent idempotents have corners of equal dimension
    CHECK(corner(a, e11, e11).dim() == corner(a, e22, e22).dim());
}

TEST_CASE("generating idempotents") {
    FiniteAlgebra a = m2();
    auto g = is_generating_idempotent(a, a.basis_element(0));
    CHECK(g.generating);
    CHECK(g.missing.empty());

    FiniteAlgebra t = t2();
    auto gt = is_generating_idempotent(t, t.basis_element(0));
    CHECK(!gt.generating);
    REQUIRE(gt.missing.size() == 1);
    CHECK(gt.missing[0] == t.basis_element(2));

    for (FiniteAlgebra alg : {m2(), t2(), qx3(), q_times_m2()})
        CHECK(is_generating_idempotent(alg, alg.unit()).generating);
}

TEST_CASE("unit classes of mixed product algebra") {
    FiniteAlgebra a = q_times_m2();
    auto uc = unit_equivalence_classes(a);
    CHECK(uc.unit_parts.parts.size() == 3);
    CHECK(uc.classes.size() == 2);
    CHECK(is_generating_idempotent(a, uc.minimal_generating).generating);
    // the minimal generating idempotent has a 2-dimensional corner here
    CHECK(corner(a, uc.minimal_generating, uc.minimal_generating).dim() == 2);
}

TEST_CASE("equivalence classes in M3") {
    FiniteAlgebra a = mn(3);
    auto uc = unit_equivalence_classes(a);
    CHECK(uc.unit_parts.parts.size() == 3);
    CHECK(uc.classes.size() == 1);
    CHECK(corner(a, uc.minimal_generating, uc.minimal_generating).dim() == 1);
}

TEST_CASE("minimal polynomial helper") {
    FiniteAlgebra k = qi();
    Vec p = minimal_polynomial(k.left_mult_matrix(k.basis_element(1).coords));
    REQUIRE(p.size() == 3);
    CHECK(p[0] == Rat(1));
    CHECK(p[1] == Rat(0));
    CHECK(p[2] == Rat(1));
    CHECK(poly_str(p) == "t^2 + 1");
    CHECK(poly_str(minimal_polynomial(Mat::identity(3))) == "t - 1");
}
