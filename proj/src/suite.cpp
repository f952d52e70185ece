#include "pstrace/suite.hpp"

#include <json.hpp>

#include <chrono>
#include <functional>

#include "pstrace/block_algebra.hpp"
#include "pstrace/errors.hpp"
#include "pstrace/trace.hpp"

namespace pstrace {

namespace {

using nlohmann::json;

struct CheckFailure {
    json witness;
};

json vec_json(const Vec& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(rat_str(x));
    return out;
}

void fail(json witness) { throw CheckFailure{std::move(witness)}; }

void expect(bool cond, const std::string& what, json witness = json::object()) {
    if (!cond) {
        witness["failed"] = what;
        fail(std::move(witness));
    }
}

void expect_functionals_equal(const LinearFunctional& got, const LinearFunctional& want,
                              const std::string& what) {
    if (!(got.dual_coords == want.dual_coords)) {
        json w;
        w["failed"] = what;
        w["got"] = vec_json(got.dual_coords);
        w["want"] = vec_json(want.dual_coords);
        fail(std::move(w));
    }
}

void run_check(Report& rep, const std::string& name, const std::string& property,
               const std::function<void()>& body) {
    CheckResult res;
    res.name = name;
    res.property = property;
    const auto start = std::chrono::steady_clock::now();
    try {
        body();
        res.pass = true;
        res.witness = "{}";
    } catch (const CheckFailure& f) {
        res.pass = false;
        res.witness = f.witness.dump();
    } catch (const Error& e) {
        res.pass = false;
        json w;
        w["error"] = e.what();
        res.witness = w.dump();
    }
    res.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                 .count();
    rep.checks.push_back(std::move(res));
}

/// Like run_check but the body returns summary data carried in the witness
/// field of a passing record.
void run_info_check(Report& rep, const std::string& name, const std::string& property,
                    const std::function<json()>& body) {
    CheckResult res;
    res.name = name;
    res.property = property;
    const auto start = std::chrono::steady_clock::now();
    try {
        res.witness = body().dump();
        res.pass = true;
    } catch (const CheckFailure& f) {
        res.pass = false;
        res.witness = f.witness.dump();
    } catch (const Error& e) {
        res.pass = false;
        json w;
        w["error"] = e.what();
        res.witness = w.dump();
    }
    res.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                 .count();
    rep.checks.push_back(std::move(res));
}

/// Right coordinate system on (Ae)^(+n) from the canonical injections and
/// projections.
RightCoordinateSystem rcs_power(const IdempotentModule& ae, const DirectSum& power) {
    RightCoordinateSystem rcs;
    rcs.bimodule = power.module;
    rcs.ae = ae;
    for (std::size_t j = 0; j < power.inclusions.size(); ++j)
        rcs.pairs.emplace_back(power.inclusions[j].matrix, power.projections[j].matrix);
    rcs.validate();
    return rcs;
}

/// Shared computations for one finite entry.
struct FiniteCtx {
    const FiniteAlgebra& a;
    RadicalData rad;
    TopData top;
    Element emin;
    IdempotentModule ae;
    LeftCoordinateSystem lcs;
    std::vector<LinearFunctional> slf_a;
    std::vector<LinearFunctional> slf_corner;

    explicit FiniteCtx(const FiniteAlgebra& alg)
        : a(alg), rad(radical(alg)), top(top_and_irreducibles(alg)),
          emin(top.classes.minimal_generating), ae(module_from_idempotent(alg, emin)),
          lcs(left_coordinate_system(alg, ae, top.classes.unit_parts.parts)),
          slf_a(slf_basis(alg)), slf_corner(slf_basis(*ae.corner.corner_algebra)) {}
};

std::vector<LinearFunctional> slf_candidates(const FiniteAlgebra& a) {
    const auto basis = slf_basis(a);
    std::vector<LinearFunctional> out = basis;
    const std::size_t k = basis.size();
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            for (int cj : {1, -1, 2, -2}) {
                Vec v = basis[i].dual_coords;
                vec_axpy(v, Rat(cj), basis[j].dual_coords);
                out.push_back(LinearFunctional{&a, std::move(v)});
            }
    for (std::size_t i = 0; i + 2 < k; ++i) {
        Vec v = basis[i].dual_coords;
        vec_axpy(v, Rat(1), basis[i + 1].dual_coords);
        vec_axpy(v, Rat(1), basis[i + 2].dual_coords);
        out.push_back(LinearFunctional{&a, std::move(v)});
    }
    return out;
}

}  // namespace

std::optional<LinearFunctional> find_nondegenerate_slf(const FiniteAlgebra& a) {
    for (const auto& psi : slf_candidates(a))
        if (is_nondegenerate(a, psi).nondegenerate) return psi;
    return std::nullopt;
}

std::optional<LinearFunctional> find_degenerate_nonzero_slf(const FiniteAlgebra& a) {
    for (const auto& psi : slf_candidates(a))
        if (!vec_is_zero(psi.dual_coords) && !is_nondegenerate(a, psi).nondegenerate) return psi;
    return std::nullopt;
}

Subspace common_gram_kernel(const FiniteAlgebra& a) {
    Subspace common = Subspace::full(a.dim());
    for (const auto& psi : slf_basis(a))
        common = subspace_intersection(common, is_nondegenerate(a, psi).kernel);
    return common;
}

Report verify_finite_entry(const std::string& name, const FiniteAlgebra& a) {
    Report rep;
    rep.entry = name;

    std::optional<FiniteCtx> ctx;
    run_check(rep, "setup", "radical, unit decomposition, generating corner, coordinate system",
              [&] { ctx.emplace(a); });
    if (!ctx) return rep;
    const FiniteAlgebra& alg = ctx->a;

    run_check(rep, "decomposition-soundness",
              "radical is a nilpotent two-sided ideal with semisimple quotient; primitive "
              "decompositions are orthogonal, complete and primitive",
              [&] {
                  const auto& rad = ctx->rad;
                  for (std::size_t r = 0; r < rad.radical.dim(); ++r)
                      for (std::size_t i = 0; i < alg.dim(); ++i) {
                          Vec b = vec_zero(alg.dim());
                          b[i] = 1;
                          expect(rad.radical.contains(alg.mul(b, rad.radical.basis_vector(r))) &&
                                     rad.radical.contains(alg.mul(rad.radical.basis_vector(r), b)),
                                 "radical closed under basis multiplication");
                      }
                  Subspace power = rad.radical;
                  for (std::size_t m = 1; m < rad.nilpotency_index; ++m) {
                      std::vector<Vec> rows;
                      for (std::size_t i = 0; i < power.dim(); ++i)
                          for (std::size_t j = 0; j < rad.radical.dim(); ++j)
                              rows.push_back(
                                  alg.mul(power.basis_vector(i), rad.radical.basis_vector(j)));
                      power = Subspace::span(alg.dim(), rows);
                  }
                  expect(power.dim() == 0, "radical power vanishes at the nilpotency index");
                  expect(radical(*rad.quotient).radical.dim() == 0, "quotient is semisimple");

                  const auto& parts = ctx->top.classes.unit_parts.parts;
                  Vec total = vec_zero(alg.dim());
                  for (std::size_t i = 0; i < parts.size(); ++i) {
                      expect(is_idempotent(parts[i]), "unit part is idempotent");
                      expect(is_primitive(alg, parts[i]), "unit part is primitive");
                      total = vec_add(total, parts[i].coords);
                      for (std::size_t j = i + 1; j < parts.size(); ++j)
                          expect(are_orthogonal(parts[i], parts[j]), "unit parts are orthogonal");
                  }
                  expect(total == alg.unit_coords(), "unit parts sum to the unit");
                  expect(is_generating_idempotent(alg, ctx->emin).generating,
                         "class representatives assemble a generating idempotent");
              });

    run_check(rep, "slf-corner-roundtrip",
              "restriction to the generating corner and the pseudotrace are mutually inverse on "
              "full SLF bases",
              [&] {
                  expect(ctx->slf_a.size() == ctx->slf_corner.size(),
                         "SLF dimensions of algebra and corner agree",
                         {{"algebra", ctx->slf_a.size()}, {"corner", ctx->slf_corner.size()}});
                  for (const auto& psi : ctx->slf_a) {
                      LinearFunctional back = pseudotrace_left_functional(
                          ctx->lcs, restrict_slf(psi, ctx->ae.corner));
                      expect_functionals_equal(back, psi, "pseudotrace of the restriction");
                  }
                  for (const auto& phi : ctx->slf_corner) {
                      LinearFunctional fwd = pseudotrace_left_functional(ctx->lcs, phi);
                      expect_functionals_equal(restrict_slf(fwd, ctx->ae.corner), phi,
                                               "restriction of the pseudotrace");
                  }
              });

    run_check(rep, "trace-independence-left",
              "distinct left coordinate systems give identical traces and trace classes",
              [&] {
                  LeftCoordinateSystem two = lcs_duplicate_halved(ctx->lcs);
                  LeftCoordinateSystem three = left_coordinate_system(
                      alg, ctx->ae, ctx->top.classes.unit_parts.parts, /*match_last=*/true);
                  for (const auto& phi : ctx->slf_corner) {
                      LinearFunctional base = pseudotrace_left_functional(ctx->lcs, phi);
                      expect_functionals_equal(pseudotrace_left_functional(two, phi), base,
                                               "duplicated system trace");
                      expect_functionals_equal(pseudotrace_left_functional(three, phi), base,
                                               "rematched system trace");
                  }
                  for (std::size_t i = 0; i < alg.dim(); ++i)
                      expect(quotient_equal(btrace(ctx->lcs, alg.basis_element(i)),
                                            btrace(three, alg.basis_element(i))),
                             "trace classes agree", {{"basis", i}});
              });

    run_check(rep, "trace-independence-right",
              "distinct right coordinate systems give identical pseudotraces",
              [&] {
                  RightCoordinateSystem rcs = rcs_identity(ctx->ae);
                  EndAlgebraData b = end_algebra(ctx->ae.module);
                  RightCoordinateSystem two = rcs_duplicate_halved(rcs);
                  IdempotentModule whole = module_from_idempotent(alg, alg.unit());
                  RightCoordinateSystem ext = rcs_extend(rcs, whole);
                  for (const auto& psi : ctx->slf_a) {
                      LinearFunctional base = pseudotrace_right_functional(rcs, b, psi);
                      expect_functionals_equal(pseudotrace_right_functional(two, b, psi), base,
                                               "duplicated right system");
                      expect_functionals_equal(pseudotrace_right_functional(ext, b, psi), base,
                                               "canonically extended right system");
                  }
              });

    run_check(rep, "trace-symmetry",
              "pseudotraces are symmetric on every basis pair, both ways", [&] {
                  for (const auto& phi : ctx->slf_corner) {
                      LinearFunctional tr = pseudotrace_left_functional(ctx->lcs, phi);
                      for (std::size_t i = 0; i < alg.dim(); ++i)
                          for (std::size_t j = 0; j < alg.dim(); ++j)
                              expect(evaluate(tr, alg.product(i, j)) ==
                                         evaluate(tr, alg.product(j, i)),
                                     "left pseudotrace symmetric", {{"i", i}, {"j", j}});
                  }
                  RightCoordinateSystem rcs = rcs_identity(ctx->ae);
                  EndAlgebraData b = end_algebra(ctx->ae.module);
                  for (const auto& psi : ctx->slf_a)
                      expect(is_symmetric(pseudotrace_right_functional(rcs, b, psi)),
                             "right pseudotrace symmetric");
              });

    run_check(rep, "slf-equivalence-roundtrip",
              "for each projective generator M: dim SLF(A) = dim SLF(End(M)^op) and the two "
              "pseudotrace maps are mutually inverse on full bases",
              [&] {
                  struct PairCase {
                      std::string label;
                      ModulePtr m;
                  };
                  std::vector<PairCase> cases;
                  cases.push_back({"column", ctx->ae.module});
                  if (!(ctx->emin == alg.unit()) && alg.dim() <= 6) {
                      IdempotentModule reg = module_from_idempotent(alg, alg.unit());
                      cases.push_back({"regular", reg.module});
                  }
                  DirectSum power = direct_sum({ctx->ae.module, ctx->ae.module});
                  EndAlgebraData btilde = end_algebra(power.module);
                  if (ctx->ae.module->dim() <= 4) {
                      Element p = btilde.algebra->element(btilde.coords_of_operator(mat_mul(
                          power.inclusions[0].matrix, power.projections[0].matrix)));
                      SummandModule sm = summand_by_idempotent(btilde, p);
                      cases.push_back({"power-summand", sm.module});
                  }

                  for (const auto& pc : cases) {
                      GeneratorPresentation gp = generator_presentation(pc.m, ctx->top);
                      EndAlgebraData bprime = end_algebra(pc.m);
                      RightCoordinateSystem rcs = rcs_from_presentation(pc.m, gp);
                      LeftCoordinateSystem base =
                          left_coordinate_system(alg, gp.ae, ctx->top.classes.unit_parts.parts);
                      LeftCoordinateSystem pow =
                          lcs_power(base, gp.ae, gp.power, gp.btilde, 0);
                      LeftCoordinateSystem lsum =
                          lcs_summand(pow, gp.btilde, gp.p, gp.embedding.matrix,
                                      gp.projection.matrix, pc.m, bprime);

                      const auto slf_b = slf_basis(*bprime.algebra);
                      expect(ctx->slf_a.size() == slf_b.size(),
                             "SLF dimensions match (" + pc.label + ")",
                             {{"algebra", ctx->slf_a.size()}, {"endomorphism", slf_b.size()}});
                      for (const auto& psi : ctx->slf_a) {
                          LinearFunctional fwd = pseudotrace_right_functional(rcs, bprime, psi);
                          LinearFunctional back = pseudotrace_left_functional(lsum, fwd);
                          expect_functionals_equal(back, psi,
                                                   "round trip on SLF(A) (" + pc.label + ")");
                      }
                      for (const auto& phi : slf_b) {
                          LinearFunctional fwd = pseudotrace_left_functional(lsum, phi);
                          LinearFunctional back = pseudotrace_right_functional(rcs, bprime, fwd);
                          expect_functionals_equal(back, phi,
                                                   "round trip on SLF(B) (" + pc.label + ")");
                      }
                  }
              });

    run_check(rep, "restriction-identities",
              "pseudotraces through a summand agree with restrictions on both sides, and the "
              "power module reproduces the base trace",
              [&] {
                  DirectSum power = direct_sum({ctx->ae.module, ctx->ae.module});
                  EndAlgebraData btilde = end_algebra(power.module);
                  LeftCoordinateSystem pow = lcs_power(ctx->lcs, ctx->ae, power, btilde, 0);
                  RightCoordinateSystem rpow = rcs_power(ctx->ae, power);

                  Element p = btilde.algebra->element(btilde.coords_of_operator(
                      mat_mul(power.inclusions[0].matrix, power.projections[0].matrix)));
                  SummandModule sm = summand_by_idempotent(btilde, p);
                  EndAlgebraData bpp = end_algebra(sm.module);
                  const Mat kappa = summand_embedding_matrix(sm.inclusion.matrix,
                                                             sm.projection.matrix, btilde, bpp);

                  // right restriction: the summand pseudotrace is the corner
                  // restriction of the ambient one
                  RightCoordinateSystem rmp = rcs_compose_summand(rpow, sm);
                  for (const auto& psi : ctx->slf_a) {
                      LinearFunctional lhs = pseudotrace_right_functional(rmp, bpp, psi);
                      for (std::size_t g = 0; g < bpp.algebra->dim(); ++g) {
                          const Rat rhs = pseudotrace_right(
                              rpow, btilde, psi, btilde.algebra->element(kappa.col(g)));
                          expect(lhs.dual_coords[g] == rhs,
                                 "summand right pseudotrace equals the restriction",
                                 {{"basis", g}});
                      }
                  }

                  // left restriction through a generating summand idempotent
                  LeftCoordinateSystem lmp = lcs_summand(pow, btilde, p, sm.inclusion.matrix,
                                                         sm.projection.matrix, sm.module, bpp);
                  for (const auto& phi : slf_basis(*btilde.algebra)) {
                      Vec restricted(bpp.algebra->dim());
                      for (std::size_t g = 0; g < bpp.algebra->dim(); ++g)
                          restricted[g] = vec_dot(phi.dual_coords, kappa.col(g));
                      LinearFunctional phi_p{bpp.algebra.get(), std::move(restricted)};
                      expect_functionals_equal(
                          pseudotrace_left_functional(lmp, phi_p),
                          pseudotrace_left_functional(pow, phi),
                          "summand left pseudotrace equals the ambient one");
                  }

                  // tensor form: phi (x) tr on the power reproduces the base trace
                  for (const auto& phi : ctx->slf_corner) {
                      LinearFunctional tensor =
                          corner_tensor_functional(ctx->ae, btilde, 2, phi);
                      expect_functionals_equal(pseudotrace_left_functional(pow, tensor),
                                               pseudotrace_left_functional(ctx->lcs, phi),
                                               "power pseudotrace collapses to the base trace");
                  }
              });

    run_check(rep, "multiplicity-form",
              "the right pseudotrace on (Ae)^(+n) equals the independently assembled corner "
              "restriction tensored with the matrix trace",
              [&] {
                  const std::size_t max_n = ctx->ae.module->dim() <= 3 ? 3 : 2;
                  for (std::size_t n = 1; n <= max_n; ++n) {
                      std::vector<ModulePtr> copies(n, ctx->ae.module);
                      DirectSum power = direct_sum(copies);
                      EndAlgebraData bn = end_algebra(power.module);
                      RightCoordinateSystem rcs = rcs_power(ctx->ae, power);
                      for (const auto& psi : ctx->slf_a) {
                          LinearFunctional got = pseudotrace_right_functional(rcs, bn, psi);
                          LinearFunctional want = corner_tensor_functional(
                              ctx->ae, bn, n, restrict_slf(psi, ctx->ae.corner));
                          expect_functionals_equal(got, want,
                                                   "tensor form at n=" + std::to_string(n));
                      }
                  }
              });

    run_check(rep, "nondegeneracy-transfer",
              "a symmetric functional is non-degenerate exactly when its pseudotrace is, and "
              "corner restriction along a generating idempotent preserves this",
              [&] {
                  RightCoordinateSystem rcs = rcs_identity(ctx->ae);
                  EndAlgebraData b = end_algebra(ctx->ae.module);

                  std::vector<LinearFunctional> tested = ctx->slf_a;
                  tested.push_back(LinearFunctional{&alg, vec_zero(alg.dim())});
                  auto nondeg = find_nondegenerate_slf(alg);
                  if (nondeg) tested.push_back(*nondeg);
                  auto degen = find_degenerate_nonzero_slf(alg);
                  if (degen) tested.push_back(*degen);
                  if (!nondeg)
                      expect(common_gram_kernel(alg).dim() > 0,
                             "absence of a non-degenerate functional is certified by a common "
                             "Gram kernel");

                  for (const auto& psi : tested) {
                      const bool nd_a = is_nondegenerate(alg, psi).nondegenerate;
                      LinearFunctional tr = pseudotrace_right_functional(rcs, b, psi);
                      const bool nd_b = is_nondegenerate(*b.algebra, tr).nondegenerate;
                      expect(nd_a == nd_b, "non-degeneracy transfers through the pseudotrace",
                             {{"psi", vec_json(psi.dual_coords)},
                              {"algebra", nd_a},
                              {"endomorphism", nd_b}});
                      const bool nd_corner =
                          is_nondegenerate(*ctx->ae.corner.corner_algebra,
                                           restrict_slf(psi, ctx->ae.corner))
                              .nondegenerate;
                      expect(nd_a == nd_corner,
                             "non-degeneracy transfers to the generating corner",
                             {{"psi", vec_json(psi.dual_coords)}});
                  }

                  // one-directional restriction along a non-generating idempotent
                  if (ctx->top.classes.classes.size() >= 2 && nondeg) {
                      const Element& f = ctx->top.classes.representatives[0];
                      CornerData fc = corner(alg, f, f);
                      expect(is_nondegenerate(*fc.corner_algebra, restrict_slf(*nondeg, fc))
                                 .nondegenerate,
                             "non-degenerate functionals restrict non-degenerately");
                  }
              });

    run_check(rep, "classification",
              "left multiplication identifies the algebra with the finitely supported "
              "endomorphisms of a projective generator over its endomorphism algebra",
              [&] {
                  const ModulePtr g = ctx->ae.module;
                  EndAlgebraData b = end_algebra(g);
                  auto bop = std::make_shared<FiniteAlgebra>(opposite_algebra(*b.algebra));
                  ModulePtr g_bop = make_module(*bop, b.action);

                  auto endos = hom_space(g_bop, g_bop);
                  expect(endos.size() == alg.dim(),
                         "endomorphism space over the base matches the algebra dimension",
                         {{"alg", alg.dim()}, {"end", endos.size()}});
                  std::vector<Vec> flat;
                  for (const auto& h : endos) flat.push_back(h.matrix.flatten());
                  Subspace span = Subspace::span(g->dim() * g->dim(), flat);
                  Mat lambda(endos.size(), alg.dim());
                  for (std::size_t i = 0; i < alg.dim(); ++i) {
                      auto coords = span.coordinates_of(g->basis_action(i).flatten());
                      expect(coords.has_value(),
                             "left multiplication lands in the endomorphism space",
                             {{"basis", i}});
                      for (std::size_t r = 0; r < endos.size(); ++r) lambda.at(r, i) = (*coords)[r];
                  }
                  expect(nullspace(lambda).dim() == 0, "left multiplication is injective");

                  TopData top_bop = top_and_irreducibles(*bop);
                  expect(is_projective_generator(g_bop, top_bop).projective_generator,
                         "the generator is a projective generator over the base");

                  // the endomorphism space restricts bijectively to a summand
                  // through a generating idempotent
                  DirectSum power = direct_sum({ctx->ae.module, ctx->ae.module});
                  EndAlgebraData btilde = end_algebra(power.module);
                  Element p = btilde.algebra->element(btilde.coords_of_operator(
                      mat_mul(power.inclusions[0].matrix, power.projections[0].matrix)));
                  SummandModule sm = summand_by_idempotent(btilde, p);
                  EndAlgebraData bpp = end_algebra(sm.module);

                  // the canonical map End(Mp)^op -> p End(power)^op p is an
                  // algebra embedding with image in the corner
                  const Mat kappa = summand_embedding_matrix(sm.inclusion.matrix,
                                                             sm.projection.matrix, btilde, bpp);
                  const FiniteAlgebra& bt = *btilde.algebra;
                  for (std::size_t x = 0; x < bpp.algebra->dim(); ++x)
                      for (std::size_t y = 0; y < bpp.algebra->dim(); ++y) {
                          Vec lhs = vec_zero(bt.dim());
                          const Vec& prod = bpp.algebra->product(x, y);
                          for (std::size_t k = 0; k < prod.size(); ++k)
                              if (sgn(prod[k]) != 0) vec_axpy(lhs, prod[k], kappa.col(k));
                          const Vec rhs = bt.mul(kappa.col(x), kappa.col(y));
                          expect(lhs == rhs, "corner map is multiplicative",
                                 {{"x", x}, {"y", y}});
                      }
                  for (std::size_t x = 0; x < bpp.algebra->dim(); ++x) {
                      const Vec img = kappa.col(x);
                      expect(bt.mul(bt.mul(p.coords, img), p.coords) == img,
                             "corner map lands in the idempotent corner", {{"x", x}});
                  }

                  auto btop = std::make_shared<FiniteAlgebra>(opposite_algebra(*btilde.algebra));
                  ModulePtr power_btop = make_module(*btop, btilde.action);
                  auto e1 = hom_space(power_btop, power_btop);
                  auto bppop = std::make_shared<FiniteAlgebra>(opposite_algebra(*bpp.algebra));
                  ModulePtr mp_bppop = make_module(*bppop, bpp.action);
                  auto e2 = hom_space(mp_bppop, mp_bppop);
                  expect(e1.size() == e2.size(),
                         "restriction preserves the endomorphism dimension",
                         {{"ambient", e1.size()}, {"summand", e2.size()}});
                  std::vector<Vec> flat2;
                  for (const auto& h : e2) flat2.push_back(h.matrix.flatten());
                  Subspace span2 = Subspace::span(sm.module->dim() * sm.module->dim(), flat2);
                  Mat restr(e2.size(), e1.size());
                  for (std::size_t i = 0; i < e1.size(); ++i) {
                      const Mat cut = mat_mul(sm.projection.matrix,
                                              mat_mul(e1[i].matrix, sm.inclusion.matrix));
                      auto coords = span2.coordinates_of(cut.flatten());
                      expect(coords.has_value(), "restriction lands in the summand endomorphisms");
                      for (std::size_t r = 0; r < e2.size(); ++r) restr.at(r, i) = (*coords)[r];
                  }
                  expect(nullspace(restr).dim() == 0, "restriction is injective");
              });

    run_check(rep, "hom-corner-dims",
              "hom spaces between cyclic projectives have the dimension of the matching corner",
              [&] {
                  std::vector<Element> idems = ctx->top.classes.unit_parts.parts;
                  idems.push_back(ctx->emin);
                  if (alg.dim() <= 8) idems.push_back(alg.unit());
                  // dedupe
                  std::vector<Element> uniq;
                  for (const auto& e : idems) {
                      bool seen = false;
                      for (const auto& u : uniq)
                          if (u == e) seen = true;
                      if (!seen) uniq.push_back(e);
                  }
                  std::vector<IdempotentModule> mods;
                  for (const auto& e : uniq) mods.push_back(module_from_idempotent(alg, e));
                  for (std::size_t i = 0; i < uniq.size(); ++i)
                      for (std::size_t j = 0; j < uniq.size(); ++j) {
                          const std::size_t hom = hom_space(mods[i].module, mods[j].module).size();
                          const std::size_t cor = corner(alg, uniq[i], uniq[j]).dim();
                          expect(hom == cor, "hom dimension equals corner dimension",
                                 {{"i", i}, {"j", j}, {"hom", hom}, {"corner", cor}});
                      }
              });

    run_check(rep, "cover-soundness",
              "cover kernels are superfluous on the cyclic test family and covers of one "
              "irreducible are linked by an isomorphism",
              [&] {
                  for (std::size_t c = 0; c < ctx->top.covers.size(); ++c) {
                      const IdempotentModule& cover = ctx->top.covers[c];
                      const std::size_t d = cover.module->dim();
                      Subspace radsub = radical_submodule(*cover.module, ctx->rad);
                      std::vector<Vec> seeds;
                      for (std::size_t j = 0; j < d; ++j) {
                          Vec v = vec_zero(d);
                          v[j] = 1;
                          seeds.push_back(v);
                          for (std::size_t r = 0; r < radsub.dim(); ++r)
                              seeds.push_back(vec_add(v, radsub.basis_vector(r)));
                      }
                      for (const Vec& seed : seeds) {
                          std::vector<Vec> span_vecs{seed};
                          for (bool grew = true; grew;) {
                              Subspace cur = Subspace::span(d, span_vecs);
                              grew = false;
                              for (std::size_t r = 0; r < cur.dim(); ++r)
                                  for (std::size_t i = 0; i < alg.dim(); ++i) {
                                      Vec w = mat_apply(cover.module->basis_action(i),
                                                        cur.basis_vector(r));
                                      if (!cur.contains(w)) {
                                          span_vecs.push_back(w);
                                          grew = true;
                                      }
                                  }
                          }
                          Subspace l = Subspace::span(d, span_vecs);
                          if (subspace_sum(l, radsub).dim() == d)
                              expect(l.dim() == d, "cyclic complement forces the whole cover",
                                     {{"class", c}});
                      }
                  }

                  // uniqueness within a class with at least two parts
                  for (std::size_t c = 0; c < ctx->top.classes.classes.size(); ++c) {
                      const auto& members = ctx->top.classes.classes[c];
                      if (members.size() < 2) continue;
                      const Element& eps1 = ctx->top.classes.unit_parts.parts[members[0]];
                      const Element& eps2 = ctx->top.classes.unit_parts.parts[members[1]];
                      IdempotentModule p1 = module_from_idempotent(alg, eps1);
                      IdempotentModule p2 = module_from_idempotent(alg, eps2);
                      QuotientModule s1 =
                          quotient_module(p1.module, radical_submodule(*p1.module, ctx->rad));
                      QuotientModule s2 =
                          quotient_module(p2.module, radical_submodule(*p2.module, ctx->rad));
                      auto sigmas = hom_space(s2.module, s1.module);
                      expect(!sigmas.empty(), "tops in one class are isomorphic");
                      const Mat want = mat_mul(sigmas[0].matrix, s2.quotient_map.matrix);
                      auto alphas = hom_space(p2.module, p1.module);
                      // solve for a combination alpha with q1 alpha = sigma q2
                      const std::size_t rows = want.rows() * want.cols();
                      Mat sys(rows, alphas.size());
                      Vec rhs(rows);
                      for (std::size_t k = 0; k < alphas.size(); ++k) {
                          const Mat m = mat_mul(s1.quotient_map.matrix, alphas[k].matrix);
                          for (std::size_t r = 0; r < want.rows(); ++r)
                              for (std::size_t cc = 0; cc < want.cols(); ++cc)
                                  sys.at(r * want.cols() + cc, k) = m.at(r, cc);
                      }
                      for (std::size_t r = 0; r < want.rows(); ++r)
                          for (std::size_t cc = 0; cc < want.cols(); ++cc)
                              rhs[r * want.cols() + cc] = want.at(r, cc);
                      auto sol = solve(sys, rhs);
                      expect(sol.has_value(), "projectivity lifts the top isomorphism");
                      Mat alpha(p1.module->dim(), p2.module->dim());
                      for (std::size_t k = 0; k < alphas.size(); ++k)
                          if (sgn((*sol)[k]) != 0)
                              alpha = mat_add(alpha, mat_scale((*sol)[k], alphas[k].matrix));
                      expect(inverse(alpha).has_value(), "the linking morphism is invertible",
                             {{"class", c}});
                  }
              });

    return rep;
}

Report verify_graded_entry(const std::string& name, const GradedRightModule& g) {
    Report rep;
    rep.entry = name;

    std::optional<BlockAlgebra> alg;
    run_check(rep, "setup", "block module laws and intertwiner spaces", [&] { alg.emplace(&g); });
    if (!alg) return rep;
    const BlockAlgebra& a = *alg;
    const std::size_t n = a.index_count();

    std::vector<std::size_t> all_indices;
    for (std::size_t i = 0; i < n; ++i) all_indices.push_back(i);

    run_check(rep, "block-axioms",
              "diagonal projections are orthogonal idempotents and finite support idempotents "
              "absorb their elements",
              [&] {
                  for (std::size_t i = 0; i < n; ++i) {
                      BlockElement ei = a.diagonal_idempotent(i);
                      expect(block_is_idempotent(a, ei), "diagonal projection is idempotent",
                             {{"index", i}});
                      for (std::size_t j = i + 1; j < n; ++j) {
                          BlockElement ej = a.diagonal_idempotent(j);
                          expect(block_mul(a, ei, ej).is_zero() &&
                                     block_mul(a, ej, ei).is_zero(),
                                 "diagonal projections are orthogonal", {{"i", i}, {"j", j}});
                      }
                  }
                  for (std::size_t i = 0; i < n; ++i)
                      for (std::size_t j = 0; j < n; ++j)
                          for (std::size_t s = 0; s < a.hom_dim(i, j); ++s) {
                              BlockElement x;
                              Vec v(a.hom_dim(i, j), Rat(0));
                              v[s] = 1;
                              x.components[{i, j}] = v;
                              BlockElement e = support_idempotent(a, x);
                              expect(block_mul(a, block_mul(a, e, x), e) == x,
                                     "support idempotent absorbs the element",
                                     {{"i", i}, {"j", j}});
                          }
              });

    run_check(rep, "corner-compatibility",
              "corner truncation multiplication matches block multiplication", [&] {
                  CornerTruncation full = corner_truncation(a, all_indices);
                  const FiniteAlgebra& c = *full.algebra;
                  for (std::size_t s = 0; s < c.dim(); ++s)
                      for (std::size_t t = 0; t < c.dim(); ++t) {
                          Vec sc = vec_zero(c.dim()), tc = vec_zero(c.dim());
                          sc[s] = 1;
                          tc[t] = 1;
                          BlockElement prod =
                              block_mul(a, full.to_block(a, sc), full.to_block(a, tc));
                          expect(full.from_block(prod) == c.product(s, t),
                                 "corner product equals block product", {{"s", s}, {"t", t}});
                      }
              });

    std::optional<BlockTraceData> td;
    run_check(rep, "generating-truncation",
              "the smallest covering prefix is validated generating against the probe truncation",
              [&] {
                  td.emplace(block_trace_data(a));
                  const auto& gt = td->truncation;
                  std::size_t max_cov = 0;
                  for (std::size_t c : gt.coverage) max_cov = std::max(max_cov, c + 1);
                  expect(gt.indices.size() == max_cov, "the covering prefix is minimal",
                         {{"prefix", gt.indices.size()}});
              });
    if (!td) return rep;

    run_check(rep, "blockwise-slf",
              "symmetric functionals pull back from the generating corner, independently of the "
              "truncation",
              [&] {
                  auto basis = block_slf_basis(a, *td);
                  // symmetry on supported pairs
                  for (const auto& f : basis)
                      for (std::size_t i = 0; i < n; ++i)
                          for (std::size_t j = 0; j < n; ++j)
                              for (std::size_t s = 0; s < a.hom_dim(i, j) && s < 2; ++s)
                                  for (std::size_t t = 0; t < a.hom_dim(j, i) && t < 2; ++t) {
                                      BlockElement x, y;
                                      Vec xs(a.hom_dim(i, j), Rat(0)), yt(a.hom_dim(j, i), Rat(0));
                                      xs[s] = 1;
                                      yt[t] = 1;
                                      x.components[{i, j}] = xs;
                                      y.components[{j, i}] = yt;
                                      expect(f.evaluate(a, block_mul(a, x, y)) ==
                                                 f.evaluate(a, block_mul(a, y, x)),
                                             "blockwise functional is symmetric",
                                             {{"i", i}, {"j", j}});
                                  }

                  // independence: pull back from the probe truncation instead
                  BlockTraceData td2;
                  td2.truncation.indices = td->truncation.probe.indices;
                  td2.truncation.corner = td->truncation.probe;
                  td2.truncation.probe = td->truncation.probe;
                  td2.truncation.e_in_probe = td->truncation.probe.algebra->unit();
                  td2.truncation.coverage = td->truncation.coverage;
                  td2.witnesses.resize(n);
                  for (std::size_t d = 0; d < n; ++d) {
                      if (a.graded().blocks[d].dim == 0) continue;
                      std::vector<std::size_t> idx = td2.truncation.indices;
                      if (std::find(idx.begin(), idx.end(), d) == idx.end()) {
                          idx.push_back(d);
                          std::sort(idx.begin(), idx.end());
                      }
                      CornerTruncation local = corner_truncation(a, idx);
                      const FiniteAlgebra& c = *local.algebra;
                      const Element ed = c.element(local.from_block(a.diagonal_idempotent(d)));
                      const Element eg = c.element(
                          local.from_block(a.partial_unit(td2.truncation.indices)));
                      const auto dparts = primitive_orthogonal_decomposition(c, ed);
                      const auto gparts = primitive_orthogonal_decomposition(c, eg);
                      for (const Element& gp : dparts.parts) {
                          std::optional<EquivalenceWitness> w;
                          for (const Element& eps : gparts.parts)
                              if ((w = idempotents_equivalent(c, gp, eps))) break;
                          expect(w.has_value(), "diagonal primitive tied to the probe corner");
                          td2.witnesses[d].push_back({local.to_block(a, w->u.coords),
                                                      local.to_block(a, w->v.coords)});
                      }
                  }
                  auto basis2 = block_slf_basis(a, td2);
                  expect(basis.size() == basis2.size(), "SLF dimensions agree across truncations",
                         {{"small", basis.size()}, {"probe", basis2.size()}});

                  // spanning evaluations must generate the same row space
                  std::vector<BlockElement> spanning;
                  for (std::size_t i = 0; i < n; ++i)
                      for (std::size_t j = 0; j < n; ++j)
                          for (std::size_t s = 0; s < a.hom_dim(i, j); ++s) {
                              BlockElement x;
                              Vec v(a.hom_dim(i, j), Rat(0));
                              v[s] = 1;
                              x.components[{i, j}] = v;
                              spanning.push_back(std::move(x));
                          }
                  std::vector<Vec> rows1, rows2;
                  for (const auto& f : basis) {
                      Vec row;
                      for (const auto& x : spanning) row.push_back(f.evaluate(a, x));
                      rows1.push_back(std::move(row));
                  }
                  for (const auto& f : basis2) {
                      Vec row;
                      for (const auto& x : spanning) row.push_back(f.evaluate(a, x));
                      rows2.push_back(std::move(row));
                  }
                  expect(Subspace::span(spanning.size(), rows1) ==
                             Subspace::span(spanning.size(), rows2),
                         "pulled-back SLF spaces agree across truncations");
              });

    run_check(rep, "block-trace-dense",
              "over a scalar base the pulled-back functional is the dense matrix trace on every "
              "truncation prefix",
              [&] {
                  if (g.base->dim() != 1) return;  // the cross-check targets scalar towers
                  auto basis = block_slf_basis(a, *td);
                  expect(basis.size() == 1, "scalar towers carry one symmetric functional");
                  // normalise at the first diagonal unit
                  const Rat unitval = basis[0].evaluate(a, a.diagonal_idempotent(0));
                  expect(sgn(unitval) != 0, "functional does not vanish on the diagonal");
                  for (std::size_t len = 1; len <= n; ++len) {
                      std::vector<std::size_t> prefix;
                      for (std::size_t i = 0; i < len; ++i) prefix.push_back(i);
                      CornerTruncation ct = corner_truncation(a, prefix);
                      for (std::size_t s = 0; s < ct.algebra->dim(); ++s) {
                          Vec sc = vec_zero(ct.algebra->dim());
                          sc[s] = 1;
                          const BlockElement x = ct.to_block(a, sc);
                          // dense trace of the block matrix
                          Rat dense(0);
                          for (const auto& [key, comp] : x.components)
                              if (key.first == key.second) {
                                  Mat m = a.component_matrix(x, key.first, key.second);
                                  for (std::size_t r = 0; r < m.rows(); ++r) dense += m.at(r, r);
                              }
                          expect(basis[0].evaluate(a, x) == unitval * dense,
                                 "block trace equals the dense matrix trace",
                                 {{"prefix", len}, {"basis", s}});
                      }
                  }
              });

    run_check(rep, "blockwise-nondegeneracy",
              "the blockwise pairing criterion matches the finite corner criterion and separates "
              "the designed extremes",
              [&] {
                  auto basis = block_slf_basis(a, *td);
                  const FiniteAlgebra& cfull = *td->truncation.probe.algebra;
                  for (const auto& f : basis) {
                      auto nd = block_is_nondegenerate(a, f);
                      // corner criterion over the probe truncation
                      Vec coords(cfull.dim());
                      for (std::size_t s = 0; s < cfull.dim(); ++s) {
                          Vec sc = vec_zero(cfull.dim());
                          sc[s] = 1;
                          coords[s] = f.evaluate(a, td->truncation.probe.to_block(a, sc));
                      }
                      LinearFunctional on_corner{&cfull, std::move(coords)};
                      // when the probe spans all declared indices the two
                      // criteria must agree
                      if (td->truncation.probe.indices.size() == n)
                          expect(nd.nondegenerate ==
                                     is_nondegenerate(cfull, on_corner).nondegenerate,
                                 "blockwise and corner criteria agree");
                  }
                  // the zero functional is always degenerate
                  BlockFunctional zero{LinearFunctional{td->truncation.corner.algebra.get(),
                                                        vec_zero(td->truncation.corner.algebra->dim())},
                                       &*td};
                  expect(!block_is_nondegenerate(a, zero).nondegenerate,
                         "zero functional is degenerate");
              });

    run_check(rep, "classification-blockwise",
              "left block multiplication identifies each block pair with the intertwiners of the "
              "column slabs over the generating corner, and the slabs form a projective "
              "generator",
              [&] {
                  const auto& gt = td->truncation;
                  auto bop = std::make_shared<FiniteAlgebra>(opposite_algebra(*gt.corner.algebra));
                  TopData top_bop = top_and_irreducibles(*bop);

                  std::vector<ModulePtr> slabs;
                  std::vector<bool> covered(top_bop.irreducibles.size(), false);
                  for (std::size_t i = 0; i < n; ++i) {
                      ModulePtr slab = column_slab_module(a, gt.corner, *bop, i);
                      if (slab->dim() > 0) {
                          auto pc = is_projective(slab, top_bop);
                          expect(pc.projective, "column slab is projective over the base",
                                 {{"index", i}});
                          for (std::size_t c = 0; c < top_bop.irreducibles.size(); ++c)
                              if (!covered[c] &&
                                  !hom_space(slab, top_bop.irreducibles[c].module).empty())
                                  covered[c] = true;
                      }
                      slabs.push_back(std::move(slab));
                  }
                  for (std::size_t c = 0; c < covered.size(); ++c)
                      expect(covered[c], "every base irreducible receives a slab epimorphism",
                             {{"class", c}});

                  for (std::size_t i = 0; i < n; ++i)
                      for (std::size_t ip = 0; ip < n; ++ip) {
                          if (slabs[i]->dim() == 0 && slabs[ip]->dim() == 0) continue;
                          auto homs = hom_space(slabs[ip], slabs[i]);
                          expect(homs.size() == a.hom_dim(i, ip),
                                 "block space dimension matches the slab intertwiners",
                                 {{"i", i}, {"ip", ip}, {"hom", homs.size()},
                                  {"block", a.hom_dim(i, ip)}});
                          if (a.hom_dim(i, ip) == 0) continue;
                          // left multiplication lands there injectively
                          std::vector<Vec> flat;
                          for (const auto& h : homs) flat.push_back(h.matrix.flatten());
                          Subspace span =
                              Subspace::span(slabs[i]->dim() * slabs[ip]->dim(), flat);
                          Mat lambda(homs.size(), a.hom_dim(i, ip));
                          // slab coordinates: (j, beta) pairs in index order
                          std::vector<std::pair<std::size_t, std::size_t>> coords_ip, coords_i;
                          for (std::size_t j : gt.corner.indices)
                              for (std::size_t b = 0; b < a.hom_dim(ip, j); ++b)
                                  coords_ip.push_back({j, b});
                          for (std::size_t j : gt.corner.indices)
                              for (std::size_t b = 0; b < a.hom_dim(i, j); ++b)
                                  coords_i.push_back({j, b});
                          for (std::size_t alpha = 0; alpha < a.hom_dim(i, ip); ++alpha) {
                              Mat op(slabs[i]->dim(), slabs[ip]->dim());
                              for (std::size_t c = 0; c < coords_ip.size(); ++c) {
                                  const auto [j, beta] = coords_ip[c];
                                  const Mat prod = mat_mul(a.hom_basis(i, ip)[alpha],
                                                           a.hom_basis(ip, j)[beta]);
                                  auto pc = a.hom_span(i, j).coordinates_of(prod.flatten());
                                  expect(pc.has_value(), "left multiplication stays blockwise");
                                  for (std::size_t r = 0; r < coords_i.size(); ++r) {
                                      const auto [jr, br] = coords_i[r];
                                      if (jr == j) op.at(r, c) = (*pc)[br];
                                  }
                              }
                              auto oc = span.coordinates_of(op.flatten());
                              expect(oc.has_value(),
                                     "left multiplication is a slab intertwiner");
                              for (std::size_t r = 0; r < homs.size(); ++r)
                                  lambda.at(r, alpha) = (*oc)[r];
                          }
                          expect(nullspace(lambda).dim() == 0,
                                 "left multiplication is injective on the block",
                                 {{"i", i}, {"ip", ip}});
                      }
              });

    return rep;
}

Report verify_entry(const AlgebraSpec& spec) {
    if (spec.is_graded()) return verify_graded_entry(spec.name, spec.graded());
    return verify_finite_entry(spec.name, spec.finite());
}

Report decompose_report(const std::string& name, const FiniteAlgebra& a, const Element& e) {
    Report rep;
    rep.entry = name;
    run_info_check(rep, "decompose",
                   "radical data, primitive decomposition, equivalence classes, generating status",
                   [&]() -> json {
                       const RadicalData rad = radical(a);
                       const auto pd = primitive_orthogonal_decomposition(a, e);
                       const auto uc = unit_equivalence_classes(a);
                       const auto gen = is_generating_idempotent(a, e);
                       json w;
                       w["radical_dim"] = rad.radical.dim();
                       w["nilpotency_index"] = rad.nilpotency_index;
                       w["parts"] = pd.parts.size();
                       w["classes"] = uc.classes.size();
                       w["generating"] = gen.generating;
                       json parts = json::array();
                       for (const auto& p : pd.parts) parts.push_back(vec_json(p.coords));
                       w["part_coords"] = parts;
                       json missing = json::array();
                       for (const auto& m : gen.missing) missing.push_back(vec_json(m.coords));
                       w["missing"] = missing;
                       return w;
                   });
    return rep;
}

Report slf_report(const AlgebraSpec& spec, const std::optional<std::string>& corner_coords) {
    Report rep;
    rep.entry = spec.name;
    if (spec.is_graded()) {
        run_info_check(rep, "slf", "blockwise SLF dimension and corner description",
                       [&]() -> json {
                           BlockAlgebra a(&spec.graded());
                           BlockTraceData td = block_trace_data(a);
                           auto basis = block_slf_basis(a, td);
                           json w;
                           w["dim"] = basis.size();
                           w["corner_indices"] = td.truncation.indices;
                           return w;
                       });
        return rep;
    }
    run_info_check(rep, "slf", "SLF dimension, corner restriction, and the round trip",
                   [&]() -> json {
                       const FiniteAlgebra& a = spec.finite();
                       const auto uc = unit_equivalence_classes(a);
                       Element e = uc.minimal_generating;
                       if (corner_coords) e = a.element(parse_coords(*corner_coords, a));
                       IdempotentModule ae = module_from_idempotent(a, e);
                       LeftCoordinateSystem lcs = left_coordinate_system(a, ae, uc.unit_parts.parts);
                       const auto sa = slf_basis(a);
                       const auto sc = slf_basis(*ae.corner.corner_algebra);
                       expect(sa.size() == sc.size(), "corner SLF dimension matches");
                       for (const auto& psi : sa)
                           expect_functionals_equal(
                               pseudotrace_left_functional(lcs, restrict_slf(psi, ae.corner)), psi,
                               "round trip");
                       json w;
                       w["dim"] = sa.size();
                       json fb = json::array();
                       for (const auto& psi : sa) fb.push_back(vec_json(psi.dual_coords));
                       w["basis"] = fb;
                       return w;
                   });
    return rep;
}

}  // namespace pstrace
