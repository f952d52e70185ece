#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "pstrace/errors.hpp"
#include "pstrace/suite.hpp"

using namespace pstrace;
using namespace fixtures;

#ifndef PSTRACE_DATA_DIR
#define PSTRACE_DATA_DIR "data"
#endif

namespace {
const std::string kData = PSTRACE_DATA_DIR;
}

TEST_CASE("spec parsing accepts the shipped corpus") {
    AlgebraSpec m2spec = load_spec(kData + "/corpus/m2.json");
    CHECK(!m2spec.is_graded());
    CHECK(m2spec.finite().dim() == 4);
    CHECK(m2spec.name == "m2");

    AlgebraSpec graded = load_spec(kData + "/corpus/g3_scalar.json");
    CHECK(graded.is_graded());
    CHECK(graded.graded().blocks.size() == 3);
}

TEST_CASE("spec parsing rejects malformed input") {
    CHECK_THROWS_AS(parse_spec("{", "x"), ParseError);
    CHECK_THROWS_AS(parse_spec("{\"schema\": 2, \"kind\": \"structure_constants\"}", "x"),
                    ParseError);
    CHECK_THROWS_AS(parse_spec("{\"schema\": 1, \"kind\": \"nope\"}", "x"), ParseError);
    // floating literals are not exact rationals
    CHECK_THROWS_AS(load_spec(kData + "/extra/bad_float.json"), ParseError);
    // JSON numbers are rejected for structure constants too
    CHECK_THROWS_AS(
        parse_spec("{\"schema\":1,\"kind\":\"structure_constants\",\"labels\":[\"a\"],"
                   "\"structure\":[[0,0,0,0.5]]}",
                   "x"),
        ParseError);
}

TEST_CASE("constructor invariants surface through loading") {
    CHECK_THROWS_AS(load_spec(kData + "/extra/bad_assoc.json"), NotAssociative);
    CHECK_THROWS_AS(load_spec(kData + "/extra/bad_graded.json"), InvalidModule);
}

TEST_CASE("the verification suite passes on local fixtures") {
    FiniteAlgebra a = m2();
    Report rep = verify_finite_entry("m2-fixture", a);
    for (const auto& c : rep.checks) {
        INFO(c.name << ": " << c.witness);
        CHECK(c.pass);
    }
}

TEST_CASE("verification reports are deterministic") {
    AlgebraSpec spec = load_spec(kData + "/corpus/t2.json");
    Report a = verify_entry(spec);
    Report b = verify_entry(spec);
    CHECK(report_json({a}, false) == report_json({b}, false));
}

TEST_CASE("verification fails loudly on a tampered entry") {
    // qi is simple but not split: the suite must fail, not crash
    AlgebraSpec spec = load_spec(kData + "/extra/qi.json");
    Report rep = verify_entry(spec);
    CHECK(!rep.all_pass());
}

TEST_CASE("decompose and slf reports") {
    AlgebraSpec spec = load_spec(kData + "/corpus/t2.json");
    const FiniteAlgebra& a = spec.finite();
    Report d = decompose_report(spec.name, a, a.unit());
    REQUIRE(d.checks.size() == 1);
    CHECK(d.checks[0].pass);
    CHECK(d.checks[0].witness.find("\"classes\":2") != std::string::npos);
    CHECK(d.checks[0].witness.find("\"generating\":true") != std::string::npos);

    Report s = slf_report(spec, std::nullopt);
    REQUIRE(s.checks.size() == 1);
    CHECK(s.checks[0].pass);
    CHECK(s.checks[0].witness.find("\"dim\":2") != std::string::npos);
}

TEST_CASE("nondegenerate functional search and certificates") {
    FiniteAlgebra a = m2();
    auto nd = find_nondegenerate_slf(a);
    REQUIRE(nd.has_value());
    CHECK(is_nondegenerate(a, *nd).nondegenerate);

    FiniteAlgebra t = t2();
    CHECK(!find_nondegenerate_slf(t).has_value());
    CHECK(common_gram_kernel(t).dim() > 0);  // certifies none can exist

    FiniteAlgebra d = dual_numbers();
    auto ndd = find_nondegenerate_slf(d);
    REQUIRE(ndd.has_value());
    auto deg = find_degenerate_nonzero_slf(d);
    REQUIRE(deg.has_value());
    CHECK(!vec_is_zero(deg->dual_coords));
}
