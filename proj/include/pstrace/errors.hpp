#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pstrace {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error("parse error: " + what) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& what) : Error("dimension mismatch: " + what) {}
};

struct AlgebraMismatch : Error {
    AlgebraMismatch() : Error("elements belong to different algebras") {}
};

/// Structure constants fail associativity; carries the witness basis triple.
struct NotAssociative : Error {
    std::size_t i, j, k;
    NotAssociative(std::size_t i_, std::size_t j_, std::size_t k_)
        : Error("structure constants not associative at basis triple (" + std::to_string(i_) + "," +
                std::to_string(j_) + "," + std::to_string(k_) + ")"),
          i(i_), j(j_), k(k_) {}
};

/// Claimed unit fails on a basis element; carries the witness index.
struct BadUnit : Error {
    std::size_t index;
    explicit BadUnit(std::size_t idx)
        : Error("claimed unit fails on basis element " + std::to_string(idx)), index(idx) {}
};

struct NotIdempotent : Error {
    NotIdempotent() : Error("element is not idempotent") {}
};

struct NotUnital : Error {
    NotUnital() : Error("algebra has no unit (unitalize first)") {}
};

/// A simple block is a division algebra over the ground field, not a matrix
/// algebra over it.  Carries the offending minimal polynomial.
struct NotSplit : Error {
    std::string minimal_polynomial;
    explicit NotSplit(std::string poly)
        : Error("semisimple block does not split over the rationals; irreducible factor " + poly),
          minimal_polynomial(std::move(poly)) {}
};

struct NotSymmetric : Error {
    NotSymmetric() : Error("functional is not symmetric") {}
};

struct NotGenerating : Error {
    NotGenerating() : Error("idempotent is not generating") {}
};

struct NotProjective : Error {
    NotProjective() : Error("module is not projective") {}
};

struct NotProjectiveGenerator : Error {
    NotProjectiveGenerator() : Error("module is not a projective generator") {}
};

struct NotProjectiveGeneratorOverBase : Error {
    explicit NotProjectiveGeneratorOverBase(const std::string& what)
        : Error("graded module is not a projective generator over the base: " + what) {}
};

struct InvalidModule : Error {
    explicit InvalidModule(const std::string& what) : Error("invalid module: " + what) {}
};

struct PreconditionFailed : Error {
    explicit PreconditionFailed(const std::string& what) : Error("precondition failed: " + what) {}
};

struct InternalError : Error {
    explicit InternalError(const std::string& what) : Error("internal error: " + what) {}
};

}  // namespace pstrace
