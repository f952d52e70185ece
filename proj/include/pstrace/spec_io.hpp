#pragma once

#include <memory>
#include <string>
#include <variant>

#include "pstrace/algebra.hpp"
#include "pstrace/block_algebra.hpp"

namespace pstrace {

/// A parsed input file: either a structure-constant algebra or a graded
/// block specification.  Rationals in files are exact strings ("p/q" or
/// "n"); anything else is rejected.
struct AlgebraSpec {
    std::string name;  // file stem, used for report ordering
    std::variant<std::shared_ptr<const FiniteAlgebra>, std::shared_ptr<const GradedRightModule>>
        payload;

    bool is_graded() const {
        return std::holds_alternative<std::shared_ptr<const GradedRightModule>>(payload);
    }
    const FiniteAlgebra& finite() const {
        return *std::get<std::shared_ptr<const FiniteAlgebra>>(payload);
    }
    const GradedRightModule& graded() const {
        return *std::get<std::shared_ptr<const GradedRightModule>>(payload);
    }
};

/// Loads and validates a spec file (schema 1).  Parse problems raise
/// ParseError; constructor invariants raise their own errors
/// (NotAssociative, BadUnit, InvalidModule).
AlgebraSpec load_spec(const std::string& path);

/// Parses the JSON text directly; `name` seeds the spec name.
AlgebraSpec parse_spec(const std::string& json_text, const std::string& name);

/// Parses "unit" or a comma-separated exact-rational coordinate vector.
Vec parse_coords(const std::string& text, const FiniteAlgebra& a);

}  // namespace pstrace
