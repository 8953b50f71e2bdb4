#pragma once

#include <stdexcept>
#include <string>

namespace curveproj {

// Base class for all library errors. `code()` is the stable machine-readable
// identifier surfaced by the CLI error object.
class error : public std::runtime_error {
public:
    error(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define CURVEPROJ_DEFINE_ERROR(name, code_str)                        \
    class name : public error {                                       \
    public:                                                           \
        explicit name(const std::string& msg = code_str)              \
            : error(code_str, msg) {}                                 \
    }

CURVEPROJ_DEFINE_ERROR(zero_denominator_error, "ZeroDenominator");
CURVEPROJ_DEFINE_ERROR(zero_polynomial_error, "ZeroPolynomial");
CURVEPROJ_DEFINE_ERROR(division_by_zero_error, "DivisionByZero");
CURVEPROJ_DEFINE_ERROR(duplicate_abscissa_error, "DuplicateAbscissa");
CURVEPROJ_DEFINE_ERROR(missing_field_error, "MissingField");
CURVEPROJ_DEFINE_ERROR(degenerate_curve_error, "DegenerateCurve");
CURVEPROJ_DEFINE_ERROR(improper_parametrization_error, "ImproperParametrization");
CURVEPROJ_DEFINE_ERROR(not_planar_error, "NotPlanar");
CURVEPROJ_DEFINE_ERROR(eye_on_plane_error, "EyeOnPlane");
CURVEPROJ_DEFINE_ERROR(bad_rank_error, "BadRank");
CURVEPROJ_DEFINE_ERROR(collapses_to_point_error, "CollapsesToPoint");
CURVEPROJ_DEFINE_ERROR(identical_points_error, "IdenticalPoints");
CURVEPROJ_DEFINE_ERROR(near_parallel_error, "NearParallel");
CURVEPROJ_DEFINE_ERROR(plane_mismatch_error, "PlaneMismatch");
CURVEPROJ_DEFINE_ERROR(coplanar_curves_error, "CoplanarCurves");
CURVEPROJ_DEFINE_ERROR(line_input_error, "LineInput");
CURVEPROJ_DEFINE_ERROR(internal_error, "InternalError");

#undef CURVEPROJ_DEFINE_ERROR

// Parse error carrying a byte offset into the source expression.
class syntax_error : public error {
public:
    syntax_error(std::size_t position, const std::string& msg)
        : error("SyntaxError", msg + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class unknown_symbol_error : public error {
public:
    unknown_symbol_error(std::size_t position, const std::string& symbol)
        : error("UnknownSymbol",
                "unknown symbol '" + symbol + "' (at position " + std::to_string(position) + ")"),
          position_(position), symbol_(symbol) {}
    std::size_t position() const noexcept { return position_; }
    const std::string& symbol() const noexcept { return symbol_; }

private:
    std::size_t position_;
    std::string symbol_;
};

} // namespace curveproj
