#pragma once

#include <string>

#include <json.hpp>

#include "byzfit/chebyshev.hpp"
#include "byzfit/multipoly.hpp"
#include "byzfit/report.hpp"
#include "byzfit/scalar.hpp"

namespace byzfit {

// Polynomial JSON:
//   {"vars":k, "field":"rational"|"gf"|"float", "modulus":q?,
//    "basis":"monomial", "terms":[{"exp":[...], "coeff":...}, ...]}
// Terms are emitted in GradedLex order; rational coefficients are decimal
// strings "a/b" (bare integers allowed), gf residues are integers, floats
// round-trip bit-identically.
nlohmann::json poly_to_json(const MultiPoly& p);
MultiPoly poly_from_json(const nlohmann::json& j);

// ChebModel JSON: {"basis":"chebyshev","degrees":[n,m],"coeffs":[[...]],
//                  "delta":...}
nlohmann::json cheb_to_json(const ChebModel& m);
ChebModel cheb_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const FitReport& r);
FitReport report_from_json(const nlohmann::json& j);

// Scalar text forms used by both CSV and JSON surfaces.
std::string scalar_to_string(const Scalar& s);
Scalar scalar_from_string(const std::string& text, const Field& f);

// Atomic file write: temp file in the same directory, then rename.
void write_file_atomic(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

}  // namespace byzfit
