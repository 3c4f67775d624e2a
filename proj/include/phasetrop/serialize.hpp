#pragma once

#include <array>
#include <span>
#include <string>

#include <json.hpp>

#include "phasetrop/tropicalize.hpp"
#include "phasetrop/valuation.hpp"

namespace phasetrop {

/// {"kind": "vertex"|"interior"|"base", "alpha": number|"inf", "matrix": [[re, im] x 4]}
/// plus "alpha_exact" (string) when the height is exact. The matrix is the
/// canonical representative: the unitary class at the vertex, the phase at an
/// interior point, the Q-point at the base.
nlohmann::json to_json(const ConePoint& p);
/// Inverse of to_json. Throws Error(Parse) on schema violations.
ConePoint cone_point_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Mat2& m);
Mat2 mat2_from_json(const nlohmann::json& j);

/// (alpha, phi, psi): height (0 at the vertex, +inf at the base), the polar angle
/// phi in [0, pi] of the column point on the Riemann sphere, and the circle
/// angle psi in [0, pi). For vertex points phi and psi are the Hopf coordinates
/// 2 atan(|b|/|a|) and arg(a) mod pi of the unitary (a, -b*; b, a*).
std::array<double, 3> projection(const ConePoint& p);

/// {"points": [{"kind", "alpha", "matrix", "label", "meta", "projection"}], "counts": {...}}
nlohmann::json to_json(const LabeledCloud& cloud);

/// Header: label,kind,alpha,phi,psi,a_re,a_im,b_re,b_im,c_re,c_im,d_re,d_im,meta
std::string to_csv(const LabeledCloud& cloud);

/// Header: t,h,dist. t is printed in scientific notation from log t.
std::string to_csv(std::span<const ConvergenceRow> table);

/// Shortest round-trip decimal form; "inf", "-inf", "nan" for non-finite values.
std::string format_double(double x);

}  // namespace phasetrop
