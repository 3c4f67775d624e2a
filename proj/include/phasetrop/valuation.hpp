#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "phasetrop/hahn.hpp"
#include "phasetrop/mat2.hpp"
#include "phasetrop/quadric.hpp"
#include "phasetrop/rational.hpp"

namespace phasetrop {

// Cone picture of CP^3: a vertex fibre PSU(2), interior points (alpha, [B]_{R^*})
// with alpha > 0 and det B = 0, and the base Q at alpha = infinity.

/// Cone vertex: an element of PSU(2) = RP^3. The stored class has Frobenius
/// norm 1, so its representative is a unitary matrix divided by sqrt(2).
struct VertexPoint {
    ProjPointR u;

    Mat2 unitary() const;
};

/// Height alpha > 0 with a phase on the circle bundle over Q.
struct InteriorPoint {
    double alpha;
    FiberPoint phase;
    /// Set when alpha came from exact exponent arithmetic.
    std::optional<Rational> exact_alpha;
};

/// alpha = infinity: a point of Q.
struct BasePoint {
    QPoint q;
};

using ConePoint = std::variant<VertexPoint, InteriorPoint, BasePoint>;

enum class ConeKind { Vertex, Interior, Base };

ConeKind kind_of(const ConePoint& p);
std::string_view kind_name(ConeKind k);

/// R_h[m] = [P^h U] for m = P U normalised to det 1.
/// Throws Error(Domain) when m lies on Q (|det| < 1e-12 on the norm-1 representative).
ProjPointC flow_R_h(const ProjPointC& m, double h);

/// Default window kept below leading exponents when normalising det = 1.
inline const Rational kDefaultDepth{4};

/// Matrix valuation from the leading term of the det-1 normalisation:
///   det A == 0                 -> Base([B]) for the top coefficient matrix B of A,
///   A/sqrt(det A) = B t^a + ..., a > 0  -> Interior(a, [B]_{R^*}),
///   a == 0                     -> Vertex(coamoeba(B)).
/// Throws Error(Domain) for the zero matrix and Error(Inconclusive) when a
/// decision depends on terms lost to truncation. A nonsingular leading
/// coefficient at a > 0 is reported as Error(Invariant).
ConePoint val_symbolic(const HahnMat2& A, const Rational& depth = kDefaultDepth);

/// Cone point -> CP^3. Interior points map to [e^a B + e^{-a} (adj B)*].
ProjPointC embed_cone(const ConePoint& p);

/// Inverse of embed_cone.
ConePoint cone_coords(const ProjPointC& m);

/// Fubini-Study distance between the embeddings.
double cone_distance(const ConePoint& p, const ConePoint& q);

struct ConvergenceRow {
    double log_t;
    double h;  ///< 1 / log t
    ProjPointC point;
    /// Distance to the target embedding, or to the previous row when no target
    /// was given (NaN on the first row).
    double dist;
};

struct NumericValuation {
    ProjPointC estimate;
    std::vector<ConvergenceRow> table;
};

/// log t = 2^k for k = k_min..k_max (t = exp(2^k)).
std::vector<double> exp2_schedule(int k_min, int k_max);

/// Default schedule k = 2..11.
inline constexpr int kDefaultScheduleMin = 2;
inline constexpr int kDefaultScheduleMax = 11;

/// R_{1/log t}[A(t)] for a single t, given by log t > 1. The evaluation and the
/// polar flow run in MPFR big floats sized to the exponent spread of A, so log t
/// may be far beyond the double range of t. On-Q evaluations return [A(t)].
ProjPointC degeneration_point(const HahnMat2& A, double log_t);

/// Numeric valuation along a strictly increasing schedule of log t values (> 1).
NumericValuation val_numeric(const HahnMat2& A, std::span<const double> log_t_schedule,
                             const std::optional<ConePoint>& target = std::nullopt);

/// Cone height read from the last two rows, Richardson-extrapolated in 1/log t.
/// Returns +inf for base points.
double extrapolate_alpha(std::span<const ConvergenceRow> table);

}  // namespace phasetrop
