#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "phasetrop/hahn.hpp"
#include "phasetrop/mat2.hpp"
#include "phasetrop/quadric.hpp"
#include "phasetrop/valuation.hpp"

namespace phasetrop {

// ---------------------------------------------------------------------------
// Polynomials on CP^3. Coordinates x0..x3 are the matrix entries (a, b; c, d).

class HomogPoly4 {
public:
    using Exponents = std::array<unsigned, 4>;

    /// Throws Error(Domain) if not homogeneous or identically zero.
    explicit HomogPoly4(std::map<Exponents, cplx> monomials);

    /// Text form: `coeff x0^a x1^b x2^c x3^d` monomials separated by '+'/'-',
    /// factors optionally joined by '*'. Throws ParseError.
    static HomogPoly4 parse(std::string_view text);

    unsigned degree() const noexcept { return degree_; }
    const std::map<Exponents, cplx>& monomials() const noexcept { return monomials_; }

    cplx operator()(const Mat2& m) const;
    HahnSeries operator()(const HahnMat2& m) const;

    /// max |coefficient|.
    double coefficient_scale() const;
    /// |f(m / |m|)| / coefficient_scale.
    double residual(const Mat2& m) const;

    /// Coefficients (constant term first) of s -> f(p + s q).
    std::vector<cplx> restrict_to_line(const Mat2& p, const Mat2& q) const;

    /// Degree of f in coordinate k, and whether that coordinate appears at all.
    unsigned degree_in(std::size_t k) const;

    std::string to_string() const;

private:
    std::map<Exponents, cplx> monomials_;
    unsigned degree_ = 0;
};

/// All complex roots, with multiplicity, of the polynomial whose coefficients are
/// given highest degree first. Durand-Kerner iteration; throws
/// Error(Convergence) if the relative residual stays above 1e-10.
std::vector<cplx> roots_univariate(std::span<const cplx> coeffs);

// ---------------------------------------------------------------------------
// Seeded sampling. Every random draw for task i uses its own engine seeded
// from (seed, stream, i), so results do not depend on evaluation order.

std::mt19937_64 task_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

struct VarietySamples {
    std::vector<ProjPointC> off_q;
    std::vector<ProjPointC> on_q;
};

/// n points of V(f) (|f| residual < 1e-8) from intersections with random lines,
/// split by |det| < 1e-10 into the Q bucket.
VarietySamples sample_variety(const HomogPoly4& f, std::size_t n, std::uint64_t seed);

/// True if f vanishes (residual < 1e-10) at random points of Q, i.e. det divides f.
bool vanishes_on_quadric(const HomogPoly4& f, std::uint64_t seed);

/// n points of V(f) ∩ Q via the Segre substitution. Throws Error(Hypothesis)
/// "component inside Q" if f vanishes on Q.
std::vector<QPoint> sample_V_cap_Q(const HomogPoly4& f, std::size_t n, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Labelled point clouds.

enum class CloudLabel { CoamoebaFloor, Cylinder, InfinityBase };

std::string_view label_name(CloudLabel l);
/// The cone kind every point with this label must have.
ConeKind label_kind(CloudLabel l);

using MetaValue = std::variant<double, std::string>;

struct CloudPoint {
    ConePoint point;
    CloudLabel label;
    std::map<std::string, MetaValue> meta;
};

class LabeledCloud {
public:
    /// Throws Error(Invariant) if the label does not match the point's kind.
    void add(ConePoint p, CloudLabel label, std::map<std::string, MetaValue> meta = {});

    const std::vector<CloudPoint>& points() const noexcept { return points_; }
    std::size_t count(CloudLabel l) const;

private:
    std::vector<CloudPoint> points_;
};

struct ComponentCounts {
    std::size_t floor = 32;
    std::size_t quadric = 8;
};

/// Sampled image of a constant family V(f)(K): the coamoeba floor over V off Q,
/// the cylinder (0, inf) x S restricted to V ∩ Q on the given grids, and V ∩ Q at infinity.
LabeledCloud constant_family_image(const HomogPoly4& f, const ComponentCounts& counts, std::span<const double> alpha_grid,
                                   std::span<const double> theta_grid, std::uint64_t seed);

/// Membership certificate for a valuation of a K-point of V(f): the top
/// coefficient matrix B of A must lie on V, and the valuation must be the
/// component point built from B (polar coamoeba at height 0, a phase over [B]
/// at positive height, [B] itself at infinity). Returns the distance of the
/// valuation to that component point, or +inf if B is not on the right stratum.
double component_distance(const HomogPoly4& f, const HahnMat2& A, const ConePoint& val, double residual_tol = 1e-6);

/// Tolerance for "f(A) vanishes as a series": every stored coefficient is below
/// this fraction of the natural scale of the evaluation.
inline constexpr double kSeriesVanishTol = 1e-9;

/// True when f(A) has no stored coefficient above kSeriesVanishTol relative to
/// coefficient_scale * (max |entry coefficient|)^deg.
bool vanishes_on(const HomogPoly4& f, const HahnMat2& A);

/// Witness A~ in V(K) with val_symbolic(A~) = (alpha, phase), built from a local
/// parametrisation `curve` of a curve in V through [phase] not contained in Q,
/// by the substitution t^beta -> exp(-beta sigma / gamma) t^(alpha beta / gamma).
/// Throws Error(Hypothesis) for a curve inside Q or one that misses the phase.
HahnMat2 witness_for_cone_point(const HomogPoly4& f, const Rational& alpha, const FiberPoint& phase, const HahnMat2& curve,
                                const Rational& depth = kDefaultDepth);

/// Line t q + M with M a random point of the hyperplane f = 0 (f of degree 1).
HahnMat2 linear_curve_through(const HomogPoly4& f, const QPoint& q, std::uint64_t seed);

/// Solves f(A) = 0 for entry k over K, given the other three entries. f must have
/// degree 1 in x_k. Throws Error(Domain) otherwise or if the solution is undefined.
HahnMat2 solve_for_entry(const HomogPoly4& f, std::size_t k, HahnMat2 A, const Rational& depth = kDefaultDepth);

// ---------------------------------------------------------------------------
// The line tangent to Q: Z = (t w, z; 0, t^{-1} w).

/// Z(t) for w = 1, z = c t^gamma.
HahnMat2 example_line_matrix(const Rational& gamma, cplx c);
/// val_symbolic of example_line_matrix.
ConePoint example_line(const Rational& gamma, cplx c);
/// The point w = 0, i.e. B_inf = (0 1; 0 0) in Q.
ConePoint example_line_at_infinity();

struct LineCloudGrid {
    std::vector<Rational> gammas;  ///< values > 1 populate the ray over B_inf
    std::size_t theta_count = 12;
    std::size_t modulus_count = 8;
};

LabeledCloud example_line_cloud(const LineCloudGrid& grid);

// ---------------------------------------------------------------------------
// The quadric surface t^2 det A = (tr A)^2.

enum class QuadricComponent {
    SectionAtOne,  ///< {1} x s(Q \ C)
    FiberOverC,    ///< (1, inf) x S|_C
    BaseC,         ///< {inf} x C
};

std::string_view component_name(QuadricComponent c);

struct QuadricClassification {
    QuadricComponent component;
    ConePoint point;
};

/// Checks t^2 det A - (tr A)^2 vanishes (Error(Hypothesis) otherwise), computes
/// val_symbolic and checks the point against the component it must lie on.
/// Throws Error(Invariant) with a falsification report otherwise.
QuadricClassification example_quadric_classify(const HahnMat2& A, const Rational& depth = kDefaultDepth);

/// Witness families on the surface.
HahnMat2 quadric_witness_section();                                   // (t - t^-1, -t^-1; t^-1, t^-1)
HahnMat2 quadric_witness_section(cplx sigma);                         // (t - t^-1, s^-1 t^-3; -s t, t^-1)
HahnMat2 quadric_witness_fiber(cplx sigma, const Rational& alpha);    // (t, s t^a; -(s t^a)^-1, 0)
HahnMat2 quadric_witness_base();                                      // (0, 1; 0, 0)

/// Haar-random unitary with det 1.
Mat2 random_su2(std::mt19937_64& rng);

struct QuadricCloudGrid {
    std::vector<Rational> alphas;  ///< heights > 1 for the fibre witnesses
    std::size_t theta_count = 12;
    std::size_t orbit_count = 6;   ///< random SU(2) conjugates per witness
    std::uint64_t seed = 0;
};

LabeledCloud example_quadric_cloud(const QuadricCloudGrid& grid);

}  // namespace phasetrop
