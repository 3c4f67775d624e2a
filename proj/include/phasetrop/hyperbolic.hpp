#pragma once

#include <optional>
#include <utility>

#include "phasetrop/mat2.hpp"

namespace phasetrop {

// Hyperboloid model: H^3 is the sheet of positive-definite Hermitian 2x2
// matrices of determinant 1, with basepoint O = identity. SL2(C) acts by
// A(P) = A P A*.

/// Point of H^3.
class H3Point {
public:
    /// Validates (Hermitian, det 1, trace > 0; tolerances 1e-12 scaled by the
    /// matrix size) and stores the Hermitian part. Throws Error(Domain).
    explicit H3Point(const Mat2& p);

    static H3Point origin() { return H3Point(Mat2::identity()); }

    const Mat2& matrix() const noexcept { return p_; }

private:
    Mat2 p_;
};

/// Point of the sphere at infinity, stored as the class of a rank-one
/// Hermitian matrix v v*. Identified with CP^1 through v.
class BoundaryPoint {
public:
    static BoundaryPoint from_vector(const Vec2& v);

    const ProjPointC& projector() const noexcept { return cls_; }
    /// Unit vector spanning the projector's image, first significant entry real positive.
    Vec2 vector() const;

private:
    explicit BoundaryPoint(const ProjPointC& cls) : cls_(cls) {}
    ProjPointC cls_;
};

double dist_boundary(const BoundaryPoint& x, const BoundaryPoint& y);

/// Point of the double-amoeba image in cone coordinates: the vertex (d = 0),
/// or a height d > 0 with a pair of boundary points.
struct QhatPoint {
    double d = 0.0;
    std::optional<std::pair<BoundaryPoint, BoundaryPoint>> pair;
};

/// |log lambda| for an eigenvalue lambda of p.
double dist_to_O(const H3Point& p);

/// Hyperbolic distance, reduced to dist_to_O by the isometry p^{-1/2}.
double dist(const H3Point& p, const H3Point& q);

/// a p a*. Throws Error(Domain) unless |det a - 1| <= 1e-10.
H3Point act(const Mat2& a, const H3Point& p);

/// kappa(a) = a a* after normalising det a = 1. Throws Error(Domain) for singular a.
H3Point amoeba(const Mat2& a);
/// kappa*(a) = a* a after normalising det a = 1.
H3Point amoeba_star(const Mat2& a);
/// Spherical coamoeba [a + (a*)^{-1}] in RP^3 = PSU(2), for det-normalised a.
ProjPointR coamoeba(const Mat2& a);

/// Top eigenvalues within 1e-10 of 1 count as the vertex O.
inline constexpr double kVertexEigenTol = 1e-10;

/// Endpoint of the geodesic ray from O through p. Throws Error(Domain)
/// "vertex has no boundary projection" when p is (numerically) O.
BoundaryPoint boundary_proj(const H3Point& p);

/// (d(kappa(a), O), (kappa(a)^inf, kappa*(a)^inf)).
QhatPoint double_amoeba(const Mat2& a);

}  // namespace phasetrop
