#pragma once

#include <utility>

#include "phasetrop/hyperbolic.hpp"
#include "phasetrop/mat2.hpp"

namespace phasetrop {

/// Point of CP^1 as a unit vector whose first significant entry is real positive.
class CP1Point {
public:
    CP1Point(cplx x0, cplx x1);
    explicit CP1Point(const Vec2& v) : CP1Point(v.x0, v.x1) {}

    const Vec2& vector() const noexcept { return v_; }

private:
    Vec2 v_;
};

double dist_cp1(const CP1Point& x, const CP1Point& y);

/// Point of the quadric Q = {det = 0} in CP^3 (rank-one class).
class QPoint {
public:
    /// Throws Error(Domain) unless |det| <= 1e-10 on the norm-1 representative.
    explicit QPoint(const Mat2& m);
    explicit QPoint(const ProjPointC& p) : QPoint(p.rep()) {}

    const ProjPointC& cls() const noexcept { return cls_; }
    const Mat2& rep() const noexcept { return cls_.rep(); }

private:
    ProjPointC cls_;
};

/// Point of the circle bundle S: an R^*-class [cB] over a Q-point [B].
class FiberPoint {
public:
    explicit FiberPoint(const Mat2& m);
    explicit FiberPoint(const ProjPointR& p) : FiberPoint(p.rep()) {}

    const ProjPointR& cls() const noexcept { return cls_; }
    const Mat2& rep() const noexcept { return cls_.rep(); }
    QPoint base() const { return QPoint(cls_.rep()); }

private:
    ProjPointR cls_;
};

inline constexpr double kQuadricDetTol = 1e-10;

/// [x0 y0 : x0 y1 : x1 y0 : x1 y1], i.e. the outer product x y^T.
QPoint segre(const CP1Point& x, const CP1Point& y);

/// (column space, row space) of q, so that segre(unsegre(q)) = q.
std::pair<CP1Point, CP1Point> unsegre(const QPoint& q);

/// [e^{i theta} B]_{R^*} for the canonical representative B of q; theta and theta + pi coincide.
FiberPoint fiber_point(const QPoint& q, double theta);

/// Circle coordinate of a fiber point relative to the canonical representative of
/// its base: the theta in [0, pi) with fiber_point(base, theta) = p.
double fiber_angle(const FiberPoint& p);

/// u (b2) u* = b1 as rank-one Hermitian classes (within 1e-9).
/// Throws Error(Domain) if u is not unitary within 1e-10.
bool fiber_membership(const Mat2& u, const BoundaryPoint& b1, const BoundaryPoint& b2);

/// [(tr B)^{-1} B]_{R^*}. Throws Error(Domain) "section undefined on C" when |tr B| <= 1e-10.
FiberPoint section_s(const QPoint& q);

}  // namespace phasetrop
