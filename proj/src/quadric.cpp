#include "phasetrop/quadric.hpp"

#include <cmath>
#include <numbers>

#include "phasetrop/error.hpp"

namespace phasetrop {

CP1Point::CP1Point(cplx x0, cplx x1) {
    Vec2 v{x0, x1};
    if (!(v.norm() > 0.0)) throw Error(ErrorKind::Domain, "zero vector is not a point of CP^1");
    v = v.normalized();
    const cplx z = std::abs(v.x0) > 1e-12 ? v.x0 : v.x1;
    v_ = (std::conj(z) / std::abs(z)) * v;
}

double dist_cp1(const CP1Point& x, const CP1Point& y) {
    const cplx ip = inner(x.vector(), y.vector());
    const cplx w = std::abs(ip) > 0.0 ? ip / std::abs(ip) : cplx(1.0);
    const Vec2 d{y.vector().x0 - w * x.vector().x0, y.vector().x1 - w * x.vector().x1};
    return 2.0 * std::asin(std::min(1.0, 0.5 * d.norm()));
}

QPoint::QPoint(const Mat2& m) : cls_(m) {
    if (std::abs(cls_.rep().det()) > kQuadricDetTol) throw Error(ErrorKind::Domain, "matrix is not on the quadric det = 0");
}

FiberPoint::FiberPoint(const Mat2& m) : cls_(m) {
    if (std::abs(cls_.rep().det()) > kQuadricDetTol) throw Error(ErrorKind::Domain, "fiber point is not over the quadric");
}

QPoint segre(const CP1Point& x, const CP1Point& y) { return QPoint(Mat2::outer(x.vector(), y.vector())); }

std::pair<CP1Point, CP1Point> unsegre(const QPoint& q) {
    const Mat2& m = q.rep();
    const Vec2 col0{m.a, m.c};
    const Vec2 col1{m.b, m.d};
    const Vec2 row0{m.a, m.b};
    const Vec2 row1{m.c, m.d};
    const Vec2& col = col0.norm() >= col1.norm() ? col0 : col1;
    const Vec2& row = row0.norm() >= row1.norm() ? row0 : row1;
    return {CP1Point(col), CP1Point(row)};
}

FiberPoint fiber_point(const QPoint& q, double theta) { return FiberPoint(std::polar(1.0, theta) * q.rep()); }

double fiber_angle(const FiberPoint& p) {
    const ProjPointC base(p.rep());
    // p.rep() = e^{i theta} base.rep() up to sign.
    const cplx ratio = frobenius_inner(base.rep(), p.rep());
    double theta = std::arg(ratio);
    theta = std::fmod(theta, std::numbers::pi);
    if (theta < 0.0) theta += std::numbers::pi;
    if (theta >= std::numbers::pi - 1e-15) theta = 0.0;
    return theta;
}

bool fiber_membership(const Mat2& u, const BoundaryPoint& b1, const BoundaryPoint& b2) {
    if (!is_unitary(u, 1e-10)) throw Error(ErrorKind::Domain, "fiber_membership: matrix is not unitary");
    const ProjPointC moved(u * b2.projector().rep() * u.adjoint());
    return dist_proj_c(moved, b1.projector()) < 1e-9;
}

FiberPoint section_s(const QPoint& q) {
    const cplx tr = q.rep().trace();
    if (std::abs(tr) <= 1e-10) throw Error(ErrorKind::Domain, "section undefined on C");
    return FiberPoint(q.rep() / tr);
}

}  // namespace phasetrop
