#include "phasetrop/hyperbolic.hpp"

#include <cmath>

#include "phasetrop/error.hpp"

namespace phasetrop {

namespace {

constexpr double kH3Tol = 1e-12;

Mat2 hermitian_part(const Mat2& p) { return 0.5 * (p + p.adjoint()); }

}  // namespace

H3Point::H3Point(const Mat2& p) {
    const double scale = std::max(1.0, p.frobenius_norm());
    if (!p.is_finite()) throw Error(ErrorKind::Domain, "H3 point with non-finite entries");
    if (!is_hermitian(p, kH3Tol)) throw Error(ErrorKind::Domain, "H3 point is not Hermitian");
    p_ = hermitian_part(p);
    if (std::abs(p_.det() - 1.0) > kH3Tol * scale * scale)
        throw Error(ErrorKind::Domain, "H3 point does not have determinant 1");
    if (!(p_.trace().real() > 0.0)) throw Error(ErrorKind::Domain, "H3 point is not positive definite");
}

BoundaryPoint BoundaryPoint::from_vector(const Vec2& v) {
    if (v.norm() == 0.0) throw Error(ErrorKind::Domain, "zero vector has no boundary point");
    const Vec2 u = v.normalized();
    return BoundaryPoint(ProjPointC(Mat2::ket_bra(u, u)));
}

Vec2 BoundaryPoint::vector() const {
    // For the canonical projector rep, the row with the larger diagonal entry spans
    // the image (conjugated).
    const Mat2& m = cls_.rep();
    Vec2 v = std::abs(m.a) >= std::abs(m.d) ? Vec2{m.a, m.c} : Vec2{m.b, m.d};
    v = v.normalized();
    const cplx z = std::abs(v.x0) > 1e-12 ? v.x0 : v.x1;
    return (std::conj(z) / std::abs(z)) * v;
}

double dist_boundary(const BoundaryPoint& x, const BoundaryPoint& y) { return dist_proj_c(x.projector(), y.projector()); }

double dist_to_O(const H3Point& p) {
    const double det = 1.0;
    const HermitianEigen eig = hermitian_eigen(p.matrix(), &det);
    return std::abs(std::log(eig.l1));
}

double dist(const H3Point& p, const H3Point& q) {
    // p^{-1/2} = adj(p^{1/2}) since det p^{1/2} = 1.
    const Mat2 root = frac_power(p.matrix(), 0.5);
    const Mat2 inv_root = root.adjugate();
    return dist_to_O(H3Point(hermitian_part(inv_root * q.matrix() * inv_root.adjoint())));
}

H3Point act(const Mat2& a, const H3Point& p) {
    if (std::abs(a.det() - 1.0) > 1e-10) throw Error(ErrorKind::Domain, "act: matrix is not unimodular");
    return H3Point(hermitian_part(a * p.matrix() * a.adjoint()));
}

H3Point amoeba(const Mat2& a) {
    const Mat2 n = normalize_det(a);
    return H3Point(hermitian_part(n * n.adjoint()));
}

H3Point amoeba_star(const Mat2& a) {
    const Mat2 n = normalize_det(a);
    return H3Point(hermitian_part(n.adjoint() * n));
}

ProjPointR coamoeba(const Mat2& a) {
    const Mat2 n = normalize_det(a);
    // (n*)^{-1} = adj(n)* when det n = 1.
    return ProjPointR(n + n.adjugate().adjoint());
}

BoundaryPoint boundary_proj(const H3Point& p) {
    const double det = 1.0;
    const HermitianEigen eig = hermitian_eigen(p.matrix(), &det);
    if (!(eig.l1 > 1.0 + kVertexEigenTol)) throw Error(ErrorKind::Domain, "vertex has no boundary projection");
    return BoundaryPoint::from_vector(eig.e1);
}

QhatPoint double_amoeba(const Mat2& a) {
    const H3Point k = amoeba(a);
    const H3Point ks = amoeba_star(a);
    const double det = 1.0;
    if (!(hermitian_eigen(k.matrix(), &det).l1 > 1.0 + kVertexEigenTol)) return {};
    return {dist_to_O(k), std::make_pair(boundary_proj(k), boundary_proj(ks))};
}

}  // namespace phasetrop
