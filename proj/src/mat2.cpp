#include "phasetrop/mat2.hpp"

#include <algorithm>
#include <cmath>

#include "phasetrop/error.hpp"

namespace phasetrop {

double Vec2::norm() const { return std::hypot(std::abs(x0), std::abs(x1)); }

Vec2 Vec2::normalized() const {
    double n = norm();
    return {x0 / n, x1 / n};
}

cplx inner(const Vec2& u, const Vec2& v) { return std::conj(u.x0) * v.x0 + std::conj(u.x1) * v.x1; }

Vec2 perp(const Vec2& u) { return {-std::conj(u.x1), std::conj(u.x0)}; }

Mat2 Mat2::outer(const Vec2& u, const Vec2& v) { return {u.x0 * v.x0, u.x0 * v.x1, u.x1 * v.x0, u.x1 * v.x1}; }

Mat2 Mat2::ket_bra(const Vec2& u, const Vec2& v) {
    return {u.x0 * std::conj(v.x0), u.x0 * std::conj(v.x1), u.x1 * std::conj(v.x0), u.x1 * std::conj(v.x1)};
}

double Mat2::frobenius_norm() const {
    // Scaled to avoid overflow for entries near the double range.
    double s = max_abs();
    if (s == 0.0 || !std::isfinite(s)) return s;
    double acc = std::norm(a / s) + std::norm(b / s) + std::norm(c / s) + std::norm(d / s);
    return s * std::sqrt(acc);
}

double Mat2::max_abs() const { return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)}); }

bool Mat2::is_finite() const {
    for (const cplx& z : entries())
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

Mat2& Mat2::operator+=(const Mat2& o) {
    a += o.a;
    b += o.b;
    c += o.c;
    d += o.d;
    return *this;
}

Mat2& Mat2::operator-=(const Mat2& o) {
    a -= o.a;
    b -= o.b;
    c -= o.c;
    d -= o.d;
    return *this;
}

Mat2& Mat2::operator*=(cplx s) {
    a *= s;
    b *= s;
    c *= s;
    d *= s;
    return *this;
}

Mat2 operator+(Mat2 x, const Mat2& y) { return x += y; }
Mat2 operator-(Mat2 x, const Mat2& y) { return x -= y; }
Mat2 operator-(const Mat2& x) { return {-x.a, -x.b, -x.c, -x.d}; }

Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

Mat2 operator*(cplx s, Mat2 x) { return x *= s; }
Mat2 operator*(Mat2 x, cplx s) { return x *= s; }
Mat2 operator/(Mat2 x, cplx s) { return x *= (1.0 / s); }

cplx frobenius_inner(const Mat2& x, const Mat2& y) {
    return std::conj(x.a) * y.a + std::conj(x.b) * y.b + std::conj(x.c) * y.c + std::conj(x.d) * y.d;
}

double frobenius_distance(const Mat2& x, const Mat2& y) { return (x - y).frobenius_norm(); }

DetTrAdj det_tr_adj(const Mat2& m) { return {m.det(), m.trace(), m.adjugate()}; }

HermitianEigen hermitian_eigen(const Mat2& h, const double* det_hint) {
    const double p = h.a.real();
    const double r = h.d.real();
    const cplx q = 0.5 * (h.b + std::conj(h.c));
    const double mean = 0.5 * (p + r);
    const double rad = std::hypot(0.5 * (p - r), std::abs(q));
    const double det = det_hint ? *det_hint : p * r - std::norm(q);

    // Take the root without cancellation first; the other follows from the determinant.
    double l1;
    double l2;
    if (mean >= 0.0) {
        l1 = mean + rad;
        l2 = l1 != 0.0 ? det / l1 : mean - rad;
    } else {
        l2 = mean - rad;
        l1 = det / l2;
    }
    if (l2 > l1) l2 = l1;

    Vec2 e1;
    Vec2 cand_row1{q, l1 - p};
    Vec2 cand_row2{l1 - r, std::conj(q)};
    double n1 = cand_row1.norm();
    double n2 = cand_row2.norm();
    if (std::max(n1, n2) <= 1e-300 || rad <= 1e-15 * std::max(std::abs(l1), std::abs(l2))) {
        e1 = {1.0, 0.0};
    } else if (n1 >= n2) {
        e1 = cand_row1.normalized();
    } else {
        e1 = cand_row2.normalized();
    }
    return {l1, l2, e1, perp(e1)};
}

Mat2 SVD2::reconstruct() const { return s1 * Mat2::ket_bra(u1, v1) + s2 * Mat2::ket_bra(u2, v2); }

SVD2 svd2(const Mat2& m) {
    const double scale = m.max_abs();
    if (scale == 0.0) {
        return {0.0, 0.0, {1.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {0.0, 1.0}};
    }
    // Work on m/scale so m m* cannot overflow.
    const Mat2 ms = m / cplx(scale);
    const cplx det = ms.det();
    const double abs_det = std::abs(det);
    const double det_hh = abs_det * abs_det;
    const HermitianEigen eig = hermitian_eigen(ms * ms.adjoint(), &det_hh);

    SVD2 out;
    const double s1 = std::sqrt(std::max(eig.l1, 0.0));
    double s2 = s1 > 0.0 ? abs_det / s1 : 0.0;
    s2 = std::min(s2, s1);
    out.s1 = s1 * scale;
    out.s2 = s2 * scale;
    out.u1 = eig.e1;
    out.u2 = eig.e2;
    out.v1 = (ms.adjoint() * out.u1).normalized();
    // v2 is fixed by orthogonality and the phase of det m; dividing m* u2 by s2 would
    // lose all accuracy when s2 << s1.
    const cplx phase = abs_det > 0.0 ? std::conj(det) / abs_det : cplx(1.0);
    out.v2 = phase * perp(out.v1);
    return out;
}

Polar polar(const Mat2& m) {
    const SVD2 s = svd2(m);
    Polar out;
    out.P = s.s1 * Mat2::ket_bra(s.u1, s.u1) + s.s2 * Mat2::ket_bra(s.u2, s.u2);
    out.U = Mat2::ket_bra(s.u1, s.v1) + Mat2::ket_bra(s.u2, s.v2);
    out.unitary_nonunique = s.s1 == 0.0 || s.s2 < 1e-13 * s.s1;
    return out;
}

bool is_hermitian(const Mat2& m, double tol) {
    return frobenius_distance(m, m.adjoint()) <= tol * std::max(1.0, m.frobenius_norm());
}

bool is_unitary(const Mat2& m, double tol) {
    return frobenius_distance(m * m.adjoint(), Mat2::identity()) <= tol;
}

Mat2 frac_power(const Mat2& P, double h) {
    if (!(h >= 0.0)) throw Error(ErrorKind::Domain, "frac_power: exponent must be non-negative");
    if (!is_hermitian(P, 1e-12)) throw Error(ErrorKind::Domain, "frac_power: matrix is not Hermitian");
    const HermitianEigen eig = hermitian_eigen(P);
    if (!(eig.l2 > 0.0)) throw Error(ErrorKind::Domain, "frac_power: matrix is not positive definite");
    if (h == 0.0) return Mat2::identity();
    if (h == 1.0) return P;
    return std::pow(eig.l1, h) * Mat2::ket_bra(eig.e1, eig.e1) + std::pow(eig.l2, h) * Mat2::ket_bra(eig.e2, eig.e2);
}

namespace {

constexpr double kCanonicalEntryTol = 1e-12;

Mat2 unit_rep(const Mat2& m) {
    if (!m.is_finite()) throw Error(ErrorKind::Domain, "projective point with non-finite entries");
    const double n = m.frobenius_norm();
    if (n == 0.0) throw Error(ErrorKind::Domain, "zero matrix has no projective class");
    return m / cplx(n);
}

const cplx* first_significant(const Mat2& m) {
    for (const cplx* z : {&m.a, &m.b, &m.c, &m.d})
        if (std::abs(*z) > kCanonicalEntryTol) return z;
    return &m.a;
}

}  // namespace

ProjPointC::ProjPointC(const Mat2& m) : rep_(unit_rep(m)) {
    const cplx z = *first_significant(rep_);
    rep_ *= std::conj(z) / std::abs(z);
}

ProjPointR::ProjPointR(const Mat2& m) : rep_(unit_rep(m)) {
    const cplx z = *first_significant(rep_);
    if (z.real() < 0.0 || (z.real() == 0.0 && z.imag() < 0.0)) rep_ = -rep_;
}

// Angle from the chord |q - w p| with w the unit phase aligning p to q:
// the chord is 2 sin(angle / 2), which stays accurate near 0.
double dist_proj_c(const ProjPointC& p, const ProjPointC& q) {
    const cplx ip = frobenius_inner(p.rep(), q.rep());
    const cplx w = std::abs(ip) > 0.0 ? ip / std::abs(ip) : cplx(1.0);
    const double chord = (q.rep() - w * p.rep()).frobenius_norm();
    return 2.0 * std::asin(std::min(1.0, 0.5 * chord));
}

double dist_proj_r(const ProjPointR& p, const ProjPointR& q) {
    const double ip = frobenius_inner(p.rep(), q.rep()).real();
    const double chord = (q.rep() - cplx(ip < 0.0 ? -1.0 : 1.0) * p.rep()).frobenius_norm();
    return 2.0 * std::asin(std::min(1.0, 0.5 * chord));
}

Mat2 normalize_det(const Mat2& m) {
    const cplx det = m.det();
    if (det == cplx(0.0)) throw Error(ErrorKind::Domain, "matrix is singular");
    return m / std::sqrt(det);
}

}  // namespace phasetrop
