#pragma once

#include <array>
#include <complex>

namespace phasetrop {

using cplx = std::complex<double>;

/// Column vector in C^2.
struct Vec2 {
    cplx x0{};
    cplx x1{};

    double norm() const;
    Vec2 normalized() const;
    friend Vec2 operator*(cplx s, const Vec2& v) { return {s * v.x0, s * v.x1}; }
};

/// Hermitian inner product <u, v> = u* v.
cplx inner(const Vec2& u, const Vec2& v);

/// Unit vector orthogonal to a unit vector u, chosen so that det[u | perp(u)] = 1.
Vec2 perp(const Vec2& u);

/// 2x2 complex matrix, row-major (a b; c d).
struct Mat2 {
    cplx a{};
    cplx b{};
    cplx c{};
    cplx d{};

    static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static constexpr Mat2 diag(cplx x, cplx y) { return {x, 0.0, 0.0, y}; }

    /// Outer product u v^T (no conjugation).
    static Mat2 outer(const Vec2& u, const Vec2& v);
    /// Rank-one u v* (conjugate on v).
    static Mat2 ket_bra(const Vec2& u, const Vec2& v);

    std::array<cplx, 4> entries() const { return {a, b, c, d}; }
    static Mat2 from_entries(const std::array<cplx, 4>& e) { return {e[0], e[1], e[2], e[3]}; }

    Mat2 adjoint() const { return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)}; }
    Mat2 conj() const { return {std::conj(a), std::conj(b), std::conj(c), std::conj(d)}; }
    Mat2 transpose() const { return {a, c, b, d}; }
    cplx det() const { return a * d - b * c; }
    cplx trace() const { return a + d; }
    Mat2 adjugate() const { return {d, -b, -c, a}; }
    double frobenius_norm() const;
    double max_abs() const;
    bool is_finite() const;

    Vec2 operator*(const Vec2& v) const { return {a * v.x0 + b * v.x1, c * v.x0 + d * v.x1}; }
    Mat2& operator+=(const Mat2& o);
    Mat2& operator-=(const Mat2& o);
    Mat2& operator*=(cplx s);
};

Mat2 operator+(Mat2 x, const Mat2& y);
Mat2 operator-(Mat2 x, const Mat2& y);
Mat2 operator-(const Mat2& x);
Mat2 operator*(const Mat2& x, const Mat2& y);
Mat2 operator*(cplx s, Mat2 x);
Mat2 operator*(Mat2 x, cplx s);
Mat2 operator/(Mat2 x, cplx s);

/// Frobenius inner product <x, y> = sum conj(x_ij) y_ij.
cplx frobenius_inner(const Mat2& x, const Mat2& y);
double frobenius_distance(const Mat2& x, const Mat2& y);

struct DetTrAdj {
    cplx det;
    cplx tr;
    Mat2 adj;
};

DetTrAdj det_tr_adj(const Mat2& m);

/// Spectral decomposition of a Hermitian 2x2 matrix: h = l1 e1 e1* + l2 e2 e2*, l1 >= l2.
struct HermitianEigen {
    double l1;
    double l2;
    Vec2 e1;
    Vec2 e2;
};

/// Closed form via the quadratic formula. Only the Hermitian part of `h` is read.
/// When `det_hint` is given it replaces det(h) for the small eigenvalue, which keeps
/// l2 relatively accurate when l2 << l1 (e.g. h = m m* with det_hint = |det m|^2).
HermitianEigen hermitian_eigen(const Mat2& h, const double* det_hint = nullptr);

/// m = s1 u1 v1* + s2 u2 v2*.
struct SVD2 {
    double s1;
    double s2;
    Vec2 u1;
    Vec2 u2;
    Vec2 v1;
    Vec2 v2;

    Mat2 reconstruct() const;
};

SVD2 svd2(const Mat2& m);

/// Right polar decomposition m = P U.
struct Polar {
    Mat2 P;
    Mat2 U;
    /// Set when s2/s1 < 1e-13: U was completed arbitrarily on the kernel.
    bool unitary_nonunique = false;
};

Polar polar(const Mat2& m);

/// P^h for Hermitian positive-definite P and h >= 0, by spectral calculus.
/// Throws Error(Domain) if P is not Hermitian or not positive definite.
Mat2 frac_power(const Mat2& P, double h);

bool is_hermitian(const Mat2& m, double tol);
bool is_unitary(const Mat2& m, double tol);

/// Point of CP^3 = P(Mat2). The stored representative has Frobenius norm 1 and
/// its first entry with modulus > 1e-12 rotated onto the positive real axis.
class ProjPointC {
public:
    /// Throws Error(Domain) for the zero matrix or non-finite entries.
    explicit ProjPointC(const Mat2& m);

    const Mat2& rep() const noexcept { return rep_; }

private:
    Mat2 rep_;
};

/// Class of a matrix modulo R^*: norm 1, first entry with modulus > 1e-12
/// made sign-positive (real part > 0, or real part 0 and imaginary part > 0).
class ProjPointR {
public:
    explicit ProjPointR(const Mat2& m);

    const Mat2& rep() const noexcept { return rep_; }
    ProjPointC complex_class() const { return ProjPointC(rep_); }

private:
    Mat2 rep_;
};

/// Fubini-Study angle arccos|<p,q>| in [0, pi/2], evaluated stably via atan2.
double dist_proj_c(const ProjPointC& p, const ProjPointC& q);
/// arccos|Re<p,q>| in [0, pi/2]: the angle between lines in R^8.
double dist_proj_r(const ProjPointR& p, const ProjPointR& q);

/// m / sqrt(det m) (principal branch). Throws Error(Domain) if det m == 0.
Mat2 normalize_det(const Mat2& m);

}  // namespace phasetrop
