// Extended-precision evaluation of R_{1/log t}[A(t)].
//
// At t = exp(L) the entries of A(t) span factors exp(spread * L) and the
// determinant cancels down to exp(-2 spread L) relative to |A|^2, so the
// arithmetic runs in MPFR floats with ~2 spread L / ln 2 bits.

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include <boost/multiprecision/mpfr.hpp>

#include "phasetrop/error.hpp"
#include "phasetrop/valuation.hpp"

namespace phasetrop {

namespace {

using Real = boost::multiprecision::mpfr_float;

struct BigC {
    Real re;
    Real im;
};

BigC operator+(const BigC& x, const BigC& y) { return {x.re + y.re, x.im + y.im}; }
BigC operator-(const BigC& x, const BigC& y) { return {x.re - y.re, x.im - y.im}; }
BigC operator*(const BigC& x, const BigC& y) { return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re}; }
BigC operator*(const Real& s, const BigC& x) { return {s * x.re, s * x.im}; }
BigC conj(const BigC& x) { return {x.re, -x.im}; }
Real norm2(const BigC& x) { return x.re * x.re + x.im * x.im; }

struct BigMat {
    BigC a, b, c, d;
};

BigMat mul(const BigMat& x, const BigMat& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

// Sets the default MPFR precision for the lifetime of the guard.
class PrecisionGuard {
public:
    explicit PrecisionGuard(unsigned digits10) : saved_(Real::default_precision()) {
        Real::default_precision(digits10);
    }
    ~PrecisionGuard() { Real::default_precision(saved_); }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    unsigned saved_;
};

Mat2 to_double_class(const BigMat& m) {
    Real scale = 0;
    for (const BigC* z : {&m.a, &m.b, &m.c, &m.d}) scale = std::max({scale, Real(abs(z->re)), Real(abs(z->im))});
    if (scale == 0) throw Error(ErrorKind::Domain, "evaluated matrix is zero");
    auto cvt = [&scale](const BigC& z) {
        return cplx(Real(z.re / scale).convert_to<double>(), Real(z.im / scale).convert_to<double>());
    };
    return {cvt(m.a), cvt(m.b), cvt(m.c), cvt(m.d)};
}

}  // namespace

ProjPointC degeneration_point(const HahnMat2& A, double log_t) {
    if (!(log_t > 1.0)) throw Error(ErrorKind::Domain, "degeneration_point: need t > e");
    if (A.all_zero()) throw Error(ErrorKind::Domain, "evaluated matrix is zero");

    Rational top = A.lead_exponent();
    Rational bottom = top;
    for (const auto& s : A.e)
        for (const auto& term : s.terms()) bottom = std::min(bottom, term.exponent);
    const double spread = (top - bottom).to_double();
    const double bits = 2.0 * spread * log_t / std::numbers::ln2 + 192.0;
    const auto digits10 = static_cast<unsigned>(std::ceil(bits * 0.30103)) + 1;
    PrecisionGuard guard(digits10);
    const Real L(log_t);
    const Real eps = ldexp(Real(1), -static_cast<int>(bits - 96.0));

    // Entries of t^{-top} A(t); each distinct power evaluated once.
    std::map<Rational, Real> powers;
    auto entry = [&](const HahnSeries& s) {
        BigC acc{Real(0), Real(0)};
        for (const auto& term : s.terms()) {
            auto it = powers.find(term.exponent);
            if (it == powers.end()) {
                const Rational rel = term.exponent - top;
                Real x = exp(Real(rel.num()) / Real(rel.den()) * L);
                it = powers.emplace(term.exponent, std::move(x)).first;
            }
            acc = acc + BigC{it->second * Real(term.coeff.real()), it->second * Real(term.coeff.imag())};
        }
        return acc;
    };
    const BigMat m{entry(A.e[0]), entry(A.e[1]), entry(A.e[2]), entry(A.e[3])};

    const BigC det = m.a * m.d - m.b * m.c;
    const Real abs_det2 = norm2(det);
    const Real m11 = norm2(m.a) + norm2(m.b);
    const Real m22 = norm2(m.c) + norm2(m.d);
    const BigC m12 = m.a * conj(m.c) + m.b * conj(m.d);
    const Real tr = m11 + m22;
    if (tr == 0) throw Error(ErrorKind::Domain, "evaluated matrix is zero");

    // R_h extends to Q as the identity. A nonzero det is at least exp(-2 spread L) in size,
    // far above the working precision.
    if (abs_det2 <= eps * eps * tr * tr) return ProjPointC(to_double_class(m));

    // Eigenvalues of m m*: the larger by the quadratic formula, the smaller from |det|^2.
    Real disc = tr * tr - 4 * abs_det2;
    if (disc < 0) disc = 0;
    const Real l1 = (tr + sqrt(disc)) / 2;
    const Real l2 = abs_det2 / l1;
    const Real gap = l1 - l2;
    // P proportional to the identity: the flow fixes the class.
    if (gap <= eps * l1) return ProjPointC(to_double_class(m));

    const Real h = Real(1) / L;
    const Real s1 = sqrt(l1);
    const Real s2 = sqrt(l2);
    // Singular values of the det-1 normalisation are s1/sqrt|det| and its inverse.
    const Real log_sigma = log(s1) - log(abs_det2) / 4;
    const Real k1 = exp(h * log_sigma) / s1;
    const Real k2 = exp(-h * log_sigma) / s2;

    // Spectral projectors of m m*: P^h U = (k1 Pi1 + k2 Pi2) m up to the det phase.
    const BigMat pi1{{(m11 - l2) / gap, Real(0)}, {m12.re / gap, m12.im / gap}, {m12.re / gap, -m12.im / gap}, {(m22 - l2) / gap, Real(0)}};
    const BigMat pi2{{(l1 - m11) / gap, Real(0)}, {-m12.re / gap, -m12.im / gap}, {-m12.re / gap, m12.im / gap}, {(l1 - m22) / gap, Real(0)}};
    const BigMat p1m = mul(pi1, m);
    const BigMat p2m = mul(pi2, m);
    const BigMat out{k1 * p1m.a + k2 * p2m.a, k1 * p1m.b + k2 * p2m.b, k1 * p1m.c + k2 * p2m.c, k1 * p1m.d + k2 * p2m.d};
    return ProjPointC(to_double_class(out));
}

}  // namespace phasetrop
