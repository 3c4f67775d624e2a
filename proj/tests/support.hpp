#pragma once

#include <cmath>
#include <random>

#include "phasetrop/hahn.hpp"
#include "phasetrop/mat2.hpp"

namespace testing {

using phasetrop::cplx;
using phasetrop::HahnMat2;
using phasetrop::HahnSeries;
using phasetrop::HahnTerm;
using phasetrop::Mat2;
using phasetrop::Rational;
using phasetrop::Vec2;

inline cplx gauss_c(std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    const double re = n(rng);
    return {re, n(rng)};
}

inline Mat2 gauss_mat(std::mt19937_64& rng) {
    const cplx a = gauss_c(rng), b = gauss_c(rng), c = gauss_c(rng);
    return {a, b, c, gauss_c(rng)};
}

inline Vec2 gauss_vec(std::mt19937_64& rng) {
    const cplx x = gauss_c(rng);
    return {x, gauss_c(rng)};
}

inline Mat2 random_unitary(std::mt19937_64& rng) {
    const Vec2 u = gauss_vec(rng).normalized();
    const double phase = std::uniform_real_distribution<double>(0.0, 6.283185307179586)(rng);
    const cplx w = std::polar(1.0, phase);
    return {w * u.x0, -w * std::conj(u.x1), w * u.x1, w * std::conj(u.x0)};
}

inline Mat2 random_det1(std::mt19937_64& rng) {
    Mat2 m = gauss_mat(rng);
    while (std::abs(m.det()) < 1e-3) m = gauss_mat(rng);
    return phasetrop::normalize_det(m);
}

/// Exponent in (1/4)Z within [lo, hi].
inline Rational quarter(std::mt19937_64& rng, int lo = -12, int hi = 12) {
    return {std::uniform_int_distribution<int>(lo, hi)(rng), 4};
}

/// Exact series with 1..max_terms terms, exponents in (1/4)Z ∩ [-3, 3].
inline HahnSeries random_series(std::mt19937_64& rng, int max_terms = 3) {
    const int n = std::uniform_int_distribution<int>(1, max_terms)(rng);
    std::vector<HahnTerm> terms;
    for (int i = 0; i < n; ++i) terms.push_back({quarter(rng), gauss_c(rng)});
    return HahnSeries::from_terms(std::move(terms));
}

inline HahnMat2 random_hahn_mat(std::mt19937_64& rng) {
    HahnMat2 m;
    std::uniform_int_distribution<int> zero(0, 5);
    for (auto& e : m.e)
        if (zero(rng) != 0) e = random_series(rng);
    if (m.all_zero()) m.e[0] = random_series(rng);
    return m;
}

inline double coeff_scale(const HahnSeries& s) {
    double m = 0.0;
    for (const auto& t : s.terms()) m = std::max(m, std::abs(t.coeff));
    return m;
}

/// Every stored coefficient of x - y is below tol relative to the scale of x and y.
inline bool series_close(const HahnSeries& x, const HahnSeries& y, double tol = 1e-10) {
    const HahnSeries d = x - y;
    const double scale = std::max({coeff_scale(x), coeff_scale(y), 1e-300});
    for (const auto& t : d.terms())
        if (std::abs(t.coeff) > tol * scale) return false;
    return true;
}

/// As series_close, ignoring terms with exponent <= below.
inline bool series_close_above(const HahnSeries& x, const HahnSeries& y, const Rational& below, double tol = 1e-10) {
    const HahnSeries d = x - y;
    const double scale = std::max({coeff_scale(x), coeff_scale(y), 1e-300});
    for (const auto& t : d.terms())
        if (t.exponent > below && std::abs(t.coeff) > tol * scale) return false;
    return true;
}

inline double mat_dist(const Mat2& x, const Mat2& y) { return phasetrop::frobenius_distance(x, y); }

}  // namespace testing
