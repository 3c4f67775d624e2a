#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phasetrop/mat2.hpp"
#include "phasetrop/rational.hpp"

namespace phasetrop {

/// One stored term c·t^e of a series, c != 0.
struct HahnTerm {
    Rational exponent;
    cplx coeff;
};

/// Truncated Hahn series in t -> infinity: a finite sum of terms with strictly
/// decreasing exponents, plus a truncation order below which nothing is known.
///
/// `trunc()` returns std::nullopt for an exact (untruncated) series. Every stored
/// exponent is strictly greater than the truncation order, and arithmetic never
/// reports terms at or below the truncation it inherits from its inputs.
///
/// Coefficients that cancel to within 1e-12 of the magnitudes that produced them
/// are dropped.
class HahnSeries {
public:
    HahnSeries() = default;

    static HahnSeries constant(cplx c);
    static HahnSeries monomial(cplx c, Rational exponent);
    /// Sorts, merges duplicate exponents, drops zero coefficients and terms at or
    /// below `trunc`.
    static HahnSeries from_terms(std::vector<HahnTerm> terms, std::optional<Rational> trunc = std::nullopt);

    const std::vector<HahnTerm>& terms() const noexcept { return terms_; }
    const std::optional<Rational>& trunc() const noexcept { return trunc_; }

    /// No stored terms. Says nothing about terms below the truncation order.
    bool is_zero() const noexcept { return terms_.empty(); }
    /// No stored terms and no truncation: genuinely the zero element.
    bool is_exact_zero() const noexcept { return terms_.empty() && !trunc_; }

    /// Highest stored exponent. Throws Error(Domain) "no leading term" when empty.
    const Rational& lead_exponent() const;

    /// Same series with the truncation order raised to `order` (terms at or below dropped).
    HahnSeries truncated(const Rational& order) const;

    HahnSeries operator-() const;
    HahnSeries scaled(cplx s) const;

    friend HahnSeries operator+(const HahnSeries& a, const HahnSeries& b);
    friend HahnSeries operator-(const HahnSeries& a, const HahnSeries& b);
    friend HahnSeries operator*(const HahnSeries& a, const HahnSeries& b);

private:
    std::vector<HahnTerm> terms_;  // strictly decreasing exponents
    std::optional<Rational> trunc_;
};

HahnSeries add(const HahnSeries& a, const HahnSeries& b);
HahnSeries mul(const HahnSeries& a, const HahnSeries& b);

/// Integer power by repeated multiplication; n >= 0.
HahnSeries pow(const HahnSeries& a, unsigned n);

/// 1/a keeping every term within `depth` of the result's leading exponent.
/// Throws Error(Domain) "division by zero series".
HahnSeries invert(const HahnSeries& a, const Rational& depth);

/// Square root with principal-branch leading coefficient, same window policy as invert.
HahnSeries sqrt(const HahnSeries& a, const Rational& depth);

struct LeadingTerm {
    Rational alpha;
    cplx c;
};

LeadingTerm leading_term(const HahnSeries& a);

/// Numeric value sum c·t^e for t > 1, summed from the smallest-magnitude term up.
cplx evaluate(const HahnSeries& a, double t);

/// The substitution t^beta -> exp(-beta sigma / gamma) t^(alpha beta / gamma),
/// a field automorphism of the Hahn series field fixing C.
HahnSeries reparametrize(const HahnSeries& a, const Rational& gamma, cplx sigma, const Rational& alpha);

/// Parses the series grammar: `term (('+'|'-') term)*`, term := coeff? ('t' ('^' real)?)?,
/// coeff := real | imag | '(' real ('+'|'-') real 'i' ')'. Exponents may also be written
/// `(p/q)`; a final `O(t^e)` term sets the truncation order. Throws ParseError.
HahnSeries parse_series(std::string_view text);

/// Canonical descending-exponent form, re-parseable by parse_series.
std::string to_string(const HahnSeries& a);

/// 2x2 matrix of series (a b; c d).
struct HahnMat2 {
    std::array<HahnSeries, 4> e;

    const HahnSeries& a() const { return e[0]; }
    const HahnSeries& b() const { return e[1]; }
    const HahnSeries& c() const { return e[2]; }
    const HahnSeries& d() const { return e[3]; }

    static HahnMat2 constant(const Mat2& m);

    HahnSeries det() const;
    HahnSeries trace() const;
    HahnMat2 scaled(const HahnSeries& s) const;
    /// True when every entry has no stored terms.
    bool all_zero() const;
    /// Largest stored exponent over the four entries. Throws Error(Domain) if all are zero.
    Rational lead_exponent() const;
    /// Coefficient matrix at exponent e (zero where an entry has no term there).
    Mat2 coefficients_at(const Rational& e) const;
    Mat2 evaluate(double t) const;
};

HahnMat2 operator*(const HahnMat2& x, const HahnMat2& y);
HahnMat2 operator*(const Mat2& x, const HahnMat2& y);
HahnMat2 operator*(const HahnMat2& x, const Mat2& y);

/// Parses four series strings (row-major).
HahnMat2 parse_matrix(const std::array<std::string, 4>& entries);

}  // namespace phasetrop
