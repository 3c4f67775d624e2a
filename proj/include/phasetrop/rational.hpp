#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace phasetrop {

/// Exact rational number with 64-bit numerator and positive denominator,
/// always kept in lowest terms. Used for series exponents so that the
/// case analysis on valuations (α > 0 versus α = 0, γ versus 1, ...) is
/// never decided by floating-point rounding. Overflow throws.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit from integers
    Rational(std::int64_t n, std::int64_t d);

    /// Parses `[-]digits[.digits]` or `[-]p/q`. Throws ParseError.
    static Rational parse(std::string_view text);

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }

    double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// Exact decimal when the denominator is 2^a·5^b, otherwise `p/q`.
    std::string to_string() const;
    bool has_finite_decimal() const noexcept;

    Rational operator-() const;
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }

    friend bool operator==(const Rational& a, const Rational& b) noexcept {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept;

    bool is_zero() const noexcept { return num_ == 0; }
    int sign() const noexcept { return (num_ > 0) - (num_ < 0); }

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

Rational abs(const Rational& r);

}  // namespace phasetrop

template <>
struct std::hash<phasetrop::Rational> {
    std::size_t operator()(const phasetrop::Rational& r) const noexcept {
        return std::hash<std::int64_t>{}(r.num()) * 1000003u ^ std::hash<std::int64_t>{}(r.den());
    }
};
