#include "phasetrop/rational.hpp"

#include <limits>
#include <numeric>

#include "phasetrop/error.hpp"

namespace phasetrop {

namespace {

using i128 = __int128;

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rational make_reduced(i128 n, i128 d) {
    if (d == 0) throw Error(ErrorKind::Domain, "rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    constexpr i128 lo = std::numeric_limits<std::int64_t>::min();
    constexpr i128 hi = std::numeric_limits<std::int64_t>::max();
    if (n < lo || n > hi || d > hi) throw Error(ErrorKind::Domain, "rational overflow in exponent arithmetic");
    return Rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw Error(ErrorKind::Domain, "rational with zero denominator");
    if (d < 0) {
        if (n == std::numeric_limits<std::int64_t>::min() || d == std::numeric_limits<std::int64_t>::min())
            throw Error(ErrorKind::Domain, "rational overflow in exponent arithmetic");
        n = -n;
        d = -d;
    }
    std::int64_t g = std::gcd(n, d);
    num_ = n / g;
    den_ = d / g;
}

Rational Rational::parse(std::string_view text) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        negative = text[i] == '-';
        ++i;
    }
    auto read_digits = [&](i128& value, int& count) {
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
            value = value * 10 + (text[i] - '0');
            if (value > (i128(1) << 100)) throw ParseError("exponent has too many digits", i);
            ++count;
            ++i;
        }
    };
    i128 num = 0;
    int int_digits = 0;
    read_digits(num, int_digits);
    i128 den = 1;
    if (i < text.size() && text[i] == '.') {
        ++i;
        int frac_digits = 0;
        i128 frac = 0;
        read_digits(frac, frac_digits);
        if (frac_digits == 0) throw ParseError("expected digits after decimal point", i);
        for (int k = 0; k < frac_digits; ++k) {
            num *= 10;
            den *= 10;
        }
        num += frac;
    } else if (i < text.size() && text[i] == '/') {
        if (int_digits == 0) throw ParseError("expected numerator", i);
        ++i;
        int den_digits = 0;
        den = 0;
        read_digits(den, den_digits);
        if (den_digits == 0) throw ParseError("expected denominator", i);
        if (den == 0) throw ParseError("zero denominator", i);
        int_digits = 1;
    }
    if (int_digits == 0 && den == 1) throw ParseError("expected a number", i);
    if (i != text.size()) throw ParseError("unexpected character in number", i);
    return make_reduced(negative ? -num : num, den);
}

bool Rational::has_finite_decimal() const noexcept {
    std::int64_t d = den_;
    while (d % 2 == 0) d /= 2;
    while (d % 5 == 0) d /= 5;
    return d == 1;
}

std::string Rational::to_string() const {
    if (den_ == 1) return std::to_string(num_);
    if (!has_finite_decimal()) return std::to_string(num_) + "/" + std::to_string(den_);
    // Scale to a power-of-ten denominator.
    i128 n = num_;
    i128 d = den_;
    int digits = 0;
    while (d != 1) {
        if (d % 10 == 0) {
            d /= 10;
        } else if (d % 2 == 0) {
            d /= 2;
            n *= 5;
        } else {
            d /= 5;
            n *= 2;
        }
        ++digits;
    }
    bool negative = n < 0;
    if (negative) n = -n;
    std::string s;
    while (n > 0) {
        s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(n % 10)));
        n /= 10;
    }
    while (static_cast<int>(s.size()) <= digits) s.insert(s.begin(), '0');
    s.insert(s.end() - digits, '.');
    return (negative ? "-" : "") + s;
}

Rational Rational::operator-() const { return make_reduced(-i128(num_), den_); }

Rational operator+(const Rational& a, const Rational& b) {
    return make_reduced(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
    return make_reduced(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
    return make_reduced(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw Error(ErrorKind::Domain, "rational division by zero");
    return make_reduced(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
    return i128(a.num_) * b.den_ <=> i128(b.num_) * a.den_;
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace phasetrop
