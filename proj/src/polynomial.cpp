#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "phasetrop/error.hpp"
#include "phasetrop/tropicalize.hpp"

namespace phasetrop {

HomogPoly4::HomogPoly4(std::map<Exponents, cplx> monomials) {
    std::erase_if(monomials, [](const auto& kv) { return kv.second == cplx(0.0); });
    if (monomials.empty()) throw Error(ErrorKind::Domain, "polynomial is identically zero");
    auto deg = [](const Exponents& e) { return e[0] + e[1] + e[2] + e[3]; };
    degree_ = deg(monomials.begin()->first);
    for (const auto& [e, c] : monomials)
        if (deg(e) != degree_) throw Error(ErrorKind::Domain, "polynomial is not homogeneous");
    monomials_ = std::move(monomials);
}

namespace {

class PolyParser {
public:
    explicit PolyParser(std::string_view s) : s_(s) {}

    std::map<HomogPoly4::Exponents, cplx> parse() {
        std::map<HomogPoly4::Exponents, cplx> out;
        skip_ws();
        if (at_end()) throw ParseError("empty polynomial", pos_);
        double sign = 1.0;
        if (peek() == '+' || peek() == '-') {
            sign = peek() == '-' ? -1.0 : 1.0;
            ++pos_;
        }
        while (true) {
            auto [e, c] = parse_monomial();
            out[e] += sign * c;
            skip_ws();
            if (at_end()) break;
            if (peek() != '+' && peek() != '-') throw ParseError("expected '+' or '-'", pos_);
            sign = peek() == '-' ? -1.0 : 1.0;
            ++pos_;
        }
        return out;
    }

private:
    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return at_end() ? '\0' : s_[pos_]; }
    static bool is_digit(char ch) { return ch >= '0' && ch <= '9'; }
    void skip_ws() {
        while (!at_end() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
    }

    double parse_real() {
        const std::size_t start = pos_;
        while (is_digit(peek())) ++pos_;
        if (peek() == '.') {
            ++pos_;
            while (is_digit(peek())) ++pos_;
        }
        if ((peek() == 'e' || peek() == 'E') && pos_ + 1 < s_.size()) {
            std::size_t p = pos_ + 1;
            if (s_[p] == '+' || s_[p] == '-') ++p;
            if (p < s_.size() && is_digit(s_[p])) {
                pos_ = p;
                while (is_digit(peek())) ++pos_;
            }
        }
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, v);
        if (ec != std::errc() || ptr != s_.data() + pos_ || start == pos_) throw ParseError("malformed number", start);
        return v;
    }

    unsigned parse_uint() {
        const std::size_t start = pos_;
        unsigned v = 0;
        while (is_digit(peek())) {
            v = v * 10 + static_cast<unsigned>(peek() - '0');
            if (v > 64) throw ParseError("exponent too large", start);
            ++pos_;
        }
        if (start == pos_) throw ParseError("expected an integer exponent", pos_);
        return v;
    }

    std::pair<HomogPoly4::Exponents, cplx> parse_monomial() {
        skip_ws();
        const std::size_t start = pos_;
        cplx coeff = 1.0;
        bool any = false;
        if (peek() == '(') {
            const std::size_t close = s_.find(')', pos_);
            if (close == std::string_view::npos) throw ParseError("unterminated coefficient", pos_);
            HahnSeries c;
            try {
                c = parse_series(s_.substr(pos_, close - pos_ + 1));
            } catch (const ParseError& e) {
                throw ParseError("malformed coefficient", pos_ + e.position());
            }
            if (c.terms().size() > 1 || (!c.terms().empty() && !c.terms().front().exponent.is_zero()))
                throw ParseError("coefficient must be a complex constant", pos_);
            coeff = c.terms().empty() ? cplx(0.0) : c.terms().front().coeff;
            pos_ = close + 1;
            any = true;
        } else if (is_digit(peek()) || peek() == '.') {
            coeff = parse_real();
            any = true;
            skip_ws();
            if (peek() == 'i') {
                ++pos_;
                coeff = cplx(0.0, coeff.real());
            }
        } else if (peek() == 'i') {
            ++pos_;
            coeff = cplx(0.0, 1.0);
            any = true;
        }
        HomogPoly4::Exponents e{0, 0, 0, 0};
        while (true) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                skip_ws();
            }
            if (peek() != 'x') break;
            ++pos_;
            if (!(peek() >= '0' && peek() <= '3')) throw ParseError("expected coordinate index 0..3", pos_);
            const auto k = static_cast<std::size_t>(peek() - '0');
            ++pos_;
            unsigned power = 1;
            skip_ws();
            if (peek() == '^') {
                ++pos_;
                skip_ws();
                power = parse_uint();
            }
            e[k] += power;
            any = true;
        }
        if (!any) throw ParseError("expected a monomial", start);
        return {e, coeff};
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

std::string format_coeff(cplx c) {
    auto fmt = [](double x) {
        char buf[64];
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
        return std::string(buf, ptr);
    };
    if (c.imag() == 0.0) return fmt(c.real());
    return "(" + fmt(c.real()) + (std::signbit(c.imag()) ? "-" : "+") + fmt(std::abs(c.imag())) + "i)";
}

// Polynomial product, coefficients constant term first.
std::vector<cplx> poly_mul(const std::vector<cplx>& x, const std::vector<cplx>& y) {
    std::vector<cplx> out(x.size() + y.size() - 1);
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
    return out;
}

}  // namespace

HomogPoly4 HomogPoly4::parse(std::string_view text) { return HomogPoly4(PolyParser(text).parse()); }

cplx HomogPoly4::operator()(const Mat2& m) const {
    const auto x = m.entries();
    cplx sum{};
    for (const auto& [e, c] : monomials_) {
        cplx term = c;
        for (std::size_t k = 0; k < 4; ++k)
            for (unsigned p = 0; p < e[k]; ++p) term *= x[k];
        sum += term;
    }
    return sum;
}

HahnSeries HomogPoly4::operator()(const HahnMat2& m) const {
    std::array<std::vector<HahnSeries>, 4> powers;
    for (std::size_t k = 0; k < 4; ++k) {
        powers[k].push_back(HahnSeries::constant(1.0));
        for (unsigned p = 1; p <= degree_in(k); ++p) powers[k].push_back(powers[k].back() * m.e[k]);
    }
    HahnSeries sum;
    for (const auto& [e, c] : monomials_) {
        HahnSeries term = HahnSeries::constant(c);
        for (std::size_t k = 0; k < 4; ++k)
            if (e[k] > 0) term = term * powers[k][e[k]];
        sum = sum + term;
    }
    return sum;
}

double HomogPoly4::coefficient_scale() const {
    double s = 0.0;
    for (const auto& [e, c] : monomials_) s = std::max(s, std::abs(c));
    return s;
}

double HomogPoly4::residual(const Mat2& m) const {
    const double n = m.frobenius_norm();
    if (n == 0.0) throw Error(ErrorKind::Domain, "residual at the zero matrix");
    return std::abs((*this)(m / cplx(n))) / coefficient_scale();
}

std::vector<cplx> HomogPoly4::restrict_to_line(const Mat2& p, const Mat2& q) const {
    const auto pe = p.entries();
    const auto qe = q.entries();
    std::vector<cplx> out(degree_ + 1);
    for (const auto& [e, c] : monomials_) {
        std::vector<cplx> acc{c};
        for (std::size_t k = 0; k < 4; ++k)
            for (unsigned r = 0; r < e[k]; ++r) acc = poly_mul(acc, {pe[k], qe[k]});
        for (std::size_t i = 0; i < acc.size(); ++i) out[i] += acc[i];
    }
    return out;
}

unsigned HomogPoly4::degree_in(std::size_t k) const {
    unsigned d = 0;
    for (const auto& [e, c] : monomials_) d = std::max(d, e[k]);
    return d;
}

std::string HomogPoly4::to_string() const {
    std::string out;
    for (const auto& [e, c] : monomials_) {
        if (!out.empty()) out += " + ";
        out += format_coeff(c);
        for (std::size_t k = 0; k < 4; ++k) {
            if (e[k] == 0) continue;
            out += "*x" + std::to_string(k);
            if (e[k] > 1) out += "^" + std::to_string(e[k]);
        }
    }
    return out;
}

std::vector<cplx> roots_univariate(std::span<const cplx> coeffs) {
    if (coeffs.empty() || coeffs.front() == cplx(0.0))
        throw Error(ErrorKind::Domain, "roots_univariate: leading coefficient must be non-zero");
    const std::size_t n = coeffs.size() - 1;
    if (n == 0) return {};
    std::vector<cplx> a(coeffs.begin(), coeffs.end());
    for (auto& x : a) x /= coeffs.front();
    if (n == 1) return {-a[1]};

    auto eval = [&a](cplx z) {
        cplx v = a[0];
        for (std::size_t i = 1; i < a.size(); ++i) v = v * z + a[i];
        return v;
    };
    auto scale_at = [&a](cplx z) {
        double v = 0.0;
        const double r = std::abs(z);
        for (const auto& c : a) v = v * r + std::abs(c);
        return v;
    };

    double bound = 0.0;
    for (std::size_t i = 1; i < a.size(); ++i) bound = std::max(bound, std::abs(a[i]));
    const double radius = 0.5 * (1.0 + bound);
    std::vector<cplx> z(n);
    for (std::size_t k = 0; k < n; ++k)
        z[k] = std::polar(radius, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4);

    int quiet_rounds = 0;
    for (int iter = 0; iter < 10000 && quiet_rounds < 3; ++iter) {
        double max_step = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            cplx den = 1.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != k) den *= (z[k] - z[j]);
            if (den == cplx(0.0)) den = cplx(1e-300);
            const cplx step = eval(z[k]) / den;
            z[k] -= step;
            max_step = std::max(max_step, std::abs(step) / std::max(1.0, std::abs(z[k])));
        }
        quiet_rounds = max_step <= 1e-15 ? quiet_rounds + 1 : 0;
    }

    double worst = 0.0;
    for (const cplx& r : z) worst = std::max(worst, std::abs(eval(r)) / scale_at(r));
    if (worst > 1e-10)
        throw Error(ErrorKind::Convergence, "roots_univariate: Durand-Kerner did not converge (relative residual " +
                                                std::to_string(worst) + ")");
    return z;
}

}  // namespace phasetrop
