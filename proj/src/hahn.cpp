#include "phasetrop/hahn.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "phasetrop/error.hpp"

namespace phasetrop {

namespace {

constexpr double kCancelTol = 1e-12;

// Running sum for one exponent; |sum| <= kCancelTol * mass counts as cancelled.
struct Accum {
    cplx sum{};
    double mass = 0.0;

    void add(cplx z) {
        sum += z;
        mass += std::abs(z);
    }
    bool survives() const { return std::abs(sum) > kCancelTol * mass; }
};

using DescendingMap = std::map<Rational, Accum, std::greater<>>;

std::optional<Rational> max_trunc(const std::optional<Rational>& x, const std::optional<Rational>& y) {
    if (!x) return y;
    if (!y) return x;
    return std::max(*x, *y);
}

// x + y over R ∪ {-inf}.
std::optional<Rational> add_orders(const std::optional<Rational>& x, const std::optional<Rational>& y) {
    if (!x || !y) return std::nullopt;
    return *x + *y;
}

// Upper bound on the exponents present: the leading exponent, or the truncation
// order for a series without stored terms (nullopt means exactly zero).
std::optional<Rational> upper_order(const HahnSeries& s) {
    if (!s.is_zero()) return s.lead_exponent();
    return s.trunc();
}

std::vector<HahnTerm> collect(const DescendingMap& acc) {
    std::vector<HahnTerm> out;
    out.reserve(acc.size());
    for (const auto& [e, a] : acc)
        if (a.survives()) out.push_back({e, a.sum});
    return out;
}

// Product of exact term lists, discarding exponents below `floor`.
std::vector<HahnTerm> mul_window(const std::vector<HahnTerm>& x, const std::vector<HahnTerm>& y, const Rational& floor) {
    DescendingMap acc;
    for (const auto& tx : x)
        for (const auto& ty : y) {
            Rational e = tx.exponent + ty.exponent;
            if (e < floor) continue;
            acc[e].add(tx.coeff * ty.coeff);
        }
    return collect(acc);
}

// Largest element strictly below -depth of the additive monoid generated by the
// (negative) exponents `gens`. Every element >= -depth + max(gens) is enumerated,
// which is enough because the least element >= -depth plus max(gens) is < -depth.
std::optional<Rational> next_monoid_element_below(const std::vector<Rational>& gens, const Rational& depth) {
    if (gens.empty()) return std::nullopt;
    const Rational closest = *std::max_element(gens.begin(), gens.end());
    const Rational floor = -depth + closest;
    std::set<Rational, std::greater<>> seen{Rational(0)};
    std::vector<Rational> frontier{Rational(0)};
    while (!frontier.empty()) {
        std::vector<Rational> next;
        for (const Rational& s : frontier)
            for (const Rational& g : gens) {
                Rational v = s + g;
                if (v < floor) continue;
                if (seen.insert(v).second) next.push_back(v);
            }
        if (seen.size() > 200000)
            throw Error(ErrorKind::Domain, "series expansion window too large for the tail exponents");
        frontier = std::move(next);
    }
    std::optional<Rational> best;
    for (const Rational& s : seen)
        if (s < -depth && (!best || s > *best)) best = s;
    return best;
}

// Expands sum_k coeff(k) r^k for a tail r with negative exponents, keeping
// relative exponents >= -depth. Returns the terms and the relative exponent of
// the first term that could appear below the window.
struct TailExpansion {
    std::vector<HahnTerm> terms;
    std::optional<Rational> first_unknown;
};

TailExpansion expand_tail(const std::vector<HahnTerm>& r, const std::function<cplx(unsigned)>& coeff, const Rational& depth) {
    const Rational floor = -depth;
    DescendingMap acc;
    acc[Rational(0)].add(coeff(0));
    std::vector<HahnTerm> power{{Rational(0), 1.0}};
    for (unsigned k = 1; !power.empty(); ++k) {
        power = mul_window(power, r, floor);
        const cplx ck = coeff(k);
        for (const auto& t : power) acc[t.exponent].add(ck * t.coeff);
        if (k > 100000) throw Error(ErrorKind::Domain, "series expansion did not terminate");
    }
    std::vector<Rational> gens;
    for (const auto& t : r) gens.push_back(t.exponent);
    return {collect(acc), next_monoid_element_below(gens, depth)};
}

void require_nonzero(const HahnSeries& a, const char* what) {
    if (a.is_exact_zero()) throw Error(ErrorKind::Domain, what);
    if (a.is_zero())
        throw Error(ErrorKind::Inconclusive, std::string("inconclusive-at-truncation: ") + what);
}

// Shared body of invert and sqrt: a = c t^e (1 + r), result = lead_coeff t^lead_exp * sum_k coeff(k) r^k.
HahnSeries expand_about_leading(const HahnSeries& a, const Rational& depth, cplx lead_coeff, const Rational& lead_exp,
                                const std::function<cplx(unsigned)>& coeff) {
    if (!(depth > Rational(0))) throw Error(ErrorKind::Domain, "expansion depth must be positive");
    const HahnTerm lead = a.terms().front();
    std::vector<HahnTerm> r;
    for (std::size_t i = 1; i < a.terms().size(); ++i)
        r.push_back({a.terms()[i].exponent - lead.exponent, a.terms()[i].coeff / lead.coeff});

    TailExpansion tail = expand_tail(r, coeff, depth);
    std::vector<HahnTerm> out;
    out.reserve(tail.terms.size());
    for (const auto& t : tail.terms) out.push_back({t.exponent + lead_exp, t.coeff * lead_coeff});

    std::optional<Rational> trunc;
    if (tail.first_unknown) trunc = lead_exp + *tail.first_unknown;
    if (a.trunc()) trunc = max_trunc(trunc, lead_exp + (*a.trunc() - lead.exponent));
    return HahnSeries::from_terms(std::move(out), trunc);
}

}  // namespace

HahnSeries HahnSeries::constant(cplx c) { return monomial(c, Rational(0)); }

HahnSeries HahnSeries::monomial(cplx c, Rational exponent) { return from_terms({{exponent, c}}); }

HahnSeries HahnSeries::from_terms(std::vector<HahnTerm> terms, std::optional<Rational> trunc) {
    DescendingMap acc;
    for (const auto& t : terms)
        if (t.coeff != cplx(0.0)) acc[t.exponent].add(t.coeff);
    HahnSeries s;
    s.trunc_ = trunc;
    for (auto& t : collect(acc))
        if (!trunc || t.exponent > *trunc) s.terms_.push_back(t);
    return s;
}

const Rational& HahnSeries::lead_exponent() const {
    if (terms_.empty()) throw Error(ErrorKind::Domain, "no leading term");
    return terms_.front().exponent;
}

HahnSeries HahnSeries::truncated(const Rational& order) const {
    return from_terms(terms_, max_trunc(trunc_, order));
}

HahnSeries HahnSeries::operator-() const { return scaled(-1.0); }

HahnSeries HahnSeries::scaled(cplx s) const {
    if (s == cplx(0.0)) return from_terms({}, trunc_);
    HahnSeries out = *this;
    for (auto& t : out.terms_) t.coeff *= s;
    return out;
}

HahnSeries operator+(const HahnSeries& a, const HahnSeries& b) {
    DescendingMap acc;
    for (const auto& t : a.terms_) acc[t.exponent].add(t.coeff);
    for (const auto& t : b.terms_) acc[t.exponent].add(t.coeff);
    return HahnSeries::from_terms(collect(acc), max_trunc(a.trunc_, b.trunc_));
}

HahnSeries operator-(const HahnSeries& a, const HahnSeries& b) { return a + (-b); }

HahnSeries operator*(const HahnSeries& a, const HahnSeries& b) {
    const std::optional<Rational> trunc =
        max_trunc(add_orders(a.trunc_, upper_order(b)), add_orders(b.trunc_, upper_order(a)));
    DescendingMap acc;
    for (const auto& ta : a.terms_)
        for (const auto& tb : b.terms_) {
            Rational e = ta.exponent + tb.exponent;
            if (trunc && e <= *trunc) continue;
            acc[e].add(ta.coeff * tb.coeff);
        }
    return HahnSeries::from_terms(collect(acc), trunc);
}

HahnSeries add(const HahnSeries& a, const HahnSeries& b) { return a + b; }
HahnSeries mul(const HahnSeries& a, const HahnSeries& b) { return a * b; }

HahnSeries pow(const HahnSeries& a, unsigned n) {
    HahnSeries out = HahnSeries::constant(1.0);
    HahnSeries base = a;
    while (n > 0) {
        if (n & 1u) out = out * base;
        n >>= 1u;
        if (n > 0) base = base * base;
    }
    return out;
}

HahnSeries invert(const HahnSeries& a, const Rational& depth) {
    require_nonzero(a, "division by zero series");
    const HahnTerm lead = a.terms().front();
    return expand_about_leading(a, depth, 1.0 / lead.coeff, -lead.exponent,
                                [](unsigned k) { return cplx(k % 2 == 0 ? 1.0 : -1.0); });
}

HahnSeries sqrt(const HahnSeries& a, const Rational& depth) {
    require_nonzero(a, "square root of zero series");
    const HahnTerm lead = a.terms().front();
    // Binomial coefficients C(1/2, k), built incrementally.
    std::vector<double> binom{1.0};
    auto coeff = [&binom](unsigned k) {
        while (binom.size() <= k) {
            const double j = static_cast<double>(binom.size());
            binom.push_back(binom.back() * (0.5 - (j - 1.0)) / j);
        }
        return cplx(binom[k]);
    };
    return expand_about_leading(a, depth, std::sqrt(lead.coeff), lead.exponent / Rational(2), coeff);
}

LeadingTerm leading_term(const HahnSeries& a) {
    if (a.is_zero()) throw Error(ErrorKind::Domain, "no leading term");
    return {a.terms().front().exponent, a.terms().front().coeff};
}

cplx evaluate(const HahnSeries& a, double t) {
    std::vector<cplx> values;
    values.reserve(a.terms().size());
    for (const auto& term : a.terms()) values.push_back(term.coeff * std::pow(t, term.exponent.to_double()));
    std::sort(values.begin(), values.end(), [](cplx x, cplx y) { return std::abs(x) < std::abs(y); });
    cplx sum{};
    for (cplx v : values) sum += v;
    return sum;
}

HahnSeries reparametrize(const HahnSeries& a, const Rational& gamma, cplx sigma, const Rational& alpha) {
    if (!(gamma > Rational(0)) || !(alpha > Rational(0)))
        throw Error(ErrorKind::Domain, "reparametrize needs gamma > 0 and alpha > 0");
    const Rational ratio = alpha / gamma;
    std::vector<HahnTerm> out;
    out.reserve(a.terms().size());
    for (const auto& t : a.terms()) {
        const double beta_over_gamma = (t.exponent / gamma).to_double();
        out.push_back({t.exponent * ratio, t.coeff * std::exp(-beta_over_gamma * sigma)});
    }
    std::optional<Rational> trunc;
    if (a.trunc()) trunc = *a.trunc() * ratio;
    return HahnSeries::from_terms(std::move(out), trunc);
}

// ---------------------------------------------------------------------------
// Parsing and printing

namespace {

class SeriesParser {
public:
    explicit SeriesParser(std::string_view text) : s_(text) {}

    HahnSeries parse() {
        std::vector<HahnTerm> terms;
        std::optional<Rational> trunc;
        skip_ws();
        if (at_end()) throw ParseError("empty series", pos_);
        double sign = 1.0;
        if (peek() == '+' || peek() == '-') {
            sign = peek() == '-' ? -1.0 : 1.0;
            ++pos_;
        }
        while (true) {
            skip_ws();
            if (peek() == 'O') {
                trunc = parse_order();
                skip_ws();
                if (!at_end()) throw ParseError("O(t^e) must be the last term", pos_);
                break;
            }
            HahnTerm t = parse_term();
            t.coeff *= sign;
            terms.push_back(t);
            skip_ws();
            if (at_end()) break;
            if (peek() != '+' && peek() != '-') throw ParseError("expected '+' or '-'", pos_);
            sign = peek() == '-' ? -1.0 : 1.0;
            ++pos_;
        }
        return HahnSeries::from_terms(std::move(terms), trunc);
    }

private:
    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return at_end() ? '\0' : s_[pos_]; }
    void skip_ws() {
        while (!at_end() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r')) ++pos_;
    }
    void expect(char ch) {
        skip_ws();
        if (peek() != ch) throw ParseError(std::string("expected '") + ch + "'", pos_);
        ++pos_;
    }
    static bool is_digit(char ch) { return ch >= '0' && ch <= '9'; }

    bool number_ahead() const { return is_digit(peek()) || (peek() == '.' && pos_ + 1 < s_.size() && is_digit(s_[pos_ + 1])); }

    // Unsigned decimal with optional exponent part.
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
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, value);
        if (ec != std::errc() || ptr != s_.data() + pos_ || pos_ == start) throw ParseError("malformed number", start);
        return value;
    }

    double parse_signed_real() {
        skip_ws();
        double sign = 1.0;
        if (peek() == '+' || peek() == '-') {
            sign = peek() == '-' ? -1.0 : 1.0;
            ++pos_;
            skip_ws();
        }
        if (!number_ahead()) throw ParseError("expected a number", pos_);
        return sign * parse_real();
    }

    // '(' real ('+'|'-') real 'i' ')' and the degenerate forms (re), (im i).
    cplx parse_paren_coeff() {
        expect('(');
        skip_ws();
        double re = 0.0;
        double im = 0.0;
        double first_sign = 1.0;
        if (peek() == '+' || peek() == '-') {
            first_sign = peek() == '-' ? -1.0 : 1.0;
            ++pos_;
            skip_ws();
        }
        double first = 1.0;
        bool had_number = false;
        if (number_ahead()) {
            first = parse_real();
            had_number = true;
        }
        skip_ws();
        if (peek() == 'i') {
            ++pos_;
            im = first_sign * first;
            expect(')');
            return {re, im};
        }
        if (!had_number) throw ParseError("expected a number", pos_);
        re = first_sign * first;
        skip_ws();
        if (peek() == ')') {
            ++pos_;
            return {re, 0.0};
        }
        if (peek() != '+' && peek() != '-') throw ParseError("expected '+' or '-' in complex coefficient", pos_);
        const double sign = peek() == '-' ? -1.0 : 1.0;
        ++pos_;
        skip_ws();
        double second = 1.0;
        if (number_ahead()) second = parse_real();
        skip_ws();
        if (peek() != 'i') throw ParseError("expected 'i' in complex coefficient", pos_);
        ++pos_;
        im = sign * second;
        expect(')');
        return {re, im};
    }

    Rational parse_exponent() {
        skip_ws();
        if (peek() == '(') {
            ++pos_;
            skip_ws();
            const std::size_t start = pos_;
            while (!at_end() && s_[pos_] != ')') ++pos_;
            if (at_end()) throw ParseError("unterminated exponent", start);
            std::string_view body = s_.substr(start, pos_ - start);
            while (!body.empty() && body.back() == ' ') body.remove_suffix(1);
            ++pos_;
            try {
                return Rational::parse(body);
            } catch (const ParseError& e) {
                throw ParseError("malformed exponent", start + e.position());
            }
        }
        const std::size_t start = pos_;
        if (peek() == '+' || peek() == '-') ++pos_;
        while (is_digit(peek()) || peek() == '.') ++pos_;
        try {
            return Rational::parse(s_.substr(start, pos_ - start));
        } catch (const ParseError& e) {
            throw ParseError("malformed exponent", start + e.position());
        }
    }

    HahnTerm parse_term() {
        skip_ws();
        const std::size_t start = pos_;
        cplx coeff = 1.0;
        bool had_coeff = false;
        if (peek() == '(') {
            coeff = parse_paren_coeff();
            had_coeff = true;
        } else if (number_ahead()) {
            coeff = parse_real();
            had_coeff = true;
            skip_ws();
            if (peek() == 'i') {
                ++pos_;
                coeff = cplx(0.0, coeff.real());
            }
        } else if (peek() == 'i') {
            ++pos_;
            coeff = cplx(0.0, 1.0);
            had_coeff = true;
        }
        skip_ws();
        if (had_coeff && peek() == '*') {
            ++pos_;
            skip_ws();
            if (peek() != 't') throw ParseError("expected 't' after '*'", pos_);
        }
        Rational exponent(0);
        if (peek() == 't') {
            ++pos_;
            exponent = Rational(1);
            skip_ws();
            if (peek() == '^') {
                ++pos_;
                exponent = parse_exponent();
            }
        } else if (!had_coeff) {
            throw ParseError("expected a term", start);
        }
        return {exponent, coeff};
    }

    Rational parse_order() {
        ++pos_;  // 'O'
        expect('(');
        skip_ws();
        if (peek() != 't') throw ParseError("expected 't' in O(...)", pos_);
        ++pos_;
        Rational e(1);
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            e = parse_exponent();
        }
        expect(')');
        return e;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

std::string format_exponent(const Rational& e) {
    if (e.has_finite_decimal()) return e.to_string();
    return "(" + e.to_string() + ")";
}

std::string format_power(const Rational& e) {
    if (e.is_zero()) return "";
    if (e == Rational(1)) return "t";
    return "t^" + format_exponent(e);
}

}  // namespace

HahnSeries parse_series(std::string_view text) { return SeriesParser(text).parse(); }

std::string to_string(const HahnSeries& a) {
    std::string out;
    bool first = true;
    for (const auto& t : a.terms()) {
        const double re = t.coeff.real();
        const double im = t.coeff.imag();
        bool negative = false;
        std::string magnitude;
        if (im == 0.0) {
            negative = std::signbit(re);
            magnitude = format_double(std::abs(re));
        } else if (re == 0.0) {
            negative = std::signbit(im);
            magnitude = std::abs(im) == 1.0 ? "i" : format_double(std::abs(im)) + "i";
        } else {
            magnitude = "(" + format_double(re) + (std::signbit(im) ? "-" : "+") + format_double(std::abs(im)) + "i)";
        }
        const std::string power = format_power(t.exponent);
        if (magnitude == "1" && !power.empty()) magnitude.clear();
        if (first) {
            out += negative ? "-" : "";
        } else {
            out += negative ? " - " : " + ";
        }
        out += magnitude + power;
        first = false;
    }
    if (a.trunc()) {
        out += first ? "" : " + ";
        out += "O(" + (a.trunc()->is_zero() ? std::string("t^0") : format_power(*a.trunc())) + ")";
        first = false;
    }
    return first ? "0" : out;
}

// ---------------------------------------------------------------------------
// HahnMat2

HahnMat2 HahnMat2::constant(const Mat2& m) {
    return {{HahnSeries::constant(m.a), HahnSeries::constant(m.b), HahnSeries::constant(m.c), HahnSeries::constant(m.d)}};
}

HahnSeries HahnMat2::det() const { return e[0] * e[3] - e[1] * e[2]; }

HahnSeries HahnMat2::trace() const { return e[0] + e[3]; }

HahnMat2 HahnMat2::scaled(const HahnSeries& s) const { return {{e[0] * s, e[1] * s, e[2] * s, e[3] * s}}; }

bool HahnMat2::all_zero() const {
    return std::all_of(e.begin(), e.end(), [](const HahnSeries& s) { return s.is_zero(); });
}

Rational HahnMat2::lead_exponent() const {
    std::optional<Rational> best;
    for (const auto& s : e)
        if (!s.is_zero() && (!best || s.lead_exponent() > *best)) best = s.lead_exponent();
    if (!best) throw Error(ErrorKind::Domain, "zero matrix has no leading term");
    return *best;
}

Mat2 HahnMat2::coefficients_at(const Rational& exponent) const {
    std::array<cplx, 4> out{};
    for (std::size_t i = 0; i < 4; ++i)
        for (const auto& t : e[i].terms())
            if (t.exponent == exponent) out[i] = t.coeff;
    return Mat2::from_entries(out);
}

Mat2 HahnMat2::evaluate(double t) const {
    return {phasetrop::evaluate(e[0], t), phasetrop::evaluate(e[1], t), phasetrop::evaluate(e[2], t),
            phasetrop::evaluate(e[3], t)};
}

HahnMat2 operator*(const HahnMat2& x, const HahnMat2& y) {
    return {{x.e[0] * y.e[0] + x.e[1] * y.e[2], x.e[0] * y.e[1] + x.e[1] * y.e[3], x.e[2] * y.e[0] + x.e[3] * y.e[2],
             x.e[2] * y.e[1] + x.e[3] * y.e[3]}};
}

HahnMat2 operator*(const Mat2& x, const HahnMat2& y) { return HahnMat2::constant(x) * y; }
HahnMat2 operator*(const HahnMat2& x, const Mat2& y) { return x * HahnMat2::constant(y); }

HahnMat2 parse_matrix(const std::array<std::string, 4>& entries) {
    HahnMat2 m;
    for (std::size_t i = 0; i < 4; ++i) m.e[i] = parse_series(entries[i]);
    return m;
}

}  // namespace phasetrop
