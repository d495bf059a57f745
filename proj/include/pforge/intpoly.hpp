// Copyright 2026 The pforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PFORGE_INTPOLY_HPP
#define PFORGE_INTPOLY_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"
#include "numtheory.hpp"

namespace pforge {

/// Dense univariate polynomial with integer coefficients; coefficient i
/// multiplies x^i. The highest stored coefficient is always nonzero, so the
/// zero polynomial has no coefficients and degree -1.
class IntPoly {
public:
    IntPoly() = default;

    explicit IntPoly(std::vector<Integer> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

    IntPoly(std::initializer_list<long> coefficients) {
        for (long c : coefficients) coeffs_.emplace_back(c);
        trim();
    }

    static IntPoly constant(const Integer& c) { return IntPoly(std::vector<Integer>{c}); }

    static IntPoly monomial(const Integer& c, std::size_t exponent) {
        std::vector<Integer> v(exponent + 1, Integer(0));
        v[exponent] = c;
        return IntPoly(std::move(v));
    }

    static IntPoly x() { return monomial(1, 1); }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }

    const std::vector<Integer>& coefficients() const { return coeffs_; }

    const Integer& operator[](std::size_t i) const {
        static const Integer zero = 0;
        return i < coeffs_.size() ? coeffs_[i] : zero;
    }

    const Integer& leading() const {
        static const Integer zero = 0;
        return coeffs_.empty() ? zero : coeffs_.back();
    }

    /// Horner evaluation; exact.
    Integer operator()(const Integer& x0) const {
        Integer acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x0 + *it;
        return acc;
    }

    IntPoly& operator+=(const IntPoly& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Integer(0));
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        trim();
        return *this;
    }

    IntPoly& operator-=(const IntPoly& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Integer(0));
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        trim();
        return *this;
    }

    IntPoly& operator*=(const Integer& s) {
        for (auto& c : coeffs_) c *= s;
        trim();
        return *this;
    }

    friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
    friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
    friend IntPoly operator-(IntPoly a) { return a *= Integer(-1); }
    friend IntPoly operator*(IntPoly a, const Integer& s) { return a *= s; }
    friend IntPoly operator*(const Integer& s, IntPoly a) { return a *= s; }
    friend IntPoly operator+(IntPoly a, const Integer& s) { return a += constant(s); }
    friend IntPoly operator-(IntPoly a, const Integer& s) { return a -= constant(s); }

    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Integer> out(a.coeffs_.size() + b.coeffs_.size() - 1, Integer(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return IntPoly(std::move(out));
    }

    IntPoly& operator*=(const IntPoly& o) { return *this = *this * o; }

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs_ == b.coeffs_; }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<Integer> coeffs_;
};

inline Integer evaluate(const IntPoly& p, const Integer& x0) { return p(x0); }

inline IntPoly pow(const IntPoly& base, unsigned long e) {
    IntPoly result = IntPoly::constant(1);
    IntPoly b = base;
    while (e > 0) {
        if (e & 1UL) result *= b;
        e >>= 1;
        if (e > 0) b *= b;
    }
    return result;
}

/// outer(inner(x)) by Horner's scheme over polynomials.
inline IntPoly compose(const IntPoly& outer, const IntPoly& inner) {
    IntPoly acc;
    const auto& c = outer.coefficients();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * inner + *it;
    return acc;
}

inline IntPoly derivative(const IntPoly& p) {
    if (p.degree() < 1) return {};
    std::vector<Integer> out(p.coefficients().size() - 1);
    for (std::size_t i = 1; i < p.coefficients().size(); ++i) out[i - 1] = p[i] * static_cast<unsigned long>(i);
    return IntPoly(std::move(out));
}

/// Non-negative gcd of the coefficients; 0 for the zero polynomial.
inline Integer content(const IntPoly& p) {
    Integer g = 0;
    for (const auto& c : p.coefficients()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

inline IntPoly divexact(const IntPoly& p, const Integer& s) {
    std::vector<Integer> out = p.coefficients();
    for (auto& c : out) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), s.get_mpz_t());
    return IntPoly(std::move(out));
}

/// Primitive part normalized to a positive leading coefficient.
inline IntPoly primitive_part(const IntPoly& p) {
    if (p.is_zero()) return {};
    Integer c = content(p);
    if (p.leading() < 0) c = -c;
    return divexact(p, c);
}

struct PseudoDivision {
    IntPoly quotient;
    IntPoly remainder;
    unsigned long scale_exponent = 0;  // lc(d)^scale_exponent * p = quotient * d + remainder
};

/// Fraction-free pseudo-division.
inline PseudoDivision pseudo_divide(const IntPoly& p, const IntPoly& d) {
    if (d.is_zero()) throw DomainError("pseudo_divide: zero divisor");
    PseudoDivision out;
    if (p.degree() < d.degree()) {
        out.remainder = p;
        return out;
    }
    const Integer lc = d.leading();
    const int dd = d.degree();
    int e = p.degree() - dd + 1;
    out.scale_exponent = static_cast<unsigned long>(e);
    IntPoly r = p;
    IntPoly q;
    while (!r.is_zero() && r.degree() >= dd) {
        IntPoly s = IntPoly::monomial(r.leading(), static_cast<std::size_t>(r.degree() - dd));
        q = q * lc + s;
        r = r * lc - s * d;
        --e;
    }
    Integer f;
    mpz_pow_ui(f.get_mpz_t(), lc.get_mpz_t(), static_cast<unsigned long>(e));
    out.quotient = q * f;
    out.remainder = r * f;
    return out;
}

/// Quotient p / d over Z[x]; throws ContractError when d does not divide p exactly in Z[x].
inline IntPoly exact_divide(const IntPoly& p, const IntPoly& d) {
    PseudoDivision pd = pseudo_divide(p, d);
    if (!pd.remainder.is_zero()) throw ContractError("exact_divide: nonzero remainder");
    Integer s;
    mpz_pow_ui(s.get_mpz_t(), d.leading().get_mpz_t(), pd.scale_exponent);
    for (const auto& c : pd.quotient.coefficients())
        if (!mpz_divisible_p(c.get_mpz_t(), s.get_mpz_t())) throw ContractError("exact_divide: quotient not integral");
    return divexact(pd.quotient, s);
}

struct Divisibility {
    bool divides_over_q = false;
    /// p = scale * d * quotient. When the rational quotient is integral,
    /// scale is 1 and quotient is that integer polynomial; otherwise the
    /// quotient is primitive with positive leading coefficient.
    std::optional<IntPoly> quotient;
    mpq_class scale = 1;
};

inline Divisibility divides(const IntPoly& d, const IntPoly& p) {
    if (d.is_zero()) throw DomainError("divides: zero divisor");
    Divisibility out;
    PseudoDivision pd = pseudo_divide(p, d);
    if (!pd.remainder.is_zero()) return out;
    out.divides_over_q = true;
    Integer s;
    mpz_pow_ui(s.get_mpz_t(), d.leading().get_mpz_t(), pd.scale_exponent);
    // rational quotient = pd.quotient / s
    bool integral = true;
    for (const auto& c : pd.quotient.coefficients())
        if (!mpz_divisible_p(c.get_mpz_t(), s.get_mpz_t())) integral = false;
    if (integral) {
        out.quotient = divexact(pd.quotient, s);
        out.scale = 1;
    } else {
        IntPoly prim = primitive_part(pd.quotient);
        // pd.quotient = c * prim for integer c = (lc(pd.quotient) / lc(prim))
        Integer c = pd.quotient.leading() / prim.leading();
        out.quotient = std::move(prim);
        out.scale = mpq_class(c, s);
        out.scale.canonicalize();
    }
    return out;
}

/// Gcd over Q[x] computed in Z[x] via the subresultant remainder sequence,
/// returned primitive with positive leading coefficient (times the gcd of
/// contents). gcd(0, 0) = 0.
inline IntPoly gcd(IntPoly a, IntPoly b) {
    if (a.degree() < b.degree()) std::swap(a, b);
    if (b.is_zero()) return a.is_zero() ? IntPoly{} : primitive_part(a) * content(a);
    Integer cg;
    {
        Integer ca = content(a), cb = content(b);
        mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    }
    a = primitive_part(a);
    b = primitive_part(b);
    Integer g = 1, h = 1;
    for (;;) {
        const int delta = a.degree() - b.degree();
        IntPoly r = pseudo_divide(a, b).remainder;
        if (r.is_zero()) break;
        if (r.degree() == 0) {
            b = IntPoly::constant(1);
            break;
        }
        a = b;
        Integer hd;
        mpz_pow_ui(hd.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(delta));
        b = divexact(r, g * hd);
        g = a.leading();
        // h = g^delta / h^(delta - 1)
        Integer gd;
        mpz_pow_ui(gd.get_mpz_t(), g.get_mpz_t(), static_cast<unsigned long>(delta));
        if (delta == 0) {
            h = h * gd;  // h^(1) * g^0
        } else {
            Integer hdm;
            mpz_pow_ui(hdm.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(delta - 1));
            mpz_divexact(h.get_mpz_t(), gd.get_mpz_t(), hdm.get_mpz_t());
        }
    }
    return primitive_part(b) * cg;
}

namespace detail {

inline std::vector<unsigned long> divisors_of(unsigned long k) {
    std::vector<unsigned long> out;
    for (unsigned long d = 1; d * d <= k; ++d) {
        if (k % d) continue;
        out.push_back(d);
        if (d * d != k) out.push_back(k / d);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline int moebius(unsigned long m) {
    int sign = 1;
    for (unsigned long p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        m /= p;
        if (m % p == 0) return 0;
        sign = -sign;
    }
    if (m > 1) sign = -sign;
    return sign;
}

} // namespace detail

inline unsigned long euler_phi(unsigned long k) {
    unsigned long result = k;
    for (unsigned long p = 2; p * p <= k; ++p) {
        if (k % p) continue;
        while (k % p == 0) k /= p;
        result -= result / p;
    }
    if (k > 1) result -= result / k;
    return result;
}

/// k-th cyclotomic polynomial as the Moebius product of (x^d - 1)^mu(k/d).
/// Multiplications and divisions by x^d - 1 are done in place in O(k) each.
inline IntPoly cyclotomic(unsigned long k) {
    if (k == 0) throw DomainError("cyclotomic: k must be positive");
    if (k > 10000) throw DomainError("cyclotomic: k exceeds practical cap 10^4");
    // Work with the numerator first, then divide; all divisions are exact.
    std::vector<Integer> c(1, Integer(1));
    const auto divs = detail::divisors_of(k);
    auto multiply = [&](unsigned long d) {
        std::vector<Integer> out(c.size() + d, Integer(0));
        for (std::size_t i = 0; i < c.size(); ++i) {
            out[i + d] += c[i];
            out[i] -= c[i];
        }
        c = std::move(out);
    };
    auto divide = [&](unsigned long d) {
        // c = q * (x^d - 1); recover q from the top down.
        std::size_t n = c.size() - 1;
        std::vector<Integer> q(n - d + 1, Integer(0));
        std::vector<Integer> r = c;
        for (std::size_t i = n + 1; i-- > d;) {
            q[i - d] = r[i];
            r[i - d] += r[i];
            r[i] = 0;
        }
        c = std::move(q);
    };
    for (unsigned long d : divs)
        if (detail::moebius(k / d) == 1) multiply(d);
    for (unsigned long d : divs)
        if (detail::moebius(k / d) == -1) divide(d);
    return IntPoly(std::move(c));
}

struct SquarePartClassification {
    IntPoly g;        // primitive, positive leading coefficient
    IntPoly h;        // primitive and square-free (carries the sign of f)
    Integer content;  // positive; f = content * g^2 * h
};

/// Yun's square-free factorization over Q, folded into f = content * g^2 * h.
inline SquarePartClassification classify_square_part(const IntPoly& f) {
    if (f.is_zero()) throw DomainError("classify_square_part: zero polynomial");
    SquarePartClassification out;
    out.content = content(f);
    const bool negative = f.leading() < 0;
    IntPoly a = primitive_part(f);
    out.g = IntPoly::constant(1);
    out.h = IntPoly::constant(1);
    if (a.degree() >= 1) {
        IntPoly da = derivative(a);
        IntPoly a0 = primitive_part(gcd(a, da));
        IntPoly b = exact_divide(a, a0);
        IntPoly c = exact_divide(da, a0);
        IntPoly d = c - derivative(b);
        unsigned long i = 1;
        while (b.degree() >= 1) {
            IntPoly ai = primitive_part(gcd(b, d));
            b = exact_divide(b, ai);
            c = exact_divide(d, ai);
            d = c - derivative(b);
            if (ai.degree() >= 1) {
                if (i % 2 == 1) out.h *= ai;
                if (i / 2 > 0) out.g *= pow(ai, i / 2);
            }
            ++i;
        }
    }
    if (negative) out.h = -out.h;
    return out;
}

inline bool is_squarefree(const IntPoly& p) {
    if (p.degree() < 1) return true;
    return gcd(p, derivative(p)).degree() == 0;
}

// ---------------------------------------------------------------------------
// Text format
//
//   poly    := term (('+' | '-') term)*
//   term    := factor (['*'] factor)*        implicit product only before 'x' or '('
//   factor  := ('+' | '-') factor | power
//   power   := primary ['^' digits]
//   primary := digits | 'x' | '(' poly ')'
//
// Whitespace is ignored and U+2212 is accepted as a minus sign.
// ---------------------------------------------------------------------------

namespace detail {

class PolyParser {
public:
    explicit PolyParser(std::string text) : s_(std::move(text)) {}

    IntPoly parse() {
        skip();
        if (pos_ >= s_.size()) throw ParseError("empty polynomial", pos_);
        IntPoly p = expr();
        skip();
        if (pos_ < s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
        return p;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    IntPoly expr() {
        IntPoly acc = term();
        for (;;) {
            char c = peek();
            if (c == '+') {
                ++pos_;
                acc += term();
            } else if (c == '-') {
                ++pos_;
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    IntPoly term() {
        IntPoly acc = factor();
        for (;;) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                acc *= factor();
            } else if (c == 'x' || c == '(') {
                acc *= factor();
            } else {
                return acc;
            }
        }
    }

    IntPoly factor() {
        char c = peek();
        if (c == '-') {
            ++pos_;
            return -factor();
        }
        if (c == '+') {
            ++pos_;
            return factor();
        }
        return power();
    }

    IntPoly power() {
        IntPoly base = primary();
        if (peek() == '^') {
            ++pos_;
            skip();
            std::size_t start = pos_;
            std::string digits = read_digits();
            if (digits.empty()) throw ParseError("expected exponent", start);
            if (digits.size() > 6) throw ParseError("exponent too large", start);
            base = pow(base, std::stoul(digits));
        }
        return base;
    }

    IntPoly primary() {
        char c = peek();
        std::size_t start = pos_;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits = read_digits();
            if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == '/'))
                throw ParseError("non-integer coefficient", pos_);
            return IntPoly::constant(Integer(digits));
        }
        if (c == 'x') {
            ++pos_;
            return IntPoly::x();
        }
        if (c == '(') {
            ++pos_;
            IntPoly inner = expr();
            if (peek() != ')') throw ParseError("expected ')'", pos_);
            ++pos_;
            return inner;
        }
        if (c == '\0') throw ParseError("unexpected end of input", start);
        throw ParseError(std::string("unexpected '") + c + "'", start);
    }

    std::string read_digits() {
        std::string out;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) out.push_back(s_[pos_++]);
        return out;
    }

    std::string s_;
    std::size_t pos_ = 0;
};

inline std::string normalize_minus(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        // U+2212 MINUS SIGN is E2 88 92 in UTF-8
        if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
            static_cast<unsigned char>(text[i + 1]) == 0x88 && static_cast<unsigned char>(text[i + 2]) == 0x92) {
            out.push_back('-');
            i += 2;
        } else {
            out.push_back(text[i]);
        }
    }
    return out;
}

} // namespace detail

/// Parse error positions refer to the text after U+2212 has been folded to '-'.
inline IntPoly parse_poly(std::string_view text) {
    return detail::PolyParser(detail::normalize_minus(text)).parse();
}

/// Canonical form: descending powers, no spaces, unit coefficients elided,
/// e.g. "25x^4+25x^3+15x^2+5x+1" or "x^4-x^3+x^2-x+1".
inline std::string to_string(const IntPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int i = p.degree(); i >= 0; --i) {
        const Integer& c = p[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        Integer mag = abs(c);
        if (c < 0)
            out += '-';
        else if (!out.empty())
            out += '+';
        if (mag != 1 || i == 0) out += mag.get_str();
        if (i >= 1) out += 'x';
        if (i >= 2) out += '^' + std::to_string(i);
    }
    return out;
}

} // namespace pforge

#endif
