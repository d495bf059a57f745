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

#ifndef PFORGE_FAMILIES_HPP
#define PFORGE_FAMILIES_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "curve.hpp"
#include "errors.hpp"
#include "intpoly.hpp"
#include "numtheory.hpp"
#include "pell.hpp"
#include "record.hpp"

namespace pforge {

enum class FClass { QuadraticSquarefree, LinearTimesSquare, SquareTimesQuadratic, InfeasibleSiegel };

enum class Verdict { FamilyByThm2, FamilyByPropSquare, NoFamily, UnknownNeedsSolution };

inline const char* to_string(FClass c) {
    switch (c) {
    case FClass::QuadraticSquarefree: return "QUADRATIC_SQUAREFREE";
    case FClass::LinearTimesSquare: return "LINEAR_TIMES_SQUARE";
    case FClass::SquareTimesQuadratic: return "SQUARE_TIMES_QUADRATIC";
    case FClass::InfeasibleSiegel: return "INFEASIBLE_SIEGEL";
    }
    return "?";
}

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::FamilyByThm2: return "FAMILY_BY_THM2";
    case Verdict::FamilyByPropSquare: return "FAMILY_BY_PROP_SQUARE";
    case Verdict::NoFamily: return "NO_FAMILY";
    case Verdict::UnknownNeedsSolution: return "UNKNOWN_NEEDS_SOLUTION";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Irreducibility over Q for degree <= 4
// ---------------------------------------------------------------------------

enum class Irreducibility { Irreducible, Reducible, Unknown };

namespace detail {

// Positive divisors of |m| (m != 0), or nullopt when |m| cannot be fully
// factored by trial division or has too many divisors to enumerate.
inline std::optional<std::vector<Integer>> positive_divisors(const Integer& m) {
    const NaturalFactorization fac = factor_trial(abs(m), 1000000);
    if (!fac.complete) return std::nullopt;
    std::vector<Integer> divs{1};
    for (const auto& [p, e] : fac.factors) {
        const std::size_t base = divs.size();
        Integer pk = 1;
        for (unsigned long i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
        }
        if (divs.size() > 100000) return std::nullopt;
    }
    return divs;
}

// s^deg * p(r/s)
inline Integer homogeneous_eval(const IntPoly& p, const Integer& r, const Integer& s) {
    Integer acc = 0;
    const int deg = p.degree();
    for (int i = deg; i >= 0; --i) {
        Integer term = p[static_cast<std::size_t>(i)];
        for (int j = 0; j < i; ++j) term *= r;
        for (int j = 0; j < deg - i; ++j) term *= s;
        acc += term;
    }
    return acc;
}

} // namespace detail

/// Complete for degree <= 4: rational-root test, then a search for a
/// factorization into two integer quadratics. Higher degrees report Unknown.
inline Irreducibility irreducibility(const IntPoly& poly) {
    if (poly.degree() < 1) return Irreducibility::Reducible;
    const IntPoly p = primitive_part(poly);
    if (p.degree() == 1) return Irreducibility::Irreducible;
    if (p.degree() > 4) return Irreducibility::Unknown;
    if (p[0] == 0) return Irreducibility::Reducible;

    const auto lead_divs = detail::positive_divisors(p.leading());
    const auto const_divs = detail::positive_divisors(p[0]);
    if (!lead_divs || !const_divs) return Irreducibility::Unknown;

    for (const auto& s : *lead_divs)
        for (const auto& r : *const_divs)
            if (detail::homogeneous_eval(p, r, s) == 0 || detail::homogeneous_eval(p, -r, s) == 0)
                return Irreducibility::Reducible;
    if (p.degree() <= 3) return Irreducibility::Irreducible;

    // (a2 x^2 + a1 x + a0)(b2 x^2 + b1 x + b0)
    const Integer &c4 = p[4], &c3 = p[3], &c2 = p[2], &c1 = p[1], &c0 = p[0];
    auto check = [&](const Integer& a2, const Integer& a1, const Integer& a0, const Integer& b2, const Integer& b1,
                     const Integer& b0) { return IntPoly(std::vector<Integer>{a0, a1, a2}) * IntPoly(std::vector<Integer>{b0, b1, b2}) == p; };
    for (const auto& a2 : *lead_divs) {
        const Integer b2 = c4 / a2;
        for (const auto& ra0 : *const_divs) {
            for (int sign : {1, -1}) {
                const Integer a0 = sign * ra0;
                const Integer b0 = c0 / a0;
                const Integer det = b2 * a0 - a2 * b0;
                if (det != 0) {
                    const Integer n1 = c3 * a0 - a2 * c1;
                    const Integer n2 = b2 * c1 - b0 * c3;
                    if (!mpz_divisible_p(n1.get_mpz_t(), det.get_mpz_t()) ||
                        !mpz_divisible_p(n2.get_mpz_t(), det.get_mpz_t()))
                        continue;
                    if (check(a2, n1 / det, a0, b2, n2 / det, b0)) return Irreducibility::Reducible;
                } else {
                    // a1 b1 = P and a2 b1 + b2 a1 = c3  =>  b2 a1^2 - c3 a1 + P a2 = 0
                    const Integer P = c2 - a2 * b0 - a0 * b2;
                    const Integer disc = c3 * c3 - 4 * b2 * P * a2;
                    if (disc < 0) continue;
                    const auto root = integer_sqrt(disc);
                    if (!root.exact) continue;
                    for (const Integer& num : {Integer(c3 + root.root), Integer(c3 - root.root)}) {
                        const Integer den = 2 * b2;
                        if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) continue;
                        const Integer a1 = num / den;
                        const Integer bnum = c3 - b2 * a1;
                        if (!mpz_divisible_p(bnum.get_mpz_t(), a2.get_mpz_t())) continue;
                        if (check(a2, a1, a0, b2, bnum / a2, b0)) return Irreducibility::Reducible;
                    }
                }
            }
        }
    }
    return Irreducibility::Irreducible;
}

// ---------------------------------------------------------------------------
// f(x) = 4q(x) - t(x)^2 and its shape
// ---------------------------------------------------------------------------

inline IntPoly compute_f(const IntPoly& t, const IntPoly& q) { return q * Integer(4) - t * t; }

/// As above, also asserting 4q - t^2 = 4n - (t - 2)^2.
inline IntPoly compute_f(const IntPoly& t, const IntPoly& q, const IntPoly& n) {
    IntPoly f = compute_f(t, q);
    IntPoly tm2 = t - Integer(2);
    if (f != n * Integer(4) - tm2 * tm2) throw ContractError("compute_f: 4q - t^2 != 4n - (t-2)^2; is n = q + 1 - t?");
    return f;
}

struct FShape {
    FClass classification{};
    SquarePartClassification parts;
    /// Square-free D of f = (Ax + D) g^2 with D > 0, when that form applies.
    std::optional<Integer> fixed_d;
    /// The quadratic whose norm equation decides the family: f itself, or
    /// content * h when f = content * g^2 * h with h quadratic.
    std::optional<IntPoly> quadratic;
};

inline FShape classify_f(const IntPoly& f) {
    if (f.is_zero()) throw DomainError("classify_f: f is identically zero");
    FShape s;
    s.parts = classify_square_part(f);
    const int dh = s.parts.h.degree();
    const int dg = s.parts.g.degree();
    if (dh <= 1) {
        s.classification = FClass::LinearTimesSquare;
        const Integer d0 = s.parts.content * s.parts.h[0];
        if (d0 > 0) {
            const auto sq = squarefree_decompose(d0);
            if (sq.complete) s.fixed_d = sq.squarefree_part;
        }
    } else if (dh == 2) {
        s.classification = dg == 0 ? FClass::QuadraticSquarefree : FClass::SquareTimesQuadratic;
        s.quadratic = s.parts.h * s.parts.content;
    } else {
        s.classification = FClass::InfeasibleSiegel;
    }
    return s;
}

// ---------------------------------------------------------------------------
// Families
// ---------------------------------------------------------------------------

struct FamilyDescriptor {
    std::string name;
    unsigned k = 0;
    IntPoly t;
    IntPoly n;
    IntPoly q;
    IntPoly f;
    FClass classification{};
    std::optional<Integer> fixed_d;
    bool irreducibility_certified = false;  // false when the degree is beyond the complete test
};

struct FamilyCheck {
    std::optional<FamilyDescriptor> family;
    std::vector<std::string> violations;

    explicit operator bool() const { return family.has_value(); }
};

/// Conditions 1-3 of a family (n = q + 1 - t; n, q irreducible; n | Phi_k(t - 1)
/// over Q) plus the shape of f. Infinitely many CM solutions is left to the
/// classification and the Pell machinery.
inline FamilyCheck verify_family(const IntPoly& t, const IntPoly& n, const IntPoly& q, unsigned k,
                                 std::string name = "custom") {
    FamilyCheck out;
    if (k == 0) {
        out.violations.push_back("k must be positive");
        return out;
    }
    if (t.is_zero() || n.is_zero() || q.is_zero()) {
        out.violations.push_back("polynomials must be nonzero");
        return out;
    }
    if (n != q + IntPoly::constant(1) - t) out.violations.push_back("condition 1: n != q + 1 - t");
    const Irreducibility in = irreducibility(n), iq = irreducibility(q);
    if (in == Irreducibility::Reducible) out.violations.push_back("condition 2: n is reducible");
    if (iq == Irreducibility::Reducible) out.violations.push_back("condition 2: q is reducible");
    const IntPoly phi_t = compose(cyclotomic(k), t - Integer(1));
    if (!divides(n, phi_t).divides_over_q) out.violations.push_back("condition 3: n does not divide Phi_k(t - 1)");
    const IntPoly f = compute_f(t, q);
    if (f.is_zero()) out.violations.push_back("f = 4q - t^2 is identically zero");
    if (!out.violations.empty()) return out;

    const FShape shape = classify_f(f);
    FamilyDescriptor fam;
    fam.name = std::move(name);
    fam.k = k;
    fam.t = t;
    fam.n = n;
    fam.q = q;
    fam.f = compute_f(t, q, n);
    fam.classification = shape.classification;
    fam.fixed_d = shape.fixed_d;
    fam.irreducibility_certified = in == Irreducibility::Irreducible && iq == Irreducibility::Irreducible;
    out.family = std::move(fam);
    return out;
}

namespace detail {

inline FamilyDescriptor catalog_entry(const char* name, unsigned k, const char* t, const char* n, const char* q) {
    FamilyCheck c = verify_family(parse_poly(t), parse_poly(n), parse_poly(q), k, name);
    if (!c) throw ContractError(std::string("catalog entry ") + name + " fails verification: " + c.violations.front());
    return *c.family;
}

} // namespace detail

/// MNT (k = 3, 4, 6; both branches), the k = 10 family, and BN (k = 12).
inline const std::vector<FamilyDescriptor>& builtin_catalog() {
    static const std::vector<FamilyDescriptor> catalog = [] {
        std::vector<FamilyDescriptor> c;
        c.push_back(detail::catalog_entry("mnt3+", 3, "6x-1", "12x^2-6x+1", "12x^2-1"));
        c.push_back(detail::catalog_entry("mnt3-", 3, "-6x-1", "12x^2+6x+1", "12x^2-1"));
        c.push_back(detail::catalog_entry("mnt4a", 4, "-x", "x^2+2x+2", "x^2+x+1"));
        c.push_back(detail::catalog_entry("mnt4b", 4, "x+1", "x^2+1", "x^2+x+1"));
        c.push_back(detail::catalog_entry("mnt6+", 6, "2x+1", "4x^2-2x+1", "4x^2+1"));
        c.push_back(detail::catalog_entry("mnt6-", 6, "-2x+1", "4x^2+2x+1", "4x^2+1"));
        c.push_back(detail::catalog_entry("freeman10", 10, "10x^2+5x+3", "25x^4+25x^3+15x^2+5x+1",
                                          "25x^4+25x^3+25x^2+10x+3"));
        c.push_back(detail::catalog_entry("bn12", 12, "6x^2+1", "36x^4+36x^3+18x^2+6x+1", "36x^4+36x^3+24x^2+6x+1"));
        return c;
    }();
    return catalog;
}

/// nullptr for unknown names.
inline const FamilyDescriptor* find_family(const std::string& name) {
    for (const auto& f : builtin_catalog())
        if (f.name == name) return &f;
    return nullptr;
}

// ---------------------------------------------------------------------------
// Feasibility analysis
// ---------------------------------------------------------------------------

struct FeasibilityReport {
    bool degree_check = false;        // deg n is a multiple of phi(k)
    bool balance_check = false;       // 2 deg t = deg n = deg q
    bool leading_coeff_check = false; // lc(n) = lc(q) = lc(t)^2 / 4
    IntPoly f;
    FClass f_classification{};
    Verdict verdict = Verdict::UnknownNeedsSolution;
    std::optional<Integer> fixed_d;
    std::optional<std::pair<Integer, Integer>> witness;  // (x0, y0) with D y0^2 = f(x0)
    std::vector<std::string> notes;
};

/// Classifies a candidate (t, n) for embedding degree k. With `d`, a
/// quadratic (or square-times-quadratic) f is searched for a witness solution
/// of D y^2 = f(x) and the verdict upgraded when one exists.
inline FeasibilityReport analyze_feasibility(const IntPoly& t, const IntPoly& n, unsigned k,
                                             const std::optional<IntPoly>& q_in = std::nullopt,
                                             const std::optional<Integer>& d = std::nullopt) {
    if (n.is_zero()) throw DomainError("analyze_feasibility: n must be nonzero");
    if (k == 0) throw DomainError("analyze_feasibility: k must be positive");
    FeasibilityReport rep;
    const IntPoly q = q_in ? *q_in : n + t - Integer(1);
    if (q_in && *q_in != n + t - Integer(1)) rep.notes.push_back("supplied q differs from n + t - 1");

    const unsigned long phi = euler_phi(k);
    rep.degree_check = static_cast<unsigned long>(n.degree()) % phi == 0;
    rep.balance_check = 2 * t.degree() == n.degree() && n.degree() == q.degree();
    const Integer lt2 = t.leading() * t.leading();
    rep.leading_coeff_check = 4 * n.leading() == lt2 && 4 * q.leading() == lt2;

    const IntPoly tm2 = t - Integer(2);
    rep.f = n * Integer(4) - tm2 * tm2;
    if (rep.f.is_zero()) {
        rep.notes.push_back("f is identically zero");
        rep.f_classification = FClass::InfeasibleSiegel;
        rep.verdict = Verdict::NoFamily;
        return rep;
    }
    const FShape shape = classify_f(rep.f);
    rep.f_classification = shape.classification;
    rep.fixed_d = shape.fixed_d;

    switch (shape.classification) {
    case FClass::InfeasibleSiegel:
        // NO_FAMILY is reserved for square-free f; g^2 h is only reported.
        if (shape.parts.g.degree() > 0) {
            rep.verdict = Verdict::UnknownNeedsSolution;
            rep.notes.push_back("f = g^2 h with deg h >= 3: D y^2 = f(x) has finitely many solutions");
        } else {
            rep.verdict = Verdict::NoFamily;
        }
        return rep;
    case FClass::LinearTimesSquare:
        if (shape.fixed_d) {
            rep.verdict = Verdict::FamilyByPropSquare;
        } else {
            rep.verdict = Verdict::UnknownNeedsSolution;
            rep.notes.push_back("f = (Ax + D) g^2 without a positive D");
        }
        return rep;
    case FClass::QuadraticSquarefree:
    case FClass::SquareTimesQuadratic: break;
    }

    const IntPoly& quad = *shape.quadratic;
    rep.verdict = Verdict::UnknownNeedsSolution;
    if (quad.leading() < 0) {
        rep.notes.push_back("quadratic part has negative leading coefficient: finitely many solutions");
        return rep;
    }
    if (!d) return rep;

    try {
        const QuadraticReduction red = reduce_quadratic(quad, *d);
        ConstrainedSolutions cs = constrained_solutions(red.problem);
        if (cs.streams.empty()) {
            rep.notes.push_back("D y^2 = f(x) has no integer solution for D = " + d->get_str());
            return rep;
        }
        // smallest |u| start
        const PellSolutionStream* best = &cs.streams.front();
        for (const auto& s : cs.streams)
            if (abs(s.base().a) < abs(best->base().a)) best = &s;
        auto xy = red.project(best->base());
        if (!xy) throw ContractError("analyze_feasibility: constrained start does not project");
        Integer y = xy->second;
        if (shape.classification == FClass::SquareTimesQuadratic) y *= shape.parts.g(xy->first);
        rep.witness = std::make_pair(xy->first, abs(y));
        rep.verdict = Verdict::FamilyByThm2;
    } catch (const DomainError& e) {
        rep.notes.push_back(std::string("norm equation not applicable: ") + e.what());
    } catch (const CapacityError& e) {
        rep.notes.push_back(std::string("norm equation search capped: ") + e.what());
    }
    return rep;
}

// ---------------------------------------------------------------------------
// k = 10 discriminant filter and instantiation
// ---------------------------------------------------------------------------

struct FilterResult {
    bool accepted = false;
    std::string reason;
};

/// gcd(D, 15) = 1, 15D square-free, D = 43 or 67 (mod 120).
inline FilterResult filter_discriminant_k10(const Integer& d) {
    if (d < 1) return {false, "D must be positive"};
    const Integer r = mod_floor(d, 120);
    if (r != 43 && r != 67) return {false, "D mod 120 = " + r.get_str() + " (need 43 or 67)"};
    Integer g;
    mpz_gcd_ui(g.get_mpz_t(), d.get_mpz_t(), 15);
    if (g != 1) return {false, "gcd(D, 15) != 1"};
    const auto sq = squarefree_decompose(15 * d);
    if (!sq.complete) return {false, "square-freeness of 15D undetermined"};
    if (sq.square_part != 1) return {false, "15D not square-free"};
    return {true, "accepted"};
}

/// Evaluates the family at x0. Status PRIME_OK when q(x0), n(x0) are distinct
/// primes within the Hasse bound and (with d) D y^2 = f(x0) has an integer y;
/// embedding degree is confirmed later by verify_record.
inline CurveRecord instantiate(const FamilyDescriptor& family, const Integer& x0,
                               const std::optional<Integer>& d = std::nullopt, Rng* rng = nullptr) {
    CurveRecord r;
    r.k = family.k;
    r.d = d;
    r.x0 = x0;
    r.q = family.q(x0);
    r.n = family.n(x0);
    r.t = family.t(x0);
    if (r.t * r.t > 4 * r.q) {
        r.reject("Hasse bound");
        return r;
    }
    if (d && !cm_witness(r.q, r.t, *d)) {
        r.reject("CM equation");
        return r;
    }
    Rng local(default_seed);
    Rng& g = rng ? *rng : local;
    if (!is_probable_prime(r.q, g)) {
        r.reject("q(x0) not prime");
        return r;
    }
    if (!is_probable_prime(r.n, g)) {
        r.reject("n(x0) not prime");
        return r;
    }
    if (r.q == r.n) {
        r.reject("q(x0) = n(x0)");
        return r;
    }
    r.status = RecordStatus::PrimeOk;
    return r;
}

} // namespace pforge

#endif
