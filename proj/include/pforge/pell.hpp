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

#ifndef PFORGE_PELL_HPP
#define PFORGE_PELL_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"
#include "intpoly.hpp"
#include "numtheory.hpp"

namespace pforge {

inline constexpr std::size_t default_max_period = 10'000'000;

/// a + b*sqrt(dprime) in Z[sqrt(dprime)].
struct QuadraticInteger {
    Integer a = 0;
    Integer b = 0;
    Integer dprime = 2;

    Integer norm() const { return a * a - dprime * b * b; }

    QuadraticInteger conjugate() const { return {a, -b, dprime}; }

    QuadraticInteger operator-() const { return {-a, -b, dprime}; }

    friend QuadraticInteger operator*(const QuadraticInteger& x, const QuadraticInteger& y) {
        if (x.dprime != y.dprime) throw ContractError("QuadraticInteger: mismatched radicands");
        return {x.a * y.a + x.dprime * x.b * y.b, x.a * y.b + x.b * y.a, x.dprime};
    }

    QuadraticInteger& operator*=(const QuadraticInteger& o) { return *this = *this * o; }

    friend bool operator==(const QuadraticInteger& x, const QuadraticInteger& y) {
        return x.a == y.a && x.b == y.b && x.dprime == y.dprime;
    }

    /// Sign of the real number a + b*sqrt(dprime).
    int real_sign() const {
        const int sa = sgn(a), sb = sgn(b);
        if (sa >= 0 && sb >= 0) return (sa | sb) ? 1 : 0;
        if (sa <= 0 && sb <= 0) return -1;
        const Integer lhs = a * a, rhs = dprime * b * b;
        if (sa > 0) return lhs > rhs ? 1 : -1;
        return rhs > lhs ? 1 : -1;
    }
};

inline QuadraticInteger pow(const QuadraticInteger& base, std::uint64_t e) {
    QuadraticInteger result{1, 0, base.dprime};
    QuadraticInteger b = base;
    while (e > 0) {
        if (e & 1U) result *= b;
        e >>= 1;
        if (e > 0) b *= b;
    }
    return result;
}

inline std::string to_string(const QuadraticInteger& z) {
    return "(" + z.a.get_str() + ", " + z.b.get_str() + ")";
}

/// sqrt(dprime) = [a0; period...], the period ending in 2*a0.
struct ContinuedFraction {
    Integer a0;
    std::vector<Integer> period;
};

namespace detail {

inline void require_nonsquare(const Integer& dprime, const char* who) {
    if (dprime < 2) throw DomainError(std::string(who) + ": D' must be > 1");
    if (is_perfect_square(dprime)) throw DomainError(std::string(who) + ": D' is a perfect square");
}

// Walks the PQa recurrence for sqrt(dprime) together with the convergents.
// visit(i, p_i, q_i, norm_i) is called for i = 0, 1, ... with norm_i = p_i^2 - D' q_i^2
// and returns false to stop.
template <class Visit>
void walk_convergents(const Integer& dprime, std::size_t limit, Visit&& visit) {
    const Integer a0 = integer_sqrt(dprime).root;
    Integer P = 0, Q = 1, a = a0;
    Integer p_prev = 1, q_prev = 0, p = a0, q = 1;
    for (std::size_t i = 0; i < limit; ++i) {
        P = a * Q - P;
        Q = (dprime - P * P) / Q;
        a = (a0 + P) / Q;
        const Integer norm = (i % 2 == 0) ? Integer(-Q) : Q;
        if (!visit(i, p, q, norm)) return;
        Integer pn = a * p + p_prev;
        Integer qn = a * q + q_prev;
        p_prev = std::move(p);
        q_prev = std::move(q);
        p = std::move(pn);
        q = std::move(qn);
    }
}

} // namespace detail

inline ContinuedFraction continued_fraction_sqrt(const Integer& dprime, std::size_t max_period = default_max_period) {
    detail::require_nonsquare(dprime, "continued_fraction_sqrt");
    ContinuedFraction cf;
    cf.a0 = integer_sqrt(dprime).root;
    Integer P = 0, Q = 1, a = cf.a0;
    for (;;) {
        if (cf.period.size() >= max_period)
            throw CapacityError("continued_fraction_sqrt: period exceeds " + std::to_string(max_period));
        P = a * Q - P;
        Q = (dprime - P * P) / Q;
        a = (cf.a0 + P) / Q;
        cf.period.push_back(a);
        if (Q == 1) break;
    }
    return cf;
}

struct FundamentalUnit {
    QuadraticInteger cf_unit;   // from the continued fraction; norm +1 or -1
    QuadraticInteger norm_one;  // least unit > 1 of norm +1
};

inline FundamentalUnit fundamental_unit(const Integer& dprime, std::size_t max_period = default_max_period) {
    const ContinuedFraction cf = continued_fraction_sqrt(dprime, max_period);
    Integer p_prev = 1, q_prev = 0, p = cf.a0, q = 1;
    for (std::size_t i = 0; i + 1 < cf.period.size(); ++i) {
        Integer pn = cf.period[i] * p + p_prev;
        Integer qn = cf.period[i] * q + q_prev;
        p_prev = std::move(p);
        q_prev = std::move(q);
        p = std::move(pn);
        q = std::move(qn);
    }
    FundamentalUnit fu;
    fu.cf_unit = {p, q, dprime};
    fu.norm_one = (cf.period.size() % 2 == 1) ? fu.cf_unit * fu.cf_unit : fu.cf_unit;
    return fu;
}

/// True when z1 = z2 * eta for a norm-one unit eta > 0 of Z[sqrt(D')]. Both
/// arguments must have norm t.
inline bool same_class(const QuadraticInteger& z1, const QuadraticInteger& z2, const Integer& t) {
    const QuadraticInteger w = z1 * z2.conjugate();
    if (!mpz_divisible_p(w.a.get_mpz_t(), t.get_mpz_t()) || !mpz_divisible_p(w.b.get_mpz_t(), t.get_mpz_t()))
        return false;
    const QuadraticInteger eta{w.a / t, w.b / t, w.dprime};
    return eta.real_sign() > 0;
}

namespace detail {

inline void add_class_rep(std::vector<QuadraticInteger>& reps, const QuadraticInteger& z, const Integer& t) {
    for (const auto& r : reps)
        if (same_class(z, r, t)) return;
    reps.push_back(z);
}

} // namespace detail

/// One representative per class of solutions of u^2 - D' v^2 = t under
/// multiplication by positive norm-one units; sign and conjugate variants are
/// separate classes and are all included. Uses the convergents of sqrt(D')
/// when t^2 < D', otherwise an exhaustive scan below the classical bound on
/// fundamental solutions.
inline std::vector<QuadraticInteger> base_solutions(const Integer& dprime, const Integer& t,
                                                    std::size_t max_period = default_max_period) {
    detail::require_nonsquare(dprime, "base_solutions");
    if (t == 0) throw DomainError("base_solutions: T must be nonzero");
    std::vector<QuadraticInteger> found;
    const FundamentalUnit fu = fundamental_unit(dprime, max_period);

    if (t * t < dprime) {
        const ContinuedFraction cf = continued_fraction_sqrt(dprime, max_period);
        const std::size_t span = cf.period.size() * (cf.period.size() % 2 == 1 ? 2 : 1);
        // Every primitive positive solution of norm N with |N| < sqrt(D') is a
        // convergent; non-primitive solutions are g * (primitive of norm t/g^2).
        std::vector<std::pair<Integer, Integer>> targets;  // (g, t / g^2)
        const Integer abs_t = abs(t);
        for (Integer g = 1; g * g <= abs_t; ++g)
            if (mpz_divisible_p(t.get_mpz_t(), Integer(g * g).get_mpz_t())) targets.emplace_back(g, t / (g * g));
        detail::walk_convergents(dprime, span, [&](std::size_t, const Integer& p, const Integer& q, const Integer& nrm) {
            for (const auto& [g, n] : targets)
                if (nrm == n) found.push_back({g * p, g * q, dprime});
            return true;
        });
    } else {
        // Nagell: each class has a member with 0 <= v <= sqrt(|t| (alpha0 + 1) / (2 D')).
        const Integer radicand = abs(t) * (fu.norm_one.a + 1) / (2 * dprime);
        const Integer bound = integer_sqrt(radicand).root + 2;
        if (bound > Integer(100'000'000))
            throw CapacityError("base_solutions: exhaustive bound " + bound.get_str() + " too large");
        for (Integer v = 0; v <= bound; ++v) {
            const Integer u2 = t + dprime * v * v;
            if (u2 < 0) continue;
            const auto r = integer_sqrt(u2);
            if (r.exact) found.push_back({r.root, v, dprime});
        }
    }

    std::vector<QuadraticInteger> reps;
    for (const auto& z : found) {
        detail::add_class_rep(reps, z, t);
        detail::add_class_rep(reps, -z, t);
        detail::add_class_rep(reps, z.conjugate(), t);
        detail::add_class_rep(reps, -z.conjugate(), t);
    }
    return reps;
}

/// The least element with u > 0, v >= 0 of every class whose members are
/// positive reals. All solutions with u, v >= 0 are z * unit^n for n >= 0
/// and z among these minima.
inline std::vector<QuadraticInteger> positive_class_minima(const Integer& dprime, const Integer& t,
                                                           std::size_t max_period = default_max_period) {
    const FundamentalUnit fu = fundamental_unit(dprime, max_period);
    const QuadraticInteger& eps = fu.norm_one;
    const QuadraticInteger eps_inv = eps.conjugate();
    std::vector<QuadraticInteger> minima;
    for (QuadraticInteger z : base_solutions(dprime, t, max_period)) {
        if (z.real_sign() <= 0) continue;
        while (z.a < 0 || z.b < 0) z *= eps;
        for (;;) {
            QuadraticInteger w = z * eps_inv;
            if (w.a <= 0 || w.b < 0) break;
            z = std::move(w);
        }
        bool dup = false;
        for (const auto& m : minima) dup = dup || m == z;
        if (!dup) minima.push_back(z);
    }
    std::sort(minima.begin(), minima.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
    return minima;
}

/// Multiplicative order of unit's image in (Z/modulus)[x]/(x^2 - D'). The
/// group of units of that ring has fewer than modulus^2 elements.
inline std::uint64_t unit_order_mod(const QuadraticInteger& unit, const Integer& modulus) {
    if (modulus < 1) throw DomainError("unit_order_mod: modulus must be positive");
    const Integer za = mod_floor(unit.a, modulus), zb = mod_floor(unit.b, modulus);
    const Integer dm = mod_floor(unit.dprime, modulus);
    const Integer one = mod_floor(Integer(1), modulus);
    const Integer cap = modulus * modulus;
    Integer xa = za, xb = zb;
    for (std::uint64_t m = 1; cap >= m; ++m) {
        if (xa == one && xb == 0) return m;
        Integer na = mod_floor(xa * za + dm * xb * zb, modulus);
        Integer nb = mod_floor(xa * zb + xb * za, modulus);
        xa = std::move(na);
        xb = std::move(nb);
    }
    throw ContractError("unit_order_mod: element is not invertible modulo " + modulus.get_str());
}

struct CongruenceUnit {
    QuadraticInteger unit;     // alpha1 + beta1 sqrt(D'), norm 1, congruent to (1, 0)
    std::uint64_t exponent{};  // unit = (norm-one fundamental unit)^exponent
};

/// Least power of the norm-one fundamental unit congruent to 1 + 0*sqrt(D')
/// modulo `modulus`.
inline CongruenceUnit congruence_unit_mod(const Integer& modulus, const Integer& dprime,
                                          std::size_t max_period = default_max_period) {
    const FundamentalUnit fu = fundamental_unit(dprime, max_period);
    const std::uint64_t m = unit_order_mod(fu.norm_one, modulus);
    return {pow(fu.norm_one, m), m};
}

/// (alpha1, beta1) with alpha1 = 1 and beta1 = 0 (mod 2a), norm one.
inline CongruenceUnit congruence_unit(const Integer& a, const Integer& dprime,
                                      std::size_t max_period = default_max_period) {
    if (a < 1) throw DomainError("congruence_unit: a must be positive");
    return congruence_unit_mod(2 * a, dprime, max_period);
}

/// u^2 - D' v^2 = T with u = residue_u (mod modulus_u), v = residue_v (mod modulus_v).
struct PellProblem {
    Integer dprime;
    Integer t;
    Integer modulus_u = 1;
    Integer residue_u = 0;
    Integer modulus_v = 1;
    Integer residue_v = 0;

    static PellProblem make(Integer dprime, Integer t, Integer modulus_u = 1, Integer residue_u = 0,
                            Integer modulus_v = 1, Integer residue_v = 0) {
        detail::require_nonsquare(dprime, "PellProblem");
        if (t == 0) throw DomainError("PellProblem: T must be nonzero");
        if (modulus_u < 1 || modulus_v < 1) throw DomainError("PellProblem: moduli must be positive");
        PellProblem p{std::move(dprime), std::move(t), modulus_u, mod_floor(residue_u, modulus_u), modulus_v,
                      mod_floor(residue_v, modulus_v)};
        return p;
    }

    Integer congruence_modulus() const {
        Integer l;
        mpz_lcm(l.get_mpz_t(), modulus_u.get_mpz_t(), modulus_v.get_mpz_t());
        return l;
    }

    bool congruent(const QuadraticInteger& z) const {
        return mod_floor(z.a, modulus_u) == residue_u && mod_floor(z.b, modulus_v) == residue_v;
    }

    bool accepts(const QuadraticInteger& z) const { return z.dprime == dprime && z.norm() == t && congruent(z); }
};

namespace detail {

inline void check_stream_inputs(const PellProblem& problem, const QuadraticInteger& base,
                                const QuadraticInteger& unit) {
    if (base.dprime != problem.dprime || unit.dprime != problem.dprime)
        throw ContractError("solutions: radicand mismatch");
    if (base.norm() != problem.t)
        throw ContractError("solutions: base norm " + base.norm().get_str() + " != T = " + problem.t.get_str());
    if (mod_floor(base.a, problem.modulus_u) != problem.residue_u)
        throw ContractError("solutions: base violates u = " + problem.residue_u.get_str() + " (mod " +
                            problem.modulus_u.get_str() + ")");
    if (mod_floor(base.b, problem.modulus_v) != problem.residue_v)
        throw ContractError("solutions: base violates v = " + problem.residue_v.get_str() + " (mod " +
                            problem.modulus_v.get_str() + ")");
    if (unit.norm() != 1) throw ContractError("solutions: step unit norm is not 1");
    const Integer m = problem.congruence_modulus();
    if (mod_floor(unit.a - 1, m) != 0) throw ContractError("solutions: unit violates alpha = 1 (mod " + m.get_str() + ")");
    if (mod_floor(unit.b, m) != 0) throw ContractError("solutions: unit violates beta = 0 (mod " + m.get_str() + ")");
}

} // namespace detail

/// base * unit^n for n = 0 .. count-1. Every element satisfies the norm
/// equation and the congruences; |u| increases when base has u*v >= 0 and unit > 1.
inline std::vector<QuadraticInteger> solutions(const PellProblem& problem, const QuadraticInteger& base,
                                               const QuadraticInteger& unit, std::size_t count) {
    detail::check_stream_inputs(problem, base, unit);
    std::vector<QuadraticInteger> out;
    out.reserve(count);
    QuadraticInteger z = base;
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(z);
        z *= unit;
    }
    return out;
}

/// Lazily walks base * step_unit^position.
class PellSolutionStream {
public:
    PellSolutionStream(PellProblem problem, QuadraticInteger base, QuadraticInteger step_unit)
        : problem_(std::move(problem)), base_(std::move(base)), unit_(std::move(step_unit)), current_(base_) {
        detail::check_stream_inputs(problem_, base_, unit_);
    }

    const PellProblem& problem() const { return problem_; }
    const QuadraticInteger& base() const { return base_; }
    const QuadraticInteger& step_unit() const { return unit_; }
    std::uint64_t position() const { return position_; }

    const QuadraticInteger& peek() const { return current_; }

    QuadraticInteger next() {
        QuadraticInteger out = current_;
        current_ *= unit_;
        ++position_;
        return out;
    }

private:
    PellProblem problem_;
    QuadraticInteger base_;
    QuadraticInteger unit_;
    QuadraticInteger current_;
    std::uint64_t position_ = 0;
};

struct ConstrainedSolutions {
    CongruenceUnit unit;
    std::vector<PellSolutionStream> streams;
};

/// Streams whose union is every solution of the problem. Each stream starts at
/// a signed variant of (class minimum) * eps^j, j below the congruence
/// exponent, and steps by alpha1 or its conjugate so that |u| grows.
inline ConstrainedSolutions constrained_solutions(const PellProblem& problem,
                                                  std::size_t max_period = default_max_period) {
    ConstrainedSolutions out;
    out.unit = congruence_unit_mod(problem.congruence_modulus(), problem.dprime, max_period);
    const FundamentalUnit fu = fundamental_unit(problem.dprime, max_period);
    std::vector<QuadraticInteger> seen;
    for (const auto& zmin : positive_class_minima(problem.dprime, problem.t, max_period)) {
        QuadraticInteger w = zmin;
        for (std::uint64_t j = 0; j < out.unit.exponent; ++j) {
            for (int su : {1, -1}) {
                for (int sv : {1, -1}) {
                    QuadraticInteger s{su * w.a, sv * w.b, w.dprime};
                    if (!problem.congruent(s)) continue;
                    bool dup = false;
                    for (const auto& x : seen) dup = dup || x == s;
                    if (dup) continue;
                    seen.push_back(s);
                    out.streams.emplace_back(problem, s, su * sv > 0 ? out.unit.unit : out.unit.unit.conjugate());
                }
            }
            w *= fu.norm_one;
        }
    }
    return out;
}

/// Completing the square in D y^2 = a x^2 + b x + c:
/// u = 2ax + b, v = 2ry, T = b^2 - 4ac, aD = D' r^2.
struct QuadraticReduction {
    Integer a, b, c;
    Integer d;
    Integer r;
    PellProblem problem;

    QuadraticInteger lift(const Integer& x, const Integer& y) const {
        return {2 * a * x + b, 2 * r * y, problem.dprime};
    }

    /// (x, y) for a solution satisfying the congruences, else nullopt.
    std::optional<std::pair<Integer, Integer>> project(const QuadraticInteger& z) const {
        const Integer num = z.a - b;
        const Integer den = 2 * a;
        const Integer vden = 2 * r;
        if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) return std::nullopt;
        if (!mpz_divisible_p(z.b.get_mpz_t(), vden.get_mpz_t())) return std::nullopt;
        return std::make_pair(Integer(num / den), Integer(z.b / vden));
    }
};

inline QuadraticReduction reduce_quadratic(const IntPoly& f, const Integer& d) {
    if (f.degree() != 2) throw DomainError("reduce_quadratic: f must be quadratic");
    QuadraticReduction red;
    red.a = f[2];
    red.b = f[1];
    red.c = f[0];
    red.d = d;
    if (red.a <= 0) throw DomainError("reduce_quadratic: leading coefficient must be positive");
    const Integer t = red.b * red.b - 4 * red.a * red.c;
    if (t == 0) throw DomainError("reduce_quadratic: b^2 - 4ac = 0");
    if (d < 1) throw DomainError("reduce_quadratic: D must be positive");
    const auto dsq = squarefree_decompose(d);
    if (!dsq.complete || dsq.square_part != 1) throw DomainError("reduce_quadratic: D must be square-free");
    const Integer ad = red.a * d;
    if (is_perfect_square(ad)) throw DomainError("reduce_quadratic: aD is a perfect square");
    const auto sq = squarefree_decompose(ad);
    if (!sq.complete) throw CapacityError("reduce_quadratic: could not factor aD");
    red.r = sq.square_part;
    red.problem = PellProblem::make(sq.squarefree_part, t, 2 * red.a, red.b, 2 * red.r, 0);
    return red;
}

} // namespace pforge

#endif
