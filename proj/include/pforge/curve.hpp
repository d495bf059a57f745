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

#ifndef PFORGE_CURVE_HPP
#define PFORGE_CURVE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"
#include "intpoly.hpp"
#include "numtheory.hpp"
#include "record.hpp"

namespace pforge {

/// y^2 = x^3 + a x + b over F_q, coefficients reduced into [0, q).
struct ShortWeierstrass {
    Integer q;
    Integer a;
    Integer b;

    static ShortWeierstrass make(const Integer& q, const Integer& a, const Integer& b) {
        if (q < 2) throw DomainError("ShortWeierstrass: q must be >= 2");
        return {q, mod_floor(a, q), mod_floor(b, q)};
    }

    /// 4a^3 + 27b^2 != 0 (mod q)
    bool nonsingular() const { return mod_floor(4 * a * a * a + 27 * b * b, q) != 0; }

    Integer rhs(const Integer& x) const { return mod_floor(x * x * x + a * x + b, q); }
};

struct AffinePoint {
    Integer x = 0;
    Integer y = 0;
    bool infinity = true;

    static AffinePoint at_infinity() { return {}; }
    static AffinePoint at(Integer x, Integer y) { return {std::move(x), std::move(y), false}; }

    friend bool operator==(const AffinePoint& p, const AffinePoint& o) {
        if (p.infinity || o.infinity) return p.infinity == o.infinity;
        return p.x == o.x && p.y == o.y;
    }
};

inline bool on_curve(const AffinePoint& p, const ShortWeierstrass& e) {
    if (p.infinity) return true;
    if (p.x < 0 || p.x >= e.q || p.y < 0 || p.y >= e.q) return false;
    return mod_floor(p.y * p.y, e.q) == e.rhs(p.x);
}

inline AffinePoint negate(const AffinePoint& p, const ShortWeierstrass& e) {
    if (p.infinity) return p;
    return AffinePoint::at(p.x, mod_floor(-p.y, e.q));
}

namespace detail {

inline Integer inverse_mod(const Integer& v, const Integer& m) {
    Integer r;
    if (mpz_invert(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t()) == 0)
        throw DomainError("inverse_mod: " + v.get_str() + " is not invertible modulo " + m.get_str());
    return r;
}

} // namespace detail

/// Chord-and-tangent addition. q is assumed prime.
inline AffinePoint add(const AffinePoint& p, const AffinePoint& o, const ShortWeierstrass& e) {
    if (p.infinity) return o;
    if (o.infinity) return p;
    const Integer& q = e.q;
    Integer lambda;
    if (p.x == o.x) {
        if (mod_floor(p.y + o.y, q) == 0) return AffinePoint::at_infinity();
        lambda = mod_floor((3 * p.x * p.x + e.a) * detail::inverse_mod(mod_floor(2 * p.y, q), q), q);
    } else {
        lambda = mod_floor((o.y - p.y) * detail::inverse_mod(mod_floor(o.x - p.x, q), q), q);
    }
    Integer x3 = mod_floor(lambda * lambda - p.x - o.x, q);
    Integer y3 = mod_floor(lambda * (p.x - x3) - p.y, q);
    return AffinePoint::at(std::move(x3), std::move(y3));
}

inline AffinePoint scalar_multiply(const AffinePoint& p, const Integer& m, const ShortWeierstrass& e) {
    if (m < 0) throw DomainError("scalar_multiply: negative scalar");
    if (!on_curve(p, e)) throw ContractError("scalar_multiply: point is not on the curve");
    AffinePoint acc = AffinePoint::at_infinity();
    if (p.infinity || m == 0) return acc;
    const std::size_t bits = bit_length(m);
    for (std::size_t i = bits; i-- > 0;) {
        acc = add(acc, acc, e);
        if (mpz_tstbit(m.get_mpz_t(), i)) acc = add(acc, p, e);
    }
    return acc;
}

/// Draws x uniformly until x^3 + ax + b is a square, then takes a root with a
/// random sign. Throws CapacityError after max_draws misses.
template <class URBG>
AffinePoint random_point(const ShortWeierstrass& e, URBG& rng, std::size_t max_draws = 10000) {
    for (std::size_t i = 0; i < max_draws; ++i) {
        Integer x = random_below(rng, e.q);
        const Integer r = e.rhs(x);
        auto y = sqrt_mod_prime(r, e.q);
        if (!y) continue;
        Integer yy = *y;
        if ((rng() & 1U) && yy != 0) yy = e.q - yy;
        return AffinePoint::at(std::move(x), std::move(yy));
    }
    throw CapacityError("random_point: no point found in " + std::to_string(max_draws) + " draws");
}

enum class OrderCheck { Verified, Refuted, Inconclusive };

inline const char* to_string(OrderCheck c) {
    switch (c) {
    case OrderCheck::Verified: return "VERIFIED";
    case OrderCheck::Refuted: return "REFUTED";
    case OrderCheck::Inconclusive: return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
}

/// #E = n for prime n with 16q < n^2 (one multiple of n in the Hasse window):
/// a single point P != O with [n]P = O suffices; `trials` points are tried.
template <class URBG>
OrderCheck verify_group_order(const ShortWeierstrass& e, const Integer& n, unsigned trials, URBG& rng) {
    Rng prime_rng(default_seed);
    if (!is_probable_prime(n, prime_rng)) throw ContractError("verify_group_order: n is not prime");
    const Integer t = e.q + 1 - n;
    if (t * t > 4 * e.q) throw ContractError("verify_group_order: n outside the Hasse interval");
    if (16 * e.q >= n * n) throw ContractError("verify_group_order: Hasse window 4*sqrt(q) is not below n");
    if (!e.nonsingular()) throw ContractError("verify_group_order: singular curve");
    unsigned nontrivial = 0;
    for (unsigned i = 0; i < trials; ++i) {
        AffinePoint p = random_point(e, rng);
        if (p.infinity) continue;
        ++nontrivial;
        if (!scalar_multiply(p, n, e).infinity) return OrderCheck::Refuted;
    }
    return nontrivial > 0 ? OrderCheck::Verified : OrderCheck::Inconclusive;
}

/// Least k <= k_max with q^k = 1 (mod n); nullopt when none.
inline std::optional<unsigned long> embedding_degree(const Integer& q, const Integer& n, unsigned long k_max) {
    if (n < 2) throw DomainError("embedding_degree: n must be >= 2");
    const Integer qm = mod_floor(q, n);
    if (qm == 0) throw DomainError("embedding_degree: n divides q");
    Integer acc = qm;
    for (unsigned long k = 1; k <= k_max; ++k) {
        if (acc == 1) return k;
        acc = acc * qm % n;
    }
    return std::nullopt;
}

/// q^k = 1 (mod n) and q^d != 1 for every proper divisor d of k.
inline bool has_exact_embedding_degree(const Integer& q, const Integer& n, unsigned long k) {
    if (k == 0 || n < 2 || mod_floor(q, n) == 0) return false;
    if (mod_pow(q, k, n) != 1) return false;
    for (unsigned long d = 1; d < k; ++d)
        if (k % d == 0 && mod_pow(q, d, n) == 1) return false;
    return true;
}

inline std::optional<Integer> cm_witness(const Integer& q, const Integer& t, const Integer& d) {
    if (d < 1) return std::nullopt;
    const Integer f = 4 * q - t * t;
    if (f < 0 || !mpz_divisible_p(f.get_mpz_t(), d.get_mpz_t())) return std::nullopt;
    auto r = integer_sqrt(f / d);
    if (!r.exact) return std::nullopt;
    return r.root;
}

/// Runs every check the record's fields allow, naming the first failure.
/// Records without a and b finish at PRIME_OK.
template <class URBG>
CurveRecord verify_record(CurveRecord r, URBG& rng, unsigned trials = 5) {
    r.reason.clear();
    Rng prime_rng(default_seed);
    if (r.n != r.q + 1 - r.t) {
        r.reject("n != q + 1 - t");
        return r;
    }
    if (!is_probable_prime(r.q, prime_rng)) {
        r.reject("q not prime");
        return r;
    }
    if (!is_probable_prime(r.n, prime_rng)) {
        r.reject("n not prime");
        return r;
    }
    if (r.q == r.n) {
        r.reject("q = n");
        return r;
    }
    if (r.t * r.t > 4 * r.q) {
        r.reject("Hasse bound");
        return r;
    }
    {
        Integer g;
        mpz_gcd(g.get_mpz_t(), r.t.get_mpz_t(), r.q.get_mpz_t());
        if (g != 1) {
            r.reject("not ordinary");
            return r;
        }
    }
    if (r.d && !cm_witness(r.q, r.t, *r.d)) {
        r.reject("CM equation");
        return r;
    }
    if (!has_exact_embedding_degree(r.q, r.n, r.k)) {
        r.reject("embedding degree");
        return r;
    }
    if (r.a.has_value() != r.b.has_value()) {
        r.reject("curve coefficients incomplete");
        return r;
    }
    if (!r.a) {
        r.status = RecordStatus::PrimeOk;
        return r;
    }
    const auto e = ShortWeierstrass::make(r.q, *r.a, *r.b);
    if (!e.nonsingular()) {
        r.reject("singular curve");
        return r;
    }
    try {
        switch (verify_group_order(e, r.n, trials, rng)) {
        case OrderCheck::Verified: r.status = RecordStatus::CurveVerified; break;
        case OrderCheck::Refuted: r.reject("group order"); break;
        case OrderCheck::Inconclusive: r.reject("group order inconclusive"); break;
        }
    } catch (const ContractError& ex) {
        r.reject(std::string("group order precondition: ") + ex.what());
    } catch (const CapacityError& ex) {
        r.reject(std::string("point sampling: ") + ex.what());
    }
    return r;
}

} // namespace pforge

#endif
