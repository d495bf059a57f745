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

#ifndef PFORGE_NUMTHEORY_HPP
#define PFORGE_NUMTHEORY_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"

namespace pforge {

using Integer = mpz_class;

/// Seedable generator used wherever randomness enters (Miller-Rabin bases, point sampling).
using Rng = std::mt19937_64;

inline constexpr std::uint64_t default_seed = 0x5eed'0f'f0'12ULL;

namespace detail {

inline constexpr std::array<unsigned, 168> small_primes = {
    2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,  47,  53,  59,  61,  67,  71,
    73,  79,  83,  89,  97,  101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173,
    179, 181, 191, 193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281,
    283, 293, 307, 311, 313, 317, 331, 337, 347, 349, 353, 359, 367, 373, 379, 383, 389, 397, 401, 409,
    419, 421, 431, 433, 439, 443, 449, 457, 461, 463, 467, 479, 487, 491, 499, 503, 509, 521, 523, 541,
    547, 557, 563, 569, 571, 577, 587, 593, 599, 601, 607, 613, 617, 619, 631, 641, 643, 647, 653, 659,
    661, 673, 677, 683, 691, 701, 709, 719, 727, 733, 739, 743, 751, 757, 761, 769, 773, 787, 797, 809,
    811, 821, 823, 827, 829, 839, 853, 857, 859, 863, 877, 881, 883, 887, 907, 911, 919, 929, 937, 941,
    947, 953, 967, 971, 977, 983, 991, 997};

// Halves x modulo odd m, keeping the result in [0, m).
inline void half_mod(Integer& x, const Integer& m) {
    if (mpz_odd_p(x.get_mpz_t())) x += m;
    x >>= 1;
}

} // namespace detail

/// Uniform value in [0, bound) drawn from any uniform random bit generator.
template <class URBG>
Integer random_below(URBG& rng, const Integer& bound) {
    if (bound <= 0) throw DomainError("random_below: bound must be positive");
    const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2) + 64;
    Integer acc = 0;
    for (std::size_t have = 0; have < bits; have += 32) {
        acc <<= 32;
        acc += static_cast<unsigned long>(static_cast<std::uint32_t>(rng()));
    }
    Integer r = acc % bound;
    return r;
}

/// Non-negative residue of a modulo m (m > 0).
inline Integer mod_floor(const Integer& a, const Integer& m) {
    Integer r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Integer mod_pow(const Integer& base, const Integer& exponent, const Integer& modulus) {
    if (modulus < 2) throw DomainError("mod_pow: modulus must be >= 2");
    if (exponent < 0) throw DomainError("mod_pow: exponent must be non-negative");
    Integer r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exponent.get_mpz_t(), modulus.get_mpz_t());
    return r;
}

inline int jacobi_symbol(const Integer& a, const Integer& m) {
    if (m < 1 || mpz_even_p(m.get_mpz_t())) throw DomainError("jacobi_symbol: modulus must be odd and positive");
    return mpz_jacobi(a.get_mpz_t(), m.get_mpz_t());
}

struct IntegerRoot {
    Integer root;
    bool exact = false;
};

inline IntegerRoot integer_sqrt(const Integer& m) {
    if (m < 0) throw DomainError("integer_sqrt: negative input");
    IntegerRoot out;
    Integer rem;
    mpz_sqrtrem(out.root.get_mpz_t(), rem.get_mpz_t(), m.get_mpz_t());
    out.exact = (rem == 0);
    return out;
}

inline bool is_perfect_square(const Integer& m) {
    return m >= 0 && mpz_perfect_square_p(m.get_mpz_t()) != 0;
}

namespace detail {

// One Miller-Rabin round to base a; m odd > 3, m - 1 = d * 2^s.
inline bool miller_rabin_round(const Integer& m, const Integer& d, unsigned long s, const Integer& a) {
    const Integer m_minus_1 = m - 1;
    Integer x = mod_pow(a, d, m);
    if (x == 1 || x == m_minus_1) return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = x * x % m;
        if (x == m_minus_1) return true;
        if (x == 1) return false;
    }
    return false;
}

// Strong Lucas probable-prime test with Selfridge parameters. m odd, not a perfect square.
inline bool strong_lucas(const Integer& m) {
    Integer disc = 5;
    for (;;) {
        const int j = jacobi_symbol(disc, m);
        if (j == -1) break;
        if (j == 0) {
            Integer absd = abs(disc);
            if (absd != m) return false;
        }
        disc = disc > 0 ? Integer(-disc - 2) : Integer(-disc + 2);
    }
    const Integer p = 1;
    const Integer q = (1 - disc) / 4;

    Integer d = m + 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    d >>= s;

    Integer u = 1, v = p, qk = mod_floor(q, m);
    const Integer qm = mod_floor(q, m);
    const Integer dm = mod_floor(disc, m);
    const std::size_t nbits = mpz_sizeinbase(d.get_mpz_t(), 2);
    for (std::size_t i = nbits - 1; i-- > 0;) {
        u = u * v % m;
        v = mod_floor(v * v - 2 * qk, m);
        qk = qk * qk % m;
        if (mpz_tstbit(d.get_mpz_t(), i)) {
            Integer nu = p * u + v;
            Integer nv = dm * u + p * v;
            detail::half_mod(nu, m);
            detail::half_mod(nv, m);
            u = nu % m;
            v = nv % m;
            qk = qk * qm % m;
        }
    }
    if (u == 0 || v == 0) return true;
    for (unsigned long r = 1; r < s; ++r) {
        v = mod_floor(v * v - 2 * qk, m);
        if (v == 0) return true;
        qk = qk * qk % m;
    }
    return false;
}

} // namespace detail

/// Trial division by primes below 1000, then `rounds` Miller-Rabin rounds with
/// bases drawn from `rng`, then one strong Lucas test.
inline bool is_probable_prime(const Integer& m, Rng& rng, int rounds = 40) {
    if (m < 2) return false;
    for (unsigned p : detail::small_primes) {
        if (m == p) return true;
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) return false;
    }
    if (m < 1000 * 1000) return true;

    Integer d = m - 1;
    const unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    d >>= s;
    const Integer span = m - 3;
    for (int i = 0; i < rounds; ++i) {
        Integer a = random_below(rng, span) + 2;
        if (!detail::miller_rabin_round(m, d, s, a)) return false;
    }
    if (is_perfect_square(m)) return false;
    return detail::strong_lucas(m);
}

/// Deterministic convenience overload (fixed seed).
inline bool is_probable_prime(const Integer& m) {
    Rng rng(default_seed);
    return is_probable_prime(m, rng);
}

/// Tonelli-Shanks. Returns nullopt when a is a non-residue mod p. p must be prime.
inline std::optional<Integer> sqrt_mod_prime(const Integer& a, const Integer& p) {
    const Integer r = mod_floor(a, p);
    if (r == 0) return Integer(0);
    if (p == 2) return r;
    if (jacobi_symbol(r, p) != 1) return std::nullopt;

    Integer qv = p - 1;
    const unsigned long s = mpz_scan1(qv.get_mpz_t(), 0);
    qv >>= s;
    if (s == 1) return mod_pow(r, (p + 1) / 4, p);

    Integer z = 2;
    while (jacobi_symbol(z, p) != -1) ++z;

    unsigned long m = s;
    Integer c = mod_pow(z, qv, p);
    Integer t = mod_pow(r, qv, p);
    Integer root = mod_pow(r, (qv + 1) / 2, p);
    while (t != 1) {
        unsigned long i = 0;
        Integer t2 = t;
        while (t2 != 1) {
            t2 = t2 * t2 % p;
            ++i;
        }
        Integer b = c;
        for (unsigned long j = 0; j + i + 1 < m; ++j) b = b * b % p;
        m = i;
        c = b * b % p;
        t = t * c % p;
        root = root * b % p;
    }
    return root;
}

struct PrimePower {
    Integer prime;
    unsigned long exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Partial factorization: product of prime^exponent times cofactor equals the input.
struct NaturalFactorization {
    std::vector<PrimePower> factors;
    Integer cofactor = 1;
    bool complete = false;
};

/// Trial division up to `bound`. The cofactor left over has no prime factor
/// below the bound; it is absorbed as a prime when it is provably prime
/// (below bound^2 or passes the probable-prime test).
inline NaturalFactorization factor_trial(const Integer& m, const Integer& bound) {
    if (m < 1) throw DomainError("factor_trial: input must be positive");
    NaturalFactorization out;
    Integer rem = m;
    auto strip = [&](const Integer& p) {
        unsigned long e = 0;
        while (mpz_divisible_p(rem.get_mpz_t(), p.get_mpz_t())) {
            mpz_divexact(rem.get_mpz_t(), rem.get_mpz_t(), p.get_mpz_t());
            ++e;
        }
        if (e > 0) out.factors.push_back({p, e});
    };
    strip(Integer(2));
    Integer d = 3;
    while (d <= bound && d * d <= rem) {
        strip(d);
        d += 2;
    }
    if (rem == 1) {
        out.complete = true;
    } else if (d * d > rem || is_probable_prime(rem)) {
        out.factors.push_back({rem, 1});
        out.complete = true;
    } else {
        out.cofactor = rem;
    }
    return out;
}

struct SquarefreeDecomposition {
    Integer squarefree_part = 1;
    Integer square_part = 1;
    bool complete = false;
};

/// m = squarefree_part * square_part^2 when complete. When incomplete the
/// unresolved cofactor is folded into squarefree_part and callers must treat
/// square-freeness as unknown.
inline SquarefreeDecomposition squarefree_decompose(const Integer& m, const Integer& bound = 1000000) {
    if (m < 1) throw DomainError("squarefree_decompose: input must be positive");
    SquarefreeDecomposition out;
    NaturalFactorization fac = factor_trial(m, bound);
    for (const auto& [p, e] : fac.factors) {
        if (e % 2 == 1) out.squarefree_part *= p;
        for (unsigned long i = 0; i < e / 2; ++i) out.square_part *= p;
    }
    if (fac.complete) {
        out.complete = true;
        return out;
    }
    const Integer& rem = fac.cofactor;
    // rem has no prime factor <= bound and is composite.
    auto sq = integer_sqrt(rem);
    if (sq.exact) {
        out.square_part *= sq.root;
        out.complete = true;
        return out;
    }
    Integer b3 = bound * bound * bound;
    if (rem < b3) {
        // exactly two distinct primes above the bound
        out.squarefree_part *= rem;
        out.complete = true;
        return out;
    }
    out.squarefree_part *= rem;
    out.complete = false;
    return out;
}

inline std::size_t bit_length(const Integer& m) {
    if (m == 0) return 0;
    return mpz_sizeinbase(m.get_mpz_t(), 2);
}

} // namespace pforge

#endif
