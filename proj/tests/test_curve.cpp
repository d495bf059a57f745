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

#include <gtest/gtest.h>

#include <pforge/curve.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"

using pforge::AffinePoint;
using pforge::CurveRecord;
using pforge::Integer;
using pforge::RecordStatus;
using pforge::ShortWeierstrass;

namespace {

AffinePoint to_point(const oracle::Pt& p) {
    return p ? AffinePoint::at(Integer(p->first), Integer(p->second)) : AffinePoint::at_infinity();
}

using fixture::curve149;
using fixture::curve196;

struct ConstantRng {
    using result_type = std::uint64_t;
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type(0); }
    result_type operator()() { return 0; }
};

} // namespace

TEST(GroupLaw, MatchesExhaustiveTables) {
    for (long p : {5L, 7L, 11L, 13L}) {
        for (long a = 0; a < p; ++a) {
            for (long b = 0; b < p; ++b) {
                const auto e = ShortWeierstrass::make(p, a, b);
                if (!e.nonsingular()) continue;
                const auto pts = oracle::curve_points(p, a, b);
                for (const auto& P : pts)
                    for (const auto& Q : pts)
                        ASSERT_EQ(pforge::add(to_point(P), to_point(Q), e), to_point(oracle::add_points(P, Q, p, a)))
                            << "p=" << p << " a=" << a << " b=" << b;
            }
        }
    }
}

TEST(GroupLaw, Axioms) {
    for (long p : {5L, 7L, 11L, 13L}) {
        const auto e = ShortWeierstrass::make(p, 1, 1);
        ASSERT_TRUE(e.nonsingular());
        std::vector<AffinePoint> pts;
        for (const auto& P : oracle::curve_points(p, 1, 1)) pts.push_back(to_point(P));
        const AffinePoint O = AffinePoint::at_infinity();
        for (const auto& P : pts) {
            ASSERT_TRUE(pforge::on_curve(P, e));
            ASSERT_EQ(pforge::add(P, O, e), P);
            ASSERT_TRUE(pforge::add(P, pforge::negate(P, e), e).infinity);
            for (const auto& Q : pts) {
                ASSERT_EQ(pforge::add(P, Q, e), pforge::add(Q, P, e));
                for (const auto& R : pts)
                    ASSERT_EQ(pforge::add(pforge::add(P, Q, e), R, e), pforge::add(P, pforge::add(Q, R, e), e));
            }
        }
    }
}

TEST(ScalarMultiply, SmallCurveTable) {
    const long p = 7, a = 2, b = 3;
    const auto e = ShortWeierstrass::make(p, a, b);
    for (const auto& P : oracle::curve_points(p, a, b)) {
        oracle::Pt acc = std::nullopt;
        for (long m = 0; m < 30; ++m) {
            ASSERT_EQ(pforge::scalar_multiply(to_point(P), m, e), to_point(acc)) << m;
            acc = oracle::add_points(acc, P, p, a);
        }
    }
}

TEST(ScalarMultiply, EdgeCases) {
    const auto e = ShortWeierstrass::make(7, 2, 3);
    const AffinePoint P = AffinePoint::at(2, 1);  // 8 + 4 + 3 = 15 = 1
    ASSERT_TRUE(pforge::on_curve(P, e));
    EXPECT_TRUE(pforge::scalar_multiply(P, 0, e).infinity);
    EXPECT_EQ(pforge::scalar_multiply(P, 1, e), P);
    EXPECT_THROW(pforge::scalar_multiply(AffinePoint::at(2, 2), 3, e), pforge::ContractError);
    EXPECT_THROW(pforge::scalar_multiply(P, -1, e), pforge::DomainError);
}

TEST(ScalarMultiply, OrderOf149BitCurveKillsPoints) {
    const auto r = curve149();
    const auto e = ShortWeierstrass::make(r.q, *r.a, *r.b);
    pforge::Rng rng(4);
    for (int i = 0; i < 3; ++i) {
        const AffinePoint P = pforge::random_point(e, rng);
        EXPECT_TRUE(pforge::scalar_multiply(P, r.n, e).infinity);
        EXPECT_FALSE(pforge::scalar_multiply(P, r.n - 1, e).infinity);
    }
}

TEST(RandomPoint, LandsInPointSet) {
    const auto e = ShortWeierstrass::make(7, 2, 3);
    const auto pts = oracle::curve_points(7, 2, 3);
    pforge::Rng rng(1);
    for (int i = 0; i < 200; ++i) {
        const AffinePoint P = pforge::random_point(e, rng);
        ASSERT_TRUE(pforge::on_curve(P, e));
        bool found = false;
        for (const auto& Q : pts) found = found || to_point(Q) == P;
        ASSERT_TRUE(found);
    }
}

TEST(RandomPoint, ConstantRngHitsCapacity) {
    // x = 0 always; 0 + 0 + 3 = 3 is a non-residue mod 7
    const auto e = ShortWeierstrass::make(7, 2, 3);
    ConstantRng rng;
    EXPECT_THROW(pforge::random_point(e, rng), pforge::CapacityError);
}

TEST(GroupOrder, ExamplesVerify) {
    pforge::Rng rng(5);
    for (const auto& r : {curve149(), curve196()}) {
        const auto e = ShortWeierstrass::make(r.q, *r.a, *r.b);
        EXPECT_EQ(pforge::verify_group_order(e, r.n, 5, rng), pforge::OrderCheck::Verified);
    }
}

TEST(GroupOrder, PerturbedOrder) {
    const auto r = curve149();
    const auto e = ShortWeierstrass::make(r.q, *r.a, *r.b);
    pforge::Rng rng(5);
    // n + 2 is even; pick the next prime above n instead
    Integer m = r.n + 2;
    while (!pforge::is_probable_prime(m)) m += 2;
    try {
        EXPECT_EQ(pforge::verify_group_order(e, m, 5, rng), pforge::OrderCheck::Refuted);
    } catch (const pforge::ContractError&) {
        SUCCEED();
    }
    EXPECT_THROW(pforge::verify_group_order(e, r.n + 2, 5, rng), pforge::ContractError);
}

TEST(GroupOrder, SmallFieldsAgainstPointCount) {
    pforge::Rng rng(8);
    int verified = 0;
    for (long p = 5; p < 50; ++p) {
        if (!oracle::is_prime_trial(p)) continue;
        for (long a = 0; a < p; ++a) {
            for (long b = 0; b < p; ++b) {
                const auto e = ShortWeierstrass::make(p, a, b);
                if (!e.nonsingular()) continue;
                const long n = static_cast<long>(oracle::curve_points(p, a, b).size());
                const long t = p + 1 - n;
                ASSERT_LE(t * t, 4 * p);
                if (!oracle::is_prime_trial(n)) continue;
                if (16 * p >= n * n) {
                    EXPECT_THROW(pforge::verify_group_order(e, n, 5, rng), pforge::ContractError);
                    continue;
                }
                ASSERT_EQ(pforge::verify_group_order(e, n, 5, rng), pforge::OrderCheck::Verified)
                    << p << " " << a << " " << b;
                ++verified;
            }
        }
    }
    EXPECT_GT(verified, 100);
}

TEST(EmbeddingDegree, Examples) {
    EXPECT_EQ(pforge::embedding_degree(7, 3, 12), 1UL);
    EXPECT_EQ(pforge::embedding_degree(5, 3, 12), 2UL);
    const auto r = curve149();
    EXPECT_EQ(pforge::embedding_degree(r.q, r.n, 12), 10UL);
    EXPECT_TRUE(pforge::has_exact_embedding_degree(r.q, r.n, 10));
    EXPECT_FALSE(pforge::has_exact_embedding_degree(r.q, r.n, 20));
    EXPECT_FALSE(pforge::has_exact_embedding_degree(r.q, r.n, 5));
    EXPECT_FALSE(pforge::embedding_degree(r.q, r.n, 9).has_value());
    EXPECT_THROW(pforge::embedding_degree(6, 3, 12), pforge::DomainError);
}

TEST(EmbeddingDegree, MatchesMultiplicativeOrder) {
    std::vector<std::uint64_t> primes;
    for (std::uint64_t p = 2; p < 300; ++p)
        if (oracle::is_prime_trial(p)) primes.push_back(p);
    for (auto q : primes)
        for (auto n : primes) {
            if (q == n) continue;
            const auto k = pforge::embedding_degree(Integer(q), Integer(n), n);
            ASSERT_TRUE(k.has_value());
            ASSERT_EQ(*k, oracle::mult_order(q, n)) << q << " " << n;
            ASSERT_TRUE(pforge::has_exact_embedding_degree(Integer(q), Integer(n), *k));
        }
}

TEST(VerifyRecord, Examples) {
    pforge::Rng rng(1);
    EXPECT_EQ(pforge::verify_record(curve149(), rng).status, RecordStatus::CurveVerified);
    EXPECT_EQ(pforge::verify_record(curve196(), rng).status, RecordStatus::CurveVerified);
    auto bad_d = curve149();
    bad_d.d = Integer(1666604);
    auto v = pforge::verify_record(bad_d, rng);
    EXPECT_EQ(pforge::status_string(v), "REJECTED(CM equation)");
}

TEST(VerifyRecord, PerturbedCoefficient) {
    pforge::Rng rng(1);
    auto r = curve149();
    r.b = *r.b + 1;
    auto v = pforge::verify_record(r, rng);
    EXPECT_EQ(v.status, RecordStatus::Rejected);
    EXPECT_EQ(v.reason, "group order");
}

TEST(VerifyRecord, FirstFailingCheckIsNamed) {
    pforge::Rng rng(1);
    auto reason = [&](CurveRecord r) { return pforge::verify_record(std::move(r), rng).reason; };

    auto r = curve149();
    r.t += 1;
    EXPECT_EQ(reason(r), "n != q + 1 - t");

    r = curve149();
    r.q += 2;
    r.t += 2;
    EXPECT_EQ(reason(r), "q not prime");

    r = curve149();
    r.k = 5;
    EXPECT_EQ(reason(r), "embedding degree");

    r = curve149();
    r.b.reset();
    EXPECT_EQ(reason(r), "curve coefficients incomplete");

    // q = 2, n = 3, t = 0: supersingular
    CurveRecord ss;
    ss.k = 2;
    ss.q = 2;
    ss.n = 3;
    ss.t = 0;
    EXPECT_EQ(reason(ss), "not ordinary");

    // t = -5 and t^2 = 25 > 4q = 20
    CurveRecord hasse;
    hasse.k = 1;
    hasse.q = 5;
    hasse.n = 11;
    hasse.t = -5;
    EXPECT_EQ(reason(hasse), "Hasse bound");

    r = curve149();
    r.a = Integer(0);
    r.b = Integer(0);
    EXPECT_EQ(reason(r), "singular curve");
}

TEST(VerifyRecord, WithoutCoefficientsStopsAtPrimeOk) {
    pforge::Rng rng(1);
    auto r = curve149();
    r.a.reset();
    r.b.reset();
    EXPECT_EQ(pforge::verify_record(r, rng).status, RecordStatus::PrimeOk);
}

TEST(VerifyRecord, SignedCoefficientIsKept) {
    pforge::Rng rng(1);
    auto v = pforge::verify_record(curve149(), rng);
    EXPECT_EQ(v.a, Integer(-3));
    auto reduced = curve149();
    reduced.a = reduced.q - 3;
    EXPECT_EQ(pforge::verify_record(reduced, rng).status, RecordStatus::CurveVerified);
}
