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

#include <random>

#include <pforge/pell.hpp>

#include "oracles.hpp"

using pforge::Integer;
using pforge::QuadraticInteger;

namespace {

QuadraticInteger qi(long a, long b, long d) { return {Integer(a), Integer(b), Integer(d)}; }

bool nonsquare(long d) { return !pforge::is_perfect_square(Integer(d)); }

} // namespace

TEST(ContinuedFraction, Examples) {
    auto two = pforge::continued_fraction_sqrt(2);
    EXPECT_EQ(two.a0, 1);
    EXPECT_EQ(two.period, (std::vector<Integer>{2}));
    auto three = pforge::continued_fraction_sqrt(3);
    EXPECT_EQ(three.a0, 1);
    EXPECT_EQ(three.period, (std::vector<Integer>{1, 2}));
    EXPECT_THROW(pforge::continued_fraction_sqrt(4), pforge::DomainError);
    EXPECT_THROW(pforge::continued_fraction_sqrt(1), pforge::DomainError);
}

TEST(ContinuedFraction, PeriodShape) {
    // the period is palindromic apart from its final 2*a0
    for (long d = 2; d < 3000; ++d) {
        if (!nonsquare(d)) continue;
        auto cf = pforge::continued_fraction_sqrt(d);
        ASSERT_EQ(cf.period.back(), 2 * cf.a0);
        for (std::size_t i = 0; i + 1 < cf.period.size(); ++i)
            ASSERT_EQ(cf.period[i], cf.period[cf.period.size() - 2 - i]);
    }
    EXPECT_EQ(pforge::continued_fraction_sqrt(645).period.size(), 10U);
}

TEST(ContinuedFraction, CapacityError) {
    EXPECT_THROW(pforge::continued_fraction_sqrt(645, 5), pforge::CapacityError);
    EXPECT_NO_THROW(pforge::continued_fraction_sqrt(645, 10));
}

TEST(FundamentalUnit, Examples) {
    EXPECT_EQ(pforge::fundamental_unit(2).norm_one, qi(3, 2, 2));
    EXPECT_EQ(pforge::fundamental_unit(2).cf_unit, qi(1, 1, 2));
    EXPECT_EQ(pforge::fundamental_unit(3).norm_one, qi(2, 1, 3));
    EXPECT_EQ(pforge::fundamental_unit(5).norm_one, qi(9, 4, 5));
    EXPECT_EQ(pforge::fundamental_unit(5).cf_unit, qi(2, 1, 5));
}

TEST(FundamentalUnit, MatchesBruteForce) {
    for (long d = 2; d <= 1000; ++d) {
        if (!nonsquare(d)) continue;
        const auto fu = pforge::fundamental_unit(d);
        ASSERT_EQ(fu.norm_one.norm(), 1);
        ASSERT_EQ(abs(fu.cf_unit.norm()), 1);
        auto brute = oracle::pell_brute(d, 100000);
        if (!brute) {
            ASSERT_GT(fu.norm_one.b, 100000) << d;
            continue;
        }
        ASSERT_EQ(fu.norm_one.a, brute->first) << d;
        ASSERT_EQ(fu.norm_one.b, brute->second) << d;
    }
}

TEST(FundamentalUnit, LargeRegulator) {
    // x^2 - 61 y^2 = 1 has least solution (1766319049, 226153980)
    EXPECT_EQ(pforge::fundamental_unit(61).norm_one, (QuadraticInteger{Integer(1766319049), Integer(226153980), 61}));
}

TEST(QuadraticIntegerArith, NormIsMultiplicative) {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> coef(-1000000, 1000000);
    std::uniform_int_distribution<long> rad(2, 100000);
    for (int i = 0; i < 2000; ++i) {
        const long d = rad(rng);
        const QuadraticInteger z = qi(coef(rng), coef(rng), d), w = qi(coef(rng), coef(rng), d);
        ASSERT_EQ((z * w).norm(), z.norm() * w.norm());
        const QuadraticInteger u = qi(coef(rng), coef(rng), d);
        ASSERT_EQ((z * w) * u, z * (w * u));
    }
}

TEST(QuadraticIntegerArith, RealSign) {
    EXPECT_EQ(qi(3, -2, 2).real_sign(), 1);   // 3 - 2.83
    EXPECT_EQ(qi(-3, 2, 2).real_sign(), -1);
    EXPECT_EQ(qi(1, -1, 2).real_sign(), -1);
    EXPECT_EQ(qi(0, 0, 2).real_sign(), 0);
    EXPECT_THROW(qi(1, 1, 2) * qi(1, 1, 3), pforge::ContractError);
}

TEST(BaseSolutions, Example645) {
    const auto reps = pforge::base_solutions(645, -20);
    ASSERT_FALSE(reps.empty());
    for (const auto& z : reps) EXPECT_EQ(z.norm(), -20);
    EXPECT_EQ(oracle::norm_solutions_from_classes(645, -20, 10000), oracle::norm_solutions_brute(645, -20, 10000));
}

TEST(BaseSolutions, UnitEquation) {
    const auto reps = pforge::base_solutions(2, 1);
    bool trivial = false;
    for (const auto& z : reps) trivial = trivial || pforge::same_class(z, qi(1, 0, 2), Integer(1));
    EXPECT_TRUE(trivial);
    bool unit = false;
    for (const auto& z : reps) unit = unit || pforge::same_class(z, qi(3, 2, 2), Integer(1));
    EXPECT_TRUE(unit);
}

TEST(BaseSolutions, NoSolution) {
    // u^2 = 2 (mod 3) has no solution
    EXPECT_TRUE(pforge::base_solutions(3, -1).empty());
    EXPECT_TRUE(pforge::base_solutions(7, 3).empty());
}

TEST(BaseSolutions, Contains149BitCurveClass) {
    // u0 = 15 x0 + 5 with x0 recovered from the first published q
    const Integer x0("66980436970");
    const Integer u0 = 15 * x0 + 5;
    const Integer dprime = 24999045;
    const Integer v2 = (u0 * u0 + 20) / dprime;
    ASSERT_EQ(v2 * dprime, u0 * u0 + 20);
    auto v0 = pforge::integer_sqrt(v2);
    ASSERT_TRUE(v0.exact);
    const QuadraticInteger z{u0, v0.root, dprime};
    bool found = false;
    for (const auto& r : pforge::base_solutions(dprime, -20)) found = found || pforge::same_class(z, r, Integer(-20));
    EXPECT_TRUE(found);
}

TEST(BaseSolutions, MatchesExhaustiveScan) {
    for (long d = 2; d <= 400; ++d) {
        if (!nonsquare(d)) continue;
        for (long t : {1L, -1L, 4L, -4L, -20L}) {
            if (t * t >= d) continue;
            ASSERT_EQ(oracle::norm_solutions_from_classes(d, t, 3000), oracle::norm_solutions_brute(d, t, 3000))
                << "D'=" << d << " T=" << t;
        }
    }
}

TEST(BaseSolutions, LargeRightHandSideFallback) {
    // |T| >= sqrt(D') takes the exhaustive route
    for (long d : {2L, 3L, 5L, 7L, 13L, 30L}) {
        for (long t : {-20L, 7L, 14L, -6L, 23L}) {
            ASSERT_EQ(oracle::norm_solutions_from_classes(d, t, 2000), oracle::norm_solutions_brute(d, t, 2000))
                << "D'=" << d << " T=" << t;
        }
    }
}

TEST(SameClass, Basics) {
    const Integer t = -20;
    const QuadraticInteger z = qi(25, 1, 645);
    const QuadraticInteger eps = pforge::fundamental_unit(645).norm_one;
    EXPECT_TRUE(pforge::same_class(z * eps, z, t));
    EXPECT_FALSE(pforge::same_class(-z, z, t));
    EXPECT_FALSE(pforge::same_class(z.conjugate(), z, t));
}

TEST(CongruenceUnit, Examples) {
    auto a = pforge::congruence_unit(1, 2);
    EXPECT_EQ(a.unit, qi(3, 2, 2));
    EXPECT_EQ(a.exponent, 1U);

    auto b = pforge::congruence_unit(15, 645);
    EXPECT_EQ(b.unit.norm(), 1);
    EXPECT_EQ(pforge::mod_floor(b.unit.a, 30), 1);
    EXPECT_EQ(pforge::mod_floor(b.unit.b, 30), 0);

    // 9 + 4 sqrt 5 is already (1, 0) mod 2 and mod 4
    auto c = pforge::congruence_unit(2, 5);
    EXPECT_EQ(c.exponent, 1U);
    EXPECT_EQ(c.unit, qi(9, 4, 5));
}

TEST(CongruenceUnit, PropertiesOverSmallRange) {
    for (long a = 1; a <= 12; ++a) {
        for (long d = 2; d <= 120; ++d) {
            if (!nonsquare(d)) continue;
            auto cu = pforge::congruence_unit(a, d);
            ASSERT_EQ(cu.unit.norm(), 1);
            ASSERT_EQ(pforge::mod_floor(cu.unit.a, 2 * a), 1 % (2 * a));
            ASSERT_EQ(pforge::mod_floor(cu.unit.b, 2 * a), 0);
            ASSERT_LT(cu.exponent, static_cast<std::uint64_t>(4 * a * a));
            ASSERT_EQ(cu.unit, pforge::pow(pforge::fundamental_unit(d).norm_one, cu.exponent));
            // minimality of the exponent
            const auto eps = pforge::fundamental_unit(d).norm_one;
            for (std::uint64_t j = 1; j < cu.exponent; ++j) {
                const auto w = pforge::pow(eps, j);
                ASSERT_FALSE(pforge::mod_floor(w.a, 2 * a) == 1 % (2 * a) && pforge::mod_floor(w.b, 2 * a) == 0);
            }
        }
    }
}

TEST(UnitOrderMod, Identity) {
    EXPECT_EQ(pforge::unit_order_mod(qi(1, 0, 7), Integer(10)), 1U);
    EXPECT_EQ(pforge::unit_order_mod(qi(3, 2, 2), Integer(2)), 1U);
    EXPECT_THROW(pforge::unit_order_mod(qi(3, 2, 2), Integer(0)), pforge::DomainError);
}

TEST(Solutions, CountOneReturnsBase) {
    auto p = pforge::PellProblem::make(645, -20);
    const auto eps = pforge::fundamental_unit(645).norm_one;
    auto s = pforge::solutions(p, qi(25, 1, 645), eps, 1);
    ASSERT_EQ(s.size(), 1U);
    EXPECT_EQ(s[0], qi(25, 1, 645));
}

TEST(Solutions, StreamMapsBackToFamilyCurve) {
    // u = 15x + 5, v = y: 15x^2 + 10x + 3 = 43 y^2
    auto p = pforge::PellProblem::make(645, -20, 15, 5);
    auto cs = pforge::constrained_solutions(p);
    ASSERT_FALSE(cs.streams.empty());
    for (auto& s : cs.streams) {
        Integer last = -1;
        for (int i = 0; i < 6; ++i) {
            const QuadraticInteger z = s.next();
            ASSERT_EQ(z.norm(), -20);
            ASSERT_EQ(pforge::mod_floor(z.a, 15), 5);
            ASSERT_GT(abs(z.a), last);
            last = abs(z.a);
            const Integer x = (z.a - 5) / 15;
            ASSERT_EQ(15 * x * x + 10 * x + 3, 43 * z.b * z.b);
        }
    }
}

TEST(Solutions, ContractErrorsNameTheCongruence) {
    auto p = pforge::PellProblem::make(645, -20, 15, 5);
    const auto eps = pforge::fundamental_unit(645).norm_one;
    const auto unit = pforge::congruence_unit_mod(15, 645).unit;
    try {
        pforge::solutions(p, qi(25, 1, 645), unit, 3);
        FAIL() << "expected ContractError";
    } catch (const pforge::ContractError& e) {
        EXPECT_NE(std::string(e.what()).find("u = 5 (mod 15)"), std::string::npos) << e.what();
    }
    EXPECT_THROW(pforge::solutions(p, qi(26, 1, 645), unit, 3), pforge::ContractError);
    // -25 = 5 (mod 15)
    EXPECT_NO_THROW(pforge::solutions(p, qi(-25, 1, 645), unit, 3));
    if (pforge::mod_floor(eps.a - 1, 15) != 0 || pforge::mod_floor(eps.b, 15) != 0) {
        try {
            pforge::solutions(p, qi(-25, 1, 645), eps, 3);
            FAIL() << "expected ContractError";
        } catch (const pforge::ContractError& e) {
            EXPECT_NE(std::string(e.what()).find("unit violates"), std::string::npos) << e.what();
        }
    }
    EXPECT_THROW(pforge::solutions(p, qi(-25, 1, 645), qi(1, 1, 645), 3), pforge::ContractError);
}

TEST(PellProblemMake, Validation) {
    EXPECT_THROW(pforge::PellProblem::make(4, 1), pforge::DomainError);
    EXPECT_THROW(pforge::PellProblem::make(5, 0), pforge::DomainError);
    EXPECT_THROW(pforge::PellProblem::make(5, 1, 0, 0), pforge::DomainError);
    auto p = pforge::PellProblem::make(5, 1, 7, -1, 3, 10);
    EXPECT_EQ(p.residue_u, 6);
    EXPECT_EQ(p.residue_v, 1);
}

TEST(Stream, PeekAndPosition) {
    auto p = pforge::PellProblem::make(2, 1);
    pforge::PellSolutionStream s(p, qi(1, 0, 2), qi(3, 2, 2));
    EXPECT_EQ(s.position(), 0U);
    EXPECT_EQ(s.peek(), qi(1, 0, 2));
    EXPECT_EQ(s.next(), qi(1, 0, 2));
    EXPECT_EQ(s.next(), qi(3, 2, 2));
    EXPECT_EQ(s.peek(), qi(17, 12, 2));
    EXPECT_EQ(s.position(), 2U);
}

// Build f with a known point, reduce, and check that the constrained streams
// reach that point and every element projects onto the curve.
TEST(QuadraticReductionProperty, StreamsCoverKnownPoint) {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<long> as(1, 12), bs(-20, 20), xs(-30, 30), ys(1, 30), ds(1, 40);
    int checked = 0;
    while (checked < 40) {
        const long a = as(rng), b = bs(rng), x0 = xs(rng), y0 = ys(rng), d = ds(rng);
        if (oracle::has_square_factor(static_cast<std::uint64_t>(d)) || pforge::is_perfect_square(Integer(a * d))) continue;
        const long c = d * y0 * y0 - a * x0 * x0 - b * x0;
        if (b * b - 4 * a * c == 0) continue;
        const pforge::IntPoly f{c, b, a};
        const auto red = pforge::reduce_quadratic(f, d);
        const QuadraticInteger target = red.lift(x0, y0);
        ASSERT_EQ(target.norm(), red.problem.t);
        auto cs = pforge::constrained_solutions(red.problem);
        ASSERT_LT(cs.unit.exponent, static_cast<std::uint64_t>(4 * a * a));
        bool reached = false;
        for (auto& s : cs.streams) {
            for (int i = 0; i < 40 && abs(s.peek().a) <= abs(target.a); ++i) {
                const QuadraticInteger z = s.next();
                reached = reached || z == target;
                auto xy = red.project(z);
                ASSERT_TRUE(xy.has_value());
                ASSERT_EQ(Integer(d) * xy->second * xy->second, f(xy->first));
            }
        }
        ASSERT_TRUE(reached) << "f=" << pforge::to_string(f) << " D=" << d << " x0=" << x0 << " y0=" << y0;
        ++checked;
    }
}
