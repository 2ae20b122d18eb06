#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "rayclass/cycray.hpp"
#include "rayclass/errors.hpp"
#include "rayclass/oracle.hpp"

using namespace rayclass;

namespace {

std::vector<Int> ints(std::vector<long> v) { return std::vector<Int>(v.begin(), v.end()); }

cyc_elem random_unit(std::mt19937_64& rng, const Int& p)
{
    for (;;) {
        std::vector<Int> c(p.get_ui() - 1);
        for (auto& x : c)
            x = static_cast<long>(rng() % 17) - 8;
        cyc_elem e(p, c);
        if (e.coeff_sum() % p != 0)
            return e;
    }
}

} // namespace

TEST_CASE("local unit presentations have the right group")
{
    for (long p : { 3, 5, 7 }) {
        for (long k = 1; k <= 8; ++k) {
            budget b;
            local_unit_presentation pres = local_unit_presentation_cyc(p, k, b);
            CAPTURE(p);
            CAPTURE(k);
            CHECK(pres.group().order() ==
                  (Int(p) - 1) * pow_int(p, static_cast<unsigned long>(k) - 1));
        }
    }
    budget b;
    CHECK(local_unit_presentation_cyc(3, 1, b).group().invariant_factors() == ints({ 2 }));
    CHECK(local_unit_presentation_cyc(5, 2, b).group().invariant_factors() == ints({ 20 }));
    /* (O/pi^3)* for p=5: Z/4 x (Z/5)^2, invariant factors [5,20] */
    CHECK(local_unit_presentation_cyc(5, 3, b).group().invariant_factors() == ints({ 5, 20 }));
}

TEST_CASE("dlog round trips on random units")
{
    for (long p : { 3, 5, 7 }) {
        budget b(50'000'000UL);
        long k = (p == 7) ? 5 : 6;
        local_unit_presentation pres = local_unit_presentation_cyc(p, k, b);
        std::mt19937_64 rng(1000 + p);
        for (int trial = 0; trial < 100; ++trial) {
            cyc_elem x = random_unit(rng, p);
            std::vector<Int> e = dlog(pres, x, b);
            cyc_elem back = pres.reduce(cyc_elem::integer(p, 1));
            for (std::size_t gi = 0; gi < pres.gens.size(); ++gi)
                for (Int c = 0; c < e[gi]; ++c)
                    back = pres.mul(back, pres.gens[gi], b);
            CHECK(back == pres.reduce(x));
        }
        /* generators map to unit vectors */
        std::vector<Int> e0 = dlog(pres, pres.gens[0], b);
        CHECK(e0[0] == 1);
        for (std::size_t i = 1; i < e0.size(); ++i)
            CHECK(e0[i] == 0);
        /* dlog of 1 is zero */
        std::vector<Int> e1 = dlog(pres, cyc_elem::integer(p, 1), b);
        for (const Int& c : e1)
            CHECK(c == 0);
        CHECK_THROWS_AS(dlog(pres, cyc_elem::integer(p, 1) - cyc_elem::zeta(p), b), not_a_unit);
    }

    /* zeta at (5,3): stripped at level 1, verified by remultiplication */
    budget b;
    local_unit_presentation pres = local_unit_presentation_cyc(5, 3, b);
    cyc_elem z = cyc_elem::zeta(5);
    std::vector<Int> e = dlog(pres, z, b);
    CHECK(e[1] != 0);
    cyc_elem back = pres.reduce(cyc_elem::integer(5, 1));
    for (std::size_t gi = 0; gi < pres.gens.size(); ++gi)
        for (Int c = 0; c < e[gi]; ++c)
            back = pres.mul(back, pres.gens[gi], b);
    CHECK(back == pres.reduce(z));
}

TEST_CASE("cyclotomic quotient oracle against documented values")
{
    budget b(50'000'000UL);
    CHECK(cyc_quotient_oracle(5, 3, b).trivial());
    CHECK(cyc_quotient_oracle(5, 6, b).invariant_factors() == ints({ 5, 5, 5 }));
    CHECK(cyc_quotient_oracle(3, 5, b).invariant_factors() == ints({ 3, 9 }));

    /* unit image fills the residue units at k = 1, 2 */
    for (long p : { 3, 5, 7 }) {
        CHECK(cyc_quotient_oracle(p, 1, b).trivial());
        CHECK(cyc_quotient_oracle(p, 2, b).trivial());
    }

    CHECK_THROWS_AS(cyc_quotient_oracle(11, 3, b), unsupported_prime);
    budget tiny(100);
    CHECK_THROWS_AS(cyc_quotient_oracle(7, 9, tiny), budget_exceeded);
}

TEST_CASE("oracle equals the structure formula on spot cells")
{
    budget b(100'000'000UL);
    for (long p : { 3, 5, 7 }) {
        for (long k = 3; k <= 8; ++k) {
            CAPTURE(p);
            CAPTURE(k);
            CHECK(cyc_quotient_oracle(p, k, b) == ray_structure(p, k, ab_group()).p_part);
        }
    }
}

TEST_CASE("tiny closure crosscheck agrees with the dlog/SNF oracle")
{
    budget b(100'000'000UL);
    for (long k = 1; k <= 8; ++k)
        CHECK(tiny_closure_crosscheck(3, k) == cyc_quotient_oracle(3, k, b));
    for (long k = 1; k <= 5; ++k)
        CHECK(tiny_closure_crosscheck(5, k) == cyc_quotient_oracle(5, k, b));
    for (long k = 1; k <= 4; ++k)
        CHECK(tiny_closure_crosscheck(7, k) == cyc_quotient_oracle(7, k, b));

    CHECK(tiny_closure_crosscheck(3, 2).trivial());
    CHECK(tiny_closure_crosscheck(3, 1).trivial());
    CHECK_THROWS_AS(tiny_closure_crosscheck(5, 6), cap_exceeded);
}

TEST_CASE("filtration jump oracle")
{
    budget b(100'000'000UL);
    CHECK(filtration_jump_oracle(5, 3, b) == 1);
    CHECK(filtration_jump_oracle(5, 6, b) == 5);
    for (long k = 2; k <= 7; ++k)
        CHECK(filtration_jump_oracle(3, k, b) == 1); /* p=3: every even k is divisible by p-1 */
}

TEST_CASE("quadratic split oracle")
{
    budget b;
    quad_oracle_result r = quad_ratio_oracle(17, 2, 3, prime_splitting::split, b);
    CHECK(r.ratio == 4); /* maximal abelian 2-extension of degree 4 */
    REQUIRE(r.structure.has_value());
    /* u0 = u^2 is a square with v(u0-1) = 3, so the quotient of (Z/8)* is
     * the full Klein group: the order is 4 but the group is not cyclic */
    CHECK(r.structure->invariant_factors() == ints({ 2, 2 }));

    CHECK(quad_ratio_oracle(17, 2, 1, prime_splitting::split, b).ratio == 1);
    quad_oracle_result r2 = quad_ratio_oracle(17, 2, 2, prime_splitting::split, b);
    CHECK(r2.ratio == 2);
    CHECK(r2.structure->invariant_factors() == ints({ 2 }));
    quad_oracle_result r8 = quad_ratio_oracle(17, 2, 8, prime_splitting::split, b);
    CHECK(r8.ratio == 4);
    CHECK(r8.structure->invariant_factors() == ints({ 2, 2 }));

    /* odd split primes: cyclic quotients throughout */
    for (long d : { 13, 17, 29, 41 })
        for (long p : { 3, 5 }) {
            if (splitting_type(d, p) != prime_splitting::split)
                continue;
            for (long k = 1; k <= 6; ++k) {
                quad_oracle_result q = quad_ratio_oracle(d, p, k, prime_splitting::split, b);
                REQUIRE(q.structure.has_value());
                CHECK(q.structure->rank() <= 1);
                CHECK(q.structure->order() == q.ratio);
            }
        }

    CHECK_THROWS_AS(quad_ratio_oracle(5, 2, 2, prime_splitting::split, b), not_split);
    CHECK_THROWS_AS(quad_ratio_oracle(5, 5, 2, prime_splitting::split, b), ramified_prime);
}

TEST_CASE("quadratic inert oracle")
{
    budget b;
    quad_oracle_result r = quad_ratio_oracle(5, 2, 4, prime_splitting::inert, b);
    CHECK(r.ratio == 16);
    REQUIRE(r.structure.has_value());
    CHECK(r.structure->order() == 16);

    CHECK(quad_ratio_oracle(2, 3, 2, prime_splitting::inert, b).ratio == 6);

    /* N(u)=+1 at p=2 still has a measurable ratio (growth-only case) */
    quad_oracle_result g3 = quad_ratio_oracle(21, 2, 3, prime_splitting::inert, b);
    quad_oracle_result g4 = quad_ratio_oracle(21, 2, 4, prime_splitting::inert, b);
    CHECK(g4.ratio == 2 * g3.ratio); /* past v2(u^6-1) = 3 */

    CHECK_THROWS_AS(quad_ratio_oracle(17, 2, 2, prime_splitting::inert, b), not_inert);
}
