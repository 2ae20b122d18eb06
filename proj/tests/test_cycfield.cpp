#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "rayclass/cycfield.hpp"
#include "rayclass/errors.hpp"
#include "test_support.hpp"

using namespace rayclass;

namespace {

cyc_elem random_elem(std::mt19937_64& rng, long p)
{
    std::vector<Int> c(static_cast<std::size_t>(p) - 1);
    for (auto& x : c)
        x = static_cast<long>(rng() % 21) - 10;
    return { p, std::move(c) };
}

cyc_elem pi_elem(long p) { return cyc_elem::integer(p, 1) - cyc_elem::zeta(p); }

} // namespace

TEST_CASE("multiplication identities")
{
    for (long p : { 3, 5, 7, 11 }) {
        cyc_elem one = cyc_elem::integer(p, 1);
        cyc_elem z = cyc_elem::zeta(p);
        std::mt19937_64 rng(p);
        cyc_elem x = random_elem(rng, p);
        CHECK(x * one == x);

        /* zeta * zeta^(p-2) = zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2)) */
        cyc_elem lhs = z * cyc_elem::zeta(p, static_cast<unsigned long>(p) - 2);
        std::vector<Int> allm1(static_cast<std::size_t>(p) - 1, Int(-1));
        CHECK(lhs == cyc_elem(p, allm1));

        /* total ramification: v(pi^(p-1)) = p-1 = v(p) */
        CHECK(pi_valuation(pi_elem(p).pow(static_cast<unsigned long>(p) - 1)) == p - 1);
        CHECK(pi_valuation(cyc_elem::integer(p, p)) == p - 1);
    }
    CHECK_THROWS_AS(cyc_elem::zeta(3) * cyc_elem::zeta(5), mismatched_prime);
}

TEST_CASE("division by pi")
{
    for (long p : { 3, 5, 7 }) {
        CHECK(div_by_pi(pi_elem(p)) == cyc_elem::integer(p, 1));

        /* p / pi: multiply back */
        cyc_elem z = div_by_pi(cyc_elem::integer(p, p));
        CHECK(pi_elem(p) * z == cyc_elem::integer(p, p));

        CHECK_THROWS_AS(div_by_pi(cyc_elem::integer(p, 1)), not_divisible);
    }
}

TEST_CASE("pi valuation basics")
{
    CHECK(pi_valuation(pi_elem(5)) == 1);
    CHECK(pi_valuation(cyc_elem::integer(5, 5)) == 4);
    CHECK(pi_valuation(cyclotomic_unit(5, 2)) == 0);
    CHECK_THROWS_AS(pi_valuation(cyc_elem(5)), zero_element);

    for (long p : { 3, 5, 7, 11 })
        for (long i = 2; i <= p - 1; ++i)
            CHECK(pi_valuation(cyclotomic_unit(p, i)) == 0);
}

TEST_CASE("pi valuation is additive and matches the resultant")
{
    std::mt19937_64 rng(31337);
    int done = 0;
    while (done < 500) {
        long p = std::vector<long>{ 3, 5, 7, 11 }[done % 4];
        cyc_elem a = random_elem(rng, p);
        cyc_elem b = random_elem(rng, p);
        if (a.is_zero() || b.is_zero())
            continue;
        cyc_elem ab = a * b;
        if (ab.is_zero())
            continue;
        CHECK(pi_valuation(ab) == pi_valuation(a) + pi_valuation(b));

        /* independent check through the norm: v_pi(a) = v_p(Res(Phi_p, a)) */
        if (done % 7 == 0) {
            std::vector<Int> phi(static_cast<std::size_t>(p), Int(1));
            std::vector<Int> av(a.coeffs());
            Int res = testsupport::poly_resultant(phi, av);
            REQUIRE(res != 0);
            CHECK(pi_valuation(a) == int_valuation(res, p));
        }
        ++done;
    }
}

TEST_CASE("digit expansion examples")
{
    pi_digits d1 = digit_expansion(cyc_elem::integer(5, 1), 4);
    CHECK(d1.digits == std::vector<long>({ 1, 0, 0, 0 }));

    pi_digits dz = digit_expansion(cyc_elem::zeta(5), 3);
    CHECK(dz.digits == std::vector<long>({ 1, 4, 0 }));

    pi_digits du = digit_expansion(cyclotomic_unit(5, 2), 3);
    CHECK(du.digits == std::vector<long>({ 2, 4, 0 }));
}

TEST_CASE("digit expansion round trip and uniqueness")
{
    std::mt19937_64 rng(906090);
    int done = 0;
    while (done < 500) {
        long p = std::vector<long>{ 3, 5, 7, 11 }[done % 4];
        long k = 1 + static_cast<long>(rng() % 12);
        cyc_elem x = random_elem(rng, p);
        pi_digits dg = digit_expansion(x, k);
        REQUIRE(dg.digits.size() == static_cast<std::size_t>(k));
        for (long c : dg.digits)
            CHECK((0 <= c && c < p));
        cyc_elem back = from_digits(dg);
        cyc_elem diff = back - x;
        if (!diff.is_zero())
            CHECK(pi_valuation(diff) >= k);

        /* same digits at depth k iff difference has valuation >= k */
        cyc_elem y = x + pi_elem(p).pow(static_cast<unsigned long>(k)) * random_elem(rng, p);
        CHECK(digit_expansion(y, k).digits == dg.digits);
        ++done;
    }
}

TEST_CASE("cyclotomic units")
{
    CHECK(cyclotomic_unit(5, 2) == cyc_elem::integer(5, 1) + cyc_elem::zeta(5));
    /* u_4 = 1+z+z^2+z^3 = -z^4 */
    CHECK(cyclotomic_unit(5, 4) == -cyc_elem::zeta(5, 4));
    CHECK_THROWS_AS(cyclotomic_unit(5, 1), index_out_of_range);
    CHECK_THROWS_AS(cyclotomic_unit(5, 5), index_out_of_range);

    /* u_lambda has order p-1 modulo pi: its residue is lambda itself */
    for (long p : { 5, 7, 11, 13 }) {
        long lambda = smallest_primitive_root(p);
        cyc_elem u = cyclotomic_unit(p, lambda);
        Int res = u.coeff_sum() % p;
        CHECK(res == lambda);
        CHECK(multiplicative_order(res, p, factorize(p - 1)) == p - 1);
    }
}

TEST_CASE("Bernoulli numbers")
{
    auto b = bernoulli_numbers(12);
    CHECK(b[0] == 1);
    CHECK(b[1] == Rat(-1, 2));
    CHECK(b[2] == Rat(1, 6));
    CHECK(b[3] == 0);
    CHECK(b[4] == Rat(-1, 30));
    CHECK(b[12] == Rat(-691, 2730));

    /* von Staudt-Clausen: denom(B_k) = prod of primes q with (q-1) | k */
    bernoulli_table t;
    for (unsigned long k = 2; k <= 60; k += 2) {
        Int den = 1;
        for (long q = 2; q <= static_cast<long>(k) + 1; ++q)
            if (is_prime(q) && k % static_cast<unsigned long>(q - 1) == 0)
                den *= q;
        CHECK(t.get(k).get_den() == den);
    }
}

TEST_CASE("regularity")
{
    auto [r23, i23] = is_regular(23);
    CHECK(r23);
    CHECK(i23.empty());

    auto [r37, i37] = is_regular(37);
    CHECK_FALSE(r37);
    CHECK(i37 == std::vector<unsigned long>{ 32 });

    auto [r59, i59] = is_regular(59);
    CHECK_FALSE(r59);
    CHECK(i59 == std::vector<unsigned long>{ 44 });

    auto [r67, i67] = is_regular(67);
    CHECK_FALSE(r67);
    CHECK(i67 == std::vector<unsigned long>{ 58 });

    auto [r3, i3] = is_regular(3);
    CHECK(r3);

    for (long p = 3; p < 70; p += 2) {
        if (!is_prime(p) || p == 37 || p == 59 || p == 67)
            continue;
        CHECK(is_regular(p).first);
    }
    CHECK_THROWS_AS(is_regular(2), not_odd_prime);
    CHECK_THROWS_AS(is_regular(9), not_odd_prime);
}

TEST_CASE("gamma_k")
{
    for (unsigned long k = 2; k <= 20; k += 2)
        CHECK(gamma_k(23, k, 100) == 0);
    CHECK(gamma_k(37, 2, 100) == 0);
    /* 37 | B_32 and 37^3 does not divide B_(32*37) = B_1184 */
    CHECK(gamma_k(37, 32, 2000) == 1);
    CHECK_THROWS_AS(gamma_k(37, 32, 100), cap_exceeded);
    CHECK_THROWS(gamma_k(23, 3, 100));
}

TEST_CASE("minus class numbers match the reference column")
{
    const std::pair<long, long> rows[] = { { 23, 3 },  { 29, 8 },   { 31, 9 },  { 37, 37 },
                                           { 41, 121 }, { 43, 211 }, { 47, 695 } };
    for (auto [p, h] : rows)
        CHECK(minus_class_number(p) == h);

    for (long p : { 3, 5, 7, 11, 13, 17, 19 })
        CHECK(minus_class_number(p) == 1);

    /* h-(p) is prime to p exactly for regular p in this range */
    for (long p : { 23, 29, 31, 41, 43, 47 })
        CHECK(minus_class_number(p) % p != 0);
    CHECK(minus_class_number(37) % 37 == 0);

    CHECK_THROWS_AS(minus_class_number(211), cap_exceeded);
    CHECK(minus_class_number(211, 300) > 0); /* raised cap */
    CHECK_THROWS_AS(minus_class_number(15), not_odd_prime);
}
