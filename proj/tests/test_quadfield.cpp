#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "rayclass/errors.hpp"
#include "rayclass/quadfield.hpp"

using namespace rayclass;

namespace {

quad_elem one(long d) { return quad_elem::integer(d, 1); }

quad_elem random_nonzero(std::mt19937_64& rng, long d)
{
    for (;;) {
        long x = static_cast<long>(rng() % 41) - 20;
        long y = static_cast<long>(rng() % 41) - 20;
        int q = 1;
        if (d % 4 == 1 && (rng() & 1)) {
            q = 2;
            if (((x ^ y) & 1) != 0)
                ++x;
        }
        quad_elem e(d, x, y, q);
        if (!e.is_zero())
            return e;
    }
}

} // namespace

TEST_CASE("fundamental units on documented fields")
{
    quad_elem u17 = fundamental_unit(17);
    CHECK(u17 == quad_elem(17, 4, 1, 1)); /* (8+2*sqrt17)/2 normalized */
    CHECK(u17.norm() == -1);

    quad_elem u5 = fundamental_unit(5);
    CHECK(u5 == quad_elem(5, 1, 1, 2));
    CHECK(u5.norm() == -1);

    quad_elem u3 = fundamental_unit(3);
    CHECK(u3 == quad_elem(3, 2, 1, 1));
    CHECK(u3.norm() == 1);

    CHECK_THROWS_AS(fundamental_unit(4), invalid_d);
    CHECK_THROWS_AS(fundamental_unit(12), invalid_d);
    CHECK_THROWS_AS(fundamental_unit(1), invalid_d);
}

TEST_CASE("Pell identity and minimality for d <= 100")
{
    for (long d = 2; d <= 100; ++d) {
        if (!is_squarefree(d))
            continue;
        CAPTURE(d);
        quad_elem u = fundamental_unit(d);
        Int q2 = Int(u.q()) * u.q();
        CHECK(u.x() * u.x() - u.y() * u.y() * d == u.norm() * q2);
        CHECK((u.norm() == 1 || u.norm() == -1));
        CHECK(u.sign(true) > 0);

        /* no smaller unit > 1: exhaustive over y up to u's y-coordinate */
        bool minimal = true;
        for (Int y = 1; y <= u.y(); ++y) {
            for (int q : { 1, 2 }) {
                if (q == 2 && d % 4 != 1)
                    continue;
                for (int sgn : { 1, -1 }) {
                    /* x^2 = y^2 d + sgn q^2 */
                    Int rhs = y * y * d + sgn * q * q;
                    if (rhs < 0)
                        continue;
                    Int x = isqrt(rhs);
                    if (x * x != rhs)
                        continue;
                    if (q == 2 && (x - y) % 2 != 0)
                        continue;
                    quad_elem cand(d, x, y, q);
                    /* cand is a unit > 1; it must not be smaller than u */
                    Int cn = cand.norm();
                    if ((cn == 1 || cn == -1) && (cand - one(d)).sign(true) > 0) {
                        quad_elem diff = cand - u;
                        if (diff.sign(true) < 0)
                            minimal = false;
                    }
                }
            }
        }
        CHECK(minimal);
    }
}

TEST_CASE("splitting types")
{
    CHECK(splitting_type(17, 2) == prime_splitting::split);
    CHECK(splitting_type(5, 2) == prime_splitting::inert);
    CHECK(splitting_type(5, 5) == prime_splitting::ramified);
    CHECK(splitting_type(3, 2) == prime_splitting::ramified);
    CHECK(splitting_type(13, 3) == prime_splitting::split);
    CHECK(splitting_type(2, 3) == prime_splitting::inert);
    CHECK_THROWS_AS(splitting_type(8, 3), invalid_d);
}

TEST_CASE("split roots: seeds, compatibility, determinism")
{
    /* 41 = 9 mod 16: seed 3 */
    CHECK(split_root(41, 2, 3) == 3);
    /* 17 = 1 mod 16: seed 1; the 2-adic root = 1 mod 8 is 9 mod 32 */
    CHECK(split_root(17, 2, 5) == 9);
    CHECK((split_root(17, 2, 5) * split_root(17, 2, 5) - 17) % 32 == 0);

    /* odd p: the smaller square root mod p */
    Int r = split_root(13, 3, 1);
    CHECK(r * r % 3 == 13 % 3);
    CHECK(r == std::min(r, Int(3 - r)));

    /* reduction compatibility across precisions */
    for (long dl : { 17L, 33L, 41L, 73L, 89L }) {
        for (long K = 1; K < 10; ++K) {
            Int lo = split_root(dl, 2, K);
            Int hi = split_root(dl, 2, K + 3);
            CHECK((hi - lo) % pow_int(2, static_cast<unsigned long>(K)) == 0);
            CHECK((hi * hi - dl) % pow_int(2, static_cast<unsigned long>(K) + 3) == 0);
        }
    }
    for (long K = 1; K < 8; ++K) {
        Int lo = split_root(13, 3, K);
        Int hi = split_root(13, 3, K + 2);
        CHECK((hi - lo) % pow_int(3, static_cast<unsigned long>(K)) == 0);
    }

    CHECK_THROWS_AS(split_root(5, 2, 3), not_split);
}

TEST_CASE("split valuation on the d=17 worked example")
{
    quad_elem u = fundamental_unit(17);
    quad_elem w = u * u - one(17); /* 32 + 8 sqrt(17) */
    CHECK(w == quad_elem(17, 32, 8, 1));
    CHECK(valuation_at_split_prime(w, 2) == 3);
    CHECK(valuation_at_split_prime(one(17), 2) == 0);
    CHECK(valuation_at_split_prime(quad_elem::integer(17, 2), 2) == 1);
    CHECK_THROWS_AS(valuation_at_split_prime(quad_elem(17, 0, 0, 1), 2), zero_element);
}

TEST_CASE("split valuation properties")
{
    std::mt19937_64 rng(2024);
    int done = 0;
    while (done < 500) {
        long d = 17; /* rotate through split-at-2 and split-at-3 fields */
        Int p = 2;
        switch (done % 4) {
        case 0: d = 17, p = 2; break;
        case 1: d = 33, p = 2; break;
        case 2: d = 13, p = 3; break;
        case 3: d = 11, p = 5; break; /* 11 = 1 mod 5, QR: 4^2=16=5*3+1 */
        }
        if (splitting_type(d, p) != prime_splitting::split)
            continue;
        quad_elem a = random_nonzero(rng, d);
        quad_elem b = random_nonzero(rng, d);
        quad_elem ab = a * b;
        if (ab.is_zero())
            continue;
        /* additivity */
        CHECK(valuation_at_split_prime(ab, p) ==
              valuation_at_split_prime(a, p) + valuation_at_split_prime(b, p));
        /* conjugate sum = v_p of the norm */
        Int nrm = a.norm();
        long vs = valuation_at_split_prime(a, p) + valuation_at_split_prime(a.conj(), p);
        CHECK(vs == (nrm == 0 ? 0 : int_valuation(nrm, p)));
        ++done;
    }
}

TEST_CASE("inert valuation")
{
    quad_elem u5 = fundamental_unit(5);
    quad_elem w = u5.pow(6) - one(5);
    CHECK(w == quad_elem(5, 8, 4, 1));
    CHECK(valuation_at_inert_prime(w, 2) == 2);
    CHECK(valuation_at_inert_prime(one(5), 2) == 0);
    CHECK(valuation_at_inert_prime(quad_elem::integer(5, 4), 2) == 2);
    CHECK_THROWS_AS(valuation_at_inert_prime(quad_elem(5, 0, 0, 1), 2), zero_element);

    std::mt19937_64 rng(55);
    int done = 0;
    while (done < 500) {
        long d = (done % 2) ? 5 : 2;
        Int p = (done % 2) ? 2 : 3;
        quad_elem a = random_nonzero(rng, d);
        quad_elem b = random_nonzero(rng, d);
        quad_elem ab = a * b;
        if (ab.is_zero())
            continue;
        CHECK(valuation_at_inert_prime(ab, p) ==
              valuation_at_inert_prime(a, p) + valuation_at_inert_prime(b, p));
        ++done;
    }
}

TEST_CASE("unit invariants")
{
    quad_unit_invariants i52 = unit_invariants(5, 2);
    CHECK(i52.norm_u == -1);
    CHECK(i52.s == 3);
    CHECK(i52.m == 2);

    quad_unit_invariants i172 = unit_invariants(17, 2);
    CHECK(i172.s == 1);
    CHECK(i172.m == 3);

    quad_unit_invariants i23 = unit_invariants(2, 3);
    CHECK(i23.s == 4);
    CHECK(i23.m == 1);

    CHECK(i52.u0.totally_positive());
    CHECK(i172.u0.totally_positive());
    CHECK(i23.u0.totally_positive());
    CHECK_THROWS_AS(unit_invariants(5, 5), ramified_prime);
}

TEST_CASE("u0 is totally positive for mixed-norm fields")
{
    for (long d : { 2, 3, 5, 6, 7, 10, 11, 13, 17, 19, 21, 29, 33 }) {
        quad_elem u = fundamental_unit(d);
        quad_elem u0 = (u.norm() == 1) ? u : u * u;
        CHECK(u0.totally_positive());
    }
}

TEST_CASE("narrow class numbers")
{
    CHECK(narrow_class_number(5) == 1);
    CHECK(narrow_class_number(17) == 1);
    CHECK(narrow_class_number(3) == 2); /* N(u) = +1 doubles the count */
    /* h+ = h * (2 - [N(u) = -1]) on class-number-one fields */
    for (long d : { 2, 7, 11, 13, 29 }) {
        quad_elem u = fundamental_unit(d);
        Int expect = (u.norm() == -1) ? 1 : 2;
        CHECK(narrow_class_number(d) == expect);
    }
    /* d = 10: h = 2, N(u) = -1 (u = 3 + sqrt10), so h+ = 2 */
    CHECK(fundamental_unit(10).norm() == -1);
    CHECK(narrow_class_number(10) == 2);
}

TEST_CASE("lemma sweeps, reduced range (full range in the acceptance suite)")
{
    for (long d = 17; d <= 300; d += 8) {
        if (!is_squarefree(d))
            continue;
        CAPTURE(d);
        quad_elem u = fundamental_unit(d);
        CHECK(valuation_at_split_prime(u * u - one(d), 2) >= 2);
    }
    for (long d = 5; d <= 300; d += 8) {
        if (!is_squarefree(d))
            continue;
        quad_elem u = fundamental_unit(d);
        if (u.norm() != -1)
            continue;
        CAPTURE(d);
        quad_unit_invariants inv = unit_invariants(d, 2);
        CHECK(inv.m == 2);
        CHECK(inv.s == ((inv.u.q() == 2) ? 3 : 1));
    }
}
