#include "rayclass/integers.hpp"

#include <cassert>

namespace rayclass {

Int isqrt(const Int& n)
{
    assert(n >= 0);
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_prime(const Int& n)
{
    return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

bool is_squarefree(const Int& d)
{
    if (d <= 1)
        return false;
    Int n = d;
    for (Int f = 2; f * f <= n; ++f) {
        if (n % f == 0) {
            n /= f;
            if (n % f == 0)
                return false;
        }
    }
    return true;
}

long int_valuation(const Int& n, const Int& p)
{
    assert(n != 0 && p > 1);
    Int rest;
    return static_cast<long>(
        mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

Int pow_int(const Int& base, unsigned long e)
{
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Int powmod(const Int& base, const Int& e, const Int& m)
{
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int invmod(const Int& a, const Int& m)
{
    Int r;
    int ok = mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    assert(ok);
    (void)ok;
    return r;
}

std::vector<std::pair<Int, unsigned long>> factorize(Int n)
{
    assert(n >= 1);
    std::vector<std::pair<Int, unsigned long>> out;
    for (Int f = 2; f * f <= n; f += (f == 2 ? 1 : 2)) {
        if (n % f == 0) {
            unsigned long e = 0;
            while (n % f == 0) {
                n /= f;
                ++e;
            }
            out.emplace_back(f, e);
        }
    }
    if (n > 1)
        out.emplace_back(n, 1);
    return out;
}

Int multiplicative_order(const Int& a, const Int& m,
                         const std::vector<std::pair<Int, unsigned long>>& order_multiple)
{
    Int ord = 1;
    for (const auto& [q, e] : order_multiple)
        ord *= pow_int(q, e);
    assert(powmod(a, ord, m) == 1);
    for (const auto& [q, e] : order_multiple) {
        for (unsigned long i = 0; i < e; ++i) {
            Int cand = ord / q;
            if (powmod(a, cand, m) == 1)
                ord = cand;
            else
                break;
        }
    }
    return ord;
}

} // namespace rayclass
