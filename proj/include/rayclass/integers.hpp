#ifndef RAYCLASS_INTEGERS_HPP
#define RAYCLASS_INTEGERS_HPP

#include <gmpxx.h>

#include <utility>
#include <vector>

namespace rayclass {

using Int = mpz_class;
using Rat = mpq_class;

/* floor(sqrt(n)), n >= 0 */
Int isqrt(const Int& n);

bool is_prime(const Int& n);

/* d > 1 and no square factor */
bool is_squarefree(const Int& d);

/* largest v with p^v | n, for n != 0 */
long int_valuation(const Int& n, const Int& p);

Int pow_int(const Int& base, unsigned long e);

/* base^e mod m, m > 1 */
Int powmod(const Int& base, const Int& e, const Int& m);

Int invmod(const Int& a, const Int& m);

/* trial-division factorization, (prime, exponent) pairs in ascending order */
std::vector<std::pair<Int, unsigned long>> factorize(Int n);

/* multiplicative order of a modulo m given a factorization of a multiple
 * of the order (descends through prime divisors) */
Int multiplicative_order(const Int& a, const Int& m,
                         const std::vector<std::pair<Int, unsigned long>>& order_multiple);

} // namespace rayclass

#endif
