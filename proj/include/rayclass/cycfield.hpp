#ifndef RAYCLASS_CYCFIELD_HPP
#define RAYCLASS_CYCFIELD_HPP

#include <utility>
#include <vector>

#include "rayclass/integers.hpp"

namespace rayclass {

/* Element of Z[zeta_p] on the power basis 1, zeta, ..., zeta^(p-2),
 * p an odd prime. Reduction mod Phi_p is eager. */
class cyc_elem {
    Int p_;
    std::vector<Int> c_; /* length p-1 */

public:
    explicit cyc_elem(const Int& p); /* zero */
    cyc_elem(const Int& p, std::vector<Int> coeffs); /* reduces length p or p-1 inputs */

    static cyc_elem integer(const Int& p, const Int& n);
    static cyc_elem zeta(const Int& p, unsigned long power = 1);

    const Int& p() const { return p_; }
    const std::vector<Int>& coeffs() const { return c_; }
    const Int& coeff(std::size_t i) const { return c_[i]; }

    bool is_zero() const;
    Int coeff_sum() const; /* evaluation at zeta = 1, i.e. the residue mod (1-zeta) lift */

    cyc_elem operator+(const cyc_elem&) const;
    cyc_elem operator-(const cyc_elem&) const;
    cyc_elem operator-() const;
    cyc_elem operator*(const cyc_elem&) const; /* cyc_mul */
    cyc_elem pow(unsigned long e) const;

    bool operator==(const cyc_elem&) const = default;
};

/* Exact division by pi = 1 - zeta. Throws not_divisible unless the
 * coefficient sum is 0 mod p. */
cyc_elem div_by_pi(const cyc_elem& y);

/* pi-adic valuation; equals v_p of the absolute norm. x != 0. */
long pi_valuation(const cyc_elem& x);

/* x = sum c_i pi^i mod pi^k with digits c_i in [0, p-1] */
struct pi_digits {
    Int p;
    long k;
    std::vector<long> digits;
};

pi_digits digit_expansion(const cyc_elem& x, long k);

/* sum digits[i] * pi^i as an exact element */
cyc_elem from_digits(const pi_digits& dg);

/* u_i = (zeta^i - 1)/(zeta - 1) = 1 + zeta + ... + zeta^(i-1), 2 <= i <= p-1 */
cyc_elem cyclotomic_unit(const Int& p, long i);

long smallest_primitive_root(const Int& p);

/* Bernoulli numbers, exact. Convention B_1 = -1/2; recurrence
 * sum_j C(n+1,j) B_j = 0 with memoization. */
class bernoulli_table {
    std::vector<Rat> b_;

public:
    const Rat& get(unsigned long n);
};

std::vector<Rat> bernoulli_numbers(unsigned long n_max);

/* Regularity of an odd prime: p divides no numerator of B_k, k even in
 * [2, p-3]. Returns the offending indices when irregular. */
std::pair<bool, std::vector<unsigned long>> is_regular(const Int& p);

/* smallest gamma >= 0 with p^(2 gamma + 1) not dividing B_{k p^gamma};
 * searches while k p^gamma <= index_cap */
unsigned long gamma_k(const Int& p, unsigned long k, unsigned long index_cap);

/* Relative class number h^- of Q(zeta_p) = order of Table 1's Cl column
 * (h+ = 1 in the supported range). Escalating-precision analytic product
 * with certified rounding. */
Int minus_class_number(const Int& p, const Int& cap = 200);

} // namespace rayclass

#endif
