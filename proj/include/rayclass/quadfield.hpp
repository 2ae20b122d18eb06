#ifndef RAYCLASS_QUADFIELD_HPP
#define RAYCLASS_QUADFIELD_HPP

#include <utility>

#include "rayclass/integers.hpp"

namespace rayclass {

/* Element (x + y*sqrt(d))/q of the maximal order of Q(sqrt(d)), d squarefree > 1.
 * q is 1 or 2; q = 2 only for d = 1 mod 4 and x = y mod 2. */
class quad_elem {
    Int d_;
    Int x_, y_;
    int q_ = 1;

    void normalize();

public:
    quad_elem(Int d, Int x, Int y, int q = 1);
    static quad_elem integer(const Int& d, const Int& n) { return { d, n, 0, 1 }; }

    const Int& d() const { return d_; }
    const Int& x() const { return x_; }
    const Int& y() const { return y_; }
    int q() const { return q_; }

    bool is_zero() const { return x_ == 0 && y_ == 0; }
    bool is_rational() const { return y_ == 0; }

    quad_elem conj() const { return { d_, x_, -y_, q_ }; }
    Int norm() const; /* (x^2 - y^2 d)/q^2, exact */
    Int trace() const;

    quad_elem operator+(const quad_elem&) const;
    quad_elem operator-(const quad_elem&) const;
    quad_elem operator*(const quad_elem&) const;
    quad_elem operator-() const { return { d_, -x_, -y_, q_ }; }
    quad_elem pow(unsigned long e) const;

    /* sign of the real embedding sending sqrt(d) to +sqrt(d) (or -sqrt(d)) */
    int sign(bool positive_root = true) const;
    bool totally_positive() const { return sign(true) > 0 && sign(false) > 0; }

    /* coordinates (m, n) with value m + n*omega, omega = (1+sqrt(d))/2 for
     * d = 1 mod 4 and omega = sqrt(d) otherwise */
    std::pair<Int, Int> integral_coords() const;

    bool operator==(const quad_elem&) const = default;
};

enum class prime_splitting { split, inert, ramified };

/* Kronecker symbol of the field discriminant at p; for p = 2 this reads
 * d mod 8 (1: split, 5: inert, else ramified). */
prime_splitting splitting_type(const Int& d, const Int& p);

/* Smallest unit > 1 of the maximal order (continued fraction of sqrt(d),
 * resp. (1+sqrt(d))/2 for d = 1 mod 4). |norm| = 1. */
quad_elem fundamental_unit(const Int& d);

/* Canonical square root r of d mod p^K attached to the prime p1 = (p, sqrt(d)-r).
 * Seed: smallest root mod p (odd p), resp. the 2-adic root class mod 8 (p=2).
 * Outputs at different K are compatible under reduction. */
Int split_root(const Int& d, const Int& p, long precision);

/* Valuation at p1 (split case), computed through the split embedding with
 * iterative precision deepening. The conjugate prime's valuation is
 * valuation_at_split_prime(x.conj(), p). */
long valuation_at_split_prime(const quad_elem& x, const Int& p);

/* Valuation at the inert prime ideal (p): content valuation. */
long valuation_at_inert_prime(const quad_elem& x, const Int& p);

struct quad_unit_invariants {
    quad_elem u;   /* fundamental unit */
    int norm_u;    /* +1 or -1 */
    quad_elem u0;  /* totally positive generator: u if N(u)=+1, else u^2 */
    Int s;         /* order of u0 in the residue field at the selected prime */
    long m;        /* valuation of u0^s - 1 at the selected prime, >= 1 */
};

/* s_{d,p} and m_{d,p} for the canonical prime above p (split or inert). */
quad_unit_invariants unit_invariants(const Int& d, const Int& p);

/* Narrow class number: number of cycles of reduced primitive indefinite
 * forms of the field discriminant. */
Int narrow_class_number(const Int& d);

/* throws invalid_d unless d squarefree and > 1 */
void check_d(const Int& d);

/* image of x in O/p1^K = Z/p^K through sqrt(d) -> split_root(d, p, .) */
Int split_embed(const quad_elem& x, const Int& p, long K);

/* O/p^k on the basis 1, omega (omega = (1+sqrt(d))/2 or sqrt(d)); the
 * residue ring of an inert prime power */
struct quad_residue_ring {
    Int d, mod;
    Int wt, wn; /* omega^2 = wt*omega + wn */

    quad_residue_ring(const Int& d_, const Int& mod_);

    using elem = std::pair<Int, Int>;

    elem reduce(const Int& m, const Int& n) const;
    elem from_quad(const quad_elem& x) const;
    elem one() const { return { 1, 0 }; }
    elem mul(const elem& a, const elem& b) const;
    elem pow(elem base, Int e) const;
    elem inverse(const elem& a) const; /* a must be a unit */
    Int norm(const elem& a) const;

    Int order(const elem& a, const std::vector<std::pair<Int, unsigned long>>& order_multiple) const;
};

} // namespace rayclass

#endif
