#ifndef RAYCLASS_ORACLE_HPP
#define RAYCLASS_ORACLE_HPP

#include <optional>
#include <string>
#include <vector>

#include "rayclass/abgroup.hpp"
#include "rayclass/cycfield.hpp"
#include "rayclass/errors.hpp"
#include "rayclass/quadfield.hpp"

namespace rayclass {

/* Deterministic work guard, counted in ring multiplications. */
class budget {
    unsigned long limit_;
    mutable unsigned long used_ = 0;

public:
    explicit budget(unsigned long limit = 10'000'000UL) : limit_(limit) {}

    void tick(unsigned long n = 1) const
    {
        used_ += n;
        if (used_ > limit_)
            throw budget_exceeded("oracle budget of " + std::to_string(limit_) +
                                  " ring multiplications exceeded");
    }
    unsigned long used() const { return used_; }
    unsigned long limit() const { return limit_; }
};

/* Generators and relation lattice of (O/pi^k)^* for O = Z[zeta_p]:
 * gens[0] is the Teichmuller lift of the smallest primitive root,
 * gens[i] = 1 + pi^i for 1 <= i <= k-1. Elements are kept in the canonical
 * digit-reduced form mod pi^k. */
struct local_unit_presentation {
    Int p;
    long k;
    std::string context;
    std::vector<cyc_elem> gens;
    std::vector<cyc_elem> gen_invs;
    std::vector<cyc_elem> pi_pows;   /* 1, pi, ..., pi^(k-1), exact */
    std::vector<long> residue_dlog;  /* F_p^* dlog base the primitive root */
    int_mat relations;

    Int group_order() const; /* (p-1) p^(k-1) */
    ab_group group() const;
    cyc_elem reduce(const cyc_elem& x) const;
    cyc_elem mul(const cyc_elem& a, const cyc_elem& b, const budget& b_) const;
};

local_unit_presentation local_unit_presentation_cyc(const Int& p, long k,
                                                    const budget& b = budget());

/* Exponent vector e with prod gens[j]^e[j] = x mod pi^k (defined modulo the
 * relation lattice). x must be a unit. */
std::vector<Int> dlog(const local_unit_presentation& pres, const cyc_elem& x,
                      const budget& b = budget());

/* (O/pi^k)^* modulo the image of the global units {-1, zeta, u_2, ..,
 * u_{(p-1)/2}}: the p-part of Cl^(pi^k) for regular p with h+ = 1.
 * Supported primes: 3, 5, 7. */
ab_group cyc_quotient_oracle(const Int& p, long k, const budget& b = budget());

/* Measured index [O^(pi^k) : O^(pi^(k+1))], in {1, p}. */
Int filtration_jump_oracle(const Int& p, long k, const budget& b = budget());

/* Same quotient as cyc_quotient_oracle by explicit subgroup closure and
 * element-order census over digit representatives; p^k <= 3^8. */
ab_group tiny_closure_crosscheck(const Int& p, long k);

struct quad_oracle_result {
    Int ratio;                        /* |(O/m)^*| / |<image of u0>| */
    std::optional<ab_group> structure; /* the quotient group, when computed */
};

/* Brute-force side of the exact sequence for Q(sqrt(d)): the quotient of
 * (O/m)^* by the image of the totally positive fundamental unit. */
quad_oracle_result quad_ratio_oracle(const Int& d, const Int& p, long k,
                                     prime_splitting kind, const budget& b = budget());

} // namespace rayclass

#endif
