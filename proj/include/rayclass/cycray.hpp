#ifndef RAYCLASS_CYCRAY_HPP
#define RAYCLASS_CYCRAY_HPP

#include "rayclass/abgroup.hpp"
#include "rayclass/integers.hpp"

namespace rayclass {

/* Decomposition k-2 = k0 + level*(p-1) with 0 <= k0 <= p-2, for k >= 3. */
struct cyc_ray_params {
    Int p;
    long k;
    long k0;
    long level;
};

cyc_ray_params make_cyc_ray_params(const Int& p, long k);

/* Class-group part (input data) plus the computed p-part of Cl^(pi^k). */
struct ray_class_structure {
    ab_group class_part;
    ab_group p_part;
};

/* e with |Cl^(pi^k)| = |Cl| * p^e: 0 for k <= 2, else
 * floor(k/2) + floor((k-1)/(p-1)) - 1. Regular p only. */
long ray_order_exponent(const Int& p, long k);

/* Full structure for regular p: p-part is
 *   (Z/p^(level+1))^floor(k0/2) x (Z/p^level)^((p+1)/2 - floor(k0/2))   k0 != p-2
 *   (Z/p^(level+1))^((p-1)/2)   x (Z/p^level)                          k0 == p-2
 * with trivial factors dropped; trivial p-part for k <= 2. */
ray_class_structure ray_structure(const Int& p, long k, const ab_group& class_part);

/* Number of invariant factors of the p-part; (p+1)/2 for all k >= p+1. */
long p_rank(const Int& p, long k);

/* Predicted index [O^(pi^k) : O^(pi^(k+1))]: 1 if k odd or (p-1) | k, else p. */
Int filtration_jump_pattern(const Int& p, long k);

} // namespace rayclass

#endif
