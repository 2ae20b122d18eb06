#ifndef RAYCLASS_QUADRAY_HPP
#define RAYCLASS_QUADRAY_HPP

#include <optional>

#include "rayclass/integers.hpp"

namespace rayclass {

enum class ray_kind { exact, upper_bound };

/* |Cl^m| = ratio * |Cl^1| (exact) or |Cl^m| <= ratio * |Cl^1| (upper_bound).
 * with_class_number carries ratio * h when a class number was supplied. */
struct ray_order_result {
    ray_kind kind = ray_kind::exact;
    Int ratio = 1;
    std::optional<Int> with_class_number;
};

/* Ray class number factor for modulus p1^k, split p.
 * Exact for p > 2 and for p = 2 with N(u) = -1; upper bound (2^(v(u^2-1)-2))
 * for p = 2 with N(u) = +1. */
ray_order_result split_ray_ratio(const Int& d, const Int& p, long k,
                                 const std::optional<Int>& class_number = std::nullopt);

/* 2^(m-1) with m = v_{p1}(u^2-1) - floor((N(u)+1)/2): the maximal abelian
 * 2-part degree over K when |Cl^1| = 1. Needs d = 1 mod 8. */
Int split_abelian_bound(const Int& d);

/* Ray class number factor for modulus (p)^k, inert p. Exact for p > 2 and
 * for p = 2 with N(u) = -1; throws growth_only_case for p = 2, N(u) = +1
 * (only the doubling law |Cl^{2^{k+1}}| = 2|Cl^{2^k}| is available). */
ray_order_result inert_ray_ratio(const Int& d, const Int& p, long k,
                                 const std::optional<Int>& class_number = std::nullopt);

/* v_2(u^6 - 1): from this k on the inert p=2, N(u)=+1 orders double. */
long inert_growth_start(const Int& d);

} // namespace rayclass

#endif
