#include "rayclass/quadray.hpp"

#include <cassert>

#include "rayclass/errors.hpp"
#include "rayclass/quadfield.hpp"

namespace rayclass {

namespace {

void attach_class_number(ray_order_result& r, const std::optional<Int>& h)
{
    if (h)
        r.with_class_number = r.ratio * *h;
}

} // namespace

ray_order_result split_ray_ratio(const Int& d, const Int& p, long k,
                                 const std::optional<Int>& class_number)
{
    if (splitting_type(d, p) != prime_splitting::split)
        throw not_split("split_ray_ratio: p is not split");
    ray_order_result r;
    if (k <= 0) { /* modulus 1: narrow Hilbert case */
        attach_class_number(r, class_number);
        return r;
    }
    quad_unit_invariants inv = unit_invariants(d, p);
    if (p == 2 && inv.norm_u == 1) {
        long v = valuation_at_split_prime(inv.u * inv.u - quad_elem::integer(d, 1), p);
        r.kind = ray_kind::upper_bound;
        r.ratio = pow_int(2, static_cast<unsigned long>(v - 2));
        attach_class_number(r, class_number);
        return r;
    }
    long e = std::min(static_cast<long>(k), inv.m) - 1;
    Int num = (p - 1) * pow_int(p, static_cast<unsigned long>(e));
    if (num % inv.s != 0)
        throw non_integer_ratio("split_ray_ratio: s does not divide (p-1)p^(min(k,m)-1)");
    r.ratio = num / inv.s;
    attach_class_number(r, class_number);
    return r;
}

Int split_abelian_bound(const Int& d)
{
    if (splitting_type(d, 2) != prime_splitting::split)
        throw not_split("split_abelian_bound: 2 is not split (need d = 1 mod 8)");
    quad_elem u = fundamental_unit(d);
    long v = valuation_at_split_prime(u * u - quad_elem::integer(d, 1), 2);
    long m = v - ((u.norm() == 1) ? 1 : 0);
    assert(m >= 1);
    return pow_int(2, static_cast<unsigned long>(m - 1));
}

ray_order_result inert_ray_ratio(const Int& d, const Int& p, long k,
                                 const std::optional<Int>& class_number)
{
    if (splitting_type(d, p) != prime_splitting::inert)
        throw not_inert("inert_ray_ratio: p is not inert");
    ray_order_result r;
    if (k <= 0) {
        attach_class_number(r, class_number);
        return r;
    }
    quad_unit_invariants inv = unit_invariants(d, p);
    if (p == 2 && inv.norm_u == 1)
        throw growth_only_case("inert_ray_ratio: p=2 with N(u)=+1 has no closed form; "
                               "use inert_growth_start and the oracle");
    long e = static_cast<long>(k) - 2 + std::min(static_cast<long>(k), inv.m);
    assert(e >= 0);
    Int num = (p * p - 1) * pow_int(p, static_cast<unsigned long>(e));
    if (num % inv.s != 0)
        throw non_integer_ratio("inert_ray_ratio: s does not divide (p^2-1)p^(k-2+min(k,m))");
    r.ratio = num / inv.s;
    attach_class_number(r, class_number);
    return r;
}

long inert_growth_start(const Int& d)
{
    if (splitting_type(d, 2) != prime_splitting::inert)
        throw not_inert("inert_growth_start: 2 is not inert (need d = 5 mod 8)");
    quad_elem u = fundamental_unit(d);
    if (u.norm() == -1)
        throw wrong_case("inert_growth_start: applies to N(u) = +1 only");
    long v = valuation_at_inert_prime(u.pow(6) - quad_elem::integer(d, 1), 2);
    assert(v >= 2);
    return v;
}

} // namespace rayclass
