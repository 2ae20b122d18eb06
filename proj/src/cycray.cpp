#include "rayclass/cycray.hpp"

#include <cassert>

#include "rayclass/cycfield.hpp"
#include "rayclass/errors.hpp"

namespace rayclass {

namespace {

void check_regular(const Int& p)
{
    auto [reg, bad] = is_regular(p);
    if (!reg)
        throw irregular_prime("p = " + p.get_str() + " is irregular; structure formulas "
                              "do not apply (use the oracle)", bad);
}

} // namespace

cyc_ray_params make_cyc_ray_params(const Int& p, long k)
{
    assert(k >= 3);
    long pm1 = static_cast<long>(p.get_ui()) - 1;
    long level = (k - 2) / pm1;
    long k0 = (k - 2) % pm1;
    assert(k0 + level * pm1 == k - 2 && 0 <= k0 && k0 <= pm1 - 1);
    return { p, k, k0, level };
}

long ray_order_exponent(const Int& p, long k)
{
    check_regular(p);
    assert(k >= 0);
    if (k <= 2)
        return 0;
    long pm1 = static_cast<long>(p.get_ui()) - 1;
    return k / 2 + (k - 1) / pm1 - 1;
}

ray_class_structure ray_structure(const Int& p, long k, const ab_group& class_part)
{
    check_regular(p);
    if (class_part.order() % p == 0)
        throw class_part_not_coprime("ray_structure: p divides the class part order");
    assert(k >= 0);
    if (k <= 2)
        return { class_part, ab_group() };

    cyc_ray_params pr = make_cyc_ray_params(p, k);
    long rank_all = (static_cast<long>(p.get_ui()) + 1) / 2;
    long high, low; /* multiplicities of p^(level+1) and p^level */
    if (pr.k0 != static_cast<long>(p.get_ui()) - 2) {
        high = pr.k0 / 2;
        low = rank_all - high;
    } else {
        high = (static_cast<long>(p.get_ui()) - 1) / 2;
        low = 1;
    }

    std::vector<Int> inv;
    if (pr.level >= 1) {
        Int f = pow_int(p, static_cast<unsigned long>(pr.level));
        for (long i = 0; i < low; ++i)
            inv.push_back(f);
    }
    if (high > 0) {
        Int f = pow_int(p, static_cast<unsigned long>(pr.level) + 1);
        for (long i = 0; i < high; ++i)
            inv.push_back(f);
    }
    ray_class_structure out{ class_part, ab_group(std::move(inv)) };
    assert(out.p_part.order() == pow_int(p, static_cast<unsigned long>(ray_order_exponent(p, k))));
    return out;
}

long p_rank(const Int& p, long k)
{
    return static_cast<long>(ray_structure(p, k, ab_group()).p_part.rank());
}

Int filtration_jump_pattern(const Int& p, long k)
{
    check_regular(p);
    assert(k >= 2);
    long pm1 = static_cast<long>(p.get_ui()) - 1;
    if (k % 2 == 1 || k % pm1 == 0)
        return 1;
    return p;
}

} // namespace rayclass
