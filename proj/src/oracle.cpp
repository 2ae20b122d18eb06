#include "rayclass/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <queue>
#include <set>

namespace rayclass {

/* ---------------- cyclotomic local units ---------------- */

Int local_unit_presentation::group_order() const
{
    return (p - 1) * pow_int(p, static_cast<unsigned long>(k) - 1);
}

ab_group local_unit_presentation::group() const
{
    return group_from_relations_mod(gens.size(), relations, group_order());
}

cyc_elem local_unit_presentation::reduce(const cyc_elem& x) const
{
    pi_digits dg = digit_expansion(x, k);
    cyc_elem acc(p);
    for (long i = 0; i < k; ++i) {
        long c = dg.digits[static_cast<std::size_t>(i)];
        if (c != 0)
            acc = acc + cyc_elem::integer(p, c) * pi_pows[static_cast<std::size_t>(i)];
    }
    return acc;
}

cyc_elem local_unit_presentation::mul(const cyc_elem& a, const cyc_elem& b_,
                                      const budget& guard) const
{
    guard.tick();
    return reduce(a * b_);
}

namespace {

cyc_elem pow_mod(const local_unit_presentation& pres, const cyc_elem& base, unsigned long e,
                 const budget& b)
{
    cyc_elem r = pres.reduce(cyc_elem::integer(pres.p, 1));
    cyc_elem s = base;
    while (e) {
        if (e & 1)
            r = pres.mul(r, s, b);
        s = pres.mul(s, s, b);
        e >>= 1;
    }
    return r;
}

cyc_elem unit_inverse(const local_unit_presentation& pres, const cyc_elem& x, const budget& b)
{
    Int r0 = x.coeff_sum() % pres.p;
    if (r0 < 0)
        r0 += pres.p;
    if (r0 == 0)
        throw not_a_unit("unit_inverse: element is divisible by pi");
    const cyc_elem one = pres.reduce(cyc_elem::integer(pres.p, 1));
    const cyc_elem two = cyc_elem::integer(pres.p, 2);
    cyc_elem z = cyc_elem::integer(pres.p, invmod(r0, pres.p));
    for (int it = 0; it < 40; ++it) {
        cyc_elem w = pres.mul(z, x, b);
        if (w == one)
            return z;
        z = pres.mul(z, two - w, b); /* z(2 - xz): error squares each pass */
    }
    throw error("unit_inverse: no convergence");
}

std::vector<Int> dlog_impl(const local_unit_presentation& pres, const cyc_elem& x,
                           const budget& b)
{
    cyc_elem cur = pres.reduce(x);
    Int r0 = cur.coeff_sum() % pres.p;
    if (r0 < 0)
        r0 += pres.p;
    if (r0 == 0)
        throw not_a_unit("dlog: element is divisible by pi");

    std::vector<Int> e(pres.gens.size(), Int(0));
    long a0 = pres.residue_dlog[r0.get_ui()];
    e[0] = a0;
    if (a0 != 0)
        cur = pres.mul(cur, pow_mod(pres, pres.gen_invs[0], static_cast<unsigned long>(a0), b), b);

    for (long i = 1; i < pres.k; ++i) {
        pi_digits dg = digit_expansion(cur, i + 1);
        assert(dg.digits[0] == 1);
        long d = dg.digits[static_cast<std::size_t>(i)];
        if (d != 0) {
            e[static_cast<std::size_t>(i)] = d;
            cur = pres.mul(cur,
                           pow_mod(pres, pres.gen_invs[static_cast<std::size_t>(i)],
                                   static_cast<unsigned long>(d), b),
                           b);
        }
    }
    assert(cur == pres.reduce(cyc_elem::integer(pres.p, 1)));
    return e;
}

} // namespace

local_unit_presentation local_unit_presentation_cyc(const Int& p, long k, const budget& b)
{
    assert(k >= 1);
    local_unit_presentation pres;
    pres.p = p;
    pres.k = k;
    pres.context = "cyclotomic p=" + p.get_str() + " k=" + std::to_string(k);

    const cyc_elem pi = cyc_elem::integer(p, 1) - cyc_elem::zeta(p);
    pres.pi_pows.reserve(static_cast<std::size_t>(k));
    cyc_elem pw = cyc_elem::integer(p, 1);
    for (long i = 0; i < k; ++i) {
        pres.pi_pows.push_back(pw);
        pw = pw * pi;
    }

    /* residue field dlog base lambda */
    const long lambda = smallest_primitive_root(p);
    pres.residue_dlog.assign(p.get_ui(), -1);
    {
        Int v = 1;
        for (unsigned long j = 0; j < p.get_ui() - 1; ++j) {
            pres.residue_dlog[v.get_ui()] = static_cast<long>(j);
            v = v * lambda % p;
        }
    }

    /* Teichmuller lift of lambda: iterate x -> x^p to the fixed point */
    cyc_elem t = pres.reduce(cyc_elem::integer(p, lambda));
    for (long it = 0;; ++it) {
        cyc_elem tp = pow_mod(pres, t, p.get_ui(), b);
        if (tp == t)
            break;
        t = tp;
        assert(it < k + 8);
    }
    pres.gens.push_back(t);
    for (long i = 1; i < k; ++i)
        pres.gens.push_back(
            pres.reduce(cyc_elem::integer(p, 1) + pres.pi_pows[static_cast<std::size_t>(i)]));

    pres.gen_invs.reserve(pres.gens.size());
    for (const cyc_elem& g : pres.gens)
        pres.gen_invs.push_back(unit_inverse(pres, g, b));

    /* relations: t^(p-1) = 1, and each (1+pi^i)^p expressed through deeper
     * generators; the order-bound rows p^(c_i) e_i with c_i = ceil((k-i)/(p-1))
     * are consequences of those and pin the generator orders */
    pres.relations = int_mat(0, pres.gens.size());
    {
        std::vector<Int> row(pres.gens.size(), Int(0));
        row[0] = p - 1;
        assert(pow_mod(pres, pres.gens[0], p.get_ui() - 1, b) ==
               pres.reduce(cyc_elem::integer(p, 1)));
        pres.relations.append_row(row);
    }
    for (long i = 1; i < k; ++i) {
        cyc_elem w = pow_mod(pres, pres.gens[static_cast<std::size_t>(i)], p.get_ui(), b);
        std::vector<Int> coords = dlog_impl(pres, w, b);
        assert(coords[0] == 0);
        for (long j = 1; j <= i; ++j)
            assert(coords[static_cast<std::size_t>(j)] == 0);
        std::vector<Int> row(pres.gens.size(), Int(0));
        for (std::size_t j = 0; j < coords.size(); ++j)
            row[j] = -coords[j];
        row[static_cast<std::size_t>(i)] += p;
        pres.relations.append_row(row);
    }
    const long pm1 = static_cast<long>(p.get_ui()) - 1;
    for (long i = 1; i < k; ++i) {
        long c = (k - i + pm1 - 1) / pm1; /* ceil((k-i)/(p-1)) */
        std::vector<Int> row(pres.gens.size(), Int(0));
        row[static_cast<std::size_t>(i)] = pow_int(p, static_cast<unsigned long>(c));
        pres.relations.append_row(row);
    }

    assert(pres.group().order() ==
           (p - 1) * pow_int(p, static_cast<unsigned long>(k) - 1));
    return pres;
}

std::vector<Int> dlog(const local_unit_presentation& pres, const cyc_elem& x, const budget& b)
{
    if (x.p() != pres.p)
        throw mismatched_prime("dlog: element prime differs from presentation");
    return dlog_impl(pres, x, b);
}

/* ---------------- global unit generators ---------------- */

namespace {

std::vector<cyc_elem> global_unit_generators(const Int& p)
{
    std::vector<cyc_elem> gens;
    gens.push_back(cyc_elem::integer(p, -1));
    gens.push_back(cyc_elem::zeta(p));
    for (long i = 2; 2 * i <= static_cast<long>(p.get_ui()) - 1; ++i)
        gens.push_back(cyclotomic_unit(p, i));
    return gens;
}

} // namespace

ab_group cyc_quotient_oracle(const Int& p, long k, const budget& b)
{
    if (p != 3 && p != 5 && p != 7)
        throw unsupported_prime("cyc_quotient_oracle: supported primes are 3, 5, 7 "
                                "(regular, h+ = 1 verified)");
    assert(k >= 1);
    local_unit_presentation pres = local_unit_presentation_cyc(p, k, b);
    std::vector<std::vector<Int>> images;
    for (const cyc_elem& g : global_unit_generators(p))
        images.push_back(dlog_impl(pres, g, b));
    ab_group q = quotient_by_subgroup_mod(pres.gens.size(), pres.relations, images,
                                          pres.group_order());
    for (const Int& f : q.invariant_factors())
        assert(f == pow_int(p, static_cast<unsigned long>(int_valuation(f, p))));
    return q;
}

Int filtration_jump_oracle(const Int& p, long k, const budget& b)
{
    assert(k >= 2);
    Int q_lo = cyc_quotient_oracle(p, k, b).order();
    Int q_hi = cyc_quotient_oracle(p, k + 1, b).order();
    /* |im_j| = (p-1)p^(j-1)/q_j; the index is |im_{k+1}|/|im_k| */
    Int idx = p * q_lo / q_hi;
    assert(idx * q_hi == p * q_lo);
    assert(idx == 1 || idx == p);
    return idx;
}

/* ---------------- tiny closure crosscheck ---------------- */

ab_group tiny_closure_crosscheck(const Int& p, long k)
{
    assert(k >= 1);
    Int sz = pow_int(p, static_cast<unsigned long>(k));
    if (sz > 6561)
        throw cap_exceeded("tiny_closure_crosscheck: p^k exceeds 3^8");
    const unsigned long n = sz.get_ui();
    const unsigned long pu = p.get_ui();

    /* decode every residue id (digits base p) into an exact element */
    const cyc_elem pi = cyc_elem::integer(p, 1) - cyc_elem::zeta(p);
    std::vector<cyc_elem> pi_pows;
    {
        cyc_elem pw = cyc_elem::integer(p, 1);
        for (long i = 0; i < k; ++i) {
            pi_pows.push_back(pw);
            pw = pw * pi;
        }
    }
    std::vector<cyc_elem> elems;
    elems.reserve(n);
    for (unsigned long id = 0; id < n; ++id) {
        cyc_elem acc(p);
        unsigned long rest = id;
        for (long i = 0; i < k; ++i) {
            unsigned long c = rest % pu;
            rest /= pu;
            if (c != 0)
                acc = acc + cyc_elem::integer(p, c) * pi_pows[static_cast<std::size_t>(i)];
        }
        elems.push_back(acc);
    }

    auto to_id = [&](const cyc_elem& x) {
        pi_digits dg = digit_expansion(x, k);
        unsigned long id = 0;
        for (long i = k - 1; i >= 0; --i)
            id = id * pu + static_cast<unsigned long>(dg.digits[static_cast<std::size_t>(i)]);
        return id;
    };
    auto mul_id = [&](unsigned long a, unsigned long b) { return to_id(elems[a] * elems[b]); };

    /* subgroup H = image of the global units */
    std::set<unsigned long> H;
    std::queue<unsigned long> work;
    std::vector<unsigned long> gen_ids;
    for (const cyc_elem& g : global_unit_generators(p))
        gen_ids.push_back(to_id(g));
    H.insert(to_id(cyc_elem::integer(p, 1)));
    work.push(*H.begin());
    while (!work.empty()) {
        unsigned long h = work.front();
        work.pop();
        for (unsigned long g : gen_ids) {
            unsigned long t = mul_id(h, g);
            if (H.insert(t).second)
                work.push(t);
        }
    }

    /* coset enumeration over unit ids */
    const unsigned long units = (pu - 1) * n / pu;
    std::vector<unsigned long> coset_of(n, n); /* id -> rep, n = unassigned */
    std::vector<unsigned long> reps;
    for (unsigned long id = 0; id < n; ++id) {
        if (id % pu == 0 || coset_of[id] != n)
            continue;
        reps.push_back(id);
        for (unsigned long h : H)
            coset_of[mul_id(id, h)] = id;
    }
    assert(reps.size() * H.size() == units);

    /* element-order census of the quotient decides the structure */
    const unsigned long nc = reps.size();
    long rmax = 0;
    {
        unsigned long t = nc;
        while (t > 1) {
            assert(t % pu == 0);
            t /= pu;
            ++rmax;
        }
    }
    std::vector<long> rj(static_cast<std::size_t>(rmax) + 1, 0); /* log_p N_j */
    for (long j = 0; j <= rmax; ++j) {
        unsigned long cnt = 0;
        for (unsigned long x : reps) {
            unsigned long y = x;
            for (long t = 0; t < j; ++t) { /* y = x^(p^j) by iterated p-th powers */
                unsigned long acc = y;
                for (unsigned long s = 1; s < pu; ++s)
                    acc = mul_id(acc, y);
                y = acc;
            }
            if (H.count(y))
                ++cnt;
        }
        long lg = 0;
        while (cnt > 1) {
            assert(cnt % pu == 0);
            cnt /= pu;
            ++lg;
        }
        rj[static_cast<std::size_t>(j)] = lg;
    }
    std::vector<Int> inv;
    for (long j = rmax; j >= 1; --j) {
        long with_ge_j = rj[static_cast<std::size_t>(j)] - rj[static_cast<std::size_t>(j) - 1];
        long with_ge_j1 = (j + 1 <= rmax)
                              ? rj[static_cast<std::size_t>(j) + 1] - rj[static_cast<std::size_t>(j)]
                              : 0;
        long exactly_j = with_ge_j - with_ge_j1;
        for (long c = 0; c < exactly_j; ++c)
            inv.insert(inv.begin(), pow_int(p, static_cast<unsigned long>(j)));
    }
    return ab_group(std::move(inv));
}

/* ---------------- quadratic oracle ---------------- */

namespace {

/* dlog of x = 1 mod 4 to base 5 in (Z/2^k)^*, k >= 3 */
Int dlog_base5(Int x, long k)
{
    Int mod = pow_int(2, static_cast<unsigned long>(k));
    Int t = 0;
    Int cur = x % mod;
    Int g = 5;
    for (long j = 0; j + 3 <= k; ++j) {
        Int block = pow_int(2, static_cast<unsigned long>(j) + 3);
        if ((cur - 1) % block != 0) {
            t += pow_int(2, static_cast<unsigned long>(j));
            cur = cur * invmod(g, mod) % mod;
        }
        g = g * g % mod;
    }
    assert(cur == 1);
    return t;
}

ab_group split2_structure(const Int& img, long k, const Int& expect_order)
{
    if (k <= 1)
        return ab_group();
    Int mod = pow_int(2, static_cast<unsigned long>(k));
    if (k == 2)
        return img % 4 == 1 ? ab_group({ 2 }) : ab_group();
    Int e = 0, x = img % mod;
    if (x % 4 == 3) {
        e = 1;
        x = mod - x;
    }
    Int t = dlog_base5(x, k);
    int_mat rel(0, 2);
    rel.append_row({ 2, 0 });
    rel.append_row({ 0, pow_int(2, static_cast<unsigned long>(k) - 2) });
    ab_group q = quotient_by_subgroup_mod(2, rel, { { e, t } }, mod / 2);
    assert(q.order() == expect_order);
    return q;
}

/* presentation of (O/p^k)^* for inert p, mirroring the cyclotomic one with
 * two principal-unit generators per level */
struct inert_pres {
    quad_residue_ring R;
    Int p;
    long k;
    std::vector<quad_residue_ring::elem> gens, invs;
    int_mat rel;
    std::map<quad_residue_ring::elem, long> f_dlog;
    quad_residue_ring Rp; /* residue field */

    inert_pres(const Int& d, const Int& p_, long k_, const budget& b)
        : R(d, pow_int(p_, static_cast<unsigned long>(k_))), p(p_), k(k_), Rp(d, p_)
    {
        const Int q2 = p * p - 1;
        auto fac = factorize(q2);

        /* generator of F_{p^2}^* */
        quad_residue_ring::elem g2{ 0, 0 };
        bool found = false;
        for (Int m = 0; m < p && !found; ++m)
            for (Int nn = 0; nn < p && !found; ++nn) {
                if (m == 0 && nn == 0)
                    continue;
                quad_residue_ring::elem cand{ m, nn };
                b.tick(2 * mpz_sizeinbase(q2.get_mpz_t(), 2));
                if (Rp.order(cand, fac) == q2) {
                    g2 = cand;
                    found = true;
                }
            }
        assert(found);

        /* residue-field dlog table */
        {
            quad_residue_ring::elem v = Rp.one();
            for (Int j = 0; j < q2; ++j) {
                f_dlog[v] = static_cast<long>(j.get_ui());
                v = Rp.mul(v, g2);
                b.tick();
            }
        }

        /* Teichmuller lift via x -> x^(p^2) */
        quad_residue_ring::elem t = R.reduce(g2.first, g2.second);
        for (long it = 0;; ++it) {
            b.tick(2 * mpz_sizeinbase(Int(p * p).get_mpz_t(), 2));
            auto tp = R.pow(t, p * p);
            if (tp == t)
                break;
            t = tp;
            assert(it < k + 8);
        }
        gens.push_back(t);
        for (long i = 1; i < k; ++i) {
            Int pi = pow_int(p, static_cast<unsigned long>(i));
            gens.push_back(R.reduce(1 + pi, 0));
            gens.push_back(R.reduce(1, pi));
        }
        for (const auto& g : gens)
            invs.push_back(R.inverse(g));

        rel = int_mat(0, gens.size());
        {
            std::vector<Int> row(gens.size(), Int(0));
            row[0] = q2;
            assert(R.pow(t, q2) == R.one());
            rel.append_row(row);
        }
        for (std::size_t gi = 1; gi < gens.size(); ++gi) {
            long level = 1 + static_cast<long>(gi - 1) / 2;
            b.tick(2 * mpz_sizeinbase(p.get_mpz_t(), 2));
            auto w = R.pow(gens[gi], p);
            std::vector<Int> coords = dlog(w, b);
            assert(coords[0] == 0);
            for (long j = 1; j <= level; ++j) {
                assert(coords[static_cast<std::size_t>(2 * j - 1)] == 0);
                assert(coords[static_cast<std::size_t>(2 * j)] == 0);
            }
            std::vector<Int> row(gens.size(), Int(0));
            for (std::size_t j = 0; j < coords.size(); ++j)
                row[j] = -coords[j];
            row[gi] += p;
            rel.append_row(row);
        }
        for (std::size_t gi = 1; gi < gens.size(); ++gi) {
            long level = 1 + static_cast<long>(gi - 1) / 2;
            std::vector<Int> row(gens.size(), Int(0));
            row[gi] = pow_int(p, static_cast<unsigned long>(k - level));
            rel.append_row(row);
        }
        assert(group_from_relations_mod(gens.size(), rel,
                                        q2 * pow_int(p, 2 * (static_cast<unsigned long>(k) - 1)))
                   .order() == q2 * pow_int(p, 2 * (static_cast<unsigned long>(k) - 1)));
    }

    std::vector<Int> dlog(quad_residue_ring::elem x, const budget& b) const
    {
        auto res = Rp.reduce(x.first, x.second);
        auto it = f_dlog.find(res);
        if (it == f_dlog.end() || (res.first == 0 && res.second == 0))
            throw not_a_unit("inert dlog: not a unit");
        std::vector<Int> e(gens.size(), Int(0));
        e[0] = it->second;
        if (it->second != 0) {
            b.tick(2 * mpz_sizeinbase(Int(it->second).get_mpz_t(), 2) + 2);
            x = R.mul(x, R.pow(invs[0], it->second));
        }
        for (long i = 1; i < k; ++i) {
            Int pi = pow_int(p, static_cast<unsigned long>(i));
            assert((x.first - 1) % pi == 0 && x.second % pi == 0);
            Int alpha = (x.first - 1) / pi % p;
            Int beta = x.second / pi % p;
            std::size_t ia = static_cast<std::size_t>(2 * i - 1);
            std::size_t ib = static_cast<std::size_t>(2 * i);
            e[ia] = alpha;
            e[ib] = beta;
            b.tick(8);
            if (alpha != 0)
                x = R.mul(x, R.pow(invs[ia], alpha));
            if (beta != 0)
                x = R.mul(x, R.pow(invs[ib], beta));
        }
        assert(x == R.one());
        return e;
    }
};

} // namespace

quad_oracle_result quad_ratio_oracle(const Int& d, const Int& p, long k, prime_splitting kind,
                                     const budget& b)
{
    prime_splitting st = splitting_type(d, p);
    if (st == prime_splitting::ramified)
        throw ramified_prime("quad_ratio_oracle: p ramifies");
    if (st != kind) {
        if (kind == prime_splitting::split)
            throw not_split("quad_ratio_oracle: p is inert, not split");
        throw not_inert("quad_ratio_oracle: p is split, not inert");
    }
    if (k <= 0)
        return { 1, ab_group() };

    quad_elem u = fundamental_unit(d);
    quad_elem u0 = (u.norm() == 1) ? u : u * u;

    if (kind == prime_splitting::split) {
        Int mod = pow_int(p, static_cast<unsigned long>(k));
        Int img = split_embed(u0, p, k);
        auto fac = factorize(p - 1);
        if (k > 1)
            fac.emplace_back(p, static_cast<unsigned long>(k) - 1);
        b.tick(4 * static_cast<unsigned long>(k) * (fac.size() + 1));
        Int ord = multiplicative_order(img, mod, fac);
        Int phi = (p - 1) * pow_int(p, static_cast<unsigned long>(k) - 1);
        Int ratio = phi / ord;
        assert(ratio * ord == phi);
        ab_group structure;
        if (p == 2) {
            structure = split2_structure(img, k, ratio);
        } else if (ratio > 1) {
            structure = ab_group({ ratio }); /* quotient of the cyclic (Z/p^k)^* */
        }
        return { ratio, structure };
    }

    /* inert */
    Int mod = pow_int(p, static_cast<unsigned long>(k));
    quad_residue_ring R(d, mod);
    Int group_order = (p * p - 1) * pow_int(p, 2 * (static_cast<unsigned long>(k) - 1));
    auto fac = factorize(p * p - 1);
    if (k > 1)
        fac.emplace_back(p, 2 * (static_cast<unsigned long>(k) - 1));
    auto u0e = R.from_quad(u0);
    b.tick(2 * mpz_sizeinbase(group_order.get_mpz_t(), 2) * (fac.size() + 1));
    Int ord = R.order(u0e, fac);
    Int ratio = group_order / ord;
    assert(ratio * ord == group_order);

    quad_oracle_result out{ ratio, std::nullopt };
    if (ratio <= 100000) {
        inert_pres pres(d, p, k, b);
        out.structure = quotient_by_subgroup_mod(pres.gens.size(), pres.rel,
                                                 { pres.dlog(u0e, b) }, group_order);
        assert(out.structure->order() == ratio);
    }
    return out;
}

} // namespace rayclass
